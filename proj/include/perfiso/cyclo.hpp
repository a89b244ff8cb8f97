#pragma once

// Exact arithmetic in cyclotomic fields Q_n.
//
// A CycNum stores a canonical modulus n together with rational coordinates
// over the power basis {zeta_n^i : 0 <= i < phi(n)}.  The power basis is an
// integral basis of Z[zeta_n], so algebraic-integer and divisibility tests
// are coordinate-wise.  Canonical form: n is the conductor of the element
// and n != 2 (mod 4) (Q_n = Q_{n/2} for such n); rationals live at n = 1.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "numutil.hpp"

namespace perfiso {

namespace detail {

using QVec = std::vector<mpq_class>;
using ZVec = std::vector<mpz_class>;

/// Monic coefficients of the n-th cyclotomic polynomial, constant term first.
/// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed by exact division.
inline std::shared_ptr<const ZVec> cyclotomic_poly(long n) {
    static std::map<long, std::shared_ptr<const ZVec>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // x^n - 1
    ZVec num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        auto phid = cyclotomic_poly(d);
        // exact division of num by phid (monic)
        const ZVec& q = *phid;
        ZVec res(num.size() - q.size() + 1, 0);
        ZVec rem = num;
        for (long i = static_cast<long>(rem.size()) - 1; i >= static_cast<long>(q.size()) - 1; --i) {
            mpz_class c = rem[i];
            if (c == 0) continue;
            long shift = i - (static_cast<long>(q.size()) - 1);
            res[shift] = c;
            for (size_t j = 0; j < q.size(); ++j) rem[shift + j] -= c * q[j];
        }
        num = res;
    }
    auto sp = std::make_shared<const ZVec>(std::move(num));
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(n, sp);
    return sp;
}

/// Reduce a rational polynomial (exponent i = coefficient of zeta^i) modulo
/// Phi_n; the result has exactly phi(n) coordinates.
inline QVec reduce_mod_cyclotomic(QVec poly, long n) {
    auto phi_poly = cyclotomic_poly(n);
    const ZVec& f = *phi_poly;
    const size_t deg = f.size() - 1; // = phi(n)
    for (long i = static_cast<long>(poly.size()) - 1; i >= static_cast<long>(deg); --i) {
        mpq_class c = poly[i];
        if (c == 0) continue;
        poly[i] = 0;
        long shift = i - static_cast<long>(deg);
        for (size_t j = 0; j < deg; ++j) poly[shift + j] -= c * f[j];
    }
    poly.resize(deg, mpq_class(0));
    for (auto& q : poly) q.canonicalize();
    return poly;
}

struct EmbedData {
    // columns[j] = coordinates of zeta_m^j in Q_n, j < phi(m)    (phi(n) x phi(m))
    std::vector<QVec> columns;
    // left inverse L (phi(m) x phi(n)) with L * columns = identity
    std::vector<QVec> left_inv;
};

/// Cached change-of-basis data for Q_m -> Q_n, m | n.
inline std::shared_ptr<const EmbedData> embed_data(long m, long n) {
    static std::map<std::pair<long, long>, std::shared_ptr<const EmbedData>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({m, n});
        if (it != cache.end()) return it->second;
    }
    const long pm = euler_phi(m), pn = euler_phi(n), step = n / m;
    EmbedData d;
    d.columns.resize(pm);
    for (long j = 0; j < pm; ++j) {
        QVec mono(step * j + 1, 0);
        mono[step * j] = 1;
        d.columns[j] = reduce_mod_cyclotomic(std::move(mono), n);
    }
    // Gauss-Jordan on [E | I] restricted to pivot rows yields a left inverse.
    std::vector<QVec> aug(pn, QVec(pm + pn, 0));
    for (long i = 0; i < pn; ++i) {
        for (long j = 0; j < pm; ++j) aug[i][j] = d.columns[j][i];
        aug[i][pm + i] = 1;
    }
    long row = 0;
    std::vector<long> pivot_rows;
    for (long col = 0; col < pm; ++col) {
        long piv = -1;
        for (long r = row; r < pn; ++r)
            if (aug[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw Error("embed_data: basis columns not independent");
        std::swap(aug[row], aug[piv]);
        mpq_class inv = 1 / aug[row][col];
        for (auto& v : aug[row]) { v *= inv; v.canonicalize(); }
        for (long r = 0; r < pn; ++r) {
            if (r == row || aug[r][col] == 0) continue;
            mpq_class f = aug[r][col];
            for (long c2 = col; c2 < pm + pn; ++c2) {
                aug[r][c2] -= f * aug[row][c2];
                aug[r][c2].canonicalize();
            }
        }
        ++row;
    }
    d.left_inv.assign(pm, QVec(pn, 0));
    for (long i = 0; i < pm; ++i)
        for (long j = 0; j < pn; ++j) d.left_inv[i][j] = aug[i][pm + j];
    auto sp = std::make_shared<const EmbedData>(std::move(d));
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(std::make_pair(m, n), sp);
    return sp;
}

} // namespace detail

class CycNum {
public:
    CycNum() : n_(1), c_{mpq_class(0)} {}
    CycNum(long v) : n_(1), c_{mpq_class(v)} {}
    CycNum(const mpz_class& v) : n_(1), c_{mpq_class(v)} {}
    CycNum(const mpq_class& v) : n_(1), c_{v} { c_[0].canonicalize(); }

    /// E(n)^k, the primitive n-th root of unity to the k-th power.
    static CycNum root(long n, long k = 1) {
        if (n <= 0) throw Error("E(n): modulus must be positive");
        k %= n;
        if (k < 0) k += n;
        detail::QVec poly(k + 1, 0);
        poly[k] = 1;
        return CycNum(n, detail::reduce_mod_cyclotomic(std::move(poly), n));
    }

    static CycNum parse(std::string_view text);

    long modulus() const { return n_; }
    const std::vector<mpq_class>& coords() const { return c_; }

    bool is_zero() const { return n_ == 1 && c_[0] == 0; }
    bool is_rational() const { return n_ == 1; }

    const mpq_class& rational_value() const {
        if (n_ != 1) throw Error("rational_value: not a rational number: " + str());
        return c_[0];
    }

    /// True iff the element is an algebraic integer (integral coordinates).
    bool is_integral() const {
        for (auto& q : c_)
            if (q.get_den() != 1) return false;
        return true;
    }

    /// Galois action zeta_n -> zeta_n^k; k = -1 is complex conjugation.
    CycNum galois(long k) const {
        long kk = k % n_;
        if (kk < 0) kk += n_;
        if (n_ == 1) return *this;
        if (gcd_long(kk, n_) != 1)
            throw Error("galois: exponent " + std::to_string(k) + " not coprime to modulus " + std::to_string(n_));
        detail::QVec poly(n_, 0);
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            poly[j * kk % n_] += c_[j];
        }
        return CycNum(n_, detail::reduce_mod_cyclotomic(std::move(poly), n_));
    }

    CycNum conj() const { return galois(-1); }

    friend CycNum operator+(const CycNum& a, const CycNum& b) { return combine(a, b, false); }
    friend CycNum operator-(const CycNum& a, const CycNum& b) { return combine(a, b, true); }

    CycNum operator-() const {
        CycNum r = *this;
        for (auto& q : r.c_) q = -q;
        return r;
    }

    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        if (a.n_ == 1 && b.n_ == 1) return CycNum(mpq_class(a.c_[0] * b.c_[0]));
        if (a.n_ == 1) {
            // scaling by a nonzero rational preserves the conductor
            if (a.c_[0] == 0) return CycNum();
            CycNum r = b;
            for (auto& q : r.c_) { q *= a.c_[0]; q.canonicalize(); }
            return r;
        }
        if (b.n_ == 1) return b * a;
        long n = lcm_long(a.n_, b.n_);
        detail::QVec pa = a.coords_in(n), pb = b.coords_in(n);
        detail::QVec prod(pa.size() + pb.size() - 1, 0);
        for (size_t i = 0; i < pa.size(); ++i) {
            if (pa[i] == 0) continue;
            for (size_t j = 0; j < pb.size(); ++j) {
                if (pb[j] == 0) continue;
                prod[i + j] += pa[i] * pb[j];
            }
        }
        for (auto& q : prod) q.canonicalize();
        return CycNum(n, detail::reduce_mod_cyclotomic(std::move(prod), n));
    }

    CycNum& operator+=(const CycNum& b) { *this = *this + b; return *this; }
    CycNum& operator-=(const CycNum& b) { *this = *this - b; return *this; }
    CycNum& operator*=(const CycNum& b) { *this = *this * b; return *this; }

    friend bool operator==(const CycNum& a, const CycNum& b) { return a.n_ == b.n_ && a.c_ == b.c_; }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    /// Total order (modulus, then coordinates); used for deterministic sorts.
    friend bool operator<(const CycNum& a, const CycNum& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (size_t i = 0; i < a.c_.size(); ++i) {
            int c = cmp(a.c_[i], b.c_[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    std::string str() const;

    /// Coordinates of this element over the power basis of Q_n, n a multiple
    /// of the canonical modulus.
    detail::QVec coords_in(long n) const {
        if (n == n_) return c_;
        if (n % n_ != 0) throw Error("coords_in: modulus not a multiple of conductor");
        auto ed = detail::embed_data(n_, n);
        detail::QVec out(euler_phi(n), 0);
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const auto& col = ed->columns[j];
            for (size_t i = 0; i < out.size(); ++i)
                if (col[i] != 0) { out[i] += c_[j] * col[i]; out[i].canonicalize(); }
        }
        return out;
    }

    /// Construct from raw coordinates in Q_n (reduced); canonicalizes.
    CycNum(long n, detail::QVec coords) : n_(n), c_(std::move(coords)) {
        if (n_ <= 0) throw Error("CycNum: modulus must be positive");
        if (c_.size() != static_cast<size_t>(euler_phi(n_)))
            throw Error("CycNum: coordinate length mismatch");
        canonicalize();
    }

private:
    long n_;
    detail::QVec c_;

    static CycNum combine(const CycNum& a, const CycNum& b, bool sub) {
        if (a.n_ == b.n_) {
            detail::QVec c = a.c_;
            for (size_t i = 0; i < c.size(); ++i) {
                if (sub) c[i] -= b.c_[i]; else c[i] += b.c_[i];
                c[i].canonicalize();
            }
            return CycNum(a.n_, std::move(c));
        }
        long n = lcm_long(a.n_, b.n_);
        detail::QVec ca = a.coords_in(n), cb = b.coords_in(n);
        for (size_t i = 0; i < ca.size(); ++i) {
            if (sub) ca[i] -= cb[i]; else ca[i] += cb[i];
            ca[i].canonicalize();
        }
        return CycNum(n, std::move(ca));
    }

    // Descend to the conductor: repeatedly try each prime divisor of the
    // modulus; the n = 2 (mod 4) case always descends via q = 2.
    void canonicalize() {
        while (n_ > 1) {
            bool all_zero = true;
            for (size_t i = 1; i < c_.size(); ++i)
                if (c_[i] != 0) { all_zero = false; break; }
            if (all_zero) {
                mpq_class v = c_[0];
                n_ = 1;
                c_.assign(1, v);
                return;
            }
            bool descended = false;
            for (long q : prime_divisors(n_)) {
                long m = n_ / q;
                if (try_descend(m)) { descended = true; break; }
            }
            if (!descended) return;
        }
    }

    bool try_descend(long m) {
        auto ed = detail::embed_data(m, n_);
        const long pm = euler_phi(m), pn = euler_phi(n_);
        detail::QVec y(pm, 0);
        for (long i = 0; i < pm; ++i) {
            mpq_class s = 0;
            const auto& row = ed->left_inv[i];
            for (long j = 0; j < pn; ++j)
                if (row[j] != 0 && c_[j] != 0) s += row[j] * c_[j];
            s.canonicalize();
            y[i] = s;
        }
        // consistency: E*y must reproduce the coordinates exactly
        for (long i = 0; i < pn; ++i) {
            mpq_class s = 0;
            for (long j = 0; j < pm; ++j)
                if (ed->columns[j][i] != 0 && y[j] != 0) s += ed->columns[j][i] * y[j];
            s.canonicalize();
            if (s != c_[i]) return false;
        }
        n_ = m;
        c_ = std::move(y);
        return true;
    }
};

/// cyc_divides: is a/m an algebraic integer?  Requires a integral.
inline bool divides(const mpz_class& m, const CycNum& a) {
    if (m == 0) throw Error("divides: zero divisor");
    if (!a.is_integral()) throw Error("divides: " + a.str() + " is not an algebraic integer");
    for (auto& q : a.coords())
        if (q.get_num() % m != 0) return false;
    return true;
}

inline bool divides(long m, const CycNum& a) { return divides(mpz_class(m), a); }

// ---------------------------------------------------------------------------
// Printing and parsing.
//
// Grammar (also the exact print format, exponents increasing):
//   expr := ['-'] term (('+' | '-') term)*
//   term := rat | rat '*' atom | atom
//   atom := 'E(' uint ')' ['^' uint]
//   rat  := uint ['/' uint]

inline std::string CycNum::str() const {
    auto rat_str = [](const mpq_class& q) {
        return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
    };
    if (n_ == 1) return rat_str(c_[0]);
    std::string out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        mpq_class mag = abs(c_[i]);
        bool neg = c_[i] < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? "-" : "+";
        }
        if (i == 0) {
            out += rat_str(mag);
            continue;
        }
        if (mag != 1) out += rat_str(mag) + "*";
        out += "E(" + std::to_string(n_) + ")";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

namespace detail {

class CycParser {
public:
    explicit CycParser(std::string_view s) : s_(s) {}

    CycNum parse() {
        CycNum v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw Error("cyclotomic parse error at position " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    mpz_class uint_lit() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
        if (pos_ == start) fail("expected digit");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    CycNum expr() {
        bool neg = eat('-');
        CycNum v = term();
        if (neg) v = -v;
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else break;
        }
        return v;
    }

    CycNum term() {
        if (peek() == 'E') return atom();
        mpq_class q(uint_lit());
        if (eat('/')) {
            mpz_class d = uint_lit();
            if (d == 0) fail("zero denominator");
            q /= d;
        }
        q.canonicalize();
        if (eat('*')) return CycNum(q) * atom();
        return CycNum(q);
    }

    CycNum atom() {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != 'E') fail("expected E(...)");
        ++pos_;
        if (!eat('(')) fail("expected '('");
        mpz_class nz = uint_lit();
        if (!eat(')')) fail("expected ')'");
        if (nz <= 0) fail("zero/negative modulus");
        if (!nz.fits_slong_p()) fail("modulus too large");
        long n = nz.get_si();
        long k = 1;
        if (eat('^')) {
            mpz_class kz = uint_lit();
            k = mpz_class(kz % n).get_si();
        }
        return CycNum::root(n, k);
    }
};

} // namespace detail

inline CycNum CycNum::parse(std::string_view text) { return detail::CycParser(text).parse(); }

} // namespace perfiso
