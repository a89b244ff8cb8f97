#pragma once

// Dense polynomials over F_p and deterministic Berlekamp factorization.
// Used to pick a maximal ideal above p: block membership compares central
// characters in F_p[x]/(h) where h is an irreducible factor of a cyclotomic
// polynomial reduced mod p.

#include <algorithm>
#include <vector>

#include "cyclo.hpp"
#include "numutil.hpp"

namespace perfiso {

/// Coefficients in [0,p), constant term first, no trailing zeros.
struct FpPoly {
    long p;
    std::vector<long> c;

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p == b.p && a.c == b.c; }
    friend bool operator<(const FpPoly& a, const FpPoly& b) {
        if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
        return a.c < b.c;
    }
};

namespace fp {

inline FpPoly make(long p, std::vector<long> coeffs) {
    for (auto& x : coeffs) { x %= p; if (x < 0) x += p; }
    FpPoly f{p, std::move(coeffs)};
    f.trim();
    return f;
}

inline FpPoly constant(long p, long v) { return make(p, {v}); }

inline FpPoly sub(const FpPoly& a, const FpPoly& b) {
    std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] = (c[i] - b.c[i] % a.p + a.p) % a.p;
    FpPoly r{a.p, std::move(c)};
    r.trim();
    return r;
}

inline FpPoly mul(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly{a.p, {}};
    std::vector<long> c(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] = (c[i + j] + a.c[i] * b.c[j]) % a.p;
    FpPoly r{a.p, std::move(c)};
    r.trim();
    return r;
}

inline FpPoly rem(FpPoly a, const FpPoly& b) {
    const long p = a.p;
    long lead_inv = inverse_mod(b.c.back(), p);
    while (!a.is_zero() && a.degree() >= b.degree()) {
        long shift = a.degree() - b.degree();
        long f = a.c.back() * lead_inv % p;
        for (size_t i = 0; i < b.c.size(); ++i)
            a.c[shift + i] = ((a.c[shift + i] - f * b.c[i]) % p + p) % p;
        a.trim();
    }
    return a;
}

inline FpPoly monic(FpPoly a) {
    if (a.is_zero()) return a;
    long inv = inverse_mod(a.c.back(), a.p);
    for (auto& x : a.c) x = x * inv % a.p;
    return a;
}

inline FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = rem(a, b);
        a = b;
        b = r;
    }
    return monic(a);
}

inline FpPoly divexact(const FpPoly& a, const FpPoly& b) {
    // a = q*b exactly; synthetic division
    FpPoly r = a;
    const long p = a.p;
    long lead_inv = inverse_mod(b.c.back(), p);
    std::vector<long> q(a.c.size() - b.c.size() + 1, 0);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        long shift = r.degree() - b.degree();
        long f = r.c.back() * lead_inv % p;
        q[shift] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[shift + i] = ((r.c[shift + i] - f * b.c[i]) % p + p) % p;
        r.trim();
    }
    if (!r.is_zero()) throw Error("divexact: division not exact");
    FpPoly out{p, std::move(q)};
    out.trim();
    return out;
}

/// x^e mod f.
inline FpPoly xpow_mod(long e, const FpPoly& f) {
    FpPoly base = make(f.p, {0, 1});
    FpPoly acc = constant(f.p, 1);
    while (e > 0) {
        if (e & 1) acc = rem(mul(acc, base), f);
        base = rem(mul(base, base), f);
        e >>= 1;
    }
    return acc;
}

/// Deterministic Berlekamp factorization of a squarefree monic f over F_p.
/// Factors returned sorted by coefficient tuple.
inline std::vector<FpPoly> berlekamp(const FpPoly& f) {
    const long p = f.p;
    const long n = f.degree();
    if (n <= 1) return {monic(f)};
    // rows of Q: x^{ip} mod f
    std::vector<std::vector<long>> Q(n, std::vector<long>(n, 0));
    for (long i = 0; i < n; ++i) {
        FpPoly xi = xpow_mod(i * p, f);
        for (size_t j = 0; j < xi.c.size(); ++j) Q[i][j] = xi.c[j];
        Q[i][i] = ((Q[i][i] - 1) % p + p) % p;
    }
    // left kernel: v with v*Q = 0, via elimination on Q^T
    std::vector<std::vector<long>> M(n, std::vector<long>(n, 0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) M[i][j] = Q[j][i];
    std::vector<long> pivot_col(n, -1);
    long rank = 0;
    for (long col = 0; col < n && rank < n; ++col) {
        long piv = -1;
        for (long r = rank; r < n; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(M[rank], M[piv]);
        long inv = inverse_mod(M[rank][col], p);
        for (auto& x : M[rank]) x = x * inv % p;
        for (long r = 0; r < n; ++r) {
            if (r == rank || M[r][col] == 0) continue;
            long fac = M[r][col];
            for (long c2 = 0; c2 < n; ++c2) M[r][c2] = ((M[r][c2] - fac * M[rank][c2]) % p + p) % p;
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<FpPoly> basis;
    std::vector<bool> is_pivot(n, false);
    for (long r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    for (long col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        std::vector<long> v(n, 0);
        v[col] = 1;
        for (long r = 0; r < rank; ++r) v[pivot_col[r]] = (p - M[r][col]) % p;
        basis.push_back(make(p, std::move(v)));
    }
    const size_t nfactors = basis.size();
    std::vector<FpPoly> factors{monic(f)};
    for (const auto& v : basis) {
        if (factors.size() >= nfactors) break;
        if (v.degree() <= 0) continue;
        std::vector<FpPoly> next;
        for (const auto& g : factors) {
            if (g.degree() <= 1) { next.push_back(g); continue; }
            FpPoly current = g;
            for (long c = 0; c < p && current.degree() > 0; ++c) {
                FpPoly h = gcd(current, sub(v, constant(p, c)));
                if (h.degree() > 0 && h.degree() < current.degree()) {
                    next.push_back(h);
                    current = divexact(current, h);
                }
            }
            if (current.degree() > 0) next.push_back(current);
        }
        factors = std::move(next);
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

/// All irreducible factors of the n-th cyclotomic polynomial mod p (p coprime
/// to n required; each factor has degree = ord of p mod n).
inline std::vector<FpPoly> cyclotomic_factors(long n, long p) {
    if (n % p == 0) throw Error("cyclotomic_factors: p divides n");
    auto phi = detail::cyclotomic_poly(n);
    std::vector<long> c;
    c.reserve(phi->size());
    for (auto& z : *phi) c.push_back(mpz_class(z % p).get_si());
    return berlekamp(make(p, std::move(c)));
}

/// Residue of an algebraic integer a under Z[zeta_n] -> F_p[x]/(h),
/// zeta_n -> x.  Requires the conductor of a to divide n.
inline std::vector<long> residue(const CycNum& a, long n, const FpPoly& h) {
    if (!a.is_integral()) throw Error("residue: not an algebraic integer");
    if (n % a.modulus() != 0) throw Error("residue: conductor does not divide modulus");
    auto coords = a.coords_in(n);
    const long p = h.p;
    std::vector<long> c;
    c.reserve(coords.size());
    for (auto& q : coords) c.push_back(mpz_class(q.get_num() % p).get_si());
    FpPoly poly = make(p, std::move(c));
    FpPoly r = rem(poly, h);
    std::vector<long> out(h.degree(), 0);
    for (size_t i = 0; i < r.c.size(); ++i) out[i] = r.c[i];
    return out;
}

} // namespace fp
} // namespace perfiso
