#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include <perfiso/cyclo.hpp>

using perfiso::CycNum;
using perfiso::divides;

namespace {

// Independent oracle for prime modulus p: a sum of integer multiples of
// p-th roots of unity, stored as exponent -> coefficient.  Products and sums
// are computed symbolically; normalization uses only the single relation
// 1 + z + ... + z^{p-1} = 0 (subtract the top coefficient from all), which
// yields coordinates over the power basis {1, ..., z^{p-2}} directly.
struct RootSum {
    long p;
    std::map<long, mpz_class> coeff;

    static RootSum zeta(long p, long k) {
        RootSum r{p, {}};
        r.coeff[((k % p) + p) % p] = 1;
        return r;
    }

    RootSum operator*(const RootSum& o) const {
        RootSum r{p, {}};
        for (auto& [e1, c1] : coeff)
            for (auto& [e2, c2] : o.coeff) r.coeff[(e1 + e2) % p] += c1 * c2;
        return r;
    }

    RootSum operator+(const RootSum& o) const {
        RootSum r = *this;
        for (auto& [e, c] : o.coeff) r.coeff[e] += c;
        return r;
    }

    RootSum negate() const {
        RootSum r = *this;
        for (auto& [e, c] : r.coeff) c = -c;
        return r;
    }

    std::vector<mpz_class> power_basis_coords() const {
        std::vector<mpz_class> c(p, 0);
        for (auto& [e, v] : coeff) c[e] = v;
        mpz_class top = c[p - 1];
        for (auto& v : c) v -= top;
        c.pop_back();
        return c;
    }

    bool matches(const CycNum& x) const {
        auto mine = power_basis_coords();
        auto theirs = x.coords_in(p);
        for (size_t i = 0; i < theirs.size(); ++i)
            if (mpq_class(mine[i]) != theirs[i]) return false;
        return true;
    }
};

CycNum random_cyc(std::mt19937_64& rng) {
    static const long moduli[] = {1, 3, 4, 5, 7, 8, 9, 12};
    long n = moduli[rng() % 8];
    CycNum v(0);
    for (long i = 0; i < perfiso::euler_phi(n); ++i) {
        long num = static_cast<long>(rng() % 7) - 3;
        long den = 1 + static_cast<long>(rng() % 2);
        if (num != 0) v += CycNum(mpq_class(num, den)) * CycNum::root(n, i);
    }
    return v;
}

} // namespace

TEST_CASE("parsing basics") {
    CHECK(CycNum::parse("1") == CycNum(1));
    CHECK(CycNum::parse("0") == CycNum(0));
    CHECK(CycNum::parse("-7/3") == CycNum(mpq_class(-7, 3)));
    CHECK(CycNum::parse("E(3)+E(3)^2") == CycNum(-1));
    CHECK(CycNum::parse("2*E(4)") == CycNum(2) * CycNum::root(4));
    CHECK(CycNum::parse("E(1)") == CycNum(1));
    CHECK(CycNum::parse("E(2)") == CycNum(-1));
    CHECK_THROWS_AS(CycNum::parse("E(0)"), perfiso::Error);
    CHECK_THROWS_AS(CycNum::parse("E(3)+"), perfiso::Error);
    CHECK_THROWS_AS(CycNum::parse("1/0"), perfiso::Error);
    CHECK_THROWS_AS(CycNum::parse("abc"), perfiso::Error);
}

TEST_CASE("canonical modulus never 2 mod 4") {
    CHECK(CycNum::root(6).modulus() == 3);
    CHECK(CycNum::root(6).str() == "1+E(3)");
    CHECK(CycNum::root(2).modulus() == 1);
    CHECK(CycNum::root(10, 1).modulus() == 5);
    CHECK(CycNum::root(4).modulus() == 4);
}

TEST_CASE("golden ratio values from the A5 table") {
    // (1-sqrt5)/2 and (1+sqrt5)/2 as root sums
    CycNum a = CycNum::parse("-E(5)-E(5)^4");
    CycNum b = CycNum::parse("-E(5)^2-E(5)^3");
    CHECK(a.str() == "1+E(5)^2+E(5)^3");
    CHECK(a + b == CycNum(1));
    CHECK(a.galois(2) == b);

    // product via the independent root-sum oracle
    RootSum ra = RootSum::zeta(5, 1).negate() + RootSum::zeta(5, 4).negate();
    RootSum rb = RootSum::zeta(5, 2).negate() + RootSum::zeta(5, 3).negate();
    RootSum rp = ra * rb;
    CHECK(rp.matches(a * b));
    CHECK(a * b == CycNum(-1));
    // both are roots of x^2 - x - 1
    CHECK(a * a - a - CycNum(1) == CycNum(0));
    CHECK(b * b - b - CycNum(1) == CycNum(0));
}

TEST_CASE("arithmetic identities") {
    CHECK(CycNum::root(3) * CycNum::root(3, 2) == CycNum(1));
    CycNum s(0);
    for (int k = 1; k <= 4; ++k) s += CycNum::root(5, k);
    CHECK(s == CycNum(-1));
}

TEST_CASE("galois action") {
    CHECK(CycNum::root(3).galois(-1) == CycNum::root(3, 2));
    CHECK(CycNum(mpq_class(5, 7)).galois(3) == CycNum(mpq_class(5, 7)));
    CHECK(CycNum::parse("-E(5)-E(5)^4").galois(2) == CycNum::parse("-E(5)^2-E(5)^3"));
    CHECK_THROWS_AS(CycNum::root(9).galois(3), perfiso::Error);
}

TEST_CASE("divisibility of algebraic integers") {
    CHECK(divides(3, CycNum(3)));
    CHECK_FALSE(divides(2, CycNum::root(3)));
    // 1 + E(3) - 2*E(3)^2 has power-basis coordinates (3, 3)
    CycNum v = CycNum::parse("1+E(3)-2*E(3)^2");
    CHECK(v.coords_in(3) == std::vector<mpq_class>{3, 3});
    CHECK(divides(3, v));
    CHECK_FALSE(divides(9, v));
    CHECK_THROWS_AS(divides(2, CycNum(mpq_class(1, 2))), perfiso::Error);
    CHECK_THROWS_AS(divides(0, CycNum(3)), perfiso::Error);
}

TEST_CASE("divides implies exact quotient") {
    std::mt19937_64 rng(20260810);
    for (int t = 0; t < 200; ++t) {
        CycNum a = random_cyc(rng);
        if (!a.is_integral()) continue;
        for (long m : {2L, 3L, 5L}) {
            if (!divides(m, a)) continue;
            CycNum q = CycNum(mpq_class(1, m)) * a;
            CHECK(q.is_integral());
            CHECK(CycNum(m) * q == a);
        }
    }
}

TEST_CASE("ring axioms on random values") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 60; ++t) {
        CycNum a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == CycNum(0));
        CHECK(a * CycNum(1) == a);
    }
}

TEST_CASE("galois is a ring automorphism") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        CycNum a = random_cyc(rng), b = random_cyc(rng);
        long n = perfiso::lcm_long(a.modulus(), b.modulus());
        for (long k = 1; k < n + 2; ++k) {
            if (perfiso::gcd_long(k, n) != 1) continue;
            CHECK((a + b).galois(k) == a.galois(k) + b.galois(k));
            CHECK((a * b).galois(k) == a.galois(k) * b.galois(k));
        }
    }
}

TEST_CASE("galois composition") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 40; ++t) {
        CycNum a = random_cyc(rng);
        long n = a.modulus();
        for (long k = 1; k <= n; ++k) {
            if (perfiso::gcd_long(k, n) != 1) continue;
            for (long kp = 1; kp <= n; ++kp) {
                if (perfiso::gcd_long(kp, n) != 1) continue;
                CHECK(a.galois(k).galois(kp) == a.galois(k * kp % (n == 1 ? 1 : n)));
            }
        }
    }
}

TEST_CASE("embedding commutes with arithmetic") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        CycNum a = random_cyc(rng), b = random_cyc(rng);
        long n = perfiso::lcm_long(perfiso::lcm_long(a.modulus(), b.modulus()), 12);
        // re-assembling from coordinates at a larger modulus is the identity
        CHECK(CycNum(n, a.coords_in(n)) == a);
        auto sum = a + b;
        auto cs = sum.coords_in(n);
        auto ca = a.coords_in(n);
        auto cb = b.coords_in(n);
        for (size_t i = 0; i < cs.size(); ++i) CHECK(cs[i] == ca[i] + cb[i]);
    }
}

TEST_CASE("print then parse is a fixed point") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 120; ++t) {
        CycNum a = random_cyc(rng);
        std::string s = a.str();
        CycNum back = CycNum::parse(s);
        CHECK(back == a);
        CHECK(back.str() == s);
    }
}
