#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace perfiso {

/// Error type for all mathematical and input failures in this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline long gcd_long(long a, long b) { return std::gcd(a, b); }
inline long lcm_long(long a, long b) { return std::lcm(a, b); }

/// Prime factorization by trial division, exponents included.
inline std::map<long, int> factorize(long n) {
    if (n <= 0) throw Error("factorize: argument must be positive");
    std::map<long, int> f;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { ++f[p]; n /= p; }
    }
    if (n > 1) ++f[n];
    return f;
}

inline std::vector<long> prime_divisors(long n) {
    std::vector<long> ps;
    for (auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return n == 1 ? 1 : r;
}

/// p-adic valuation v_p(n) for n != 0.
inline int valuation(long n, long p) {
    if (n == 0) throw Error("valuation of zero");
    if (n < 0) n = -n;
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline int valuation(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw Error("valuation of zero");
    mpz_class m = abs(n);
    int v = 0;
    while (m % p == 0) { m /= p; ++v; }
    return v;
}

/// Largest power of p dividing n.
inline long p_part(long n, long p) {
    long r = 1;
    int v = valuation(n, p);
    for (int i = 0; i < v; ++i) r *= p;
    return r;
}

/// p'-part of n (sign preserved): n with all factors of p removed.
inline long p_prime_part(long n, long p) { return n / p_part(n < 0 ? -n : n, p); }

/// a^{-1} mod m, gcd(a,m) = 1 required.
inline long inverse_mod(long a, long m) {
    a %= m;
    if (a < 0) a += m;
    long t = 0, newt = 1, r = m, newr = a;
    while (newr != 0) {
        long q = r / newr;
        long tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw Error("inverse_mod: arguments not coprime");
    return t < 0 ? t + m : t;
}

inline long pow_mod(long base, long exp, long mod) {
    long r = 1 % mod;
    base %= mod; if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

/// Multiplicative order of a modulo m (gcd(a,m) = 1).
inline long mult_order(long a, long m) {
    if (m == 1) return 1;
    if (gcd_long(a % m, m) != 1) throw Error("mult_order: arguments not coprime");
    long x = a % m, ord = 1;
    while (x != 1) { x = x * (a % m) % m; ++ord; }
    return ord;
}

} // namespace perfiso
