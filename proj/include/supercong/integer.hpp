#pragma once

/**
 * @file integer.hpp
 * @brief Arbitrary-precision integers plus the handful of integer-level
 *        number-theoretic helpers everything else is built on.
 *
 * Storage is GMP's mpz_class; the helpers here (deterministic primality,
 * exact prime-power extraction, modular exponentiation) are project code.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercong {

using Integer = mpz_class;

inline Integer pow_int(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Integer powmod(const Integer& base, const Integer& exp, const Integer& mod) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Exponent of the prime p in a nonzero integer.
inline long prime_exponent(const Integer& n, long p) {
    if (n == 0)
        throw std::invalid_argument("prime_exponent: zero has no finite valuation");
    Integer reduced;
    Integer prime(p);
    return static_cast<long>(
        mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

} // namespace detail

/// Deterministic Miller-Rabin; the witness set decides primality for every
/// 64-bit input.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2)
        return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q)
            return true;
        if (n % q == 0)
            return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

inline bool is_prime(const Integer& n) {
    if (n < 2)
        return false;
    if (!n.fits_ulong_p())
        // Beyond the deterministic witness range; adequate for this library's
        // target primes (well below 2^64).
        return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
    return is_prime_u64(n.get_ui());
}

inline bool is_prime(long n) { return n >= 2 && is_prime_u64(static_cast<uint64_t>(n)); }

inline std::vector<long> primes_in_range(long lo, long hi) {
    std::vector<long> ps;
    for (long n = std::max(lo, 2L); n <= hi; ++n)
        if (is_prime(n))
            ps.push_back(n);
    return ps;
}

} // namespace supercong
