#pragma once

/**
 * @file combinatorics.hpp
 * @brief Exact combinatorial scalars: factorials, binomials, rising factorials,
 *        harmonic sums, Fermat quotients, and Morita's p-adic gamma at integers.
 */

#include "supercong/errors.hpp"
#include "supercong/integer.hpp"
#include "supercong/rational.hpp"

#include <stdexcept>

namespace supercong {

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Exact binomial coefficient; zero outside 0 <= k <= n.
inline Integer binomial(unsigned long n, long k) {
    if (k < 0 || static_cast<unsigned long>(k) > n)
        return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
    return r;
}

/// Rising factorial a(a+1)...(a+n-1); the empty product is 1.
inline Rational pochhammer(const Rational& a, unsigned long n) {
    Rational r(1);
    Rational f = a;
    for (unsigned long j = 0; j < n; ++j) {
        r *= f;
        f += Rational(1);
    }
    return r;
}

/// Sum of 1/l^power for l = 1..n, power in {1, 2}; zero for n = 0.
inline Rational harmonic(unsigned long n, int power) {
    if (power != 1 && power != 2)
        throw std::invalid_argument("harmonic: power must be 1 or 2");
    Rational r(0);
    for (unsigned long l = 1; l <= n; ++l) {
        Rational term(Integer(1), Integer(l));
        r += power == 1 ? term : term * term;
    }
    return r;
}

/// Fermat quotient (2^(p-1) - 1)/p, an exact integer for odd prime p.
inline Integer fermat_quotient(long p) {
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument("fermat_quotient: argument must be an odd prime");
    Integer num = pow_int(Integer(2), static_cast<unsigned long>(p - 1)) - 1;
    Integer q;
    mpz_divexact_ui(q.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(p));
    return q;
}

/// Morita's p-adic gamma at a nonnegative integer argument:
/// gamma_p(0) = 1 and gamma_p(n) = (-1)^n * prod of 0 < j < n with p not
/// dividing j, as an exact integer so callers pick the modulus themselves.
inline Integer gamma_p(unsigned long n, long p) {
    if (!is_prime(p))
        throw std::invalid_argument("gamma_p: " + std::to_string(p) + " is not prime");
    if (n == 0)
        return Integer(1);
    Integer prod(1);
    for (unsigned long j = 1; j < n; ++j)
        if (j % static_cast<unsigned long>(p) != 0)
            prod *= j;
    return (n % 2 == 0) ? prod : -prod;
}

} // namespace supercong
