#pragma once

/**
 * @file padic.hpp
 * @brief p-adic valuations, canonical residues mod p^e, and the Legendre symbol.
 */

#include "supercong/errors.hpp"
#include "supercong/integer.hpp"
#include "supercong/rational.hpp"

#include <ostream>
#include <string>

namespace supercong {

/// ord_p of a rational: a finite (possibly negative) exponent, or infinite
/// exactly for the zero element.
class Valuation {
public:
    static Valuation finite(long v) { return Valuation(false, v); }
    static Valuation infinite() { return Valuation(true, 0); }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_)
            throw DomainError("Valuation: infinite valuation has no finite value");
        return value_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }

    /// Infinite compares above every finite exponent.
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite_)
            return false;
        if (b.infinite_)
            return true;
        return a.value_ < b.value_;
    }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

    bool at_least(long e) const { return infinite_ || value_ >= e; }
    bool exactly(long e) const { return !infinite_ && value_ == e; }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
        return os << v.to_string();
    }

private:
    Valuation(bool inf, long v) : infinite_(inf), value_(v) {}
    bool infinite_;
    long value_;
};

/// Exact exponent of p in r. Infinite iff r = 0.
inline Valuation ord(const Rational& r, long p) {
    if (!is_prime(p))
        throw std::invalid_argument("ord: modulus base " + std::to_string(p) + " is not prime");
    if (r.is_zero())
        return Valuation::infinite();
    if (mpz_divisible_ui_p(r.denominator().get_mpz_t(), static_cast<unsigned long>(p)))
        return Valuation::finite(-prime_exponent(r.denominator(), p));
    return Valuation::finite(prime_exponent(r.numerator(), p));
}

inline Valuation ord(const Integer& n, long p) { return ord(Rational(n), p); }

/// The pair (p, e) of a congruence mod p^e.
struct PadicContext {
    long p;
    unsigned e;
    Integer modulus; // p^e

    PadicContext(long prime, unsigned exponent)
        : p(prime), e(exponent), modulus(pow_int(Integer(prime), exponent)) {
        if (!is_prime(prime))
            throw std::invalid_argument("PadicContext: " + std::to_string(prime) +
                                        " is not prime");
        if (exponent < 1)
            throw std::invalid_argument("PadicContext: exponent must be >= 1");
    }

    friend bool operator==(const PadicContext& a, const PadicContext& b) {
        return a.p == b.p && a.e == b.e;
    }
    friend bool operator!=(const PadicContext& a, const PadicContext& b) { return !(a == b); }
};

/// Canonical representative of a congruence class mod p^e; value in [0, p^e).
class Residue {
public:
    Residue(Integer value, PadicContext ctx) : value_(std::move(value)), ctx_(std::move(ctx)) {
        mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(), ctx_.modulus.get_mpz_t());
    }

    const Integer& value() const { return value_; }
    const PadicContext& context() const { return ctx_; }

    friend Residue operator+(const Residue& a, const Residue& b) {
        a.require_same(b);
        return Residue(a.value_ + b.value_, a.ctx_);
    }
    friend Residue operator-(const Residue& a, const Residue& b) {
        a.require_same(b);
        return Residue(a.value_ - b.value_, a.ctx_);
    }
    friend Residue operator*(const Residue& a, const Residue& b) {
        a.require_same(b);
        return Residue(a.value_ * b.value_, a.ctx_);
    }
    friend bool operator==(const Residue& a, const Residue& b) {
        return a.ctx_ == b.ctx_ && a.value_ == b.value_;
    }
    friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

private:
    void require_same(const Residue& o) const {
        if (ctx_ != o.ctx_)
            throw std::invalid_argument("Residue: mixed moduli");
    }

    Integer value_;
    PadicContext ctx_;
};

/// Canonical residue of a rational of nonnegative valuation: numerator times
/// the modular inverse of the denominator.
inline Residue reduce(const Rational& r, const PadicContext& ctx) {
    if (mpz_divisible_ui_p(r.denominator().get_mpz_t(), static_cast<unsigned long>(ctx.p)))
        throw NegativeValuationError("reduce: " + r.to_string() + " has negative ord_" +
                                     std::to_string(ctx.p));
    Integer inv;
    if (!mpz_invert(inv.get_mpz_t(), r.denominator().get_mpz_t(), ctx.modulus.get_mpz_t()))
        throw NegativeValuationError("reduce: denominator not invertible"); // unreachable
    return Residue(r.numerator() * inv, ctx);
}

/// Legendre symbol by Euler's criterion: a^((p-1)/2) mod p mapped to {-1,0,+1}.
inline int legendre(const Integer& a, long p) {
    if (p == 2 || !is_prime(p))
        throw std::invalid_argument("legendre: modulus must be an odd prime");
    Integer prime(p);
    Integer pw = powmod(a, (prime - 1) / 2, prime);
    if (pw == 0)
        return 0;
    return pw == 1 ? 1 : -1;
}

inline int legendre(long a, long p) { return legendre(Integer(a), p); }

} // namespace supercong
