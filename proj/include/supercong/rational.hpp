#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers, the universal scalar of the library.
 *
 * Every value is kept in canonical form at all times: gcd(|num|, den) = 1,
 * den >= 1, and zero is 0/1. Valuations and residue reductions read prime
 * exponents straight off this form.
 */

#include "supercong/errors.hpp"
#include "supercong/integer.hpp"

#include <ostream>
#include <string>
#include <utility>

namespace supercong {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long n) : num_(n), den_(1) {}
    Rational(Integer n) : num_(std::move(n)), den_(1) {}
    Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    Rational(long num, long den) : num_(num), den_(den) { normalize(); }

    const Integer& numerator() const { return num_; }
    const Integer& denominator() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return sgn(num_); }

    /// Value as a machine integer; the caller guarantees integrality and range.
    long to_long() const {
        if (den_ != 1 || !num_.fits_slong_p())
            throw DomainError("Rational::to_long: not a small integer: " + to_string());
        return num_.get_si();
    }

    Rational operator-() const { return Rational(unchecked{}, -num_, den_); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0)
            throw DomainError("Rational: division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational pow(long e) const {
        if (e == 0)
            return Rational(1);
        if (num_ == 0) {
            if (e < 0)
                throw DomainError("Rational: zero to a negative power");
            return Rational(0);
        }
        unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
        Rational r(unchecked{}, pow_int(num_, a), pow_int(den_, a));
        if (e < 0)
            return Rational(1) / r;
        return r;
    }

    Rational reciprocal() const {
        if (num_ == 0)
            throw DomainError("Rational: reciprocal of zero");
        return sgn(num_) > 0 ? Rational(unchecked{}, den_, num_)
                             : Rational(unchecked{}, -den_, -num_);
    }

    std::string to_string() const {
        if (den_ == 1)
            return num_.get_str();
        return num_.get_str() + "/" + den_.get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    struct unchecked {};
    Rational(unchecked, Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_ == 0)
            throw DomainError("Rational: zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = gcd(num_, den_);
        if (g != 1) {
            mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    Integer num_;
    Integer den_;
};

} // namespace supercong
