#pragma once

/**
 * @file polyratio.hpp
 * @brief Exact bivariate polynomials and rational functions over the rationals.
 *
 * Equality of rational functions is decided by cross-multiplication, so no
 * multivariate GCD is ever needed; degrees stay tiny for every certificate
 * this library checks.
 */

#include "supercong/errors.hpp"
#include "supercong/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace supercong {

/// Sparse polynomial in n and k; no zero coefficients are stored, so the zero
/// polynomial is the empty map.
class BiPoly {
public:
    using Monomial = std::pair<int, int>; // (degree in n, degree in k)

    BiPoly() = default;

    static BiPoly constant(const Rational& c) {
        BiPoly p;
        p.set(0, 0, c);
        return p;
    }
    static BiPoly variable_n() {
        BiPoly p;
        p.set(1, 0, Rational(1));
        return p;
    }
    static BiPoly variable_k() {
        BiPoly p;
        p.set(0, 1, Rational(1));
        return p;
    }
    /// a*n + b*k + c
    static BiPoly linear(const Rational& a, const Rational& b, const Rational& c) {
        BiPoly p;
        p.set(1, 0, a);
        p.set(0, 1, b);
        p.set(0, 0, c);
        return p;
    }

    void set(int dn, int dk, const Rational& c) {
        if (c.is_zero())
            coeffs_.erase({dn, dk});
        else
            coeffs_[{dn, dk}] = c;
    }

    void add_term(int dn, int dk, const Rational& c) {
        auto key = Monomial{dn, dk};
        auto it = coeffs_.find(key);
        if (it == coeffs_.end()) {
            if (!c.is_zero())
                coeffs_[key] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            coeffs_.erase(it);
    }

    Rational coeff(int dn, int dk) const {
        auto it = coeffs_.find({dn, dk});
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    const std::map<Monomial, Rational>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const {
        return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == Monomial{0, 0});
    }

    int degree_n() const {
        int d = 0;
        for (const auto& [m, c] : coeffs_)
            d = std::max(d, m.first);
        return d;
    }
    int degree_k() const {
        int d = 0;
        for (const auto& [m, c] : coeffs_)
            d = std::max(d, m.second);
        return d;
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [m, c] : o.coeffs_)
            add_term(m.first, m.second, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [m, c] : o.coeffs_)
            add_term(m.first, m.second, -c);
        return *this;
    }
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r;
        for (const auto& [ma, ca] : a.coeffs_)
            for (const auto& [mb, cb] : b.coeffs_)
                r.add_term(ma.first + mb.first, ma.second + mb.second, ca * cb);
        return r;
    }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    friend BiPoly operator*(const BiPoly& a, const Rational& s) {
        BiPoly r;
        for (const auto& [m, c] : a.coeffs_)
            r.add_term(m.first, m.second, c * s);
        return r;
    }

    BiPoly operator-() const { return *this * Rational(-1); }

    BiPoly pow(unsigned e) const {
        BiPoly r = constant(Rational(1));
        for (unsigned i = 0; i < e; ++i)
            r *= *this;
        return r;
    }

    Rational eval(const Rational& n, const Rational& k) const {
        Rational r(0);
        for (const auto& [m, c] : coeffs_)
            r += c * n.pow(m.first) * k.pow(m.second);
        return r;
    }

    /// Substitute var + delta for var (var: true = n, false = k).
    BiPoly shifted_n(long delta) const { return shifted(true, delta); }
    BiPoly shifted_k(long delta) const { return shifted(false, delta); }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    /// Human-readable form in descending (n, k) degree, e.g. "4*n+1".
    std::string to_string() const {
        if (coeffs_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        // std::map orders ascending; walk in reverse for descending degrees.
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational abs = c.sign() < 0 ? -c : c;
            if (first) {
                if (c.sign() < 0)
                    os << "-";
                first = false;
            } else {
                os << (c.sign() < 0 ? "-" : "+");
            }
            bool has_var = m.first > 0 || m.second > 0;
            if (!has_var || abs != Rational(1)) {
                os << abs.to_string();
                if (has_var)
                    os << "*";
            }
            if (m.first > 0) {
                os << "n";
                if (m.first > 1)
                    os << "^" << m.first;
            }
            if (m.second > 0) {
                if (m.first > 0)
                    os << "*";
                os << "k";
                if (m.second > 1)
                    os << "^" << m.second;
            }
        }
        return os.str();
    }

private:
    BiPoly shifted(bool in_n, long delta) const {
        // (v + delta)^d expanded binomially; degrees here never exceed ~8.
        BiPoly r;
        for (const auto& [m, c] : coeffs_) {
            int d = in_n ? m.first : m.second;
            int other = in_n ? m.second : m.first;
            Integer binom(1);
            Integer deltapow(1);
            for (int j = d; j >= 0; --j) {
                // coefficient c * C(d, d-j) * delta^(d-j) on v^j
                Integer chooses;
                mpz_bin_uiui(chooses.get_mpz_t(), d, static_cast<unsigned long>(d - j));
                Integer dp = pow_int(Integer(delta), static_cast<unsigned long>(d - j));
                Rational coeff = c * Rational(chooses * dp);
                if (in_n)
                    r.add_term(j, other, coeff);
                else
                    r.add_term(other, j, coeff);
            }
        }
        return r;
    }

    std::map<Monomial, Rational> coeffs_;
};

/// Quotient of two BiPolys. Not kept in lowest terms; every comparison is
/// cross-multiplicative.
class RatFunc {
public:
    RatFunc() : num_(BiPoly::constant(Rational(0))), den_(BiPoly::constant(Rational(1))) {}
    RatFunc(BiPoly num, BiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero())
            throw DomainError("RatFunc: zero denominator");
    }

    static RatFunc constant(const Rational& c) {
        return RatFunc(BiPoly::constant(c), BiPoly::constant(Rational(1)));
    }
    static RatFunc from_poly(const BiPoly& p) {
        return RatFunc(p, BiPoly::constant(Rational(1)));
    }

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.num_.is_zero())
            throw DomainError("RatFunc: division by the zero function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFunc operator-() const { return RatFunc(-num_, den_); }

    Rational eval_at(const Rational& n, const Rational& k) const {
        Rational d = den_.eval(n, k);
        if (d.is_zero())
            throw PoleError("RatFunc: denominator vanishes at (" + n.to_string() + ", " +
                            k.to_string() + ")");
        return num_.eval(n, k) / d;
    }

    std::string to_string() const {
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    BiPoly num_;
    BiPoly den_;
};

/// Exact equality as rational functions: num_a*den_b - num_b*den_a == 0.
inline bool ratfunc_equal(const RatFunc& f, const RatFunc& g) {
    return (f.num() * g.den() - g.num() * f.den()).is_zero();
}

/// The cross-multiplied difference; zero exactly when the functions agree.
inline BiPoly ratfunc_residual(const RatFunc& f, const RatFunc& g) {
    return f.num() * g.den() - g.num() * f.den();
}

} // namespace supercong
