#pragma once

/**
 * @file term.hpp
 * @brief Symbolic hypergeometric summands in the variables n (outer) and
 *        k (inner): exact evaluation, exact partial sums, and symbolic
 *        shift quotients as bivariate rational functions.
 *
 * Evaluation follows the reciprocal-gamma convention: a factorial or rising
 * factorial of a negative integer in a DENOMINATOR makes the whole term
 * exactly zero, while the same situation in a numerator is a domain error.
 * Telescoping sums rely on that convention to kill their lower boundary rows.
 */

#include "supercong/combinatorics.hpp"
#include "supercong/errors.hpp"
#include "supercong/polyratio.hpp"
#include "supercong/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace supercong {

enum class Var { n, k };

/// Integer-coefficient linear form c_n*n + c_k*k + c. The constant is kept
/// rational because half-integer offsets appear in shifted forms.
struct LinForm {
    long n_coef = 0;
    long k_coef = 0;
    Rational constant{0};

    static LinForm n(long c = 1) { return {c, 0, Rational(0)}; }
    static LinForm k(long c = 1) { return {0, c, Rational(0)}; }
    static LinForm of(long nc, long kc, Rational c) { return {nc, kc, std::move(c)}; }
    static LinForm fixed(Rational c) { return {0, 0, std::move(c)}; }

    long coefficient(Var v) const { return v == Var::n ? n_coef : k_coef; }
    bool mentions_k() const { return k_coef != 0; }

    Rational eval(long n, long k) const {
        return Rational(n_coef) * Rational(n) + Rational(k_coef) * Rational(k) + constant;
    }

    LinForm shifted(Var v, long delta) const {
        LinForm r = *this;
        r.constant += Rational(coefficient(v) * delta);
        return r;
    }

    friend LinForm operator+(LinForm a, const Rational& c) {
        a.constant += c;
        return a;
    }
    friend LinForm operator-(const LinForm& a, const LinForm& b) {
        return {a.n_coef - b.n_coef, a.k_coef - b.k_coef, a.constant - b.constant};
    }

    friend bool operator==(const LinForm& a, const LinForm& b) {
        return a.n_coef == b.n_coef && a.k_coef == b.k_coef && a.constant == b.constant;
    }
    friend bool operator!=(const LinForm& a, const LinForm& b) { return !(a == b); }
};

struct TermExpr;

/// One multiplicative factor of a summand.
struct Factor {
    enum class Kind { poch, fact, binom, pow, sign, poly, inner_sum };
    enum class InnerBound { full_n, floor_n_over_d };

    Kind kind;
    Rational param;      // poch offset a; pow base
    LinForm arg;         // poch/fact/pow/sign argument; binom top
    LinForm arg2;        // binom bottom
    BiPoly poly_payload; // poly kind
    int exponent = 1;
    bool denominator = false;
    InnerBound inner_bound = InnerBound::full_n; // inner_sum kind
    int inner_divisor = 1;
    std::shared_ptr<const TermExpr> body; // inner_sum kind

    static Factor poch(Rational a, LinForm l, int exp = 1) {
        Factor f;
        f.kind = Kind::poch;
        f.param = std::move(a);
        f.arg = std::move(l);
        f.exponent = exp;
        return f;
    }
    static Factor fact(LinForm l, int exp = 1) {
        Factor f;
        f.kind = Kind::fact;
        f.arg = std::move(l);
        f.exponent = exp;
        return f;
    }
    static Factor binom(LinForm top, LinForm bottom, int exp = 1) {
        Factor f;
        f.kind = Kind::binom;
        f.arg = std::move(top);
        f.arg2 = std::move(bottom);
        f.exponent = exp;
        return f;
    }
    static Factor pow(Rational base, LinForm e) {
        if (base.is_zero())
            throw DomainError("Factor::pow: zero base");
        Factor f;
        f.kind = Kind::pow;
        f.param = std::move(base);
        f.arg = std::move(e);
        return f;
    }
    static Factor sign(LinForm e) {
        Factor f;
        f.kind = Kind::sign;
        f.arg = std::move(e);
        return f;
    }
    static Factor poly(BiPoly p) {
        Factor f;
        f.kind = Kind::poly;
        f.poly_payload = std::move(p);
        return f;
    }
    static Factor inner_sum(InnerBound bound, int divisor, TermExpr body);

    /// Copy of this factor moved to the denominator.
    Factor den() const {
        Factor f = *this;
        f.denominator = true;
        return f;
    }

    friend bool operator==(const Factor& a, const Factor& b);
};

struct TermExpr {
    std::vector<Factor> factors;

    TermExpr() = default;
    TermExpr(std::initializer_list<Factor> fs) : factors(fs) {}
    explicit TermExpr(std::vector<Factor> fs) : factors(std::move(fs)) {}

    bool has_inner_sum() const {
        for (const auto& f : factors)
            if (f.kind == Factor::Kind::inner_sum)
                return true;
        return false;
    }

    bool mentions_k_outside_inner() const {
        for (const auto& f : factors) {
            switch (f.kind) {
            case Factor::Kind::inner_sum:
                break;
            case Factor::Kind::poly:
                if (f.poly_payload.degree_k() > 0)
                    return true;
                break;
            case Factor::Kind::binom:
                if (f.arg.mentions_k() || f.arg2.mentions_k())
                    return true;
                break;
            default:
                if (f.arg.mentions_k())
                    return true;
            }
        }
        return false;
    }

    friend bool operator==(const TermExpr& a, const TermExpr& b) {
        return a.factors == b.factors;
    }
    friend bool operator!=(const TermExpr& a, const TermExpr& b) { return !(a == b); }
};

inline Factor Factor::inner_sum(InnerBound bound, int divisor, TermExpr body) {
    Factor f;
    f.kind = Kind::inner_sum;
    f.inner_bound = bound;
    f.inner_divisor = divisor;
    f.body = std::make_shared<const TermExpr>(std::move(body));
    return f;
}

inline bool operator==(const Factor& a, const Factor& b) {
    if (a.kind != b.kind || a.exponent != b.exponent || a.denominator != b.denominator)
        return false;
    switch (a.kind) {
    case Factor::Kind::poch:
        return a.param == b.param && a.arg == b.arg;
    case Factor::Kind::fact:
        return a.arg == b.arg;
    case Factor::Kind::binom:
        return a.arg == b.arg && a.arg2 == b.arg2;
    case Factor::Kind::pow:
        return a.param == b.param && a.arg == b.arg;
    case Factor::Kind::sign:
        return a.arg == b.arg;
    case Factor::Kind::poly:
        return a.poly_payload == b.poly_payload;
    case Factor::Kind::inner_sum:
        return a.inner_bound == b.inner_bound && a.inner_divisor == b.inner_divisor &&
               *a.body == *b.body;
    }
    return false;
}

/// Outer sum over n = 0..bound, where the bound is resolved against a prime
/// (or taken verbatim for fixed bounds).
struct SumExpr {
    enum class Bound { p_minus_one, half_p_minus_one, fixed };

    TermExpr body;
    Bound bound = Bound::p_minus_one;
    long fixed_upper = 0;

    long resolve_upper(long p_or_n) const {
        switch (bound) {
        case Bound::p_minus_one:
            return p_or_n - 1;
        case Bound::half_p_minus_one:
            return (p_or_n - 1) / 2;
        case Bound::fixed:
            return fixed_upper;
        }
        return 0;
    }

    friend bool operator==(const SumExpr& a, const SumExpr& b) {
        return a.body == b.body && a.bound == b.bound &&
               (a.bound != Bound::fixed || a.fixed_upper == b.fixed_upper);
    }
    friend bool operator!=(const SumExpr& a, const SumExpr& b) { return !(a == b); }
};

/// Memo for rising-factorial prefixes and factorials; one per evaluation
/// session, never shared across threads.
class EvalCache {
public:
    const Rational& poch(const Rational& a, unsigned long m) {
        auto& vec = poch_[a];
        if (vec.empty())
            vec.push_back(Rational(1));
        while (vec.size() <= m) {
            Rational next = vec.back() * (a + Rational(Integer(vec.size() - 1)));
            vec.push_back(std::move(next));
        }
        return vec[m];
    }

    const Integer& factorial(unsigned long m) {
        while (fact_.size() <= m)
            fact_.push_back(fact_.back() * Integer(fact_.size()));
        return fact_[m];
    }

private:
    std::map<Rational, std::vector<Rational>> poch_;
    std::vector<Integer> fact_{Integer(1)};
};

namespace detail {

/// Value of a single factor base (before its exponent): either finite or a
/// gamma pole.
struct FactorValue {
    bool pole = false;
    Rational value{0};
};

inline Rational integral_arg(const LinForm& l, long n, long k, const char* what) {
    Rational v = l.eval(n, k);
    if (!v.is_integer())
        throw DomainError(std::string(what) + ": non-integer argument");
    return v;
}

inline long small_integral_arg(const LinForm& l, long n, long k, const char* what) {
    return integral_arg(l, n, k, what).to_long();
}

/// Rising factorial extended to negative offsets: (a)_{-m} = 1/((a-1)...(a-m)).
/// A zero factor there is a gamma pole.
inline FactorValue poch_value(const Rational& a, long m, EvalCache& cache) {
    FactorValue r;
    if (m >= 0) {
        r.value = cache.poch(a, static_cast<unsigned long>(m));
        return r;
    }
    Rational prod(1);
    for (long j = 1; j <= -m; ++j) {
        Rational f = a - Rational(j);
        if (f.is_zero()) {
            r.pole = true;
            return r;
        }
        prod *= f;
    }
    r.value = prod.reciprocal();
    return r;
}

inline FactorValue fact_value(long m, EvalCache& cache) {
    FactorValue r;
    if (m < 0) {
        r.pole = true;
        return r;
    }
    r.value = Rational(cache.factorial(static_cast<unsigned long>(m)));
    return r;
}

} // namespace detail

Rational eval_term(const TermExpr& t, long n, std::optional<long> k, EvalCache& cache);

namespace detail {

inline FactorValue factor_value(const Factor& f, long n, long k, EvalCache& cache) {
    switch (f.kind) {
    case Factor::Kind::poch: {
        Rational m = integral_arg(f.arg, n, k, "poch");
        return poch_value(f.param, m.to_long(), cache);
    }
    case Factor::Kind::fact:
        return fact_value(small_integral_arg(f.arg, n, k, "fact"), cache);
    case Factor::Kind::binom: {
        long top = small_integral_arg(f.arg, n, k, "binom");
        long bottom = small_integral_arg(f.arg2, n, k, "binom");
        if (top < 0)
            throw DomainError("binom: negative upper argument");
        FactorValue r;
        r.value = Rational(binomial(static_cast<unsigned long>(top), bottom));
        return r;
    }
    case Factor::Kind::pow: {
        long e = small_integral_arg(f.arg, n, k, "pow");
        FactorValue r;
        r.value = f.param.pow(e);
        return r;
    }
    case Factor::Kind::sign: {
        Rational e = integral_arg(f.arg, n, k, "sign");
        FactorValue r;
        r.value = mpz_odd_p(e.numerator().get_mpz_t()) ? Rational(-1) : Rational(1);
        return r;
    }
    case Factor::Kind::poly: {
        FactorValue r;
        r.value = f.poly_payload.eval(Rational(n), Rational(k));
        return r;
    }
    case Factor::Kind::inner_sum: {
        long upper = f.inner_bound == Factor::InnerBound::full_n ? n : n / f.inner_divisor;
        Rational sum(0);
        for (long kk = 0; kk <= upper; ++kk)
            sum += eval_term(*f.body, n, kk, cache);
        FactorValue r;
        r.value = sum;
        return r;
    }
    }
    throw DomainError("factor_value: unreachable");
}

} // namespace detail

/// Exact value of a summand at an integer lattice point. k may be omitted
/// only when the term mentions k solely inside its inner sum.
inline Rational eval_term(const TermExpr& t, long n, std::optional<long> k, EvalCache& cache) {
    if (!k && t.mentions_k_outside_inner())
        throw std::invalid_argument("eval_term: term mentions k but no k was supplied");
    long kv = k.value_or(0);

    bool denominator_pole = false;
    bool numerator_zero = false;
    Rational num(1), den(1);
    for (const auto& f : t.factors) {
        detail::FactorValue v = detail::factor_value(f, n, kv, cache);
        if (v.pole) {
            if (!f.denominator)
                throw DomainError("eval_term: gamma pole in a numerator factor");
            denominator_pole = true;
            continue;
        }
        if (v.value.is_zero()) {
            if (f.denominator)
                throw DomainError("eval_term: denominator factor is exactly zero");
            numerator_zero = true;
            continue;
        }
        Rational contrib = f.exponent == 1 ? v.value : v.value.pow(f.exponent);
        (f.denominator ? den : num) *= contrib;
    }
    if (denominator_pole || numerator_zero)
        return Rational(0);
    return num / den;
}

inline Rational eval_term(const TermExpr& t, long n, std::optional<long> k = std::nullopt) {
    EvalCache cache;
    return eval_term(t, n, k, cache);
}

/// Exact partial sum over the resolved outer range, inner sums expanded.
inline Rational partial_sum(const SumExpr& s, long p_or_n, EvalCache& cache) {
    long upper = s.resolve_upper(p_or_n);
    Rational total(0);
    for (long n = 0; n <= upper; ++n)
        total += eval_term(s.body, n, std::nullopt, cache);
    return total;
}

inline Rational partial_sum(const SumExpr& s, long p_or_n) {
    EvalCache cache;
    return partial_sum(s, p_or_n, cache);
}

/// Substitute var + delta for var throughout (certificate terms only).
inline TermExpr shift(const TermExpr& t, Var v, long delta) {
    TermExpr r;
    r.factors.reserve(t.factors.size());
    for (const auto& f : t.factors) {
        if (f.kind == Factor::Kind::inner_sum)
            throw UnsupportedTermError("shift: inner sums are not shiftable");
        Factor g = f;
        if (f.kind == Factor::Kind::poly)
            g.poly_payload =
                v == Var::n ? f.poly_payload.shifted_n(delta) : f.poly_payload.shifted_k(delta);
        else {
            g.arg = f.arg.shifted(v, delta);
            if (f.kind == Factor::Kind::binom)
                g.arg2 = f.arg2.shifted(v, delta);
        }
        r.factors.push_back(std::move(g));
    }
    return r;
}

// --------------------------------------------------------------------------
// Symbolic term ratios.
//
// Every gamma-type factor is rewritten as a product of formal Gamma(x) atoms
// (poch(a,L) = Gamma(a+L)/Gamma(a), fact(L) = Gamma(1+L), binom via three
// factorials). In a quotient of two structurally-compatible terms the atoms
// of each "family" - equal n,k coefficients and constants differing by
// integers - cancel up to finitely many linear polynomial factors, which is
// what makes the ratio a bivariate rational function.
// --------------------------------------------------------------------------

namespace detail {

struct AtomClassKey {
    long n_coef;
    long k_coef;
    Rational frac; // constant mod 1, in [0, 1)

    friend bool operator<(const AtomClassKey& a, const AtomClassKey& b) {
        if (a.n_coef != b.n_coef)
            return a.n_coef < b.n_coef;
        if (a.k_coef != b.k_coef)
            return a.k_coef < b.k_coef;
        return a.frac < b.frac;
    }
};

inline Rational fractional_part(const Rational& c) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), c.numerator().get_mpz_t(), c.denominator().get_mpz_t());
    return c - Rational(q);
}

struct RatioBuilder {
    std::map<AtomClassKey, std::vector<std::pair<Rational, long>>> gamma_atoms;
    std::map<Rational, LinForm> pow_exponents;
    LinForm sign_exponent;
    BiPoly num = BiPoly::constant(Rational(1));
    BiPoly den = BiPoly::constant(Rational(1));
    Rational scalar{1};

    void add_gamma(const LinForm& argument, long exp) {
        if (exp == 0)
            return;
        AtomClassKey key{argument.n_coef, argument.k_coef, fractional_part(argument.constant)};
        gamma_atoms[key].emplace_back(argument.constant, exp);
    }

    void add_pow(const Rational& base, const LinForm& l, long exp) {
        if (base == Rational(1))
            return;
        auto& acc = pow_exponents.emplace(base, LinForm{}).first->second;
        acc.n_coef += exp * l.n_coef;
        acc.k_coef += exp * l.k_coef;
        acc.constant += Rational(exp) * l.constant;
    }

    void add_sign(const LinForm& l, long exp) {
        sign_exponent.n_coef += exp * l.n_coef;
        sign_exponent.k_coef += exp * l.k_coef;
        sign_exponent.constant += Rational(exp) * l.constant;
    }

    void add_poly(const BiPoly& p, long exp) {
        BiPoly pw = p.pow(static_cast<unsigned>(exp < 0 ? -exp : exp));
        if (exp > 0)
            num *= pw;
        else
            den *= pw;
    }

    void collect(const TermExpr& t, long side) {
        for (const auto& f : t.factors) {
            long net = side * f.exponent * (f.denominator ? -1 : 1);
            switch (f.kind) {
            case Factor::Kind::poch:
                add_gamma(f.arg + f.param, net);
                add_gamma(LinForm::fixed(f.param), -net);
                break;
            case Factor::Kind::fact:
                add_gamma(f.arg + Rational(1), net);
                break;
            case Factor::Kind::binom:
                add_gamma(f.arg + Rational(1), net);
                add_gamma(f.arg2 + Rational(1), -net);
                add_gamma((f.arg - f.arg2) + Rational(1), -net);
                break;
            case Factor::Kind::pow:
                add_pow(f.param, f.arg, net);
                break;
            case Factor::Kind::sign:
                add_sign(f.arg, net);
                break;
            case Factor::Kind::poly:
                add_poly(f.poly_payload, net);
                break;
            case Factor::Kind::inner_sum:
                throw UnsupportedTermError("term ratio: inner sums are unsupported");
            }
        }
    }

    RatFunc finish() {
        for (auto& [key, atoms] : gamma_atoms) {
            bool constant_class = key.n_coef == 0 && key.k_coef == 0;
            bool integer_constants = constant_class && key.frac.is_zero();
            if (integer_constants) {
                // Gamma at explicit integers: Gamma(m) = (m-1)!.
                for (const auto& [c, exp] : atoms) {
                    if (c.sign() <= 0)
                        throw UnsupportedTermError(
                            "term ratio: gamma pole at nonpositive integer");
                    Rational g(factorial(static_cast<unsigned long>(c.to_long() - 1)));
                    scalar *= g.pow(exp);
                }
                continue;
            }
            long net = 0;
            for (const auto& [c, exp] : atoms)
                net += exp;
            if (net != 0)
                throw UnsupportedTermError(
                    "term ratio: gamma family does not cancel to a rational function");
            Rational base = atoms.front().first;
            for (const auto& [c, exp] : atoms)
                if (c < base)
                    base = c;
            for (const auto& [c, exp] : atoms) {
                Rational offset = c - base;
                if (!offset.is_integer())
                    throw UnsupportedTermError("term ratio: non-integer gamma offset");
                long m = offset.to_long();
                if (constant_class) {
                    for (long j = 0; j < m; ++j)
                        scalar *= (base + Rational(j)).pow(exp);
                } else {
                    long mag = exp < 0 ? -exp : exp;
                    for (long j = 0; j < m; ++j) {
                        BiPoly lin = BiPoly::linear(Rational(key.n_coef), Rational(key.k_coef),
                                                    base + Rational(j));
                        for (long e = 0; e < mag; ++e)
                            (exp > 0 ? num : den) *= lin;
                    }
                }
            }
        }
        for (const auto& [b, l] : pow_exponents) {
            if (l.n_coef != 0 || l.k_coef != 0 || !l.constant.is_integer())
                throw UnsupportedTermError("term ratio: non-constant power exponent");
            scalar *= b.pow(l.constant.to_long());
        }
        if (sign_exponent.n_coef % 2 != 0 || sign_exponent.k_coef % 2 != 0 ||
            !sign_exponent.constant.is_integer())
            throw UnsupportedTermError("term ratio: sign factor with variable parity");
        if (mpz_odd_p(sign_exponent.constant.numerator().get_mpz_t()))
            scalar = -scalar;
        return RatFunc(num * scalar, den);
    }
};

} // namespace detail

/// t_num / t_den as an exact bivariate rational function; defined whenever the
/// two terms are structurally compatible (same gamma families up to integer
/// shifts), which every certificate pair is.
inline RatFunc term_ratio(const TermExpr& t_num, const TermExpr& t_den) {
    detail::RatioBuilder b;
    b.collect(t_num, +1);
    b.collect(t_den, -1);
    return b.finish();
}

/// The quotient t(var+delta)/t(var) as a rational function of (n, k).
inline RatFunc shift_quotient(const TermExpr& t, Var v, long delta) {
    if (t.has_inner_sum())
        throw UnsupportedTermError("shift_quotient: inner sums are unsupported");
    return term_ratio(shift(t, v, delta), t);
}

} // namespace supercong
