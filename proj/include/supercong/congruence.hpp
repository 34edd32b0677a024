#pragma once

/**
 * @file congruence.hpp
 * @brief One congruence statement: an exact left-hand sum, a right side of
 *        the shape c * (D/p) * p^m, a modulus exponent, and status metadata.
 */

#include "supercong/padic.hpp"
#include "supercong/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace supercong {

/// Right side c * (D/p) * p^m; the Legendre factor is optional.
struct RhsExpr {
    Integer coefficient{1};
    std::optional<Integer> legendre_disc;
    unsigned p_power = 1;

    Rational value_at(long p) const {
        Integer v = coefficient * pow_int(Integer(p), p_power);
        if (legendre_disc)
            v *= legendre(*legendre_disc, p);
        return Rational(v);
    }

    friend bool operator==(const RhsExpr& a, const RhsExpr& b) {
        return a.coefficient == b.coefficient && a.legendre_disc == b.legendre_disc &&
               a.p_power == b.p_power;
    }
    friend bool operator!=(const RhsExpr& a, const RhsExpr& b) { return !(a == b); }
};

enum class CongruenceStatus { proved, conjectural, partial };

struct CongruenceSpec {
    std::string id;
    SumExpr lhs;
    RhsExpr rhs;
    unsigned modulus_exponent = 1;
    long p_min = 2; // statement valid for p > p_min
    CongruenceStatus status = CongruenceStatus::conjectural;
    unsigned partial_order = 0; // exponent known when status == partial
    std::string note;
    std::vector<std::string> equivalents; // database annotation; not in the DSL

    bool admissible(long p) const { return p > p_min && is_prime(p); }

    /// Structural equality over the DSL-carried fields.
    friend bool operator==(const CongruenceSpec& a, const CongruenceSpec& b) {
        return a.id == b.id && a.lhs == b.lhs && a.rhs == b.rhs &&
               a.modulus_exponent == b.modulus_exponent && a.p_min == b.p_min &&
               a.status == b.status && a.partial_order == b.partial_order && a.note == b.note;
    }
    friend bool operator!=(const CongruenceSpec& a, const CongruenceSpec& b) {
        return !(a == b);
    }
};

/// Outcome of checking one congruence at one prime. The observed order is the
/// exact valuation of (LHS - RHS); infinite means exact equality.
struct VerificationResult {
    std::string id;
    long p = 0;
    bool skipped = false; // p not admissible for the statement
    bool holds = false;
    Valuation observed_order = Valuation::infinite();
    unsigned modulus_exponent = 0;
    Rational lhs;
    Rational rhs;
};

} // namespace supercong
