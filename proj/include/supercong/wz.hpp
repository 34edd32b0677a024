#pragma once

/**
 * @file wz.hpp
 * @brief The built-in WZ pairs, their certificate identities, telescoping,
 *        and boundary-term valuations.
 *
 * A WZ pair (F, G) satisfies F(n,k-1) - F(n,k) = G(n+1,k) - G(n,k). The
 * symbolic check divides that relation by G(n,k) and verifies the resulting
 * rational-function identity by exact coefficient cancellation; the numeric
 * check replays the relation on an integer grid in exact arithmetic.
 */

#include "supercong/padic.hpp"
#include "supercong/polyratio.hpp"
#include "supercong/term.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace supercong {

enum class TheoremId { thm1 = 1, thm2 = 2, thm3 = 3 };

inline std::string to_string(TheoremId id) {
    switch (id) {
    case TheoremId::thm1:
        return "thm1";
    case TheoremId::thm2:
        return "thm2";
    case TheoremId::thm3:
        return "thm3";
    }
    return "?";
}

struct WzPair {
    TheoremId id;
    TermExpr F;
    TermExpr G;
    bool half_range;         // sum n = 0..(p-1)/2 instead of 0..p-1
    unsigned chain_exponent; // modulus exponent of the column-sum chain
    unsigned final_exponent; // modulus the closed-form final term satisfies
    bool has_tail;           // upper rows of the last column must vanish mod p^chain

    /// First row past the summation range; its G-column is the boundary term.
    long boundary_row(long p) const { return half_range ? (p + 1) / 2 : p; }

    std::string name() const { return to_string(id); }
};

/// First member of a WZ pair whose mate is not available; only numeric
/// evaluation is possible. claimed_partial_order is the exponent to which the
/// associated congruence is known to hold.
struct FOnlyCertificate {
    std::string id;
    TermExpr F;
    unsigned claimed_partial_order;
};

struct CertificateReport {
    TheoremId id;
    bool symbolic_identity_holds;
    BiPoly residual; // zero exactly when the identity holds
    bool numeric_grid_ok;
};

namespace builders {

inline Rational half() { return Rational(1, 2); }

inline BiPoly poly_nk(std::initializer_list<std::tuple<int, int, long>> terms) {
    BiPoly p;
    for (const auto& [dn, dk, c] : terms)
        p.add_term(dn, dk, Rational(c));
    return p;
}

inline TermExpr thm1_F() {
    return TermExpr{
        Factor::sign(LinForm::of(1, 1, Rational(0))),
        Factor::poly(poly_nk({{1, 0, 4}, {0, 0, 1}})), // 4n+1
        Factor::poch(half(), LinForm::n(), 2),
        Factor::poch(half(), LinForm::of(1, 1, Rational(0))), // (1/2)_{n+k}
        Factor::fact(LinForm::n(), 2).den(),
        Factor::fact(LinForm::of(1, -1, Rational(0))).den(), // (1)_{n-k}
        Factor::poch(half(), LinForm::k(), 2).den(),
    };
}

inline TermExpr thm1_G() {
    return TermExpr{
        Factor::sign(LinForm::of(1, 1, Rational(0))),
        Factor::poly(BiPoly::constant(Rational(2))),
        Factor::poch(half(), LinForm::n(), 2),
        Factor::poch(half(), LinForm::of(1, 1, Rational(-1))), // (1/2)_{n+k-1}
        Factor::fact(LinForm::of(1, 0, Rational(-1)), 2).den(), // (1)_{n-1}
        Factor::fact(LinForm::of(1, -1, Rational(0))).den(),
        Factor::poch(half(), LinForm::k(), 2).den(),
    };
}

inline TermExpr thm2_F() {
    return TermExpr{
        Factor::poly(poly_nk({{2, 0, 120}, {1, 1, -84}, {1, 0, 34}, {0, 1, -10}, {0, 0, 3}})),
        Factor::poch(half(), LinForm::n(), 3),
        Factor::poch(half(), LinForm::of(2, 1, Rational(0))), // (1/2)_{2n+k}
        Factor::pow(Rational(2), LinForm::of(6, 0, Rational(0))).den(),
        Factor::fact(LinForm::n(), 3).den(),
        Factor::fact(LinForm::of(1, -1, Rational(0)), 2).den(),
        Factor::poch(half(), LinForm::k(), 3).den(),
    };
}

inline TermExpr thm2_G() {
    return TermExpr{
        Factor::poch(half(), LinForm::n(), 3),
        Factor::poch(half(), LinForm::of(2, 1, Rational(-1))), // (1/2)_{2n+k-1}
        Factor::pow(Rational(2), LinForm::of(6, 0, Rational(-8))).den(),
        Factor::fact(LinForm::of(1, 0, Rational(-1)), 3).den(),
        Factor::fact(LinForm::of(1, -1, Rational(0)), 2).den(),
        Factor::poch(half(), LinForm::k(), 3).den(),
    };
}

inline TermExpr thm3_F() {
    return TermExpr{
        Factor::poly(poly_nk({{1, 0, 20}, {0, 1, -2}, {0, 0, 3}})), // 20n-2k+3
        Factor::sign(LinForm::of(1, 1, Rational(0))),
        Factor::poch(half(), LinForm::n()),
        Factor::poch(half(), LinForm::of(2, 1, Rational(0))),
        Factor::pow(Rational(2), LinForm::of(4, 0, Rational(0))).den(),
        Factor::fact(LinForm::n(), 2).den(),
        Factor::fact(LinForm::of(1, -1, Rational(0))).den(),
        Factor::poch(half(), LinForm::k(), 2).den(),
    };
}

inline TermExpr thm3_G() {
    // The power of two must be 4n-5; with 4n-6 the defining relation fails
    // at every lattice point (F(0,0) - F(0,1) = G(1,1) = 3 pins it down).
    return TermExpr{
        Factor::sign(LinForm::of(1, 1, Rational(0))),
        Factor::poch(half(), LinForm::n()),
        Factor::poch(half(), LinForm::of(2, 1, Rational(-1))),
        Factor::pow(Rational(2), LinForm::of(4, 0, Rational(-5))).den(),
        Factor::fact(LinForm::of(1, 0, Rational(-1)), 2).den(),
        Factor::fact(LinForm::of(1, -1, Rational(0))).den(),
        Factor::poch(half(), LinForm::k(), 2).den(),
    };
}

} // namespace builders

inline const WzPair& theorem_pair(TheoremId id) {
    static const WzPair pairs[3] = {
        {TheoremId::thm1, builders::thm1_F(), builders::thm1_G(),
         /*half_range=*/true, /*chain=*/3, /*final=*/4, /*tail=*/false},
        {TheoremId::thm2, builders::thm2_F(), builders::thm2_G(),
         /*half_range=*/false, /*chain=*/5, /*final=*/5, /*tail=*/true},
        {TheoremId::thm3, builders::thm3_F(), builders::thm3_G(),
         /*half_range=*/false, /*chain=*/3, /*final=*/4, /*tail=*/true},
    };
    return pairs[static_cast<int>(id) - 1];
}

/// The five first members with no published mate; numeric use only.
inline const std::vector<FOnlyCertificate>& partial_certificates() {
    using builders::half;
    using builders::poly_nk;
    static const std::vector<FOnlyCertificate> certs = [] {
        std::vector<FOnlyCertificate> v;
        v.push_back({"A02b",
                     TermExpr{
                         Factor::poly(poly_nk({{1, 0, 6}, {0, 1, -2}, {0, 0, 1}})),
                         Factor::poch(half(), LinForm::n()),
                         Factor::poch(half(), LinForm::of(1, 1, Rational(0))),
                         Factor::poch(half(), LinForm::of(1, -1, Rational(0))),
                         Factor::pow(Rational(2), LinForm::of(2, 0, Rational(0))).den(),
                         Factor::fact(LinForm::n(), 2).den(),
                         Factor::fact(LinForm::of(1, -1, Rational(0))).den(),
                         Factor::poch(half(), LinForm::k()).den(),
                     },
                     2});
        v.push_back({"A03b",
                     TermExpr{
                         Factor::poly(poly_nk({{1, 0, 6}, {0, 1, -2}, {0, 0, 1}})),
                         Factor::sign(LinForm::of(1, 1, Rational(0))),
                         Factor::poch(half(), LinForm::of(1, 1, Rational(0))),
                         Factor::poch(half(), LinForm::of(1, -1, Rational(0)), 2),
                         Factor::pow(Rational(2), LinForm::of(3, -1, Rational(0))).den(),
                         Factor::fact(LinForm::n(), 2).den(),
                         Factor::fact(LinForm::of(1, -1, Rational(0))).den(),
                     },
                     1});
        v.push_back({"A04b",
                     TermExpr{
                         Factor::poly(poly_nk({{2, 0, 84},
                                               {1, 1, -56},
                                               {0, 2, 4},
                                               {1, 0, 52},
                                               {0, 1, -12},
                                               {0, 0, 5}})),
                         Factor::sign(LinForm::k()),
                         Factor::poch(half(), LinForm::n()),
                         Factor::poch(half(), LinForm::of(1, 1, Rational(0))),
                         Factor::poch(half(), LinForm::of(1, -1, Rational(0)), 2),
                         Factor::pow(Rational(2), LinForm::of(4, 0, Rational(0))).den(),
                         Factor::fact(LinForm::n(), 2).den(),
                         Factor::fact(LinForm::of(2, -1, Rational(1))).den(), // (1)_{2n-k+1}
                     },
                     1});
        v.push_back({"B01b",
                     TermExpr{
                         Factor::poly(poly_nk(
                             {{2, 0, 20}, {1, 1, -12}, {1, 0, 8}, {0, 1, -2}, {0, 0, 1}})),
                         Factor::sign(LinForm::of(1, 1, Rational(0))),
                         Factor::poch(half(), LinForm::n(), 3),
                         Factor::poch(half(), LinForm::of(1, 1, Rational(0))),
                         Factor::poch(half(), LinForm::of(1, -1, Rational(0))),
                         Factor::pow(Rational(2), LinForm::of(2, 0, Rational(0))).den(),
                         Factor::fact(LinForm::n(), 3).den(),
                         Factor::fact(LinForm::of(1, -1, Rational(0)), 2).den(),
                         Factor::poch(half(), LinForm::k(), 2).den(),
                     },
                     4});
        v.push_back({"B02b",
                     TermExpr{
                         Factor::poly(poly_nk({{4, 0, 3280}, {3, 1, -4592}, {2, 2, 2160},
                                               {1, 3, -336},  {3, 0, 4000}, {2, 1, -3816},
                                               {1, 2, 1008},  {0, 3, -40},  {2, 0, 1592},
                                               {1, 1, -884},  {0, 2, 92},   {1, 0, 232},
                                               {0, 1, -62},   {0, 0, 13}})),
                         Factor::sign(LinForm::of(1, 1, Rational(0))),
                         Factor::poch(half(), LinForm::n(), 3),
                         Factor::poch(half(), LinForm::of(1, 1, Rational(0))),
                         Factor::poch(half(), LinForm::of(1, -1, Rational(0)), 3),
                         Factor::pow(Rational(2), LinForm::of(6, 0, Rational(0))).den(),
                         Factor::fact(LinForm::n(), 3).den(),
                         Factor::fact(LinForm::of(2, -1, Rational(1)), 2).den(),
                     },
                     2});
        return v;
    }();
    return certs;
}

/// Symbolically verify F(n,k-1) - F(n,k) = G(n+1,k) - G(n,k), working with
/// the relation divided through by G(n,k).
inline CertificateReport check_wz_identity(const WzPair& pair);

/// Exact instance check of the WZ relation at every non-pole integer point of
/// [1, grid_max]^2.
inline bool check_wz_numeric(const WzPair& pair, long grid_max) {
    if (grid_max < 2)
        throw std::invalid_argument("check_wz_numeric: grid_max must be >= 2");
    EvalCache cache;
    for (long n = 1; n <= grid_max; ++n)
        for (long k = 1; k <= grid_max; ++k) {
            try {
                Rational lhs = eval_term(pair.F, n, k - 1, cache) - eval_term(pair.F, n, k, cache);
                Rational rhs =
                    eval_term(pair.G, n + 1, k, cache) - eval_term(pair.G, n, k, cache);
                if (lhs != rhs)
                    return false;
            } catch (const DomainError&) {
                // numerator pole: point excluded from the grid
            }
        }
    return true;
}

inline CertificateReport check_wz_identity(const WzPair& pair) {
    RatFunc f_shift = term_ratio(shift(pair.F, Var::k, -1), pair.G);
    RatFunc f_over_g = term_ratio(pair.F, pair.G);
    RatFunc g_shift = term_ratio(shift(pair.G, Var::n, +1), pair.G);
    RatFunc lhs = f_shift - f_over_g;
    RatFunc rhs = g_shift - RatFunc::constant(Rational(1));
    BiPoly residual = ratfunc_residual(lhs, rhs);
    return CertificateReport{pair.id, residual.is_zero(), residual,
                             check_wz_numeric(pair, 8)};
}

/// Sum of the WZ relation over n = 0..N at fixed k: the left side must
/// telescope to G(N+1,k) - G(0,k), with G(0,k) = 0 by the pole convention.
inline bool telescope_check(const WzPair& pair, long n_upper, long k) {
    if (n_upper < 0 || k < 1)
        throw std::invalid_argument("telescope_check: need N >= 0 and k >= 1");
    EvalCache cache;
    Rational lhs(0);
    for (long n = 0; n <= n_upper; ++n)
        lhs += eval_term(pair.F, n, k - 1, cache) - eval_term(pair.F, n, k, cache);
    Rational rhs =
        eval_term(pair.G, n_upper + 1, k, cache) - eval_term(pair.G, 0, k, cache);
    return lhs == rhs;
}

/// ord_p of the boundary column G(boundary_row(p), k) for k = 1..(p-1)/2.
inline std::vector<std::pair<long, Valuation>> boundary_orders(const WzPair& pair, long p) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("boundary_orders: p must be an odd prime");
    EvalCache cache;
    long row = pair.boundary_row(p);
    std::vector<std::pair<long, Valuation>> orders;
    for (long k = 1; k <= (p - 1) / 2; ++k)
        orders.emplace_back(k, ord(eval_term(pair.G, row, k, cache), p));
    return orders;
}

inline Valuation min_boundary_order(const WzPair& pair, long p) {
    Valuation min = Valuation::infinite();
    for (const auto& [k, v] : boundary_orders(pair, p))
        if (v < min)
            min = v;
    return min;
}

} // namespace supercong
