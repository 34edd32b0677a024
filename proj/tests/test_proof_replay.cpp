#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supercong/replay.hpp"

using namespace supercong;

TEST_CASE("replay of the first proof at p=5 pins the golden final term") {
    ReplayReport rep = replay_theorem(1, 5);
    CHECK(rep.overall);
    CHECK(rep.boundary_ok);
    CHECK(rep.chain_ok);
    CHECK(rep.closed_form_ok);
    CHECK_FALSE(rep.direct_path);
    CHECK(rep.final_term_value == Rational(945, 64));
    // 945/64 - 5 = 625/64, of order exactly 4
    CHECK(rep.final_term_order == Valuation::finite(4));
}

TEST_CASE("replay of the second proof") {
    ReplayReport rep5 = replay_theorem(2, 5);
    CHECK(rep5.overall);
    CHECK(rep5.tail_ok);
    CHECK(rep5.closed_form_ok);

    // p = 3 goes through direct verification of the congruence
    ReplayReport rep3 = replay_theorem(2, 3);
    CHECK(rep3.direct_path);
    CHECK(rep3.overall);
    CHECK(rep3.final_term_order.at_least(5));
}

TEST_CASE("replay of the third proof") {
    ReplayReport rep = replay_theorem(3, 7);
    CHECK(rep.overall);
    CHECK(rep.boundary_ok);
    CHECK(rep.chain_ok);
    CHECK(rep.tail_ok);
    CHECK(rep.closed_form_ok);
    CHECK(rep.final_term_order.at_least(4));
    CHECK(replay_theorem(3, 3).direct_path);
    CHECK(replay_theorem(3, 3).overall);
}

TEST_CASE("replay rejects bad arguments") {
    CHECK_THROWS_AS(replay_theorem(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(replay_theorem(1, 4), std::invalid_argument);
    CHECK_THROWS_AS(replay_theorem(1, 2), std::invalid_argument);
}

TEST_CASE("replay over a range of primes") {
    for (long p : primes_in_range(3, 40))
        for (int t : {1, 2, 3})
            CHECK(replay_theorem(t, p).overall);
    // spot checks in the 100..200 band (the acceptance gate sweeps below 100)
    for (long p : {101L, 199L})
        for (int t : {1, 2, 3})
            CHECK(replay_theorem(t, p).overall);
}

TEST_CASE("chain property over small primes") {
    // Reproduced here directly: all column sums pairwise congruent.
    for (long p : {5L, 7L, 11L, 13L}) {
        const WzPair& pair = theorem_pair(TheoremId::thm1);
        EvalCache cache;
        long mid = (p - 1) / 2;
        std::vector<Rational> cols;
        for (long k = 0; k <= mid; ++k) {
            Rational s(0);
            for (long n = 0; n <= mid; ++n)
                s += eval_term(pair.F, n, k, cache);
            cols.push_back(s);
        }
        for (size_t i = 0; i < cols.size(); ++i)
            for (size_t j = i + 1; j < cols.size(); ++j)
                CHECK(ord(cols[i] - cols[j], p).at_least(3));
    }
}

TEST_CASE("wolstenholme and morley") {
    CheckResult w5 = classical_check(ClassicKind::wolstenholme, 5);
    CHECK(w5.holds);
    CHECK(w5.observed_order == Valuation::finite(3)); // 126 - 1 = 125
    CheckResult m3 = classical_check(ClassicKind::morley, 3);
    CHECK(m3.holds);
    CHECK(m3.observed_order == Valuation::finite(2)); // 2 - (-16) = 18
    CheckResult w3 = classical_check(ClassicKind::wolstenholme, 3);
    CHECK(w3.holds);
    CHECK(w3.observed_order == Valuation::finite(2));
    for (long p : primes_in_range(5, 200)) {
        CHECK(classical_check(ClassicKind::wolstenholme, p).holds);
        CHECK(classical_check(ClassicKind::morley, p).holds);
    }
}

TEST_CASE("factorial quotient lemma at p=5: both sides are 455 mod 625") {
    CheckResult r = classical_check(ClassicKind::lemma06, 5);
    CHECK(r.holds);
    PadicContext ctx(5, 4);
    Rational lhs(factorial(13), factorial(6) * pow_int(factorial(2), 3));
    CHECK(lhs == Rational(1081080));
    CHECK(reduce(lhs, ctx).value() == 455);
    CHECK(reduce(Rational(Integer(Integer(5) * pow_int(Integer(2), 24))), ctx).value() == 455);
}

TEST_CASE("lehmer's harmonic congruence at p=5") {
    CheckResult r = classical_check(ClassicKind::lehmer45, 5);
    CHECK(r.holds);
    // H_2 = 3/2 = 14 and -2*3 + 5*9 = 39 = 14 (mod 25)
    PadicContext ctx(5, 2);
    CHECK(reduce(harmonic(2, 1), ctx).value() == 14);
    CHECK(reduce(Rational(39), ctx).value() == 14);
}

TEST_CASE("classical checks across primes") {
    for (long p : primes_in_range(5, 120)) {
        CHECK(classical_check(ClassicKind::lemma06, p).holds);
        CHECK(classical_check(ClassicKind::expansion06b, p).holds);
        CHECK(classical_check(ClassicKind::lehmer45, p).holds);
        CHECK(classical_check(ClassicKind::power2_12n, p).holds);
    }
    for (long p : primes_in_range(5, 499))
        CHECK(harmonic_square_divisible(p));
}

TEST_CASE("lemma composition: the two expansion steps imply the lemma") {
    for (long p : primes_in_range(5, 100)) {
        CheckResult lemma = classical_check(ClassicKind::lemma06, p);
        CheckResult expand = classical_check(ClassicKind::expansion06b, p);
        CheckResult power = classical_check(ClassicKind::power2_12n, p);
        CHECK(lemma.holds == (expand.holds && power.holds));
    }
}

TEST_CASE("classical checks reject out-of-range primes") {
    CHECK_THROWS_AS(classical_check(ClassicKind::lemma06, 3), std::invalid_argument);
    CHECK_THROWS_AS(classical_check(ClassicKind::wolstenholme, 2), std::invalid_argument);
    CHECK_THROWS_AS(classical_check(ClassicKind::lehmer45, 9), std::invalid_argument);
}
