#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supercong/database.hpp"
#include "supercong/wz.hpp"

#include <fstream>
#include <set>
#include <sstream>

using namespace supercong;

TEST_CASE("builtin database shape") {
    const auto& specs = builtin_database();
    REQUIRE(specs.size() == 24);
    std::set<std::string> ids;
    for (const auto& s : specs)
        ids.insert(s.id);
    for (const char* id :
         {"A01b", "A02b", "A03b", "A04b", "A01",  "x01b", "x01",  "B03b",
          "B03",  "A05b", "A06b", "A07b", "A08b", "B01b", "B02b", "B04b",
          "B05b", "B06b", "B07b", "B08b", "C01b", "C02b", "C03b", "C04b"})
        CHECK(ids.count(id) == 1);

    const Database& db = Database::builtin();
    std::set<std::string> proved{"A01b", "A01", "B03b", "B03", "x01b", "x01"};
    std::map<std::string, unsigned> partial{
        {"A02b", 2}, {"A03b", 1}, {"A04b", 1}, {"B01b", 4}, {"B02b", 2}};
    for (const auto& s : specs) {
        if (proved.count(s.id))
            CHECK(s.status == CongruenceStatus::proved);
        else if (partial.count(s.id)) {
            CHECK(s.status == CongruenceStatus::partial);
            CHECK(s.partial_order == partial[s.id]);
        } else
            CHECK(s.status == CongruenceStatus::conjectural);
    }

    const CongruenceSpec& b08 = db.at("B08b");
    CHECK(b08.modulus_exponent == 7);
    CHECK(b08.rhs.legendre_disc == Integer(-1));
    CHECK(b08.rhs.p_power == 3);
    CHECK(b08.p_min == 2);

    const CongruenceSpec& c01 = db.at("C01b");
    CHECK(c01.modulus_exponent == 2);
    CHECK(c01.rhs.legendre_disc == Integer(-15));
    CHECK(c01.p_min == 3);

    CHECK(db.at("A01b").equivalents == std::vector<std::string>{"A01"});
    CHECK(db.at("B03").equivalents == std::vector<std::string>{"B03b"});
    CHECK_THROWS_AS(db.at("Z99"), std::invalid_argument);
}

TEST_CASE("parse: canonical block") {
    const char* text = R"(congruence A01b { status = conjectural  for = p > 2
  lhs = sum n in 0..p-1 of poch(1/2,n)^3 / fact(n)^3 * (4*n+1) * sign(n)
  rhs = L(-1) * p    mod = p^3 })";
    CongruenceSpec s = parse_spec(text);
    CHECK(s.id == "A01b");
    CHECK(s.modulus_exponent == 3);
    CHECK(s.rhs.legendre_disc == Integer(-1));
    CHECK(s.rhs.coefficient == 1);
    CHECK(s.rhs.p_power == 1);
    CHECK(s.p_min == 2);
    CHECK(s.status == CongruenceStatus::conjectural);
    REQUIRE(s.lhs.body.factors.size() == 4);
    CHECK(s.lhs.body.factors[0].kind == Factor::Kind::poch);
    CHECK(s.lhs.body.factors[0].exponent == 3);
    CHECK(s.lhs.body.factors[1].denominator);
    CHECK(s.lhs.bound == SumExpr::Bound::p_minus_one);
    // same summand as the builtin entry
    CHECK(s.lhs.body == Database::builtin().at("A01b").lhs.body);
}

TEST_CASE("parse: errors carry position and cause") {
    CHECK_THROWS_WITH_AS(parse_spec("congruence X { status = proved for = p > 2 "
                                    "lhs = sum n in 0..p-1 of poc(1/2,n) "
                                    "rhs = p mod = p^3 }"),
                         doctest::Contains("unknown function"), ParseError);
    CHECK_THROWS_WITH_AS(parse_spec("congruence X { status = proved for = p > 2 "
                                    "lhs = sum n in 0..p-2 of fact(n) "
                                    "rhs = p mod = p^3 }"),
                         doctest::Contains("malformed bound"), ParseError);
    CHECK_THROWS_AS(parse_spec("congruence X { status = proved }"), ParseError);
    CHECK_THROWS_AS(parse_spec("congruence X { status = maybe for = p > 2 "
                               "lhs = sum n in 0..p-1 of fact(n) rhs = p mod = p^3 }"),
                    ParseError);
    try {
        parse_spec("congruence X {\n  status = proved\n  bogus = 1\n}");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 0);
    }
    // nested inner sums and duplicate inner sums are rejected
    CHECK_THROWS_AS(parse_spec("congruence X { status = proved for = p > 2 "
                               "lhs = sum n in 0..p-1 of sum(k=0..n) { sum(k=0..n) "
                               "{ fact(k) } } rhs = p mod = p^3 }"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_spec("congruence X { status = proved for = p > 2 "
                   "lhs = sum n in 0..p-1 of sum(k=0..n) { fact(k) } * sum(k=0..n) "
                   "{ fact(k) } rhs = p mod = p^3 }"),
        ParseError);
}

TEST_CASE("parse: inner-sum block with floor bound") {
    const CongruenceSpec& c02 = Database::builtin().at("C02b");
    REQUIRE(c02.lhs.body.has_inner_sum());
    const Factor& inner = c02.lhs.body.factors[0];
    CHECK(inner.kind == Factor::Kind::inner_sum);
    CHECK(inner.inner_bound == Factor::InnerBound::floor_n_over_d);
    CHECK(inner.inner_divisor == 3);
    CHECK(inner.body->factors.size() == 6);
}

TEST_CASE("round-trip: serialize then parse is the identity on all builtins") {
    for (const auto& s : builtin_database()) {
        CongruenceSpec back = parse_spec(dsl::serialize(s));
        CHECK(back == s);
        // canonical: a second round is byte-stable
        CHECK(dsl::serialize(back) == dsl::serialize(s));
    }
}

TEST_CASE("note strings round-trip with escapes") {
    CongruenceSpec s = Database::builtin().at("A01b");
    s.note = "contains \"quotes\" and a backslash \\ plus braces {}";
    CongruenceSpec back = parse_spec(dsl::serialize(s));
    CHECK(back.note == s.note);
    CHECK(back == s);
}

TEST_CASE("shipped database file matches the builtin set") {
    auto specs = parse_database_file(std::string(SUPERCONG_SOURCE_DIR) + "/data/builtin.cdb");
    const auto& builtin = builtin_database();
    REQUIRE(specs.size() == builtin.size());
    for (size_t i = 0; i < specs.size(); ++i)
        CHECK(specs[i] == builtin[i]);
}

TEST_CASE("verify: golden instance at p=3") {
    VerificationResult r = verify_congruence(Database::builtin().at("A01b"), 3);
    CHECK_FALSE(r.skipped);
    CHECK(r.holds);
    CHECK(r.lhs == Rational(435, 512));
    CHECK(r.rhs == Rational(-3));
    CHECK(r.observed_order == Valuation::finite(3)); // 1971/512 = 27*73/512
}

TEST_CASE("verify: signed form of x01 at p=3") {
    VerificationResult r = verify_congruence(Database::builtin().at("x01"), 3);
    CHECK(r.holds);
    CHECK(r.lhs == Rational(336105, 131072));
    CHECK(r.rhs == Rational(-9));
    CHECK(r.observed_order == Valuation::finite(4));
    // and the unsigned variant indeed fails at p=3, reducing to 6 mod 27
    CongruenceSpec unsigned_form = Database::builtin().at("x01");
    unsigned_form.lhs.body.factors.erase(
        std::find_if(unsigned_form.lhs.body.factors.begin(),
                     unsigned_form.lhs.body.factors.end(),
                     [](const Factor& f) { return f.kind == Factor::Kind::sign; }));
    VerificationResult bad = verify_congruence(unsigned_form, 3);
    CHECK_FALSE(bad.holds);
    CHECK(reduce(bad.lhs, PadicContext(3, 3)).value() == 6);
}

TEST_CASE("verify: inadmissible primes are skipped, not failed") {
    VerificationResult r = verify_congruence(Database::builtin().at("A07b"), 11);
    CHECK(r.skipped);
    VerificationResult r2 = verify_congruence(Database::builtin().at("A07b"), 13);
    CHECK_FALSE(r2.skipped);
    CHECK(r2.holds);
}

TEST_CASE("verify: small primes across the whole database") {
    EvalCache cache;
    for (const auto& spec : builtin_database())
        for (long p : {3L, 5L, 7L, 11L, 13L}) {
            VerificationResult r = verify_congruence(spec, p, cache);
            if (!r.skipped) {
                CAPTURE(spec.id);
                CAPTURE(p);
                CHECK(r.holds);
            }
        }
}

TEST_CASE("verify is deterministic") {
    const CongruenceSpec& spec = Database::builtin().at("B03b");
    VerificationResult a = verify_congruence(spec, 7);
    VerificationResult b = verify_congruence(spec, 7);
    CHECK(a.lhs == b.lhs);
    CHECK(a.observed_order == b.observed_order);
    CHECK(a.holds == b.holds);
}

TEST_CASE("truncation: half-range agreement and per-term orders") {
    const Database& db = Database::builtin();
    for (const char* id : {"A01b", "A02b", "A03b", "A04b"}) {
        for (long p : {3L, 5L, 7L, 11L, 13L}) {
            auto res = truncation_check(db.at(id), p);
            REQUIRE(res.has_value());
            CHECK(*res);
        }
    }
    auto na = truncation_check(db.at("C01b"), 7);
    CHECK_FALSE(na.has_value());
    // eligible: any statement with the cubic block, e.g. the quintic B01b
    auto b01 = truncation_check(db.at("B01b"), 7);
    REQUIRE(b01.has_value());
    CHECK(*b01);
}

TEST_CASE("equivalence: termwise and congruence modes") {
    const Database& db = Database::builtin();
    CHECK(equivalence_check(db, "B03", "B03b", EquivalenceMode::termwise, 30).equivalent);
    CHECK(equivalence_check(db, "x01", "x01b", EquivalenceMode::termwise, 30).equivalent);
    CHECK(equivalence_check(db, "A01", "A01b", EquivalenceMode::congruence, 0, {3, 5, 7})
              .equivalent);
    // different summands are caught
    CHECK_FALSE(
        equivalence_check(db, "A01b", "A02b", EquivalenceMode::termwise, 10).equivalent);
    CHECK_THROWS_AS(equivalence_check(db, "A01b", "nope", EquivalenceMode::termwise, 5),
                    std::invalid_argument);
}

TEST_CASE("termwise equivalence uses the duplication identity") {
    // (1/2)_{2n} = 4^n (1/4)_n (3/4)_n makes the sibling summands equal; n=1
    // gives -69/128 on both sides of the x-pair.
    const Database& db = Database::builtin();
    EvalCache cache;
    CHECK(eval_term(db.at("x01").lhs.body, 1, std::nullopt, cache) == Rational(-69, 128));
    CHECK(eval_term(db.at("x01b").lhs.body, 1, std::nullopt, cache) == Rational(-69, 128));
}

TEST_CASE("partial certificates agree with their statements along k=0") {
    const Database& db = Database::builtin();
    EvalCache cache;
    for (const auto& cert : partial_certificates()) {
        const CongruenceSpec& spec = db.at(cert.id);
        CHECK(spec.status == CongruenceStatus::partial);
        CHECK(spec.partial_order == cert.claimed_partial_order);
        for (long n = 0; n <= 15; ++n)
            CHECK(eval_term(cert.F, n, 0, cache) ==
                  eval_term(spec.lhs.body, n, std::nullopt, cache));
    }
}

TEST_CASE("gamma-form diagnostic records both sign conventions") {
    for (long p : {5L, 7L, 11L}) {
        GammaFormDiagnostic d = gamma_form_diagnostic(p);
        // literal display: each summand is the negative of the plain one
        CHECK_FALSE(d.displayed_congruent);
        CHECK(d.flipped_congruent);
    }
}
