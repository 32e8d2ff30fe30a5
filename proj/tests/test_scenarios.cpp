#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bell.hpp"
#include "interp.hpp"
#include "lang.hpp"
#include "print.hpp"

using namespace eqol;

TEST_CASE("bell statistics match the entangled pair exactly") {
    Structure M = bell_structure();
    BellFormulas f = bell_formulas();
    CHECK(eval_term(M, term_top({}, {"qb1", "qb2"})) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eval_term(M, term_top({"qb1", "qb2"}, {"qb1", "qb2"})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eval_term(M, term_top({"qb1"}, {"qb1", "qb2"})) == doctest::Approx(0.5));
    CHECK(eval_term(M, term_top({"qb2"}, {"qb1", "qb2"})) == doctest::Approx(0.5));
    CHECK(satisfies(M, f.gamma));
    CHECK(satisfies(M, f.eta));

    // The four outcome weights sum to one over the measured algebra.
    double total = 0.0;
    for (const std::vector<std::string>& a :
         {std::vector<std::string>{}, {"qb1"}, {"qb2"}, {"qb1", "qb2"}})
        total += eval_term(M, term_top(a, {"qb1", "qb2"}));
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bell structure with unrestricted valuations agrees") {
    Structure M = bell_structure(true);
    BellFormulas f = bell_formulas();
    CHECK(M.V.all);
    CHECK(satisfies(M, f.gamma));
    CHECK(satisfies(M, f.eta));
}

TEST_CASE("bell refutation script replays with no rejected step") {
    DerivationReport rep = verify_derivation(bell_script());
    REQUIRE(rep.steps.size() == 13);
    for (std::size_t i = 0; i < rep.steps.size(); ++i) {
        INFO("step ", i + 1, ": ", rep.steps[i].detail);
        CHECK(rep.steps[i].status == StepStatus::OK);
    }
    CHECK(rep.accepted);
    CHECK_FALSE(rep.unsupported);
}

TEST_CASE("no random product state reproduces the bell statistics") {
    BellReport r = bell_check(1000, 20240801);
    CHECK(r.samples == 1000);
    CHECK(r.product_satisfied == 0);
    CHECK(r.gamma_holds);
    CHECK(r.eta_holds);
    CHECK(r.replay.accepted);
}

TEST_CASE("bell scenario is deterministic") {
    BellReport a = bell_check(200, 5);
    BellReport b = bell_check(200, 5);
    CHECK(a.product_satisfied == b.product_satisfied);
    CHECK(a.ev_first == b.ev_first);
}

#include "bb84.hpp"
#include "parse.hpp"

TEST_CASE("per-position weights match the brute-force enumeration") {
    for (bool tap : {false, true}) {
        auto closed = bb84_position_weights(tap);
        auto oracle = bb84_position_oracle(tap);
        Rational total(0);
        for (std::size_t i = 0; i < 16; ++i) {
            INFO("eavesdrop=", tap, " cell=", i);
            CHECK(closed[i] == oracle[i]);
            total = total + closed[i];
        }
        CHECK(total == Rational(1));
    }
}

TEST_CASE("joint key-exchange states are exact normalized mixtures") {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
        for (bool tap : {false, true}) {
            BB84Instance inst = bb84_state(n, tap);
            REQUIRE(inst.structure.global_state->diag_exact);
            const auto& diag = *inst.structure.global_state->diag_exact;
            CHECK(diag.size() == (std::size_t{1} << (4 * n)));
            Rational total(0);
            for (const Rational& w : diag) total = total + w;
            CHECK(total == Rational(1));
        }
    }
    CHECK_THROWS_AS(bb84_state(0, false), model_error);
    CHECK_THROWS_AS(bb84_state(5, true), model_error);
}

TEST_CASE("state construction is deterministic") {
    BB84Instance a = bb84_state(2, true);
    BB84Instance b = bb84_state(2, true);
    CHECK(*a.structure.global_state->diag_exact == *b.structure.global_state->diag_exact);
}

TEST_CASE("honest sifted runs never disagree on the key") {
    BB84Report rep = bb84_check(2, Rational(1, 20));
    CHECK(rep.honest_consequent == Rational(0));
    CHECK(rep.honest_consequent_raw == Rational(7, 16));  // 1 - (3/4)^2
    CHECK_FALSE(rep.honest_holds);
    for (const BB84SweepEntry& e : rep.sweep) CHECK_FALSE(e.honest);
}

TEST_CASE("intercept-resend disturbs each sifted bit by exactly a quarter") {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
        BB84Report rep = bb84_check(n, Rational(1, 1000000));
        CHECK(rep.eavesdrop_bit_error == Rational(1, 4));
        CHECK(rep.eavesdrop_holds);
    }
}

TEST_CASE("detection probabilities match the closed forms") {
    BB84Report rep = bb84_check(2, Rational(1, 10));
    CHECK(rep.sift_probability == Rational(1, 4));
    CHECK(rep.eavesdrop_consequent == Rational(7, 16));       // 1 - (3/4)^2
    CHECK(rep.eavesdrop_consequent_raw == Rational(39, 64));  // 1 - (5/8)^2
    CHECK(rep.eavesdrop_holds);

    BB84Report one = bb84_check(1, Rational(1, 10));
    CHECK(one.eavesdrop_consequent == Rational(1, 4));
    CHECK(one.eavesdrop_consequent_raw == Rational(3, 8));

    BB84Report four = bb84_check(4, Rational(1, 10));
    CHECK(four.eavesdrop_consequent == Rational(175, 256));  // 1 - (3/4)^4
    CHECK(four.honest_consequent == Rational(0));
}

TEST_CASE("threshold sweep verdicts agree with exact comparison") {
    BB84Report rep = bb84_check(2, Rational(1, 20));
    REQUIRE(rep.sweep.size() == 4);
    for (const BB84SweepEntry& e : rep.sweep) {
        INFO("a=", e.a.str());
        CHECK(e.eavesdrop == (e.a <= rep.eavesdrop_consequent));
        CHECK_FALSE(e.honest);
    }
}

TEST_CASE("detection formula round-trips through the printer") {
    QF phi = bb84_formula(2, {1, 2}, Rational(1, 20));
    QF back = parse_formula(print_formula(phi));
    CHECK(qf_equal(phi, back));
    CHECK_THROWS_AS(bb84_formula(2, {}, Rational(1, 20)), model_error);
    CHECK_THROWS_AS(bb84_formula(2, {3}, Rational(1, 20)), model_error);
    CHECK_THROWS_AS(bb84_formula(2, {1}, Rational(0)), model_error);
}
