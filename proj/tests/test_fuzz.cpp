#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "fuzz.hpp"
#include "interp.hpp"
#include "lang.hpp"
#include "print.hpp"

using namespace eqol;

TEST_CASE("random terms stay inside their allowed support and evaluate") {
    DetRng rng(7);
    for (int k = 0; k < 200; ++k) {
        Structure M = random_structure(rng, 1, 3);
        TermP t = random_term(rng, M.qubits, 3);
        std::set<std::string> supp = syntactic_support(t, M.qubits);
        for (const std::string& q : supp)
            CHECK(std::find(M.qubits.begin(), M.qubits.end(), q) != M.qubits.end());
        double v = eval_term(M, t);  // must not throw; tensors are split safely
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("random structures validate and product ones keep V unrestricted") {
    DetRng rng(11);
    for (int k = 0; k < 100; ++k) {
        Structure M = random_structure(rng, 1, 4);
        CHECK_NOTHROW(M.validate());
        Structure P = random_product_structure(rng, 2, 4, 2);
        CHECK(P.V.all);
        CHECK(P.partition.size() >= 2);
    }
}

TEST_CASE("generated instances pass their own schema matchers") {
    DetRng rng(13);
    for (AxiomName ax : all_axioms()) {
        for (int k = 0; k < 30; ++k) {
            FuzzCase c = random_schema_case(rng, ax, 1, 4);
            INFO(axiom_name_str(ax), ": ", print_formula(c.formula));
            CHECK(is_axiom_instance(c.formula, ax, c.M.qubits));
        }
    }
}

TEST_CASE("every axiom schema is satisfied across random structures") {
    FuzzReport report = soundness_fuzz(20240801, 40, 1, 4, 1e-7);
    CHECK(report.schemas.size() == 12);
    for (const SchemaResult& s : report.schemas) {
        INFO(s.name, " mismatched=", s.mismatched, " unsatisfied=", s.unsatisfied);
        for (const std::string& ce : s.counterexamples) INFO(ce);
        CHECK(s.ok());
        CHECK(s.checked == 40);
    }
    CHECK(report.all_passed());
    CHECK(report.total() == 480);
}

TEST_CASE("fuzz runs are deterministic for a fixed seed") {
    FuzzReport a = soundness_fuzz(99, 5, 1, 3, 1e-7);
    FuzzReport b = soundness_fuzz(99, 5, 1, 3, 1e-7);
    REQUIRE(a.schemas.size() == b.schemas.size());
    for (std::size_t i = 0; i < a.schemas.size(); ++i) {
        CHECK(a.schemas[i].checked == b.schemas[i].checked);
        CHECK(a.schemas[i].mismatched == b.schemas[i].mismatched);
        CHECK(a.schemas[i].unsatisfied == b.schemas[i].unsatisfied);
    }
}
