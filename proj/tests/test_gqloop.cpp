#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "gqloop.hpp"
#include "jsonio.hpp"
#include "parse.hpp"
#include "print.hpp"
#include "rng.hpp"

using namespace eqol;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix m(2, 2);
    m.at(0, 0) = s;
    m.at(0, 1) = s;
    m.at(1, 0) = s;
    m.at(1, 1) = -s;
    return m;
}

SuperOperator permutation_channel(const std::vector<std::size_t>& perm) {
    ComplexMatrix k(perm.size(), perm.size());
    for (std::size_t v = 0; v < perm.size(); ++v) k.at(perm[v], v) = 1.0;
    return SuperOperator::single(k);
}

const DensityOperator kOne =
    DensityOperator::from_diag_exact({Rational(0), Rational(1)});

} // namespace

TEST_CASE("a flipping body leaves the guard in one round") {
    const GeneralizedQuantumLoop loop =
        make_loop({"qb1"}, SuperOperator::single(pauli_x()), {1});
    const TerminationResult tr = terminates_within(loop, kOne, 64, 1e-9);
    CHECK(tr.terminated);
    CHECK(tr.index == 1);
    CHECK(tr.exact);

    const LoopRun run = run_loop(loop, kOne, 8);
    REQUIRE(run.entries.size() >= 2);
    CHECK(run.entries[0].p_nonterm == doctest::Approx(1.0));
    CHECK(run.entries[1].p_nonterm == doctest::Approx(0.0));
    CHECK(run.entries[1].p_term == doctest::Approx(1.0));
    REQUIRE(run.exact);
    CHECK(run.exact_nonterm[0] == Rational(1));
    CHECK(run.exact_nonterm[1] == Rational(0));
}

TEST_CASE("an identity body never leaves the guard") {
    const GeneralizedQuantumLoop loop =
        make_loop({"qb1"}, SuperOperator::identity(2), {1});
    const TerminationResult tr = terminates_within(loop, kOne, 64, 1e-9);
    CHECK_FALSE(tr.terminated);
    CHECK(tr.index == 64);
    CHECK(tr.residual == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tr.exact);

    CHECK(nonterm_prob(loop, kOne, 0) == doctest::Approx(1.0));
    CHECK(nonterm_prob(loop, kOne, 40) == doctest::Approx(1.0));
}

TEST_CASE("a mixing body keeps the per-round exit chance at one half") {
    const GeneralizedQuantumLoop loop =
        make_loop({"qb1"}, SuperOperator::single(hadamard()), {1});
    CHECK(nonterm_prob(loop, kOne, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n = 1; n <= 12; ++n)
        CHECK(std::abs(nonterm_prob(loop, kOne, n) - 0.5) < 1e-12);

    // The continuing mass halves every round; once it is numerically
    // exhausted (mass entering round 41 is 2^-40 < 1e-12) the run counts
    // as terminated.
    const TerminationResult tr = terminates_within(loop, kOne, 64, 1e-9);
    CHECK_FALSE(tr.exact);  // off-diagonal states leave the rational path
    CHECK(tr.terminated);
    CHECK(tr.index == 41);
}

TEST_CASE("round masses balance termination mass exactly") {
    DetRng rng(51);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + rng.index(2);
        const std::size_t dim = std::size_t{1} << n;
        std::vector<std::string> qubits;
        for (std::size_t q = 0; q < n; ++q) qubits.push_back(std::string("q") + char('a' + q));

        std::vector<std::size_t> guard;
        for (std::size_t v = 0; v < dim; ++v)
            if (rng.index(2)) guard.push_back(v);
        if (guard.empty()) guard.push_back(rng.index(dim));
        if (guard.size() == dim) guard.pop_back();

        const GeneralizedQuantumLoop loop =
            make_loop(qubits, SuperOperator::single(rng.random_unitary(dim)), guard);
        const LoopRun run = run_loop(loop, rng.random_density(dim), 24);

        double exited = 0.0;
        for (std::size_t i = 0; i + 1 < run.entries.size(); ++i) {
            const auto& e = run.entries[i];
            CHECK(std::abs(e.p_term + e.p_nonterm - (e.mass > 1e-12 ? 1.0 : 0.0)) < 1e-9);
            CHECK(run.entries[i + 1].mass ==
                  doctest::Approx(e.mass - e.term_mass).epsilon(1e-9));
            exited += e.term_mass;
        }
        exited += run.entries.back().term_mass;
        CHECK(exited + run.entries.back().mass - run.entries.back().term_mass ==
              doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("valuation guards and their projector form run identically") {
    const std::vector<std::size_t> guard{1, 2};
    const GeneralizedQuantumLoop by_vals =
        make_loop({"qa", "qb"}, permutation_channel({1, 2, 3, 0}), guard);
    const GeneralizedQuantumLoop by_proj = make_loop_projector(
        {"qa", "qb"}, permutation_channel({1, 2, 3, 0}), basis_projector(4, guard));

    const DensityOperator rho0 = DensityOperator::from_diag({0.25, 0.25, 0.25, 0.25});
    const LoopRun r1 = run_loop(by_vals, rho0, 16);
    const LoopRun r2 = run_loop(by_proj, rho0, 16);
    REQUIRE(r1.entries.size() == r2.entries.size());
    for (std::size_t i = 0; i < r1.entries.size(); ++i) {
        CHECK(r1.entries[i].mass == doctest::Approx(r2.entries[i].mass).epsilon(1e-10));
        CHECK(r1.entries[i].p_nonterm ==
              doctest::Approx(r2.entries[i].p_nonterm).epsilon(1e-10));
    }

    // Only the valuation form can be reduced to a chain query.
    CHECK_THROWS_AS(to_eqmc(by_proj), model_error);
    CHECK_THROWS_AS(make_loop_projector({"qa", "qb"}, permutation_channel({1, 2, 3, 0}),
                                        pauli_x()),
                    model_error);  // wrong dimension
}

TEST_CASE("the chain reduction states that the guard region empties") {
    const GeneralizedQuantumLoop loop =
        make_loop({"qb1"}, SuperOperator::single(pauli_x()), {1});
    const auto [chain, gamma] = to_eqmc(loop);
    CHECK(chain.n() == 1);
    CHECK(chain.V.all);
    REQUIRE(chain.partition.size() == 1);
    CHECK(chain.init_states.empty());  // callers pick the input state
    CHECK(chain.epsilon.kraus.size() == 2);
    CHECK(print_formula(gamma) == "int(qb1) = O");

    ExogenousQMC runnable = chain;
    runnable.init_states.push_back(kOne);
    runnable.validate();
    const McResult r =
        check_reachability(runnable, kOne, McMode::F, gamma, 40, 1e-9);
    CHECK(r.verdict == McVerdict::HOLDS);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == 1);
}

TEST_CASE("loop termination agrees with the reduced chain query") {
    DetRng rng(52);
    int decided = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rng.index(2);
        const std::size_t dim = std::size_t{1} << n;
        std::vector<std::string> qubits;
        for (std::size_t q = 0; q < n; ++q) qubits.push_back(std::string("q") + char('a' + q));

        std::vector<std::size_t> perm(dim);
        for (std::size_t v = 0; v < dim; ++v) perm[v] = v;
        for (std::size_t v = dim; v > 1; --v) std::swap(perm[v - 1], perm[rng.index(v)]);

        std::vector<std::size_t> guard;
        for (std::size_t v = 0; v < dim; ++v)
            if (rng.index(2)) guard.push_back(v);
        if (guard.empty()) guard.push_back(rng.index(dim));
        if (guard.size() == dim) guard.pop_back();

        std::vector<Rational> d(dim, Rational(0));
        d[rng.index(dim)] = Rational(1);
        const DensityOperator rho0 = DensityOperator::from_diag_exact(d);

        const GeneralizedQuantumLoop loop =
            make_loop(qubits, permutation_channel(perm), guard);
        const TerminationResult tr = terminates_within(loop, rho0, 64, 1e-9);

        auto [chain, gamma] = to_eqmc(loop);
        chain.init_states.push_back(rho0);
        chain.validate();
        const McResult mc = check_reachability(chain, rho0, McMode::F, gamma, 256, 1e-9);

        if (mc.verdict == McVerdict::UNKNOWN) continue;
        CHECK(tr.terminated == (mc.verdict == McVerdict::HOLDS));
        ++decided;
    }
    CHECK(decided >= 40);
}

TEST_CASE("loops load from their wire form in both guard styles") {
    const Json by_vals = {
        {"qubits", {"qb1"}},
        {"body", superop_to_json(SuperOperator::single(pauli_x()))},
        {"guard", {{"valuations", {"1"}}}},
    };
    const GeneralizedQuantumLoop l1 = loop_from_json(by_vals);
    REQUIRE(l1.guard_vals.has_value());
    CHECK(*l1.guard_vals == std::vector<std::size_t>{1});
    CHECK(terminates_within(l1, kOne, 8, 1e-9).terminated);

    const Json by_proj = {
        {"qubits", {"qb1"}},
        {"body", superop_to_json(SuperOperator::single(pauli_x()))},
        {"guard", {{"projector", matrix_to_json(basis_projector(2, {1}))}}},
    };
    const GeneralizedQuantumLoop l2 = loop_from_json(by_proj);
    CHECK_FALSE(l2.guard_vals.has_value());
    CHECK(terminates_within(l2, kOne, 8, 1e-9).terminated);

    Json leaky = by_vals;
    leaky["body"] =
        superop_to_json(so_scale(Rational(1, 2), SuperOperator::single(pauli_x())));
    CHECK_THROWS_AS(loop_from_json(leaky), model_error);
}
