#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rng.hpp"
#include "superop.hpp"

using namespace eqol;

namespace {

ComplexMatrix random_matrix(DetRng& rng, std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n * n; ++i) m.a[i] = rng.gaussian_cplx();
    return m;
}

SuperOperator random_cp_map(DetRng& rng, std::size_t dim, std::size_t max_kraus = 3) {
    SuperOperator e;
    e.dim = dim;
    const std::size_t k = 1 + rng.index(max_kraus);
    for (std::size_t i = 0; i < k; ++i) e.kraus.push_back(random_matrix(rng, dim).scaled(0.4));
    return e;
}

// Mixture of unitaries: trace preserving by construction.
SuperOperator random_channel(DetRng& rng, std::size_t dim) {
    SuperOperator e;
    e.dim = dim;
    const std::size_t k = 1 + rng.index(std::size_t{2});
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) {
        x = 0.1 + rng.uniform();
        total += x;
    }
    for (std::size_t i = 0; i < k; ++i)
        e.kraus.push_back(rng.random_unitary(dim).scaled(std::sqrt(w[i] / total)));
    return e;
}

// tr(e(rho)) computed the long way, without the trace observable.
double applied_trace(const SuperOperator& e, const ComplexMatrix& rho) {
    return apply(e, rho).trace().real();
}

std::vector<std::size_t> subset_bits(std::size_t mask, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) out.push_back(i);
    return out;
}

} // namespace

TEST_CASE("trace observable reproduces applied traces") {
    DetRng rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        const SuperOperator e = random_cp_map(rng, 4);
        const ComplexMatrix q = trace_observable(e);
        CHECK(q.is_hermitian(1e-10));
        for (int s = 0; s < 5; ++s) {
            const ComplexMatrix rho = rng.random_density(4).dense();
            const double direct = applied_trace(e, rho);
            const double via_q = (q * rho).trace().real();
            CHECK(std::abs(direct - via_q) < 1e-10);
        }
    }
}

TEST_CASE("superoperator algebra agrees with pointwise application") {
    DetRng rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        const SuperOperator e1 = random_cp_map(rng, 4);
        const SuperOperator e2 = random_cp_map(rng, 4);
        const ComplexMatrix rho = rng.random_density(4).dense();

        const ComplexMatrix sum = apply(so_add(e1, e2), rho);
        CHECK(sum.max_abs_diff(apply(e1, rho) + apply(e2, rho)) < 1e-10);

        const ComplexMatrix seq = apply(so_compose(e1, e2), rho);
        CHECK(seq.max_abs_diff(apply(e1, apply(e2, rho))) < 1e-10);

        const ComplexMatrix half = apply(so_scale(Rational(1, 2), e1), rho);
        CHECK(half.max_abs_diff(apply(e1, rho).scaled(0.5)) < 1e-10);

        const SuperOperator f1 = random_cp_map(rng, 2);
        const SuperOperator f2 = random_cp_map(rng, 2);
        const ComplexMatrix a = rng.random_density(2).dense();
        const ComplexMatrix b = rng.random_density(2).dense();
        const ComplexMatrix joint = apply(so_tensor(f1, f2), tensor_product(a, b));
        CHECK(joint.max_abs_diff(tensor_product(apply(f1, a), apply(f2, b))) < 1e-10);
    }
}

TEST_CASE("null and identity act as units") {
    DetRng rng(13);
    const SuperOperator e = random_cp_map(rng, 4);
    const SuperOperator zero = SuperOperator::null_map(4);
    const SuperOperator id = SuperOperator::identity(4);
    const ComplexMatrix rho = rng.random_density(4).dense();

    CHECK(apply(zero, rho).max_abs_diff(ComplexMatrix::zero(4)) == 0.0);
    CHECK(eqsim(so_add(e, zero), e, 1e-12));
    CHECK(apply(so_compose(id, e), rho).max_abs_diff(apply(e, rho)) < 1e-12);
    CHECK(apply(so_compose(e, id), rho).max_abs_diff(apply(e, rho)) < 1e-12);
    CHECK_THROWS_AS(so_add(e, SuperOperator::null_map(2)), model_error);
    CHECK_THROWS_AS(so_scale(Rational(3, 2), e), model_error);
}

TEST_CASE("measurement operators sum to a complete family") {
    DetRng rng(14);
    const std::vector<std::string> qb{"qa", "qb", "qc"};
    for (int rep = 0; rep < 10; ++rep) {
        const DensityOperator rho = rng.random_density(8);
        for (std::size_t gmask = 0; gmask < 8; ++gmask) {
            std::vector<std::string> g;
            for (const std::size_t i : subset_bits(gmask, 3)) g.push_back(qb[i]);
            double total = 0.0;
            const std::size_t g_size = g.size();
            for (std::size_t amask = 0; amask < (std::size_t{1} << g_size); ++amask) {
                std::vector<std::string> a;
                for (const std::size_t i : subset_bits(amask, g_size)) a.push_back(g[i]);
                total += applied_trace(t_operator(a, g, qb), rho.dense());
            }
            CHECK(std::abs(total - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("measurement outcomes pick the matching diagonal mass") {
    // rho = diag(0.4, 0, 0, 0.6) on two qubits: the all-ones outcome carries
    // 0.6, composing it with the all-zeros outcome annihilates everything.
    const std::vector<std::string> qb{"qb1", "qb2"};
    DensityOperator rho = DensityOperator::from_diag({0.4, 0.0, 0.0, 0.6});

    const SuperOperator t_ones = t_operator(qb, qb, qb);
    const SuperOperator t_zeros = t_operator({}, qb, qb);
    CHECK(applied_trace(t_ones, rho.dense()) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(applied_trace(t_zeros, rho.dense()) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(applied_trace(so_compose(t_zeros, t_ones), rho.dense()) == doctest::Approx(0.0).epsilon(1e-12));

    // Partial measurement: qb1 reading 1 keeps both entries with that bit.
    const SuperOperator t_first = t_operator({"qb1"}, {"qb1"}, qb);
    CHECK(applied_trace(t_first, rho.dense()) == doctest::Approx(0.6).epsilon(1e-12));

    DetRng rng(15);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> d(8);
        double total = 0.0;
        for (auto& x : d) {
            x = rng.uniform();
            total += x;
        }
        for (auto& x : d) x /= total;
        const std::vector<std::string> names{"qa", "qb", "qc"};
        const std::size_t gmask = 1 + rng.index(std::size_t{7});
        std::vector<std::string> g;
        for (const std::size_t i : subset_bits(gmask, 3)) g.push_back(names[i]);
        std::vector<std::string> a;
        for (const auto& name : g)
            if (rng.index(2)) a.push_back(name);

        double expected = 0.0;
        for (std::size_t v = 0; v < 8; ++v) {
            bool match = true;
            for (std::size_t slot = 0; slot < 3; ++slot) {
                const bool measured =
                    std::find(g.begin(), g.end(), names[slot]) != g.end();
                if (!measured) continue;
                const bool want_one = std::find(a.begin(), a.end(), names[slot]) != a.end();
                const bool is_one = (v >> (2 - slot)) & 1;
                if (want_one != is_one) match = false;
            }
            if (match) expected += d[v];
        }
        const double got =
            applied_trace(t_operator(a, g, names), DensityOperator::from_diag(d).dense());
        CHECK(std::abs(got - expected) < 1e-10);
    }
}

TEST_CASE("projective measures respect the admissible set") {
    ProjectiveMeasure pm{2, {0, 2, 3}};
    const SuperOperator delta = measure_of(pm, {0, 2});
    DensityOperator rho = DensityOperator::from_diag({0.25, 0.25, 0.25, 0.25});
    CHECK(applied_trace(delta, rho.dense()) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(measure_of(pm, {1}), model_error);

    const SuperOperator everything = measure_of(pm, {0, 2, 3});
    CHECK(applied_trace(everything, rho.dense()) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("global trace order matches sampled comparisons") {
    DetRng rng(16);
    std::size_t holds_seen = 0, fails_seen = 0;
    for (int rep = 0; rep < 100; ++rep) {
        SuperOperator e1 = random_cp_map(rng, 4);
        SuperOperator e2;
        switch (rng.index(3)) {
            case 0: e2 = random_cp_map(rng, 4); break;
            case 1: e2 = so_add(e1, random_cp_map(rng, 4)); break;  // e1 <= e2 exactly
            default: e2 = so_scale(Rational(1, 2), e1); break;      // e2 <= e1 exactly
        }

        const LeqResult r = leq_global_check(e1, e2, 1e-9);
        if (r.holds) ++holds_seen;
        else ++fails_seen;

        bool sampled_violation = false;
        for (int s = 0; s < 100; ++s) {
            const ComplexMatrix rho = rng.random_density(4).dense();
            const double lhs = applied_trace(e1, rho);
            const double rhs = applied_trace(e2, rho);
            if (lhs > rhs + 1e-8) sampled_violation = true;
            if (r.holds) CHECK(leq_at(e1, e2, rho, 1e-8));
        }
        if (sampled_violation) CHECK_FALSE(r.holds);

        if (!r.holds) {
            // The eigendirection witness must itself violate the order.
            REQUIRE(r.witness.has_value());
            CHECK_FALSE(leq_at(e1, e2, *r.witness, 1e-9));
            CHECK(r.min_eigenvalue < 0.0);
        }
    }
    // The pair generator must exercise both outcomes for this to mean much.
    CHECK(holds_seen > 10);
    CHECK(fails_seen > 10);
}

TEST_CASE("trace-order equality is an equivalence on observables") {
    DetRng rng(17);
    const SuperOperator e = random_cp_map(rng, 4);

    // Splitting a Kraus operator in half preserves the trace observable.
    SuperOperator split;
    split.dim = e.dim;
    for (const auto& k : e.kraus) {
        split.kraus.push_back(k.scaled(1.0 / std::sqrt(2.0)));
        split.kraus.push_back(k.scaled(1.0 / std::sqrt(2.0)));
    }
    CHECK(eqsim(e, split, 1e-10));
    for (int s = 0; s < 10; ++s)
        CHECK(eqsim_at(e, split, rng.random_density(4).dense(), 1e-10));

    SuperOperator bumped = e;
    bumped.kraus.push_back(ComplexMatrix::identity(4).scaled(0.01));
    CHECK_FALSE(eqsim(e, bumped, 1e-6));

    CHECK(is_trace_preserving(random_channel(rng, 4), 1e-9));
    CHECK_FALSE(is_trace_preserving(so_scale(Rational(1, 2), random_channel(rng, 4)), 1e-3));
}

TEST_CASE("outcome projectors enumerate the right valuations") {
    // Three qubits, measure slots {0, 2}, require slot 0 = 1 and slot 2 = 0:
    // valuations 1x0, i.e. indices 100 and 110.
    const ComplexMatrix p = outcome_projector(3, {0, 2}, {0});
    for (std::size_t v = 0; v < 8; ++v) {
        const bool slot0 = (v >> 2) & 1, slot2 = v & 1;
        const double expect = (slot0 && !slot2) ? 1.0 : 0.0;
        CHECK(std::abs(p.at(v, v).real() - expect) < 1e-12);
    }

    const ComplexMatrix q = basis_projector(4, {1, 3});
    for (std::size_t v = 0; v < 4; ++v)
        CHECK(std::abs(q.at(v, v).real() - ((v == 1 || v == 3) ? 1.0 : 0.0)) < 1e-12);
}
