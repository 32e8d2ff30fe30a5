#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "density.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "rng.hpp"

using namespace eqol;

namespace {

// Reference Kronecker product, written independently of the library version.
ComplexMatrix kron_oracle(const ComplexMatrix& x, const ComplexMatrix& y) {
    ComplexMatrix r(x.rows * y.rows, x.cols * y.cols);
    for (std::size_t i = 0; i < r.rows; ++i)
        for (std::size_t j = 0; j < r.cols; ++j)
            r.at(i, j) = x.at(i / y.rows, j / y.cols) * y.at(i % y.rows, j % y.cols);
    return r;
}

ComplexMatrix random_matrix(DetRng& rng, std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n * n; ++i) m.a[i] = rng.gaussian_cplx();
    return m;
}

ComplexMatrix random_hermitian(DetRng& rng, std::size_t n) {
    ComplexMatrix m = random_matrix(rng, n);
    return (m + m.adjoint()).scaled(0.5);
}

} // namespace

TEST_CASE("rational arithmetic stays normalized") {
    Rational a(2, 4);
    CHECK(a.num == 1);
    CHECK(a.den == 2);
    CHECK((a + Rational(1, 2)) == Rational(1));
    CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
    CHECK((Rational(1, 3) - Rational(1, 3)).is_zero());
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2).num == -1);
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(parse_rational("7/16") == Rational(7, 16));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(Rational(7, 16).str() == "7/16");
    CHECK_THROWS_AS(Rational(1, 0), model_error);
    CHECK_THROWS_AS(parse_rational("x/y"), parse_error);
}

TEST_CASE("tensor product matches the reference Kronecker") {
    DetRng rng(11);
    for (int it = 0; it < 20; ++it) {
        ComplexMatrix a = random_matrix(rng, 2);
        ComplexMatrix b = random_matrix(rng, 4);
        CHECK(tensor_product(a, b).max_abs_diff(kron_oracle(a, b)) < 1e-12);
        cplx t1 = tensor_product(a, b).trace();
        cplx t2 = a.trace() * b.trace();
        CHECK(std::abs(t1 - t2) < 1e-9);
    }
}

TEST_CASE("matrix algebra basics") {
    DetRng rng(12);
    ComplexMatrix a = random_matrix(rng, 4);
    ComplexMatrix b = random_matrix(rng, 4);
    ComplexMatrix c = random_matrix(rng, 4);
    CHECK(((a * b) * c).max_abs_diff(a * (b * c)) < 1e-9);
    CHECK((a * ComplexMatrix::identity(4)).max_abs_diff(a) < 1e-12);
    CHECK((a.adjoint().adjoint()).max_abs_diff(a) < 1e-12);
    // tr(AB) = tr(BA)
    CHECK(std::abs((a * b).trace() - (b * a).trace()) < 1e-9);
}

TEST_CASE("eigh on Hermitian inputs: residuals, orthonormality, trace") {
    DetRng rng(13);
    for (std::size_t n : {2u, 4u, 8u}) {
        for (int it = 0; it < 5; ++it) {
            ComplexMatrix h = random_hermitian(rng, n);
            EighResult e = eigh(h);
            REQUIRE(e.values.size() == n);
            // Ascending eigenvalues.
            for (std::size_t k = 0; k + 1 < n; ++k) CHECK(e.values[k] <= e.values[k + 1] + 1e-12);
            // Eigenvector residuals.
            for (std::size_t k = 0; k < n; ++k) {
                double res = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    cplx hv = 0.0;
                    for (std::size_t j = 0; j < n; ++j) hv += h.at(i, j) * e.vectors.at(j, k);
                    res += std::norm(hv - e.values[k] * e.vectors.at(i, k));
                }
                CHECK(std::sqrt(res) < 1e-8);
            }
            // Orthonormal columns.
            ComplexMatrix gram = e.vectors.adjoint() * e.vectors;
            CHECK(gram.max_abs_diff(ComplexMatrix::identity(n)) < 1e-9);
            // Eigenvalue sum equals the trace.
            double sum = 0.0;
            for (double lam : e.values) sum += lam;
            CHECK(std::abs(sum - h.trace().real()) < 1e-8);
        }
    }
}

TEST_CASE("psd check and negative witness") {
    DetRng rng(14);
    ComplexMatrix g = random_matrix(rng, 4);
    ComplexMatrix psd = g * g.adjoint();
    CHECK(is_psd(psd, 1e-9));
    ComplexMatrix ind(2, 2);
    ind.at(0, 0) = 1.0;
    ind.at(1, 1) = -1.0;
    CHECK(!is_psd(ind, 1e-9));
    NegativeWitness w = most_negative_direction(ind, 1e-9);
    REQUIRE(w.found);
    CHECK(w.eigenvalue == doctest::Approx(-1.0));
    CHECK(std::abs(w.vector[1]) == doctest::Approx(1.0));
}

TEST_CASE("qubit factor permutation against direct construction") {
    // Identity permutation.
    DetRng rng(15);
    ComplexMatrix m = random_matrix(rng, 8);
    CHECK(permute_qubit_factors(m, {0, 1, 2}).max_abs_diff(m) < 1e-12);

    // Swap moves |01><01| to |10><10|.
    ComplexMatrix e01(4, 4);
    e01.at(1, 1) = 1.0;
    ComplexMatrix swapped = permute_qubit_factors(e01, {1, 0});
    ComplexMatrix e10(4, 4);
    e10.at(2, 2) = 1.0;
    CHECK(swapped.max_abs_diff(e10) < 1e-12);

    // Swapping a product reverses the factors; both sides via the oracle.
    ComplexMatrix r1 = random_matrix(rng, 2);
    ComplexMatrix r2 = random_matrix(rng, 2);
    CHECK(permute_qubit_factors(kron_oracle(r1, r2), {1, 0})
              .max_abs_diff(kron_oracle(r2, r1)) < 1e-12);

    // Homomorphism over products.
    ComplexMatrix a = random_matrix(rng, 8);
    ComplexMatrix b = random_matrix(rng, 8);
    std::vector<std::size_t> perm = {2, 0, 1};
    CHECK(permute_qubit_factors(a * b, perm)
              .max_abs_diff(permute_qubit_factors(a, perm) * permute_qubit_factors(b, perm)) < 1e-9);

    // Applying a permutation then its inverse is the identity.
    std::vector<std::size_t> inv(3);
    for (std::size_t i = 0; i < 3; ++i) inv[perm[i]] = i;
    CHECK(permute_qubit_factors(permute_qubit_factors(a, perm), inv).max_abs_diff(a) < 1e-12);
}

TEST_CASE("density operator validation and support") {
    DetRng rng(16);
    DensityOperator rho = rng.random_density(4);
    rho.validate();
    EighResult e = eigh(rho.dense());
    double sum = 0.0;
    for (double lam : e.values) {
        CHECK(lam >= -1e-9);
        sum += lam;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    Subspace w = rho.support();
    ComplexMatrix p = w.projector();
    CHECK((p * rho.dense() * p).max_abs_diff(rho.dense()) < 1e-8);

    DensityOperator bad_trace = DensityOperator::from_diag({0.5, 0.2});
    CHECK_THROWS_AS(bad_trace.validate(), model_error);
    ComplexMatrix neg(2, 2);
    neg.at(0, 0) = 1.5;
    neg.at(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityOperator::from_dense(neg).validate(), model_error);

    DensityOperator diag = DensityOperator::from_diag_exact({Rational(3, 10), Rational(7, 10)});
    diag.validate();
    CHECK(diag.support().rank() == 2);
    CHECK(diag.trace_real() == doctest::Approx(1.0));
}

TEST_CASE("pure-state support is one-dimensional") {
    std::vector<cplx> psi = {cplx(0.0, 0.0), cplx(1.0 / std::sqrt(2.0), 0.0),
                             cplx(1.0 / std::sqrt(2.0), 0.0), cplx(0.0, 0.0)};
    DensityOperator rho = DensityOperator::pure(psi);
    rho.validate();
    CHECK(rho.support().rank() == 1);
    CHECK(rho.support().contains(psi, 1e-9));
}

TEST_CASE("subspace containment") {
    ComplexMatrix m(4, 2);
    m.at(0, 0) = 1.0;
    m.at(1, 1) = 1.0;
    Subspace s = column_space(m, 1e-9);
    CHECK(s.rank() == 2);
    std::vector<cplx> inside = {cplx(0.6, 0.0), cplx(0.8, 0.0), 0.0, 0.0};
    std::vector<cplx> outside = {0.0, 0.0, cplx(1.0, 0.0), 0.0};
    CHECK(s.contains(inside, 1e-9));
    CHECK(!s.contains(outside, 1e-9));
    CHECK(s.same_as(s, 1e-9));
}

TEST_CASE("seeded rng is reproducible and well-formed") {
    DetRng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    DetRng rng(7);
    ComplexMatrix u = rng.random_unitary(4);
    CHECK((u.adjoint() * u).max_abs_diff(ComplexMatrix::identity(4)) < 1e-9);
    DensityOperator rho = rng.random_density_supported(4, {0, 3});
    rho.validate();
    for (std::size_t i : {1u, 2u}) CHECK(std::abs(rho.dense().at(i, i)) < 1e-12);
}
