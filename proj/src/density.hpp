#pragma once

#include "matrix.hpp"
#include "rational.hpp"

#include <optional>
#include <vector>

namespace eqol {

// Density operator on a 2^n-dimensional space. Diagonal states keep their
// weights as a vector (optionally with exact rational entries alongside);
// general states store the full matrix. Exactly one representation is primary
// but dense() always materializes a matrix view.
struct DensityOperator {
    std::size_t dim = 0;
    std::optional<ComplexMatrix> mat;
    std::optional<std::vector<double>> diag;
    std::optional<std::vector<Rational>> diag_exact;

    static DensityOperator from_dense(ComplexMatrix m);
    static DensityOperator from_diag(std::vector<double> d);
    static DensityOperator from_diag_exact(std::vector<Rational> d);
    static DensityOperator pure(const std::vector<cplx>& psi);

    bool is_diagonal() const { return diag.has_value(); }
    ComplexMatrix dense() const;
    double trace_real() const;

    // Checks Hermiticity, positivity, and unit trace within tol.
    void validate(double tol = 1e-8) const;

    // Span of eigenvectors with eigenvalue above tol.
    Subspace support(double tol = 1e-8) const;
};

} // namespace eqol
