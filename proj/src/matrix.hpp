#pragma once

#include "base.hpp"

#include <vector>

namespace eqol {

// Dense complex square-or-rectangular matrix, row-major.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cplx& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }

    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix scaled(cplx s) const;
    ComplexMatrix adjoint() const;
    cplx trace() const;
    double max_abs_diff(const ComplexMatrix& o) const;
    double frobenius() const;
    bool is_hermitian(double tol = 1e-10) const;
};

ComplexMatrix tensor_product(const ComplexMatrix& x, const ComplexMatrix& y);

// Reorders tensor factors of a 2^n-dimensional operator. perm maps output
// qubit slots to input slots: slot i of the result carries input slot perm[i].
// Qubit 0 is the most significant bit of the basis index.
ComplexMatrix permute_qubit_factors(const ComplexMatrix& m, const std::vector<std::size_t>& perm);

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations with a
// complex phase fold-in at each pivot. Eigenvalues ascend; columns of vectors
// are the matching orthonormal eigenvectors.
struct EighResult {
    std::vector<double> values;
    ComplexMatrix vectors;
};
EighResult eigh(const ComplexMatrix& m);

bool is_psd(const ComplexMatrix& m, double tol);

// Witness for a failed positive-semidefiniteness check: the most negative
// eigenvalue and its unit eigenvector.
struct NegativeWitness {
    bool found = false;
    double eigenvalue = 0.0;
    std::vector<cplx> vector;
};
NegativeWitness most_negative_direction(const ComplexMatrix& m, double tol);

// Orthonormal basis of a subspace of C^dim, columns of `basis`.
struct Subspace {
    std::size_t dim = 0;
    ComplexMatrix basis;      // dim x rank
    std::size_t rank() const { return basis.cols; }
    ComplexMatrix projector() const;
    bool contains(const std::vector<cplx>& v, double tol) const;
    bool contains(const Subspace& other, double tol) const;
    bool same_as(const Subspace& other, double tol) const;
};

// Column space of m, from eigenvectors of m m^dagger above tol.
Subspace column_space(const ComplexMatrix& m, double tol);

} // namespace eqol
