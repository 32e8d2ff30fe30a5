#include "density.hpp"

#include <cmath>

namespace eqol {

DensityOperator DensityOperator::from_dense(ComplexMatrix m) {
    DensityOperator d;
    d.dim = m.rows;
    d.mat = std::move(m);
    return d;
}

DensityOperator DensityOperator::from_diag(std::vector<double> w) {
    DensityOperator d;
    d.dim = w.size();
    d.diag = std::move(w);
    return d;
}

DensityOperator DensityOperator::from_diag_exact(std::vector<Rational> w) {
    DensityOperator d;
    d.dim = w.size();
    d.diag.emplace(d.dim);
    for (std::size_t i = 0; i < d.dim; ++i) (*d.diag)[i] = w[i].to_double();
    d.diag_exact = std::move(w);
    return d;
}

DensityOperator DensityOperator::pure(const std::vector<cplx>& psi) {
    ComplexMatrix m(psi.size(), psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j)
            m.at(i, j) = psi[i] * std::conj(psi[j]);
    return from_dense(std::move(m));
}

ComplexMatrix DensityOperator::dense() const {
    if (mat) return *mat;
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = (*diag)[i];
    return m;
}

double DensityOperator::trace_real() const {
    if (diag) {
        double s = 0.0;
        for (double w : *diag) s += w;
        return s;
    }
    return mat->trace().real();
}

void DensityOperator::validate(double tol) const {
    if (diag) {
        double s = 0.0;
        for (double w : *diag) {
            if (w < -tol) throw model_error("density operator has a negative weight");
            s += w;
        }
        if (std::abs(s - 1.0) > tol) throw model_error("density operator trace differs from 1");
        return;
    }
    if (!mat->is_hermitian(tol)) throw model_error("density operator is not Hermitian");
    if (std::abs(mat->trace().real() - 1.0) > tol || std::abs(mat->trace().imag()) > tol)
        throw model_error("density operator trace differs from 1");
    if (!is_psd(*mat, tol)) throw model_error("density operator is not positive semidefinite");
}

Subspace DensityOperator::support(double tol) const {
    Subspace s;
    s.dim = dim;
    if (diag) {
        std::size_t keep = 0;
        for (double w : *diag)
            if (w > tol) ++keep;
        s.basis = ComplexMatrix(dim, keep);
        std::size_t col = 0;
        for (std::size_t i = 0; i < dim; ++i)
            if ((*diag)[i] > tol) s.basis.at(i, col++) = 1.0;
        return s;
    }
    EighResult e = eigh(*mat);
    std::size_t keep = 0;
    for (double lam : e.values)
        if (lam > tol) ++keep;
    s.basis = ComplexMatrix(dim, keep);
    std::size_t col = 0;
    for (std::size_t k = 0; k < e.values.size(); ++k) {
        if (e.values[k] <= tol) continue;
        for (std::size_t i = 0; i < dim; ++i) s.basis.at(i, col) = e.vectors.at(i, k);
        ++col;
    }
    return s;
}

} // namespace eqol
