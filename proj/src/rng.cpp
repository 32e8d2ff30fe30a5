#include "rng.hpp"

#include <cmath>

namespace eqol {

double DetRng::uniform() {
    // Top 53 bits of the engine output, scaled to [0, 1).
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double DetRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::size_t DetRng::index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double DetRng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
}

cplx DetRng::gaussian_cplx() {
    return cplx(gaussian(), gaussian());
}

ComplexMatrix DetRng::random_unitary(std::size_t n) {
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n * n; ++i) g.a[i] = gaussian_cplx();
    // Gram-Schmidt over the columns.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t prev = 0; prev < k; ++prev) {
            cplx dot = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dot += std::conj(g.at(i, prev)) * g.at(i, k);
            for (std::size_t i = 0; i < n; ++i)
                g.at(i, k) -= dot * g.at(i, prev);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(g.at(i, k));
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) g.at(i, k) /= norm;
    }
    return g;
}

DensityOperator DetRng::random_density(std::size_t dim) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim * dim; ++i) g.a[i] = gaussian_cplx();
    ComplexMatrix m = g * g.adjoint();
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) += 0.1 * (1.0 + uniform());
    cplx tr = m.trace();
    m = m.scaled(1.0 / tr.real());
    return DensityOperator::from_dense(std::move(m));
}

DensityOperator DetRng::random_density_supported(std::size_t dim, const std::vector<std::size_t>& support_indices) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim * dim; ++i) g.a[i] = gaussian_cplx();
    ComplexMatrix m = g * g.adjoint();
    // Project onto the span of the listed basis states.
    ComplexMatrix p(dim, dim);
    for (std::size_t idx : support_indices) p.at(idx, idx) = 1.0;
    m = p * m * p;
    double tr = m.trace().real();
    if (tr <= 1e-12) throw model_error("random supported density collapsed to zero");
    m = m.scaled(1.0 / tr);
    return DensityOperator::from_dense(std::move(m));
}

} // namespace eqol
