#pragma once

#include "matrix.hpp"
#include "density.hpp"

#include <random>

namespace eqol {

// Seeded random source for fuzzing and sampled checks. All draws go through
// the raw 64-bit engine so sequences are identical across platforms.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    std::size_t index(std::size_t n);       // {0, .., n-1}
    double gaussian();
    cplx gaussian_cplx();

    ComplexMatrix random_unitary(std::size_t n);
    // Full-rank mixed state: normalized A A^dagger blended with a bit of
    // diagonal noise so eigenvalues stay away from degenerate clusters.
    DensityOperator random_density(std::size_t dim);
    // Mixed state whose support lies inside the span of the given basis
    // indices: P A A^dagger P renormalized.
    DensityOperator random_density_supported(std::size_t dim, const std::vector<std::size_t>& support_indices);

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace eqol
