#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace eqol {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

// Input could not be tokenized or parsed; carries a position for diagnostics.
struct parse_error : std::runtime_error {
    std::size_t pos;
    parse_error(const std::string& msg, std::size_t at)
        : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

// A model, state, or assignment violates a structural requirement.
struct model_error : std::runtime_error {
    explicit model_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A derivation step uses a justification the verifier does not handle.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace eqol
