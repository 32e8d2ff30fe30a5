#pragma once

#include "density.hpp"
#include "superop.hpp"

#include <map>
#include <set>
#include <string>

namespace eqol {

// Admissible valuation set: all of 2^n or an explicit index list.
struct ValSet {
    bool all = true;
    std::vector<std::size_t> vals;  // sorted, used when !all

    bool contains(std::size_t v) const;
    std::vector<std::size_t> materialize(std::size_t n_qubits) const;
};

// The model a quantum formula is evaluated against: qubits in canonical
// (lexical) order, admissible valuations, a partition into unentangled
// blocks, the state (global or per block), and the variable assignment.
struct Structure {
    std::vector<std::string> qubits;
    ValSet V;
    std::vector<std::vector<std::string>> partition;  // blocks; insides sorted
    std::optional<DensityOperator> global_state;
    std::vector<DensityOperator> block_states;        // aligned with partition
    std::map<std::string, SuperOperator> sigma;

    std::size_t n() const { return qubits.size(); }
    std::size_t dim() const { return std::size_t{1} << qubits.size(); }
    std::size_t slot_of(const std::string& name) const;

    // Checks ordering, partition shape, state validity, sigma dimensions,
    // and that the state's support lies in the span of V.
    void validate(double state_tol = 1e-8) const;

    // Block states tensored in listed order and permuted to canonical qubit
    // order; computed once and cached.
    const DensityOperator& global_density() const;

private:
    mutable std::optional<DensityOperator> global_cache_;
};

// True when G is a union of partition blocks.
bool in_alg(const std::set<std::string>& G, const std::vector<std::vector<std::string>>& partition);
// All 2^|S| unions of blocks; capped at 20 blocks.
std::vector<std::set<std::string>> alg_of(const std::vector<std::vector<std::string>>& partition);

// Convenience builder for a global-state structure; qubit names must already
// be in canonical order.
Structure make_structure(std::vector<std::string> qubits, ValSet v,
                         std::vector<std::vector<std::string>> partition,
                         DensityOperator state);

} // namespace eqol
