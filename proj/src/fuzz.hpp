#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axioms.hpp"
#include "rng.hpp"
#include "structure.hpp"

namespace eqol {

// Random generators shared by the soundness fuzzer and the test suite.
std::vector<std::string> fuzz_qubit_names(std::size_t n);
CF random_cformula(DetRng& rng, const std::vector<std::string>& qubits, int depth);
std::vector<std::string> random_subset(DetRng& rng, const std::vector<std::string>& qubits);
std::vector<std::vector<std::string>> random_partition(DetRng& rng,
                                                       const std::vector<std::string>& qubits);
Structure random_structure(DetRng& rng, std::size_t n_min, std::size_t n_max);
// Unentangled per-block states, admissible set left unrestricted.
Structure random_product_structure(DetRng& rng, std::size_t n_min, std::size_t n_max,
                                   std::size_t min_blocks = 1);
// Variable-free term whose syntactic support stays inside `allowed`; tensor
// operands get disjoint pieces of it, so the term is always evaluable.
TermP random_term(DetRng& rng, const std::vector<std::string>& allowed, int depth);
QF random_quantum_atom(DetRng& rng, const std::vector<std::string>& qubits);

// A schema instance paired with a structure it should hold in. Most schemas
// take an arbitrary structure; the positivity-of-tensors shape needs a
// product state split across the tensor, with factor values kept away from
// the satisfaction tolerance.
struct FuzzCase {
    QF formula;
    Structure M;
};

FuzzCase random_schema_case(DetRng& rng, AxiomName ax, std::size_t n_min, std::size_t n_max);

struct SchemaResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t mismatched = 0;   // generated instance the schema matcher refused
    std::size_t unsatisfied = 0;  // instance that failed in its structure
    std::vector<std::string> counterexamples;  // capped per schema

    bool ok() const { return mismatched == 0 && unsatisfied == 0; }
};

struct FuzzReport {
    std::uint64_t seed = 0;
    double tol = 0.0;
    std::vector<SchemaResult> schemas;

    bool all_passed() const;
    std::size_t total() const;
};

// Generates per_schema instances of every axiom schema over random structures
// with n_min..n_max qubits and checks that each instance passes its own
// matcher and is satisfied.
FuzzReport soundness_fuzz(std::uint64_t seed, std::size_t per_schema, std::size_t n_min = 1,
                          std::size_t n_max = 4, double tol = 1e-7);

} // namespace eqol
