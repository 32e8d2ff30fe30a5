#pragma once

#include "density.hpp"
#include "rational.hpp"

#include <vector>

namespace eqol {

// Completely positive map in Kraus form. An empty operator list is the zero
// map. Trace preservation is not assumed; sums and scalings of channels live
// here too.
struct SuperOperator {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> kraus;

    static SuperOperator null_map(std::size_t dim);
    static SuperOperator identity(std::size_t dim);
    static SuperOperator single(ComplexMatrix k);

    bool is_null() const { return kraus.empty(); }
};

ComplexMatrix apply(const SuperOperator& e, const ComplexMatrix& rho);

SuperOperator so_add(const SuperOperator& e1, const SuperOperator& e2);
// Sequential composition: (e1 after e2)(rho) = e1(e2(rho)).
SuperOperator so_compose(const SuperOperator& e1, const SuperOperator& e2);
SuperOperator so_tensor(const SuperOperator& e1, const SuperOperator& e2);
// Scales the map by a factor in [0,1] (folded into the Kraus operators).
SuperOperator so_scale(const Rational& r, const SuperOperator& e);

// Diagonal projector onto the listed computational basis indices.
ComplexMatrix basis_projector(std::size_t dim, const std::vector<std::size_t>& indices);

// Trace observable Q = sum K_i^dagger K_i; tr(e(rho)) = tr(Q rho).
ComplexMatrix trace_observable(const SuperOperator& e);

// tr(e1(rho)) <= tr(e2(rho)) + tol at one state.
bool leq_at(const SuperOperator& e1, const SuperOperator& e2, const ComplexMatrix& rho, double tol);

// Order over every density operator: Q2 - Q1 positive semidefinite within
// tol. On failure the witness is the rank-one state built from the most
// negative eigendirection; leq_at rejects it at the same tolerance.
struct LeqResult {
    bool holds = true;
    double min_eigenvalue = 0.0;
    std::optional<ComplexMatrix> witness;
};
LeqResult leq_global_check(const SuperOperator& e1, const SuperOperator& e2, double tol);
bool leq_global(const SuperOperator& e1, const SuperOperator& e2, double tol);

// Trace-order equality: tr(e1(rho)) = tr(e2(rho)) for every rho, i.e. equal
// trace observables entrywise within tol.
bool eqsim(const SuperOperator& e1, const SuperOperator& e2, double tol);
bool eqsim_at(const SuperOperator& e1, const SuperOperator& e2, const ComplexMatrix& rho, double tol);

bool is_trace_preserving(const SuperOperator& e, double tol);

// Conjugation by the single projector onto the span of the listed
// computational-basis indices (one Kraus element).
SuperOperator projector_valuations(const std::vector<std::size_t>& indices, std::size_t n_qubits);

// Conjugation by the projector fixing qubits in A to 1, qubits in G minus A
// to 0, identity elsewhere. Qubit names resolve against qB, whose list order
// is the canonical tensor order (slot 0 = most significant bit).
SuperOperator t_operator(const std::vector<std::string>& A,
                         const std::vector<std::string>& G,
                         const std::vector<std::string>& qB);

// Projector for the outcome "slots in `ones` read 1, remaining measured
// slots read 0", identity elsewhere. Slot 0 is the most significant bit.
ComplexMatrix outcome_projector(std::size_t n_qubits,
                                const std::vector<std::size_t>& measured_slots,
                                const std::vector<std::size_t>& ones);

// Projective measure over an admissible valuation set.
struct ProjectiveMeasure {
    std::size_t n_qubits = 0;
    std::vector<std::size_t> admissible;  // valuation indices, non-empty
};
// Delta(U): projector onto U intersected with the admissible set. Rejects U
// outside the admissible set.
SuperOperator measure_of(const ProjectiveMeasure& pm, const std::vector<std::size_t>& U);

} // namespace eqol
