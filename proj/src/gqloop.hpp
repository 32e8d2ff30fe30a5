#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eqmc.hpp"

namespace eqol {

// while (measure in X) { apply K }: a computational-basis projective guard
// and a channel body. The guard is kept as a valuation set when it was given
// that way; a raw projector is accepted for running but not for the chain
// reduction.
struct GeneralizedQuantumLoop {
    std::vector<std::string> qubits;
    SuperOperator body;
    std::optional<std::vector<std::size_t>> guard_vals;  // sorted indices
    ComplexMatrix m_x;     // continue-looping projector
    ComplexMatrix m_xbar;  // terminate projector

    std::size_t n() const { return qubits.size(); }
    std::size_t dim() const { return std::size_t{1} << qubits.size(); }

    // Guard a projector within 1e-9, body trace-preserving within 1e-7.
    void validate() const;
};

GeneralizedQuantumLoop make_loop(std::vector<std::string> qubits, SuperOperator body,
                                 std::vector<std::size_t> guard_vals);
GeneralizedQuantumLoop make_loop_projector(std::vector<std::string> qubits, SuperOperator body,
                                           ComplexMatrix guard_projector);

// One round on the unnormalized continuing mass: the part measured outside X
// terminates, the rest runs through the body.
struct LoopStepResult {
    double p_term_mass = 0.0;
    ComplexMatrix rho_next;
};
LoopStepResult loop_step(const GeneralizedQuantumLoop& loop, const ComplexMatrix& rho_tilde);

struct LoopRunEntry {
    std::size_t n = 0;
    double mass = 0.0;       // tr of the unnormalized continuing state entering round n
    double term_mass = 0.0;  // mass terminating at round n
    double p_nonterm = 0.0;  // per-round conditional nontermination probability
    double p_term = 0.0;
};

struct LoopRun {
    std::vector<LoopRunEntry> entries;       // rounds 0..N
    std::vector<ComplexMatrix> rho_tilde;    // unnormalized states, same indexing
    bool exact = false;                      // rational diagonal fast path used
    std::vector<Rational> exact_nonterm;     // per-round p_NT when exact
};

LoopRun run_loop(const GeneralizedQuantumLoop& loop, const DensityOperator& rho0,
                 std::size_t max_steps);

// tr(M_X rho_tilde_n) / tr(rho_tilde_n), read as 0 once the continuing mass
// is exhausted.
double nonterm_prob(const GeneralizedQuantumLoop& loop, const DensityOperator& rho0,
                    std::size_t n);

struct TerminationResult {
    bool terminated = false;
    std::size_t index = 0;    // least round with p_NT at or under tol, else max_steps
    double residual = 0.0;    // remaining unnormalized mass when not terminated
    bool exact = false;       // decided on the exact-rational path
};
TerminationResult terminates_within(const GeneralizedQuantumLoop& loop,
                                    const DensityOperator& rho0, std::size_t max_steps,
                                    double tol);

// Chain reduction: the continuing branch evolves through the body, the
// terminated branch freezes; the query formula says "no mass left in the
// guard region". Requires a valuation-set guard.
std::pair<ExogenousQMC, QF> to_eqmc(const GeneralizedQuantumLoop& loop);

} // namespace eqol
