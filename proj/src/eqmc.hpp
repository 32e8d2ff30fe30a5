#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ast.hpp"
#include "structure.hpp"

namespace eqol {

// A quantum Markov chain evolving by one fixed channel, with atomic
// propositions evaluated through a structure template (V, partition) shared
// by every visited state.
struct ExogenousQMC {
    std::vector<std::string> qubits;
    SuperOperator epsilon;
    std::vector<DensityOperator> init_states;
    std::vector<QF> ap;
    std::vector<std::string> ap_text;
    ValSet V;
    std::vector<std::vector<std::string>> partition;

    std::size_t n() const { return qubits.size(); }
    std::size_t dim() const { return std::size_t{1} << qubits.size(); }

    // Channel trace-preserving within 1e-7, dimensions consistent, atomic
    // propositions variable-free.
    void validate() const;

    Structure structure_at(const DensityOperator& rho) const;
};

// One evolution step, validated; trace drift beyond 1e-6 is an error.
DensityOperator qmc_step(const ExogenousQMC& chain, const DensityOperator& rho);

// Indices of the atomic propositions satisfied at rho.
std::vector<std::size_t> qmc_label(const ExogenousQMC& chain, const DensityOperator& rho,
                                   double tol);

struct Trajectory {
    std::vector<DensityOperator> states;
    std::vector<std::vector<std::size_t>> labels;
};
Trajectory qmc_trajectory(const ExogenousQMC& chain, const DensityOperator& rho0,
                          std::size_t steps, double tol);

// Support image of a subspace under the channel.
Subspace image_subspace(const SuperOperator& epsilon, const Subspace& w);

// supp(rho_next) contained in the channel image of supp(rho).
bool adjacent(const DensityOperator& rho, const DensityOperator& rho_next,
              const SuperOperator& epsilon, double tol);

// Accumulated reachable subspace from an initial support, with the index at
// which it stops growing.
struct ReachableResult {
    Subspace subspace;
    std::size_t stabilization_index = 0;
};
ReachableResult reachable_subspace(const SuperOperator& epsilon, const Subspace& init,
                                   std::size_t cap);

enum class McMode { F, G, U, I };
enum class McVerdict { HOLDS, FAILS, UNKNOWN };

std::optional<McMode> mode_from_name(const std::string& s);
const char* mode_name(McMode m);
const char* verdict_name(McVerdict v);

enum class CycleKind { NONE, EXACT_STATE, SUPPORT_LABEL };

struct McResult {
    McVerdict verdict = McVerdict::UNKNOWN;
    std::optional<std::size_t> witness;
    CycleKind cycle = CycleKind::NONE;
    std::optional<std::size_t> cycle_start;
    std::optional<std::size_t> cycle_period;
    std::size_t steps_examined = 0;
};

// Decides the temporal query along the canonical trajectory
// rho_{i+1} = epsilon(rho_i), bounded by the horizon. Cycles in the state
// sequence make the infinite suffix periodic: a state repeat (within 1e-9)
// decides every mode exactly; a repeat of (support, labels, gamma-truth)
// within 1e-8 decides heuristically and is marked as such.
McResult check_reachability(const ExogenousQMC& chain, const DensityOperator& rho0,
                            McMode mode, const QF& gamma, std::size_t horizon, double tol);

// 4^n + 8, capped.
std::size_t default_horizon(std::size_t n_qubits);

// The path semantics the checker implements, stated for reports.
const char* canonical_semantics_note();

} // namespace eqol
