#include "eqmc.hpp"

#include <algorithm>
#include <cmath>

#include "base.hpp"
#include "interp.hpp"
#include "lang.hpp"

namespace eqol {

namespace {

constexpr double kStateCycleTol = 1e-9;
constexpr double kSupportCycleTol = 1e-8;
constexpr double kStepDriftTol = 1e-6;

struct Lasso {
    std::size_t start = 0;   // first index of the repeating block
    std::size_t closing = 0; // index whose state re-entered the block
    CycleKind kind = CycleKind::NONE;
};

McResult decide_on_lasso(McMode mode, const std::vector<bool>& sats, const Lasso& lasso) {
    McResult r;
    r.cycle = lasso.kind;
    r.cycle_start = lasso.start;
    r.cycle_period = lasso.closing - lasso.start;
    r.steps_examined = lasso.closing + 1;

    // The infinite satisfaction sequence is sats[0..closing-1] with the tail
    // sats[start..closing-1] repeating. F and G never reach a closure with a
    // decisive index (they would have returned earlier), so closure means
    // uniformly false resp. uniformly true.
    bool any_cycle_true = false, all_cycle_true = true;
    std::size_t first_cycle_true = 0, first_cycle_false = 0;
    bool seen_true = false, seen_false = false;
    for (std::size_t k = lasso.start; k < lasso.closing; ++k) {
        if (sats[k]) {
            any_cycle_true = true;
            if (!seen_true) first_cycle_true = k;
            seen_true = true;
        } else {
            all_cycle_true = false;
            if (!seen_false) first_cycle_false = k;
            seen_false = true;
        }
    }
    std::size_t last_true_end = 0, last_false_end = 0;  // index after the last such entry
    for (std::size_t k = 0; k < lasso.closing; ++k) {
        if (sats[k]) last_true_end = k + 1;
        else last_false_end = k + 1;
    }

    switch (mode) {
        case McMode::F:
            r.verdict = McVerdict::FAILS;
            r.witness = lasso.start;
            break;
        case McMode::G:
            r.verdict = McVerdict::HOLDS;
            r.witness = lasso.start;
            break;
        case McMode::U:
            if (all_cycle_true) {
                r.verdict = McVerdict::HOLDS;
                r.witness = last_false_end;  // from here on, always true
            } else {
                r.verdict = McVerdict::FAILS;
                r.witness = first_cycle_false;
            }
            break;
        case McMode::I:
            if (any_cycle_true) {
                r.verdict = McVerdict::HOLDS;
                r.witness = first_cycle_true;
            } else {
                r.verdict = McVerdict::FAILS;
                r.witness = last_true_end;  // from here on, never true again
            }
            break;
    }
    return r;
}

} // namespace

void ExogenousQMC::validate() const {
    if (qubits.empty()) throw model_error("chain needs at least one qubit");
    if (epsilon.dim != dim()) throw model_error("channel dimension does not match the qubit count");
    if (!is_trace_preserving(epsilon, 1e-7))
        throw model_error("chain channel is not trace-preserving");
    for (const DensityOperator& rho : init_states) {
        if (rho.dim != dim()) throw model_error("initial state dimension mismatch");
        rho.validate();
    }
    for (const QF& a : ap)
        if (formula_has_var(a)) throw model_error("atomic propositions must be variable-free");
    if (ap_text.size() != ap.size()) throw model_error("atomic proposition texts out of sync");
}

Structure ExogenousQMC::structure_at(const DensityOperator& rho) const {
    Structure M;
    M.qubits = qubits;
    M.V = V;
    M.partition = partition;
    M.global_state = rho;
    M.validate(1e-6);
    return M;
}

DensityOperator qmc_step(const ExogenousQMC& chain, const DensityOperator& rho) {
    ComplexMatrix next = apply(chain.epsilon, rho.dense());
    double drift = std::abs(next.trace().real() - rho.trace_real());
    if (drift > kStepDriftTol)
        throw model_error("trace drift beyond tolerance in chain step");
    DensityOperator out = DensityOperator::from_dense(next);
    out.validate(kStepDriftTol);
    return out;
}

std::vector<std::size_t> qmc_label(const ExogenousQMC& chain, const DensityOperator& rho,
                                   double tol) {
    Structure M = chain.structure_at(rho);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < chain.ap.size(); ++k)
        if (satisfies(M, chain.ap[k], tol)) out.push_back(k);
    return out;
}

Trajectory qmc_trajectory(const ExogenousQMC& chain, const DensityOperator& rho0,
                          std::size_t steps, double tol) {
    Trajectory t;
    DensityOperator rho = rho0;
    for (std::size_t i = 0; i <= steps; ++i) {
        t.states.push_back(rho);
        t.labels.push_back(qmc_label(chain, rho, tol));
        if (i < steps) rho = qmc_step(chain, rho);
    }
    return t;
}

Subspace image_subspace(const SuperOperator& epsilon, const Subspace& w) {
    if (w.rank() == 0) return Subspace{w.dim, ComplexMatrix(w.dim, 0)};
    ComplexMatrix rho = w.projector().scaled(1.0 / double(w.rank()));
    ComplexMatrix img = apply(epsilon, rho);
    return DensityOperator::from_dense(img).support(1e-10);
}

bool adjacent(const DensityOperator& rho, const DensityOperator& rho_next,
              const SuperOperator& epsilon, double tol) {
    Subspace img = image_subspace(epsilon, rho.support());
    return img.contains(rho_next.support(), tol);
}

ReachableResult reachable_subspace(const SuperOperator& epsilon, const Subspace& init,
                                   std::size_t cap) {
    ReachableResult r{init, 0};
    for (std::size_t k = 0; k < cap; ++k) {
        Subspace img = image_subspace(epsilon, r.subspace);
        ComplexMatrix joined = r.subspace.projector() + img.projector();
        Subspace next = column_space(joined, 1e-8);
        if (next.rank() == r.subspace.rank()) return r;
        r.subspace = next;
        r.stabilization_index = k + 1;
    }
    return r;
}

std::optional<McMode> mode_from_name(const std::string& s) {
    if (s == "F") return McMode::F;
    if (s == "G") return McMode::G;
    if (s == "U") return McMode::U;
    if (s == "I") return McMode::I;
    return std::nullopt;
}

const char* mode_name(McMode m) {
    switch (m) {
        case McMode::F: return "F";
        case McMode::G: return "G";
        case McMode::U: return "U";
        case McMode::I: return "I";
    }
    return "?";
}

const char* verdict_name(McVerdict v) {
    switch (v) {
        case McVerdict::HOLDS: return "HOLDS";
        case McVerdict::FAILS: return "FAILS";
        case McVerdict::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

McResult check_reachability(const ExogenousQMC& chain, const DensityOperator& rho0,
                            McMode mode, const QF& gamma, std::size_t horizon, double tol) {
    std::vector<DensityOperator> states;
    std::vector<bool> sats;
    std::vector<ComplexMatrix> supports;
    std::vector<std::vector<std::size_t>> labels;

    DensityOperator rho = rho0;
    for (std::size_t i = 0; i <= horizon; ++i) {
        Structure M = chain.structure_at(rho);
        bool sat = satisfies(M, gamma, tol);

        if (mode == McMode::F && sat) {
            McResult r;
            r.verdict = McVerdict::HOLDS;
            r.witness = i;
            r.steps_examined = i + 1;
            return r;
        }
        if (mode == McMode::G && !sat) {
            McResult r;
            r.verdict = McVerdict::FAILS;
            r.witness = i;
            r.steps_examined = i + 1;
            return r;
        }

        ComplexMatrix dense = rho.dense();
        for (std::size_t j = 0; j < states.size(); ++j) {
            if (states[j].dense().max_abs_diff(dense) <= kStateCycleTol) {
                sats.push_back(sat);
                return decide_on_lasso(mode, sats, {j, i, CycleKind::EXACT_STATE});
            }
        }
        ComplexMatrix supp = rho.support(1e-8).projector();
        std::vector<std::size_t> lab = qmc_label(chain, rho, tol);
        for (std::size_t j = 0; j < states.size(); ++j) {
            if (sats[j] == sat && labels[j] == lab &&
                supports[j].max_abs_diff(supp) <= kSupportCycleTol) {
                sats.push_back(sat);
                return decide_on_lasso(mode, sats, {j, i, CycleKind::SUPPORT_LABEL});
            }
        }

        states.push_back(rho);
        sats.push_back(sat);
        supports.push_back(supp);
        labels.push_back(lab);
        if (i < horizon) rho = qmc_step(chain, rho);
    }

    McResult r;
    r.verdict = McVerdict::UNKNOWN;
    r.steps_examined = horizon + 1;
    return r;
}

std::size_t default_horizon(std::size_t n_qubits) {
    constexpr std::size_t cap = 100000;
    if (n_qubits >= 9) return cap;
    std::size_t h = (std::size_t{1} << (2 * n_qubits)) + 8;
    return std::min(h, cap);
}

const char* canonical_semantics_note() {
    return "semantics: canonical trajectory rho[i+1] = epsilon(rho[i]); the adjacency "
           "relation over all support-compatible successors is exposed as a predicate "
           "but paths are not enumerated over it";
}

} // namespace eqol
