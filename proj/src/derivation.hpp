#pragma once

#include <string>
#include <vector>

#include "ast.hpp"
#include "axioms.hpp"

namespace eqol {

// A replayed proof script. Steps live at the quantum level unless marked
// classical; classical steps carry propositional formulas and may only be
// justified by premises, hypotheses, or CMP.
struct Justification {
    enum Kind { PREMISE, HYPOTHESIS, AXIOM, CMP, QMP, TEMPLATE, FOLLOWS } kind = PREMISE;
    AxiomName axiom = AxiomName::QTaut;
    TemplateName tpl = TemplateName::LeqRefl;
    std::size_t i = 0, j = 0;        // CMP / QMP operands, zero-based
    std::vector<std::size_t> refs;   // FOLLOWS references, zero-based
};

struct Step {
    std::string text;
    bool classical_level = false;
    QF formula;    // quantum-level steps
    CF classical;  // classical-level steps
    Justification just;
};

struct DerivationScript {
    std::vector<std::string> qubits;  // ambient qubit list; inferred when empty
    std::vector<Step> steps;
};

enum class StepStatus { OK, REJECTED, UNSUPPORTED };

struct StepReport {
    StepStatus status = StepStatus::OK;
    std::string detail;
};

struct DerivationReport {
    bool accepted = false;     // every step checked out
    bool unsupported = false;  // no rejection, but some step is undecidable here
    std::vector<std::string> qubits;
    std::vector<StepReport> steps;
};

DerivationReport verify_derivation(const DerivationScript& script);

// Entailment used by FOLLOWS: truth-table over the quantum-atom skeleton of
// premises and conclusion, strengthened with order clauses (reflexivity and
// transitivity over the atom set closed under composition) and positivity
// clauses for tensor terms.
bool follows_propositionally(const std::vector<QF>& premises, const QF& conclusion);

} // namespace eqol
