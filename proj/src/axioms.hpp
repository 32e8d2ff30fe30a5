#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ast.hpp"

namespace eqol {

enum class AxiomName {
    QTaut,
    RCF,
    Unit,
    CTaut,
    MeshEmpty,
    FAdd,
    Mon,
    Prob,
    MO1,
    SubEmpty,
    SubUnion,
    SubComplement,
};

enum class TemplateName {
    PosTensor,
    Contra,
    LeqTrans,
    LeqRefl,
    EqSym,
};

const char* axiom_name_str(AxiomName ax);
std::optional<AxiomName> axiom_from_name(const std::string& s);
const std::vector<AxiomName>& all_axioms();

const char* template_name_str(TemplateName tpl);
std::optional<TemplateName> template_from_name(const std::string& s);
const std::vector<TemplateName>& all_templates();

// Propositional tautology over the formula's quantum atoms (Leq/SubSys leaves
// treated as opaque letters). Throws unsupported_error past 20 distinct atoms.
bool is_skeleton_tautology(const QF& f);

// Schema match with side conditions; qb is the ambient qubit list, needed by
// the schemas that mention qB itself (Unit's unguarded form, Prob, SubComplement).
bool is_axiom_instance(const QF& f, AxiomName ax, const std::vector<std::string>& qb);

bool is_template_instance(const QF& f, TemplateName tpl);

// Every qubit name appearing in classical atoms or qubit sets of the formula.
std::set<std::string> mentioned_qubits(const QF& f);

} // namespace eqol
