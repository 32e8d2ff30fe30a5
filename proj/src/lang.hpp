#pragma once

#include "ast.hpp"

#include <map>
#include <set>

namespace eqol {

// Valuations over an ordered qubit list are basis indices: qubit slot 0 is
// the most significant bit.
std::string val_to_string(std::size_t v, std::size_t n);
std::size_t string_to_val(const std::string& bits, std::size_t n);

std::set<std::string> atoms_of(const CF& f);

// Satisfying valuation indices of alpha over qB, ascending. Atoms must be
// declared in qB.
std::vector<std::size_t> valuations_of(const CF& alpha, const std::vector<std::string>& qB);

bool eval_classical(const CF& alpha, const std::vector<std::string>& qB, std::size_t v);

// Truth-table check over the atoms of alpha joined with qB; |qB| capped at 20.
bool is_classical_tautology(const CF& alpha, const std::vector<std::string>& qB);

// Homomorphic lift of a propositional formula into the quantum level: atoms
// map through `image`, falsum to QF, implication to quantum implication.
QF hom_f(const CF& alpha, const std::map<std::string, QF>& image);

// Conjunction of quantum atoms and negated quantum atoms.
struct Molecule {
    std::vector<QF> pos;
    std::vector<QF> neg;
    bool overlap = false;  // same atom on both sides: semantically unsatisfiable
};

// Distinct quantum atoms (Leq / SubSys leaves) in order of first occurrence.
std::vector<QF> quantum_atoms_of(const QF& f);

// Truth-table expansion over the formula's own atom set: one molecule per
// satisfying row of the propositional skeleton.
std::vector<Molecule> to_dnf(const QF& f);
QF molecule_formula(const Molecule& m);
QF dnf_formula(const std::vector<Molecule>& ms);

// Replaces every Integral(alpha) with the sum of T operators over alpha's
// satisfying valuations (restricted to admissible valuations when given);
// the empty sum collapses to the null term.
QF eliminate_integrals(const QF& f, const std::vector<std::string>& qB);
QF eliminate_integrals(const QF& f, const std::vector<std::string>& qB,
                       const std::vector<std::size_t>& admissible);
TermP eliminate_integrals_term(const TermP& t, const std::vector<std::string>& qB,
                               const std::vector<std::size_t>* admissible);

QF substitute(const QF& f, const std::map<std::string, TermP>& binding);
TermP substitute_term(const TermP& t, const std::map<std::string, TermP>& binding);

// Nesting depth of quantum implication: atoms and QF measure 0.
std::size_t formula_length(const QF& f);

// True when the formula mentions no Integral and no T operator.
bool is_analytical(const QF& f);

bool term_has_var(const TermP& t);
bool formula_has_var(const QF& f);

// Qubits a term can act on nontrivially: measured sets, integral atoms,
// everything for a variable.
std::set<std::string> syntactic_support(const TermP& t, const std::vector<std::string>& qB);

} // namespace eqol
