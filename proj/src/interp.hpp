#pragma once

#include "ast.hpp"
#include "structure.hpp"

namespace eqol {

// Interpretation of a term over a sub-list of the structure's qubits, in
// canonical order. Tensor operands must have disjoint syntactic supports;
// the factors are interpreted over their own supports, padded with identity
// on the rest and permuted back to canonical layout.
SuperOperator interp_rel(const Structure& M, const TermP& t, const std::vector<std::string>& qlist);
SuperOperator interp_term(const Structure& M, const TermP& t);

// Per-valuation trace weights for variable-free terms on diagonal states:
// tr([t](P_v)) as a function of v. eval is then the weighted sum of the
// state's diagonal.
std::vector<double> term_weights(const Structure& M, const TermP& t, const std::vector<std::string>& qlist);
std::vector<Rational> term_weights_exact(const Structure& M, const TermP& t, const std::vector<std::string>& qlist);

// tr([t](rho)); diagonal states with variable-free terms take the weight
// fast path, everything else goes through the dense interpretation.
double eval_term(const Structure& M, const TermP& t);
// Exact value when the state carries rational diagonal weights and the term
// is variable-free.
std::optional<Rational> eval_term_exact(const Structure& M, const TermP& t);

bool satisfies(const Structure& M, const QF& f, double tol = kDefaultTol);

struct AtomReport {
    std::string text;
    bool is_leq = false;
    double left = 0.0;   // term values for Leq atoms
    double right = 0.0;
    bool holds = false;
};

struct CheckReport {
    bool verdict = false;
    std::size_t n_qubits = 0;
    std::size_t length = 0;
    double elapsed_ms = 0.0;
    std::vector<AtomReport> atoms;
    bool non_physical = false;  // some term value fell outside [0,1] beyond tolerance
};

CheckReport model_check(const Structure& M, const QF& f, double tol = kDefaultTol);

// Report view of a trace value: snapped onto [0,1] when within tol of the
// band, left untouched otherwise.
double clamp_unit(double x, double tol);

} // namespace eqol
