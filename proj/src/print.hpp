#pragma once

#include "ast.hpp"

namespace eqol {

// Inverse of the parser: emits sugared concrete syntax with minimal
// parentheses so that parse(print(x)) is structurally equal to x.
std::string print_classical(const CF& f);
std::string print_term(const TermP& t);
std::string print_formula(const QF& f);

} // namespace eqol
