#pragma once

#include "ast.hpp"

namespace eqol {

// Each entry point parses the whole input; trailing tokens are an error.
// Derived connectives are desugared during parsing, and a bare operator term
// in formula position is coerced to (t = Id).
CF parse_classical(const std::string& text);
TermP parse_term(const std::string& text);
QF parse_formula(const std::string& text);

} // namespace eqol
