#pragma once

#include "rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eqol {

// All three syntax levels store core constructors only. Derived connectives
// are desugared at construction time; the printer recognizes their shapes and
// writes them back in sugared form.

struct CFormula;
using CF = std::shared_ptr<const CFormula>;

struct CFormula {
    enum Kind { FALSUM, ATOM, IMPLIES };
    Kind kind;
    std::string atom;   // ATOM
    CF lhs, rhs;        // IMPLIES
};

CF cf_falsum();
CF cf_atom(const std::string& name);
CF cf_implies(CF l, CF r);
// Derived forms, stored desugared.
CF cf_not(CF f);
CF cf_or(CF l, CF r);
CF cf_and(CF l, CF r);
CF cf_iff(CF l, CF r);
CF cf_verum();

bool cf_equal(const CF& x, const CF& y);

// Shape recognizers used by the printer; each is the exact inverse of the
// builder above.
bool cf_is_verum(const CF& f);
std::optional<CF> cf_match_not(const CF& f);
std::optional<std::pair<CF, CF>> cf_match_and(const CF& f);
std::optional<std::pair<CF, CF>> cf_match_or(const CF& f);
std::optional<std::pair<CF, CF>> cf_match_iff(const CF& f);

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
    enum Kind { NUL, IDENT, VAR, INTEGRAL, TOP, ADD, COMPOSE, TENSOR, SCALE };
    Kind kind;
    std::string var;                       // VAR
    CF alpha;                              // INTEGRAL
    std::vector<std::string> a_set, g_set; // TOP, kept sorted and deduplicated
    TermP lhs, rhs;                        // binary nodes; SCALE uses rhs only
    Rational coeff;                        // SCALE
};

TermP term_null();
TermP term_ident();
TermP term_var(const std::string& name);
TermP term_integral(CF alpha);
// Requires A to be a subset of G.
TermP term_top(std::vector<std::string> a, std::vector<std::string> g);
TermP term_add(TermP l, TermP r);
TermP term_compose(TermP l, TermP r);
TermP term_tensor(TermP l, TermP r);
// Requires coefficient in [0,1].
TermP term_scale(const Rational& r, TermP t);

bool term_equal(const TermP& x, const TermP& y);

struct QFormula;
using QF = std::shared_ptr<const QFormula>;

struct QFormula {
    enum Kind { LEQ, SUBSYS, QFALSUM, QIMPLIES };
    Kind kind;
    TermP t1, t2;                   // LEQ
    std::vector<std::string> g_set; // SUBSYS, kept sorted and deduplicated
    QF lhs, rhs;                    // QIMPLIES
};

QF qf_leq(TermP t1, TermP t2);
QF qf_subsys(std::vector<std::string> g);
QF qf_falsum();
QF qf_implies(QF l, QF r);
// Derived forms, stored desugared.
QF qf_not(QF f);
QF qf_or(QF l, QF r);
QF qf_and(QF l, QF r);
QF qf_iff(QF l, QF r);
QF qf_term_eq(TermP t1, TermP t2);
QF qf_term_lt(TermP t1, TermP t2);
// Coercion for a bare term in formula position: t = Id.
QF qf_term(TermP t);

bool qf_equal(const QF& x, const QF& y);

std::optional<QF> qf_match_not(const QF& f);
std::optional<std::pair<QF, QF>> qf_match_and(const QF& f);
std::optional<std::pair<QF, QF>> qf_match_or(const QF& f);
std::optional<std::pair<QF, QF>> qf_match_iff(const QF& f);
std::optional<std::pair<TermP, TermP>> qf_match_term_eq(const QF& f);
std::optional<std::pair<TermP, TermP>> qf_match_term_lt(const QF& f);

// ASTs are built desugared, so this is the identity; kept as the named
// entry point and verified as idempotent in tests.
QF desugar(const QF& f);

} // namespace eqol
