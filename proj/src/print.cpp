#include "print.hpp"

namespace eqol {

namespace {

// Precedence levels, higher binds tighter. A node is parenthesized when its
// level is below the context's requirement.
// Classical: <-> 0, -> 1, | 2, & 3, ~ 4, atoms 5.
// Terms:      + 1, ox 2, * 3, scale 4, atoms 5.
// Quantum:  <=> 0, => 1, \/ 2, /\ 3, ! 4, atoms/relations 5.

std::string wrap(const std::string& s, int level, int context) {
    if (level < context) return "(" + s + ")";
    return s;
}

std::string qset_str(const std::vector<std::string>& names) {
    std::string s = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) s += ",";
        s += names[i];
    }
    return s + "}";
}

std::string pc(const CF& f, int context);

std::string pc_node(const CF& f, int& level) {
    if (f->kind == CFormula::FALSUM) { level = 5; return "false"; }
    if (f->kind == CFormula::ATOM) { level = 5; return f->atom; }
    if (cf_is_verum(f)) { level = 5; return "true"; }
    if (auto iff = cf_match_iff(f)) {
        level = 0;
        return pc(iff->first, 0) + " <-> " + pc(iff->second, 1);
    }
    if (auto conj = cf_match_and(f)) {
        level = 3;
        return pc(conj->first, 3) + " & " + pc(conj->second, 4);
    }
    if (auto neg = cf_match_not(f)) {
        level = 4;
        return "~" + pc(*neg, 4);
    }
    if (auto disj = cf_match_or(f)) {
        level = 2;
        return pc(disj->first, 2) + " | " + pc(disj->second, 3);
    }
    level = 1;
    return pc(f->lhs, 2) + " -> " + pc(f->rhs, 1);
}

std::string pc(const CF& f, int context) {
    int level;
    std::string s = pc_node(f, level);
    return wrap(s, level, context);
}

std::string pt(const TermP& t, int context);

std::string pt_node(const TermP& t, int& level) {
    switch (t->kind) {
    case Term::NUL: level = 5; return "O";
    case Term::IDENT: level = 5; return "Id";
    case Term::VAR: level = 5; return "$" + t->var;
    case Term::INTEGRAL: level = 5; return "int(" + pc(t->alpha, 0) + ")";
    case Term::TOP: level = 5; return "T[" + qset_str(t->a_set) + ";" + qset_str(t->g_set) + "]";
    case Term::ADD: level = 1; return pt(t->lhs, 1) + " + " + pt(t->rhs, 2);
    case Term::TENSOR: level = 2; return pt(t->lhs, 2) + " ox " + pt(t->rhs, 3);
    case Term::COMPOSE: level = 3; return pt(t->lhs, 3) + " * " + pt(t->rhs, 4);
    case Term::SCALE: level = 4; return t->coeff.str() + "." + pt(t->rhs, 4);
    }
    level = 5;
    return "";
}

std::string pt(const TermP& t, int context) {
    int level;
    std::string s = pt_node(t, level);
    return wrap(s, level, context);
}

std::string pq(const QF& f, int context);

std::string pq_node(const QF& f, int& level) {
    if (f->kind == QFormula::QFALSUM) { level = 5; return "QF"; }
    if (f->kind == QFormula::SUBSYS) { level = 5; return "[" + qset_str(f->g_set) + "]"; }
    if (f->kind == QFormula::LEQ) {
        level = 5;
        return pt(f->t1, 1) + " <= " + pt(f->t2, 1);
    }
    if (auto eq = qf_match_term_eq(f)) {
        level = 5;
        return pt(eq->first, 1) + " = " + pt(eq->second, 1);
    }
    if (auto lt = qf_match_term_lt(f)) {
        level = 5;
        return pt(lt->first, 1) + " < " + pt(lt->second, 1);
    }
    if (auto iff = qf_match_iff(f)) {
        level = 0;
        return pq(iff->first, 0) + " <=> " + pq(iff->second, 1);
    }
    if (auto conj = qf_match_and(f)) {
        level = 3;
        return pq(conj->first, 3) + " /\\ " + pq(conj->second, 4);
    }
    if (auto disj = qf_match_or(f)) {
        level = 2;
        return pq(disj->first, 2) + " \\/ " + pq(disj->second, 3);
    }
    if (auto neg = qf_match_not(f)) {
        level = 4;
        return "!" + pq(*neg, 4);
    }
    level = 1;
    return pq(f->lhs, 2) + " => " + pq(f->rhs, 1);
}

std::string pq(const QF& f, int context) {
    int level;
    std::string s = pq_node(f, level);
    return wrap(s, level, context);
}

} // namespace

std::string print_classical(const CF& f) { return pc(f, 0); }
std::string print_term(const TermP& t) { return pt(t, 0); }
std::string print_formula(const QF& f) { return pq(f, 0); }

} // namespace eqol
