#include "ast.hpp"

#include "base.hpp"

#include <algorithm>

namespace eqol {

static std::vector<std::string> normalize_set(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

CF cf_falsum() {
    auto f = std::make_shared<CFormula>();
    f->kind = CFormula::FALSUM;
    return f;
}

CF cf_atom(const std::string& name) {
    auto f = std::make_shared<CFormula>();
    f->kind = CFormula::ATOM;
    f->atom = name;
    return f;
}

CF cf_implies(CF l, CF r) {
    auto f = std::make_shared<CFormula>();
    f->kind = CFormula::IMPLIES;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

CF cf_not(CF f) { return cf_implies(std::move(f), cf_falsum()); }
CF cf_or(CF l, CF r) { return cf_implies(cf_not(std::move(l)), std::move(r)); }
CF cf_and(CF l, CF r) { return cf_not(cf_implies(std::move(l), cf_not(std::move(r)))); }
CF cf_iff(CF l, CF r) { return cf_and(cf_implies(l, r), cf_implies(r, l)); }
CF cf_verum() { return cf_implies(cf_falsum(), cf_falsum()); }

bool cf_equal(const CF& x, const CF& y) {
    if (x.get() == y.get()) return true;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
    case CFormula::FALSUM: return true;
    case CFormula::ATOM: return x->atom == y->atom;
    case CFormula::IMPLIES: return cf_equal(x->lhs, y->lhs) && cf_equal(x->rhs, y->rhs);
    }
    return false;
}

bool cf_is_verum(const CF& f) {
    return f->kind == CFormula::IMPLIES && f->lhs->kind == CFormula::FALSUM &&
           f->rhs->kind == CFormula::FALSUM;
}

std::optional<CF> cf_match_not(const CF& f) {
    if (f->kind == CFormula::IMPLIES && f->rhs->kind == CFormula::FALSUM)
        return f->lhs;
    return std::nullopt;
}

std::optional<std::pair<CF, CF>> cf_match_and(const CF& f) {
    // a & b is stored as ~(a -> ~b).
    auto outer = cf_match_not(f);
    if (!outer || (*outer)->kind != CFormula::IMPLIES) return std::nullopt;
    auto inner = cf_match_not((*outer)->rhs);
    if (!inner) return std::nullopt;
    return std::make_pair((*outer)->lhs, *inner);
}

std::optional<std::pair<CF, CF>> cf_match_or(const CF& f) {
    // a | b is stored as ~a -> b.
    if (f->kind != CFormula::IMPLIES) return std::nullopt;
    auto neg = cf_match_not(f->lhs);
    if (!neg) return std::nullopt;
    return std::make_pair(*neg, f->rhs);
}

std::optional<std::pair<CF, CF>> cf_match_iff(const CF& f) {
    auto conj = cf_match_and(f);
    if (!conj) return std::nullopt;
    const CF& fwd = conj->first;
    const CF& bwd = conj->second;
    if (fwd->kind != CFormula::IMPLIES || bwd->kind != CFormula::IMPLIES) return std::nullopt;
    if (cf_match_not(fwd) || cf_match_not(bwd)) return std::nullopt;
    if (!cf_equal(fwd->lhs, bwd->rhs) || !cf_equal(fwd->rhs, bwd->lhs)) return std::nullopt;
    return std::make_pair(fwd->lhs, fwd->rhs);
}

TermP term_null() {
    auto t = std::make_shared<Term>();
    t->kind = Term::NUL;
    return t;
}

TermP term_ident() {
    auto t = std::make_shared<Term>();
    t->kind = Term::IDENT;
    return t;
}

TermP term_var(const std::string& name) {
    auto t = std::make_shared<Term>();
    t->kind = Term::VAR;
    t->var = name;
    return t;
}

TermP term_integral(CF alpha) {
    auto t = std::make_shared<Term>();
    t->kind = Term::INTEGRAL;
    t->alpha = std::move(alpha);
    return t;
}

TermP term_top(std::vector<std::string> a, std::vector<std::string> g) {
    auto t = std::make_shared<Term>();
    t->kind = Term::TOP;
    t->a_set = normalize_set(std::move(a));
    t->g_set = normalize_set(std::move(g));
    for (const std::string& x : t->a_set)
        if (!std::binary_search(t->g_set.begin(), t->g_set.end(), x))
            throw model_error("measurement outcome set not within the measured set");
    return t;
}

static TermP term_binary(Term::Kind k, TermP l, TermP r) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->lhs = std::move(l);
    t->rhs = std::move(r);
    return t;
}

TermP term_add(TermP l, TermP r) { return term_binary(Term::ADD, std::move(l), std::move(r)); }
TermP term_compose(TermP l, TermP r) { return term_binary(Term::COMPOSE, std::move(l), std::move(r)); }
TermP term_tensor(TermP l, TermP r) { return term_binary(Term::TENSOR, std::move(l), std::move(r)); }

TermP term_scale(const Rational& r, TermP inner) {
    if (r.num < 0 || Rational(1) < r) throw model_error("scale coefficient outside [0,1]");
    auto t = std::make_shared<Term>();
    t->kind = Term::SCALE;
    t->coeff = r;
    t->rhs = std::move(inner);
    return t;
}

bool term_equal(const TermP& x, const TermP& y) {
    if (x.get() == y.get()) return true;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
    case Term::NUL:
    case Term::IDENT: return true;
    case Term::VAR: return x->var == y->var;
    case Term::INTEGRAL: return cf_equal(x->alpha, y->alpha);
    case Term::TOP: return x->a_set == y->a_set && x->g_set == y->g_set;
    case Term::ADD:
    case Term::COMPOSE:
    case Term::TENSOR: return term_equal(x->lhs, y->lhs) && term_equal(x->rhs, y->rhs);
    case Term::SCALE: return x->coeff == y->coeff && term_equal(x->rhs, y->rhs);
    }
    return false;
}

QF qf_leq(TermP t1, TermP t2) {
    auto f = std::make_shared<QFormula>();
    f->kind = QFormula::LEQ;
    f->t1 = std::move(t1);
    f->t2 = std::move(t2);
    return f;
}

QF qf_subsys(std::vector<std::string> g) {
    auto f = std::make_shared<QFormula>();
    f->kind = QFormula::SUBSYS;
    f->g_set = normalize_set(std::move(g));
    return f;
}

QF qf_falsum() {
    auto f = std::make_shared<QFormula>();
    f->kind = QFormula::QFALSUM;
    return f;
}

QF qf_implies(QF l, QF r) {
    auto f = std::make_shared<QFormula>();
    f->kind = QFormula::QIMPLIES;
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

QF qf_not(QF f) { return qf_implies(std::move(f), qf_falsum()); }
QF qf_or(QF l, QF r) { return qf_implies(qf_not(std::move(l)), std::move(r)); }
QF qf_and(QF l, QF r) { return qf_not(qf_or(qf_not(std::move(l)), qf_not(std::move(r)))); }
QF qf_iff(QF l, QF r) { return qf_and(qf_implies(l, r), qf_implies(r, l)); }
QF qf_term_eq(TermP t1, TermP t2) { return qf_and(qf_leq(t1, t2), qf_leq(t2, t1)); }
QF qf_term_lt(TermP t1, TermP t2) { return qf_and(qf_leq(t1, t2), qf_not(qf_leq(t2, t1))); }
QF qf_term(TermP t) { return qf_term_eq(std::move(t), term_ident()); }

bool qf_equal(const QF& x, const QF& y) {
    if (x.get() == y.get()) return true;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
    case QFormula::LEQ: return term_equal(x->t1, y->t1) && term_equal(x->t2, y->t2);
    case QFormula::SUBSYS: return x->g_set == y->g_set;
    case QFormula::QFALSUM: return true;
    case QFormula::QIMPLIES: return qf_equal(x->lhs, y->lhs) && qf_equal(x->rhs, y->rhs);
    }
    return false;
}

std::optional<QF> qf_match_not(const QF& f) {
    if (f->kind == QFormula::QIMPLIES && f->rhs->kind == QFormula::QFALSUM)
        return f->lhs;
    return std::nullopt;
}

std::optional<std::pair<QF, QF>> qf_match_or(const QF& f) {
    if (f->kind != QFormula::QIMPLIES) return std::nullopt;
    auto neg = qf_match_not(f->lhs);
    if (!neg) return std::nullopt;
    return std::make_pair(*neg, f->rhs);
}

std::optional<std::pair<QF, QF>> qf_match_and(const QF& f) {
    // a /\ b is stored as !(!a \/ !b).
    auto outer = qf_match_not(f);
    if (!outer) return std::nullopt;
    auto disj = qf_match_or(*outer);
    if (!disj) return std::nullopt;
    auto na = qf_match_not(disj->first);
    auto nb = qf_match_not(disj->second);
    if (!na || !nb) return std::nullopt;
    return std::make_pair(*na, *nb);
}

std::optional<std::pair<QF, QF>> qf_match_iff(const QF& f) {
    auto conj = qf_match_and(f);
    if (!conj) return std::nullopt;
    const QF& fwd = conj->first;
    const QF& bwd = conj->second;
    if (fwd->kind != QFormula::QIMPLIES || bwd->kind != QFormula::QIMPLIES) return std::nullopt;
    if (qf_match_not(fwd) || qf_match_not(bwd)) return std::nullopt;
    if (!qf_equal(fwd->lhs, bwd->rhs) || !qf_equal(fwd->rhs, bwd->lhs)) return std::nullopt;
    return std::make_pair(fwd->lhs, fwd->rhs);
}

std::optional<std::pair<TermP, TermP>> qf_match_term_eq(const QF& f) {
    auto conj = qf_match_and(f);
    if (!conj) return std::nullopt;
    const QF& a = conj->first;
    const QF& b = conj->second;
    if (a->kind != QFormula::LEQ || b->kind != QFormula::LEQ) return std::nullopt;
    if (!term_equal(a->t1, b->t2) || !term_equal(a->t2, b->t1)) return std::nullopt;
    return std::make_pair(a->t1, a->t2);
}

std::optional<std::pair<TermP, TermP>> qf_match_term_lt(const QF& f) {
    auto conj = qf_match_and(f);
    if (!conj) return std::nullopt;
    const QF& a = conj->first;
    if (a->kind != QFormula::LEQ) return std::nullopt;
    auto neg = qf_match_not(conj->second);
    if (!neg || (*neg)->kind != QFormula::LEQ) return std::nullopt;
    if (!term_equal(a->t1, (*neg)->t2) || !term_equal(a->t2, (*neg)->t1)) return std::nullopt;
    return std::make_pair(a->t1, a->t2);
}

QF desugar(const QF& f) { return f; }

} // namespace eqol
