#include "lang.hpp"

#include "base.hpp"

#include <algorithm>

namespace eqol {

std::string val_to_string(std::size_t v, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
        if ((v >> (n - 1 - i)) & 1u) s[i] = '1';
    return s;
}

std::size_t string_to_val(const std::string& bits, std::size_t n) {
    if (bits.size() != n) throw model_error("valuation bitstring length does not match qubit count");
    std::size_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw model_error("valuation bitstring must be binary");
        if (bits[i] == '1') v |= std::size_t{1} << (n - 1 - i);
    }
    return v;
}

std::set<std::string> atoms_of(const CF& f) {
    std::set<std::string> out;
    std::vector<CF> stack = {f};
    while (!stack.empty()) {
        CF cur = stack.back();
        stack.pop_back();
        if (cur->kind == CFormula::ATOM) out.insert(cur->atom);
        else if (cur->kind == CFormula::IMPLIES) {
            stack.push_back(cur->lhs);
            stack.push_back(cur->rhs);
        }
    }
    return out;
}

bool eval_classical(const CF& alpha, const std::vector<std::string>& qB, std::size_t v) {
    switch (alpha->kind) {
    case CFormula::FALSUM: return false;
    case CFormula::ATOM: {
        auto it = std::find(qB.begin(), qB.end(), alpha->atom);
        if (it == qB.end()) throw model_error("atom '" + alpha->atom + "' not declared");
        std::size_t slot = static_cast<std::size_t>(it - qB.begin());
        return (v >> (qB.size() - 1 - slot)) & 1u;
    }
    case CFormula::IMPLIES:
        return !eval_classical(alpha->lhs, qB, v) || eval_classical(alpha->rhs, qB, v);
    }
    return false;
}

std::vector<std::size_t> valuations_of(const CF& alpha, const std::vector<std::string>& qB) {
    if (qB.size() > 20) throw model_error("valuation enumeration bound exceeded");
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < (std::size_t{1} << qB.size()); ++v)
        if (eval_classical(alpha, qB, v)) out.push_back(v);
    return out;
}

bool is_classical_tautology(const CF& alpha, const std::vector<std::string>& qB) {
    std::vector<std::string> vars = qB;
    for (const std::string& a : atoms_of(alpha))
        if (std::find(vars.begin(), vars.end(), a) == vars.end()) vars.push_back(a);
    if (vars.size() > 20) throw model_error("tautology enumeration bound exceeded");
    for (std::size_t v = 0; v < (std::size_t{1} << vars.size()); ++v)
        if (!eval_classical(alpha, vars, v)) return false;
    return true;
}

QF hom_f(const CF& alpha, const std::map<std::string, QF>& image) {
    switch (alpha->kind) {
    case CFormula::FALSUM: return qf_falsum();
    case CFormula::ATOM: {
        auto it = image.find(alpha->atom);
        if (it == image.end()) throw model_error("unmapped variable '" + alpha->atom + "'");
        return it->second;
    }
    case CFormula::IMPLIES:
        return qf_implies(hom_f(alpha->lhs, image), hom_f(alpha->rhs, image));
    }
    throw model_error("unreachable classical constructor");
}

static void collect_atoms(const QF& f, std::vector<QF>& out) {
    switch (f->kind) {
    case QFormula::LEQ:
    case QFormula::SUBSYS:
        for (const QF& a : out)
            if (qf_equal(a, f)) return;
        out.push_back(f);
        return;
    case QFormula::QFALSUM:
        return;
    case QFormula::QIMPLIES:
        collect_atoms(f->lhs, out);
        collect_atoms(f->rhs, out);
        return;
    }
}

std::vector<QF> quantum_atoms_of(const QF& f) {
    std::vector<QF> out;
    collect_atoms(f, out);
    return out;
}

static bool eval_skeleton(const QF& f, const std::vector<QF>& atoms, std::size_t row) {
    switch (f->kind) {
    case QFormula::LEQ:
    case QFormula::SUBSYS:
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (qf_equal(atoms[i], f)) return (row >> i) & 1u;
        throw model_error("atom missing from skeleton table");
    case QFormula::QFALSUM:
        return false;
    case QFormula::QIMPLIES:
        return !eval_skeleton(f->lhs, atoms, row) || eval_skeleton(f->rhs, atoms, row);
    }
    return false;
}

std::vector<Molecule> to_dnf(const QF& f) {
    std::vector<QF> atoms = quantum_atoms_of(f);
    if (atoms.size() > 20) throw model_error("DNF atom bound exceeded");
    std::vector<Molecule> out;
    for (std::size_t row = 0; row < (std::size_t{1} << atoms.size()); ++row) {
        if (!eval_skeleton(f, atoms, row)) continue;
        Molecule m;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if ((row >> i) & 1u) m.pos.push_back(atoms[i]);
            else m.neg.push_back(atoms[i]);
        }
        out.push_back(std::move(m));
    }
    return out;
}

QF molecule_formula(const Molecule& m) {
    std::vector<QF> parts;
    for (const QF& a : m.pos) parts.push_back(a);
    for (const QF& a : m.neg) parts.push_back(qf_not(a));
    if (parts.empty()) return qf_not(qf_falsum());
    QF out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out = qf_and(out, parts[i]);
    return out;
}

QF dnf_formula(const std::vector<Molecule>& ms) {
    if (ms.empty()) return qf_falsum();
    QF out = molecule_formula(ms[0]);
    for (std::size_t i = 1; i < ms.size(); ++i) out = qf_or(out, molecule_formula(ms[i]));
    return out;
}

TermP eliminate_integrals_term(const TermP& t, const std::vector<std::string>& qB,
                               const std::vector<std::size_t>* admissible) {
    switch (t->kind) {
    case Term::NUL:
    case Term::IDENT:
    case Term::VAR:
    case Term::TOP:
        return t;
    case Term::INTEGRAL: {
        std::vector<std::size_t> vals = valuations_of(t->alpha, qB);
        if (admissible) {
            std::vector<std::size_t> kept;
            for (std::size_t v : vals)
                if (std::find(admissible->begin(), admissible->end(), v) != admissible->end())
                    kept.push_back(v);
            vals = std::move(kept);
        }
        if (vals.empty()) return term_null();
        TermP out;
        for (std::size_t v : vals) {
            std::vector<std::string> ones;
            for (std::size_t i = 0; i < qB.size(); ++i)
                if ((v >> (qB.size() - 1 - i)) & 1u) ones.push_back(qB[i]);
            TermP top = term_top(std::move(ones), qB);
            out = out ? term_add(out, top) : top;
        }
        return out;
    }
    case Term::ADD:
        return term_add(eliminate_integrals_term(t->lhs, qB, admissible),
                        eliminate_integrals_term(t->rhs, qB, admissible));
    case Term::COMPOSE:
        return term_compose(eliminate_integrals_term(t->lhs, qB, admissible),
                            eliminate_integrals_term(t->rhs, qB, admissible));
    case Term::TENSOR:
        return term_tensor(eliminate_integrals_term(t->lhs, qB, admissible),
                           eliminate_integrals_term(t->rhs, qB, admissible));
    case Term::SCALE:
        return term_scale(t->coeff, eliminate_integrals_term(t->rhs, qB, admissible));
    }
    return t;
}

static QF eliminate_impl(const QF& f, const std::vector<std::string>& qB,
                         const std::vector<std::size_t>* admissible) {
    switch (f->kind) {
    case QFormula::LEQ:
        return qf_leq(eliminate_integrals_term(f->t1, qB, admissible),
                      eliminate_integrals_term(f->t2, qB, admissible));
    case QFormula::SUBSYS:
    case QFormula::QFALSUM:
        return f;
    case QFormula::QIMPLIES:
        return qf_implies(eliminate_impl(f->lhs, qB, admissible),
                          eliminate_impl(f->rhs, qB, admissible));
    }
    return f;
}

QF eliminate_integrals(const QF& f, const std::vector<std::string>& qB) {
    return eliminate_impl(f, qB, nullptr);
}

QF eliminate_integrals(const QF& f, const std::vector<std::string>& qB,
                       const std::vector<std::size_t>& admissible) {
    return eliminate_impl(f, qB, &admissible);
}

TermP substitute_term(const TermP& t, const std::map<std::string, TermP>& binding) {
    switch (t->kind) {
    case Term::NUL:
    case Term::IDENT:
    case Term::INTEGRAL:
    case Term::TOP:
        return t;
    case Term::VAR: {
        auto it = binding.find(t->var);
        return it == binding.end() ? t : it->second;
    }
    case Term::ADD:
        return term_add(substitute_term(t->lhs, binding), substitute_term(t->rhs, binding));
    case Term::COMPOSE:
        return term_compose(substitute_term(t->lhs, binding), substitute_term(t->rhs, binding));
    case Term::TENSOR:
        return term_tensor(substitute_term(t->lhs, binding), substitute_term(t->rhs, binding));
    case Term::SCALE:
        return term_scale(t->coeff, substitute_term(t->rhs, binding));
    }
    return t;
}

QF substitute(const QF& f, const std::map<std::string, TermP>& binding) {
    switch (f->kind) {
    case QFormula::LEQ:
        return qf_leq(substitute_term(f->t1, binding), substitute_term(f->t2, binding));
    case QFormula::SUBSYS:
    case QFormula::QFALSUM:
        return f;
    case QFormula::QIMPLIES:
        return qf_implies(substitute(f->lhs, binding), substitute(f->rhs, binding));
    }
    return f;
}

std::size_t formula_length(const QF& f) {
    if (f->kind != QFormula::QIMPLIES) return 0;
    return std::max(formula_length(f->lhs), formula_length(f->rhs)) + 1;
}

static bool term_is_analytical(const TermP& t) {
    switch (t->kind) {
    case Term::NUL:
    case Term::IDENT:
    case Term::VAR:
        return true;
    case Term::INTEGRAL:
    case Term::TOP:
        return false;
    case Term::ADD:
    case Term::COMPOSE:
    case Term::TENSOR:
        return term_is_analytical(t->lhs) && term_is_analytical(t->rhs);
    case Term::SCALE:
        return term_is_analytical(t->rhs);
    }
    return true;
}

bool is_analytical(const QF& f) {
    switch (f->kind) {
    case QFormula::LEQ:
        return term_is_analytical(f->t1) && term_is_analytical(f->t2);
    case QFormula::SUBSYS:
    case QFormula::QFALSUM:
        return true;
    case QFormula::QIMPLIES:
        return is_analytical(f->lhs) && is_analytical(f->rhs);
    }
    return true;
}

bool term_has_var(const TermP& t) {
    switch (t->kind) {
    case Term::VAR: return true;
    case Term::NUL:
    case Term::IDENT:
    case Term::INTEGRAL:
    case Term::TOP:
        return false;
    case Term::ADD:
    case Term::COMPOSE:
    case Term::TENSOR:
        return term_has_var(t->lhs) || term_has_var(t->rhs);
    case Term::SCALE:
        return term_has_var(t->rhs);
    }
    return false;
}

bool formula_has_var(const QF& f) {
    switch (f->kind) {
    case QFormula::LEQ: return term_has_var(f->t1) || term_has_var(f->t2);
    case QFormula::SUBSYS:
    case QFormula::QFALSUM:
        return false;
    case QFormula::QIMPLIES:
        return formula_has_var(f->lhs) || formula_has_var(f->rhs);
    }
    return false;
}

std::set<std::string> syntactic_support(const TermP& t, const std::vector<std::string>& qB) {
    switch (t->kind) {
    case Term::NUL:
    case Term::IDENT:
        return {};
    case Term::VAR:
        return std::set<std::string>(qB.begin(), qB.end());
    case Term::INTEGRAL:
        return atoms_of(t->alpha);
    case Term::TOP:
        return std::set<std::string>(t->g_set.begin(), t->g_set.end());
    case Term::ADD:
    case Term::COMPOSE:
    case Term::TENSOR: {
        std::set<std::string> s = syntactic_support(t->lhs, qB);
        std::set<std::string> r = syntactic_support(t->rhs, qB);
        s.insert(r.begin(), r.end());
        return s;
    }
    case Term::SCALE:
        return syntactic_support(t->rhs, qB);
    }
    return {};
}

} // namespace eqol
