#include "axioms.hpp"

#include <algorithm>
#include <map>

#include "base.hpp"
#include "lang.hpp"

namespace eqol {

namespace {

const std::map<std::string, AxiomName> kAxiomNames = {
    {"QTaut", AxiomName::QTaut},     {"RCF", AxiomName::RCF},
    {"Unit", AxiomName::Unit},       {"CTaut", AxiomName::CTaut},
    {"MeshEmpty", AxiomName::MeshEmpty},
    {"FAdd", AxiomName::FAdd},       {"Mon", AxiomName::Mon},
    {"Prob", AxiomName::Prob},       {"MO1", AxiomName::MO1},
    {"SubEmpty", AxiomName::SubEmpty},
    {"SubUnion", AxiomName::SubUnion},
    {"SubComplement", AxiomName::SubComplement},
};

const std::map<std::string, TemplateName> kTemplateNames = {
    {"PosTensor", TemplateName::PosTensor}, {"Contra", TemplateName::Contra},
    {"LeqTrans", TemplateName::LeqTrans},   {"LeqRefl", TemplateName::LeqRefl},
    {"EqSym", TemplateName::EqSym},
};

void flatten_add(const TermP& t, std::vector<TermP>& out) {
    if (t->kind == Term::ADD) {
        flatten_add(t->lhs, out);
        flatten_add(t->rhs, out);
    } else {
        out.push_back(t);
    }
}

// Multiset of measured sets when every summand is T[.;g], nullopt otherwise.
std::optional<std::vector<std::vector<std::string>>> top_sum_sets(
    const TermP& t, const std::vector<std::string>& g) {
    std::vector<TermP> parts;
    flatten_add(t, parts);
    std::vector<std::vector<std::string>> sets;
    for (const TermP& p : parts) {
        if (p->kind != Term::TOP || p->g_set != g) return std::nullopt;
        sets.push_back(p->a_set);
    }
    std::sort(sets.begin(), sets.end());
    return sets;
}

std::vector<std::vector<std::string>> all_subsets(const std::vector<std::string>& g) {
    std::vector<std::vector<std::string>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << g.size()); ++mask) {
        std::vector<std::string> a;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (mask & (std::size_t{1} << i)) a.push_back(g[i]);
        out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::string> set_union(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    return inter.empty();
}

// Sum over all subsets of G: the right-hand side of the unit law.
bool matches_unit_sum(const TermP& lhs, const TermP& rhs, const std::vector<std::string>& g) {
    if (rhs->kind != Term::IDENT) return false;
    if (g.size() > 20) return false;
    auto sets = top_sum_sets(lhs, g);
    return sets && *sets == all_subsets(g);
}

bool match_unit(const QF& f, const std::vector<std::string>& qb) {
    // Guarded form: [G] => (sum = Id).
    if (f->kind == QFormula::QIMPLIES && f->lhs->kind == QFormula::SUBSYS) {
        auto eq = qf_match_term_eq(f->rhs);
        return eq && matches_unit_sum(eq->first, eq->second, f->lhs->g_set);
    }
    // Unguarded form over the full qubit set.
    auto eq = qf_match_term_eq(f);
    return eq && matches_unit_sum(eq->first, eq->second, qb);
}

bool match_ctaut(const QF& f, const std::vector<std::string>& qb) {
    auto eq = qf_match_term_eq(f);
    if (!eq || eq->first->kind != Term::INTEGRAL || eq->second->kind != Term::IDENT) return false;
    return is_classical_tautology(eq->first->alpha, qb);
}

bool match_mesh_empty(const QF& f) {
    auto eq = qf_match_term_eq(f);
    return eq && eq->first->kind == Term::INTEGRAL &&
           eq->first->alpha->kind == CFormula::FALSUM && eq->second->kind == Term::NUL;
}

bool match_fadd(const QF& f) {
    if (f->kind != QFormula::QIMPLIES) return false;
    auto ante = qf_match_term_eq(f->lhs);
    auto cons = qf_match_term_eq(f->rhs);
    if (!ante || !cons) return false;
    if (ante->second->kind != Term::NUL) return false;
    if (cons->first->kind != Term::INTEGRAL) return false;
    if (cons->second->kind != Term::ADD) return false;
    const TermP& s1 = cons->second->lhs;
    const TermP& s2 = cons->second->rhs;
    if (s1->kind != Term::INTEGRAL || s2->kind != Term::INTEGRAL) return false;
    const CF& a1 = s1->alpha;
    const CF& a2 = s2->alpha;
    if (!cf_equal(cons->first->alpha, cf_or(a1, a2))) return false;
    return ante->first->kind == Term::INTEGRAL &&
           cf_equal(ante->first->alpha, cf_and(a1, a2));
}

bool match_mon(const QF& f) {
    if (f->kind != QFormula::QIMPLIES) return false;
    // Antecedent is the bare term int(a1 -> a2), coerced to (term = Id).
    auto ante = qf_match_term_eq(f->lhs);
    if (!ante || ante->first->kind != Term::INTEGRAL || ante->second->kind != Term::IDENT)
        return false;
    const CF& impl = ante->first->alpha;
    if (impl->kind != CFormula::IMPLIES) return false;
    if (f->rhs->kind != QFormula::LEQ) return false;
    const TermP& l = f->rhs->t1;
    const TermP& r = f->rhs->t2;
    return l->kind == Term::INTEGRAL && r->kind == Term::INTEGRAL &&
           cf_equal(l->alpha, impl->lhs) && cf_equal(r->alpha, impl->rhs);
}

bool match_prob(const QF& f, const std::vector<std::string>& qb) {
    auto eq = qf_match_term_eq(f);
    if (!eq || eq->first->kind != Term::INTEGRAL) return false;
    if (qb.size() > 20) return false;
    std::vector<std::size_t> vals = valuations_of(eq->first->alpha, qb);
    if (vals.empty()) return eq->second->kind == Term::NUL;
    std::vector<std::vector<std::string>> expect;
    for (std::size_t v : vals) {
        std::vector<std::string> a;
        for (std::size_t i = 0; i < qb.size(); ++i)
            if (v & (std::size_t{1} << (qb.size() - 1 - i))) a.push_back(qb[i]);
        expect.push_back(a);
    }
    std::sort(expect.begin(), expect.end());
    auto sets = top_sum_sets(eq->second, qb);
    return sets && *sets == expect;
}

bool match_mo1(const QF& f) {
    if (f->kind != QFormula::QIMPLIES) return false;
    auto ante = qf_match_and(f->lhs);
    if (!ante || ante->first->kind != QFormula::SUBSYS || ante->second->kind != QFormula::SUBSYS)
        return false;
    const std::vector<std::string>& g1 = ante->first->g_set;
    const std::vector<std::string>& g2 = ante->second->g_set;
    if (!disjoint(g1, g2)) return false;
    auto eq = qf_match_term_eq(f->rhs);
    if (!eq || eq->first->kind != Term::TOP || eq->second->kind != Term::TENSOR) return false;
    const TermP& f1 = eq->second->lhs;
    const TermP& f2 = eq->second->rhs;
    if (f1->kind != Term::TOP || f2->kind != Term::TOP) return false;
    if (f1->g_set != g1 || f2->g_set != g2) return false;
    // A1 subset G1 and A2 subset G2 are enforced by the T operator itself.
    return eq->first->g_set == set_union(g1, g2) &&
           eq->first->a_set == set_union(f1->a_set, f2->a_set);
}

bool match_sub_union(const QF& f) {
    if (f->kind != QFormula::QIMPLIES || f->lhs->kind != QFormula::SUBSYS) return false;
    const QF& inner = f->rhs;
    if (inner->kind != QFormula::QIMPLIES || inner->lhs->kind != QFormula::SUBSYS ||
        inner->rhs->kind != QFormula::SUBSYS)
        return false;
    return inner->rhs->g_set == set_union(f->lhs->g_set, inner->lhs->g_set);
}

bool match_sub_complement(const QF& f, const std::vector<std::string>& qb) {
    auto iff = qf_match_iff(f);
    if (!iff || iff->first->kind != QFormula::SUBSYS || iff->second->kind != QFormula::SUBSYS)
        return false;
    const std::vector<std::string>& g = iff->first->g_set;
    if (!is_subset(g, qb)) return false;
    std::vector<std::string> comp;
    std::set_difference(qb.begin(), qb.end(), g.begin(), g.end(), std::back_inserter(comp));
    return iff->second->g_set == comp;
}

// Compiled propositional skeleton: atoms indexed, implications by node index.
struct SkelNode {
    enum Kind { FALSE_, ATOM, IMPL } kind;
    std::size_t a = 0, b = 0;
};

std::size_t compile_skeleton(const QF& f, const std::vector<QF>& atoms,
                             std::vector<SkelNode>& nodes) {
    SkelNode n;
    switch (f->kind) {
        case QFormula::QFALSUM:
            n.kind = SkelNode::FALSE_;
            break;
        case QFormula::QIMPLIES: {
            std::size_t a = compile_skeleton(f->lhs, atoms, nodes);
            std::size_t b = compile_skeleton(f->rhs, atoms, nodes);
            n.kind = SkelNode::IMPL;
            n.a = a;
            n.b = b;
            break;
        }
        default: {
            n.kind = SkelNode::ATOM;
            n.a = atoms.size();
            for (std::size_t i = 0; i < atoms.size(); ++i)
                if (qf_equal(atoms[i], f)) {
                    n.a = i;
                    break;
                }
            break;
        }
    }
    nodes.push_back(n);
    return nodes.size() - 1;
}

bool eval_skeleton(const std::vector<SkelNode>& nodes, std::size_t root, std::size_t mask) {
    const SkelNode& n = nodes[root];
    switch (n.kind) {
        case SkelNode::FALSE_: return false;
        case SkelNode::ATOM: return (mask >> n.a) & 1;
        case SkelNode::IMPL: return !eval_skeleton(nodes, n.a, mask) || eval_skeleton(nodes, n.b, mask);
    }
    return false;
}

bool match_pos_tensor(const QF& f) {
    if (f->kind != QFormula::QIMPLIES) return false;
    auto cons = qf_match_term_lt(f->rhs);
    if (!cons || cons->first->kind != Term::NUL || cons->second->kind != Term::TENSOR) return false;
    auto ante = qf_match_and(f->lhs);
    if (!ante) return false;
    auto l = qf_match_term_lt(ante->first);
    auto r = qf_match_term_lt(ante->second);
    if (!l || !r || l->first->kind != Term::NUL || r->first->kind != Term::NUL) return false;
    return term_equal(l->second, cons->second->lhs) && term_equal(r->second, cons->second->rhs);
}

bool match_contra(const QF& f) {
    if (f->kind != QFormula::QIMPLIES || f->rhs->kind != QFormula::QFALSUM) return false;
    auto ante = qf_match_and(f->lhs);
    if (!ante) return false;
    auto eq = qf_match_term_eq(ante->first);
    auto lt = qf_match_term_lt(ante->second);
    if (!eq || !lt) return false;
    return eq->second->kind == Term::NUL && lt->first->kind == Term::NUL &&
           term_equal(eq->first, lt->second);
}

bool match_leq_trans(const QF& f) {
    if (f->kind != QFormula::QIMPLIES || f->rhs->kind != QFormula::LEQ) return false;
    auto ante = qf_match_and(f->lhs);
    if (!ante || ante->first->kind != QFormula::LEQ || ante->second->kind != QFormula::LEQ)
        return false;
    return term_equal(ante->first->t1, f->rhs->t1) &&
           term_equal(ante->first->t2, ante->second->t1) &&
           term_equal(ante->second->t2, f->rhs->t2);
}

bool match_eq_sym(const QF& f) {
    if (f->kind != QFormula::QIMPLIES) return false;
    auto l = qf_match_term_eq(f->lhs);
    auto r = qf_match_term_eq(f->rhs);
    return l && r && term_equal(l->first, r->second) && term_equal(l->second, r->first);
}

void collect_cf(const CF& f, std::set<std::string>& out) {
    if (f->kind == CFormula::ATOM) out.insert(f->atom);
    if (f->kind == CFormula::IMPLIES) {
        collect_cf(f->lhs, out);
        collect_cf(f->rhs, out);
    }
}

void collect_term(const TermP& t, std::set<std::string>& out) {
    switch (t->kind) {
        case Term::INTEGRAL: collect_cf(t->alpha, out); break;
        case Term::TOP:
            out.insert(t->a_set.begin(), t->a_set.end());
            out.insert(t->g_set.begin(), t->g_set.end());
            break;
        case Term::ADD:
        case Term::COMPOSE:
        case Term::TENSOR:
            collect_term(t->lhs, out);
            collect_term(t->rhs, out);
            break;
        case Term::SCALE: collect_term(t->rhs, out); break;
        default: break;
    }
}

} // namespace

const char* axiom_name_str(AxiomName ax) {
    for (const auto& [name, val] : kAxiomNames)
        if (val == ax) return name.c_str();
    return "?";
}

std::optional<AxiomName> axiom_from_name(const std::string& s) {
    auto it = kAxiomNames.find(s);
    if (it == kAxiomNames.end()) return std::nullopt;
    return it->second;
}

const std::vector<AxiomName>& all_axioms() {
    static const std::vector<AxiomName> v = [] {
        std::vector<AxiomName> out;
        for (const auto& [name, val] : kAxiomNames) out.push_back(val);
        return out;
    }();
    return v;
}

const char* template_name_str(TemplateName tpl) {
    for (const auto& [name, val] : kTemplateNames)
        if (val == tpl) return name.c_str();
    return "?";
}

std::optional<TemplateName> template_from_name(const std::string& s) {
    auto it = kTemplateNames.find(s);
    if (it == kTemplateNames.end()) return std::nullopt;
    return it->second;
}

const std::vector<TemplateName>& all_templates() {
    static const std::vector<TemplateName> v = [] {
        std::vector<TemplateName> out;
        for (const auto& [name, val] : kTemplateNames) out.push_back(val);
        return out;
    }();
    return v;
}

bool is_skeleton_tautology(const QF& f) {
    std::vector<QF> atoms = quantum_atoms_of(f);
    if (atoms.size() > 20)
        throw unsupported_error("propositional skeleton has too many distinct atoms");
    std::vector<SkelNode> nodes;
    std::size_t root = compile_skeleton(f, atoms, nodes);
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask)
        if (!eval_skeleton(nodes, root, mask)) return false;
    return true;
}

bool is_axiom_instance(const QF& f, AxiomName ax, const std::vector<std::string>& qb) {
    switch (ax) {
        case AxiomName::QTaut: return is_skeleton_tautology(f);
        case AxiomName::RCF: {
            // The decidable slice: skeleton tautologies plus the vetted
            // order-theoretic templates; everything else is out of scope.
            if (is_skeleton_tautology(f)) return true;
            for (TemplateName tpl : all_templates())
                if (is_template_instance(f, tpl)) return true;
            return false;
        }
        case AxiomName::Unit: return match_unit(f, qb);
        case AxiomName::CTaut: return match_ctaut(f, qb);
        case AxiomName::MeshEmpty: return match_mesh_empty(f);
        case AxiomName::FAdd: return match_fadd(f);
        case AxiomName::Mon: return match_mon(f);
        case AxiomName::Prob: return match_prob(f, qb);
        case AxiomName::MO1: return match_mo1(f);
        case AxiomName::SubEmpty: return f->kind == QFormula::SUBSYS && f->g_set.empty();
        case AxiomName::SubUnion: return match_sub_union(f);
        case AxiomName::SubComplement: return match_sub_complement(f, qb);
    }
    return false;
}

bool is_template_instance(const QF& f, TemplateName tpl) {
    switch (tpl) {
        case TemplateName::PosTensor: return match_pos_tensor(f);
        case TemplateName::Contra: return match_contra(f);
        case TemplateName::LeqTrans: return match_leq_trans(f);
        case TemplateName::LeqRefl:
            return f->kind == QFormula::LEQ && term_equal(f->t1, f->t2);
        case TemplateName::EqSym: return match_eq_sym(f);
    }
    return false;
}

std::set<std::string> mentioned_qubits(const QF& f) {
    std::set<std::string> out;
    switch (f->kind) {
        case QFormula::LEQ:
            collect_term(f->t1, out);
            collect_term(f->t2, out);
            break;
        case QFormula::SUBSYS: out.insert(f->g_set.begin(), f->g_set.end()); break;
        case QFormula::QIMPLIES: {
            std::set<std::string> l = mentioned_qubits(f->lhs);
            std::set<std::string> r = mentioned_qubits(f->rhs);
            out.insert(l.begin(), l.end());
            out.insert(r.begin(), r.end());
            break;
        }
        default: break;
    }
    return out;
}

} // namespace eqol
