#include "derivation.hpp"

#include <algorithm>
#include <set>

#include "base.hpp"
#include "lang.hpp"

namespace eqol {

namespace {

struct AtomSet {
    std::vector<QF> atoms;

    std::size_t index_of(const QF& a) const {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (qf_equal(atoms[i], a)) return i;
        return atoms.size();
    }
    bool has(const QF& a) const { return index_of(a) < atoms.size(); }
    void add(const QF& a) {
        if (!has(a)) atoms.push_back(a);
    }
};

// A clause over skeleton atoms: conjunction of literals entails conjunction
// of literals. Literal = (atom index, required truth value).
struct OrderClause {
    std::vector<std::pair<std::size_t, bool>> body;
    std::vector<std::pair<std::size_t, bool>> head;
};

bool clause_holds(const OrderClause& c, std::size_t mask) {
    for (auto [idx, val] : c.body)
        if (bool((mask >> idx) & 1) != val) return true;
    for (auto [idx, val] : c.head)
        if (bool((mask >> idx) & 1) != val) return false;
    return true;
}

bool eval_qf_skeleton(const QF& f, const AtomSet& atoms, std::size_t mask) {
    switch (f->kind) {
        case QFormula::QFALSUM: return false;
        case QFormula::QIMPLIES:
            return !eval_qf_skeleton(f->lhs, atoms, mask) || eval_qf_skeleton(f->rhs, atoms, mask);
        default: {
            std::size_t idx = atoms.index_of(f);
            return (mask >> idx) & 1;
        }
    }
}

// Close the LEQ atoms under transitive composition so chains can be linked
// by the transitivity clauses. Bounded; overflow is reported as unsupported.
void close_under_transitivity(AtomSet& atoms) {
    for (int round = 0; round < 20; ++round) {
        std::size_t before = atoms.atoms.size();
        std::vector<QF> current = atoms.atoms;
        for (const QF& a : current) {
            if (a->kind != QFormula::LEQ) continue;
            for (const QF& b : current) {
                if (b->kind != QFormula::LEQ) continue;
                if (!term_equal(a->t2, b->t1)) continue;
                atoms.add(qf_leq(a->t1, b->t2));
                if (atoms.atoms.size() > 20)
                    throw unsupported_error("order closure exceeds the atom budget");
            }
        }
        if (atoms.atoms.size() == before) break;
    }
}

std::vector<OrderClause> order_clauses(const AtomSet& atoms) {
    std::vector<OrderClause> out;
    const std::vector<QF>& as = atoms.atoms;
    for (std::size_t i = 0; i < as.size(); ++i) {
        if (as[i]->kind != QFormula::LEQ) continue;
        // Reflexive atoms are simply true.
        if (term_equal(as[i]->t1, as[i]->t2)) out.push_back({{}, {{i, true}}});
        for (std::size_t j = 0; j < as.size(); ++j) {
            if (as[j]->kind != QFormula::LEQ) continue;
            if (!term_equal(as[i]->t2, as[j]->t1)) continue;
            std::size_t k = atoms.index_of(qf_leq(as[i]->t1, as[j]->t2));
            if (k < as.size()) out.push_back({{{i, true}, {j, true}}, {{k, true}}});
        }
    }
    // Positivity across tensor products: strictly positive factors give a
    // strictly positive product. Needs all six <= atoms to be expressible.
    TermP null = term_null();
    for (const QF& a : as) {
        if (a->kind != QFormula::LEQ) continue;
        const TermP& prod = a->t2->kind == Term::TENSOR ? a->t2
                          : a->t1->kind == Term::TENSOR ? a->t1
                                                        : nullptr;
        if (!prod) continue;
        const TermP& u = prod->lhs;
        const TermP& v = prod->rhs;
        std::size_t o_u = atoms.index_of(qf_leq(null, u));
        std::size_t u_o = atoms.index_of(qf_leq(u, null));
        std::size_t o_v = atoms.index_of(qf_leq(null, v));
        std::size_t v_o = atoms.index_of(qf_leq(v, null));
        std::size_t o_p = atoms.index_of(qf_leq(null, prod));
        std::size_t p_o = atoms.index_of(qf_leq(prod, null));
        std::size_t n = as.size();
        if (o_u < n && u_o < n && o_v < n && v_o < n && o_p < n && p_o < n)
            out.push_back({{{o_u, true}, {u_o, false}, {o_v, true}, {v_o, false}},
                           {{o_p, true}, {p_o, false}}});
    }
    return out;
}

std::string step_label(std::size_t idx) { return "step " + std::to_string(idx + 1); }

} // namespace

bool follows_propositionally(const std::vector<QF>& premises, const QF& conclusion) {
    AtomSet atoms;
    for (const QF& p : premises)
        for (const QF& a : quantum_atoms_of(p)) atoms.add(a);
    for (const QF& a : quantum_atoms_of(conclusion)) atoms.add(a);
    if (atoms.atoms.size() > 20)
        throw unsupported_error("entailment check exceeds the atom budget");
    close_under_transitivity(atoms);
    std::vector<OrderClause> clauses = order_clauses(atoms);

    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.atoms.size()); ++mask) {
        bool admissible = true;
        for (const OrderClause& c : clauses)
            if (!clause_holds(c, mask)) {
                admissible = false;
                break;
            }
        if (!admissible) continue;
        for (const QF& p : premises)
            if (!eval_qf_skeleton(p, atoms, mask)) {
                admissible = false;
                break;
            }
        if (!admissible) continue;
        if (!eval_qf_skeleton(conclusion, atoms, mask)) return false;
    }
    return true;
}

DerivationReport verify_derivation(const DerivationScript& script) {
    DerivationReport report;
    report.qubits = script.qubits;
    if (report.qubits.empty()) {
        std::set<std::string> seen;
        for (const Step& s : script.steps) {
            if (s.classical_level) {
                for (const std::string& q : atoms_of(s.classical)) seen.insert(q);
            } else {
                std::set<std::string> m = mentioned_qubits(s.formula);
                seen.insert(m.begin(), m.end());
            }
        }
        report.qubits.assign(seen.begin(), seen.end());
    }
    const std::vector<std::string>& qb = report.qubits;

    report.steps.resize(script.steps.size());
    bool any_rejected = false, any_unsupported = false;

    for (std::size_t k = 0; k < script.steps.size(); ++k) {
        const Step& st = script.steps[k];
        StepReport& out = report.steps[k];
        out.status = StepStatus::OK;

        auto reject = [&](const std::string& why) {
            out.status = StepStatus::REJECTED;
            out.detail = why;
        };
        auto check_ref = [&](std::size_t r) {
            if (r >= k) {
                reject("reference to " + step_label(r) + " does not precede this step");
                return false;
            }
            return true;
        };

        switch (st.just.kind) {
            case Justification::PREMISE:
                out.detail = "premise";
                break;
            case Justification::HYPOTHESIS:
                out.detail = "hypothesis";
                break;
            case Justification::AXIOM: {
                if (st.classical_level) {
                    reject("classical step cannot cite a quantum axiom");
                    break;
                }
                try {
                    if (is_axiom_instance(st.formula, st.just.axiom, qb)) {
                        out.detail = std::string("axiom ") + axiom_name_str(st.just.axiom);
                    } else if (st.just.axiom == AxiomName::RCF) {
                        out.status = StepStatus::UNSUPPORTED;
                        out.detail = "RCF instance outside the decided fragment";
                    } else {
                        reject(std::string("not an instance of axiom ") +
                               axiom_name_str(st.just.axiom));
                    }
                } catch (const unsupported_error& e) {
                    out.status = StepStatus::UNSUPPORTED;
                    out.detail = e.what();
                }
                break;
            }
            case Justification::TEMPLATE: {
                if (st.classical_level) {
                    reject("classical step cannot cite a template");
                    break;
                }
                if (is_template_instance(st.formula, st.just.tpl))
                    out.detail = std::string("template ") + template_name_str(st.just.tpl);
                else
                    reject(std::string("not an instance of template ") +
                           template_name_str(st.just.tpl));
                break;
            }
            case Justification::QMP: {
                if (!check_ref(st.just.i) || !check_ref(st.just.j)) break;
                const Step& si = script.steps[st.just.i];
                const Step& sj = script.steps[st.just.j];
                if (st.classical_level || si.classical_level || sj.classical_level) {
                    reject("QMP applies to quantum-level steps only");
                    break;
                }
                auto fits = [&](const Step& ante, const Step& impl) {
                    return impl.formula->kind == QFormula::QIMPLIES &&
                           qf_equal(impl.formula->lhs, ante.formula) &&
                           qf_equal(impl.formula->rhs, st.formula);
                };
                if (fits(si, sj) || fits(sj, si))
                    out.detail = "QMP on " + step_label(st.just.i) + ", " + step_label(st.just.j);
                else
                    reject("cited steps do not form a matching implication and antecedent");
                break;
            }
            case Justification::CMP: {
                if (!check_ref(st.just.i) || !check_ref(st.just.j)) break;
                const Step& si = script.steps[st.just.i];
                const Step& sj = script.steps[st.just.j];
                if (!st.classical_level || !si.classical_level || !sj.classical_level) {
                    reject("CMP applies to classical-level steps only");
                    break;
                }
                auto fits = [&](const Step& ante, const Step& impl) {
                    return impl.classical->kind == CFormula::IMPLIES &&
                           cf_equal(impl.classical->lhs, ante.classical) &&
                           cf_equal(impl.classical->rhs, st.classical);
                };
                if (fits(si, sj) || fits(sj, si))
                    out.detail = "CMP on " + step_label(st.just.i) + ", " + step_label(st.just.j);
                else
                    reject("cited steps do not form a matching implication and antecedent");
                break;
            }
            case Justification::FOLLOWS: {
                bool refs_ok = true;
                std::vector<QF> premises;
                for (std::size_t r : st.just.refs) {
                    if (!check_ref(r)) {
                        refs_ok = false;
                        break;
                    }
                    if (script.steps[r].classical_level) {
                        reject("FOLLOWS cannot cite classical steps");
                        refs_ok = false;
                        break;
                    }
                    premises.push_back(script.steps[r].formula);
                }
                if (!refs_ok) break;
                if (st.classical_level) {
                    reject("FOLLOWS applies to quantum-level steps only");
                    break;
                }
                try {
                    if (follows_propositionally(premises, st.formula))
                        out.detail = "follows from cited steps";
                    else
                        reject("conclusion does not follow from the cited steps");
                } catch (const unsupported_error& e) {
                    out.status = StepStatus::UNSUPPORTED;
                    out.detail = e.what();
                }
                break;
            }
        }

        if (out.status == StepStatus::REJECTED) any_rejected = true;
        if (out.status == StepStatus::UNSUPPORTED) any_unsupported = true;
    }

    report.accepted = !any_rejected && !any_unsupported;
    report.unsupported = !any_rejected && any_unsupported;
    return report;
}

} // namespace eqol
