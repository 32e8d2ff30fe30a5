#include "interp.hpp"

#include "lang.hpp"
#include "print.hpp"

#include <algorithm>
#include <chrono>

namespace eqol {

namespace {

struct TensorSplit {
    std::vector<std::string> s1, s2, rest;
    std::vector<std::size_t> perm;  // qlist slot -> slot in concat(s1,s2,rest)
};

TensorSplit split_tensor(const Structure& M, const TermP& t, const std::vector<std::string>& qlist) {
    std::set<std::string> sup1 = syntactic_support(t->lhs, M.qubits);
    std::set<std::string> sup2 = syntactic_support(t->rhs, M.qubits);
    for (const std::string& q : sup1)
        if (sup2.count(q)) throw model_error("malformed tensor split: operands share qubit '" + q + "'");
    TensorSplit sp;
    for (const std::string& q : qlist) {
        if (sup1.count(q)) sp.s1.push_back(q);
        else if (sup2.count(q)) sp.s2.push_back(q);
        else sp.rest.push_back(q);
    }
    auto in_qlist = [&](const std::set<std::string>& s) {
        for (const std::string& q : s)
            if (std::find(qlist.begin(), qlist.end(), q) == qlist.end()) return false;
        return true;
    };
    if (!in_qlist(sup1) || !in_qlist(sup2))
        throw model_error("malformed tensor split: operand support leaves the ambient space");
    std::vector<std::string> concat = sp.s1;
    concat.insert(concat.end(), sp.s2.begin(), sp.s2.end());
    concat.insert(concat.end(), sp.rest.begin(), sp.rest.end());
    sp.perm.resize(qlist.size());
    for (std::size_t i = 0; i < qlist.size(); ++i) {
        auto it = std::find(concat.begin(), concat.end(), qlist[i]);
        sp.perm[i] = static_cast<std::size_t>(it - concat.begin());
    }
    return sp;
}

std::vector<std::size_t> integral_valuations(const Structure& M, const CF& alpha,
                                             const std::vector<std::string>& qlist) {
    std::vector<std::size_t> vals = valuations_of(alpha, qlist);
    // The admissible-valuation restriction applies at the full space only;
    // proper tensor factors see their own local valuations.
    if (qlist == M.qubits && !M.V.all) {
        std::vector<std::size_t> kept;
        for (std::size_t v : vals)
            if (M.V.contains(v)) kept.push_back(v);
        return kept;
    }
    return vals;
}

// Extracts the bits of v (over qlist) at the slots named by sub, msb first.
std::size_t extract_bits(std::size_t v, const std::vector<std::string>& qlist,
                         const std::vector<std::string>& sub) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        auto it = std::find(qlist.begin(), qlist.end(), sub[i]);
        std::size_t slot = static_cast<std::size_t>(it - qlist.begin());
        std::size_t bit = (v >> (qlist.size() - 1 - slot)) & 1u;
        out |= bit << (sub.size() - 1 - i);
    }
    return out;
}

template <typename Num, typename FromRat>
std::vector<Num> weights_impl(const Structure& M, const TermP& t,
                              const std::vector<std::string>& qlist, FromRat from_rat) {
    std::size_t sz = std::size_t{1} << qlist.size();
    std::vector<Num> w(sz, Num(0));
    switch (t->kind) {
    case Term::NUL:
        return w;
    case Term::IDENT:
        std::fill(w.begin(), w.end(), Num(1));
        return w;
    case Term::VAR:
        throw model_error("variable term has no diagonal fast path");
    case Term::INTEGRAL:
        for (std::size_t v : integral_valuations(M, t->alpha, qlist)) w[v] = Num(1);
        return w;
    case Term::TOP: {
        for (std::size_t v = 0; v < sz; ++v) {
            bool match = true;
            for (const std::string& g : t->g_set) {
                auto it = std::find(qlist.begin(), qlist.end(), g);
                if (it == qlist.end()) throw model_error("qubit '" + g + "' not declared");
                std::size_t slot = static_cast<std::size_t>(it - qlist.begin());
                bool bit = (v >> (qlist.size() - 1 - slot)) & 1u;
                bool want = std::binary_search(t->a_set.begin(), t->a_set.end(), g);
                if (bit != want) { match = false; break; }
            }
            if (match) w[v] = Num(1);
        }
        return w;
    }
    case Term::ADD: {
        std::vector<Num> a = weights_impl<Num>(M, t->lhs, qlist, from_rat);
        std::vector<Num> b = weights_impl<Num>(M, t->rhs, qlist, from_rat);
        for (std::size_t v = 0; v < sz; ++v) w[v] = a[v] + b[v];
        return w;
    }
    case Term::COMPOSE: {
        // Variable-free terms act diagonally: tr([t1 t2](P_v)) factors into
        // the product of the two weights at v.
        std::vector<Num> a = weights_impl<Num>(M, t->lhs, qlist, from_rat);
        std::vector<Num> b = weights_impl<Num>(M, t->rhs, qlist, from_rat);
        for (std::size_t v = 0; v < sz; ++v) w[v] = a[v] * b[v];
        return w;
    }
    case Term::TENSOR: {
        TensorSplit sp = split_tensor(M, t, qlist);
        std::vector<Num> a = weights_impl<Num>(M, t->lhs, sp.s1, from_rat);
        std::vector<Num> b = weights_impl<Num>(M, t->rhs, sp.s2, from_rat);
        for (std::size_t v = 0; v < sz; ++v)
            w[v] = a[extract_bits(v, qlist, sp.s1)] * b[extract_bits(v, qlist, sp.s2)];
        return w;
    }
    case Term::SCALE: {
        std::vector<Num> a = weights_impl<Num>(M, t->rhs, qlist, from_rat);
        Num c = from_rat(t->coeff);
        for (std::size_t v = 0; v < sz; ++v) w[v] = c * a[v];
        return w;
    }
    }
    return w;
}

} // namespace

SuperOperator interp_rel(const Structure& M, const TermP& t, const std::vector<std::string>& qlist) {
    std::size_t dim = std::size_t{1} << qlist.size();
    switch (t->kind) {
    case Term::NUL:
        return SuperOperator::null_map(dim);
    case Term::IDENT:
        return SuperOperator::identity(dim);
    case Term::VAR: {
        if (qlist != M.qubits)
            throw model_error("variable term under a proper tensor factor");
        auto it = M.sigma.find(t->var);
        if (it == M.sigma.end()) throw model_error("unbound variable '" + t->var + "'");
        return it->second;
    }
    case Term::INTEGRAL:
        return projector_valuations(integral_valuations(M, t->alpha, qlist), qlist.size());
    case Term::TOP:
        return t_operator(t->a_set, t->g_set, qlist);
    case Term::ADD:
        return so_add(interp_rel(M, t->lhs, qlist), interp_rel(M, t->rhs, qlist));
    case Term::COMPOSE:
        return so_compose(interp_rel(M, t->lhs, qlist), interp_rel(M, t->rhs, qlist));
    case Term::SCALE:
        return so_scale(t->coeff, interp_rel(M, t->rhs, qlist));
    case Term::TENSOR: {
        TensorSplit sp = split_tensor(M, t, qlist);
        SuperOperator e1 = interp_rel(M, t->lhs, sp.s1);
        SuperOperator e2 = interp_rel(M, t->rhs, sp.s2);
        SuperOperator padded = so_tensor(so_tensor(e1, e2),
                                         SuperOperator::identity(std::size_t{1} << sp.rest.size()));
        SuperOperator out;
        out.dim = dim;
        for (const ComplexMatrix& k : padded.kraus)
            out.kraus.push_back(permute_qubit_factors(k, sp.perm));
        return out;
    }
    }
    throw model_error("unreachable term constructor");
}

SuperOperator interp_term(const Structure& M, const TermP& t) {
    return interp_rel(M, t, M.qubits);
}

std::vector<double> term_weights(const Structure& M, const TermP& t, const std::vector<std::string>& qlist) {
    return weights_impl<double>(M, t, qlist, [](const Rational& r) { return r.to_double(); });
}

std::vector<Rational> term_weights_exact(const Structure& M, const TermP& t, const std::vector<std::string>& qlist) {
    return weights_impl<Rational>(M, t, qlist, [](const Rational& r) { return r; });
}

double eval_term(const Structure& M, const TermP& t) {
    const DensityOperator& rho = M.global_density();
    if (rho.diag && !term_has_var(t)) {
        std::vector<double> w = term_weights(M, t, M.qubits);
        double s = 0.0;
        for (std::size_t v = 0; v < rho.dim; ++v) s += w[v] * (*rho.diag)[v];
        return s;
    }
    SuperOperator e = interp_term(M, t);
    ComplexMatrix q = trace_observable(e);
    ComplexMatrix m = rho.dense();
    cplx tr = 0.0;
    for (std::size_t i = 0; i < q.rows; ++i)
        for (std::size_t j = 0; j < q.cols; ++j)
            tr += q.at(i, j) * m.at(j, i);
    return tr.real();
}

std::optional<Rational> eval_term_exact(const Structure& M, const TermP& t) {
    const DensityOperator& rho = M.global_density();
    if (!rho.diag_exact || term_has_var(t)) return std::nullopt;
    std::vector<Rational> w = term_weights_exact(M, t, M.qubits);
    Rational s(0);
    for (std::size_t v = 0; v < rho.dim; ++v) s = s + w[v] * (*rho.diag_exact)[v];
    return s;
}

bool satisfies(const Structure& M, const QF& f, double tol) {
    switch (f->kind) {
    case QFormula::LEQ:
        return eval_term(M, f->t1) <= eval_term(M, f->t2) + tol;
    case QFormula::SUBSYS:
        for (const auto& name : f->g_set)
            if (std::find(M.qubits.begin(), M.qubits.end(), name) == M.qubits.end())
                throw model_error("qubit '" + name + "' not declared");
        return in_alg(std::set<std::string>(f->g_set.begin(), f->g_set.end()), M.partition);
    case QFormula::QFALSUM:
        return false;
    case QFormula::QIMPLIES:
        return !satisfies(M, f->lhs, tol) || satisfies(M, f->rhs, tol);
    }
    return false;
}

double clamp_unit(double x, double tol) {
    if (x < 0.0 && x >= -tol) return 0.0;
    if (x > 1.0 && x <= 1.0 + tol) return 1.0;
    return x;
}

CheckReport model_check(const Structure& M, const QF& f, double tol) {
    CheckReport r;
    auto t0 = std::chrono::steady_clock::now();
    r.verdict = satisfies(M, f, tol);
    for (const QF& atom : quantum_atoms_of(f)) {
        AtomReport a;
        a.text = print_formula(atom);
        if (atom->kind == QFormula::LEQ) {
            a.is_leq = true;
            double l = eval_term(M, atom->t1);
            double rv = eval_term(M, atom->t2);
            if (l < -tol || l > 1.0 + tol || rv < -tol || rv > 1.0 + tol) r.non_physical = true;
            a.left = clamp_unit(l, tol);
            a.right = clamp_unit(rv, tol);
            a.holds = l <= rv + tol;
        } else {
            a.holds = satisfies(M, atom, tol);
        }
        r.atoms.push_back(std::move(a));
    }
    auto t1 = std::chrono::steady_clock::now();
    r.n_qubits = M.n();
    r.length = formula_length(f);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}

} // namespace eqol
