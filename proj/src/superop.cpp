#include "superop.hpp"

#include <algorithm>
#include <cmath>

namespace eqol {

SuperOperator SuperOperator::null_map(std::size_t dim) {
    SuperOperator e;
    e.dim = dim;
    return e;
}

SuperOperator SuperOperator::identity(std::size_t dim) {
    SuperOperator e;
    e.dim = dim;
    e.kraus.push_back(ComplexMatrix::identity(dim));
    return e;
}

SuperOperator SuperOperator::single(ComplexMatrix k) {
    SuperOperator e;
    e.dim = k.rows;
    e.kraus.push_back(std::move(k));
    return e;
}

ComplexMatrix apply(const SuperOperator& e, const ComplexMatrix& rho) {
    ComplexMatrix out(e.dim, e.dim);
    for (const ComplexMatrix& k : e.kraus)
        out = out + k * rho * k.adjoint();
    return out;
}

SuperOperator so_add(const SuperOperator& e1, const SuperOperator& e2) {
    if (e1.dim != e2.dim) throw model_error("superoperator sum with mismatched dimensions");
    SuperOperator r = e1;
    r.kraus.insert(r.kraus.end(), e2.kraus.begin(), e2.kraus.end());
    return r;
}

SuperOperator so_compose(const SuperOperator& e1, const SuperOperator& e2) {
    if (e1.dim != e2.dim) throw model_error("superoperator composition with mismatched dimensions");
    SuperOperator r;
    r.dim = e1.dim;
    for (const ComplexMatrix& a : e1.kraus)
        for (const ComplexMatrix& b : e2.kraus)
            r.kraus.push_back(a * b);
    return r;
}

SuperOperator so_tensor(const SuperOperator& e1, const SuperOperator& e2) {
    SuperOperator r;
    r.dim = e1.dim * e2.dim;
    for (const ComplexMatrix& a : e1.kraus)
        for (const ComplexMatrix& b : e2.kraus)
            r.kraus.push_back(tensor_product(a, b));
    return r;
}

SuperOperator so_scale(const Rational& s, const SuperOperator& e) {
    if (s.num < 0 || Rational(1) < s) throw model_error("scale coefficient outside [0,1]");
    SuperOperator r;
    r.dim = e.dim;
    if (s.is_zero()) return r;
    double f = std::sqrt(s.to_double());
    for (const ComplexMatrix& k : e.kraus)
        r.kraus.push_back(k.scaled(f));
    return r;
}

ComplexMatrix basis_projector(std::size_t dim, const std::vector<std::size_t>& indices) {
    ComplexMatrix p(dim, dim);
    for (std::size_t i : indices) p.at(i, i) = 1.0;
    return p;
}

ComplexMatrix trace_observable(const SuperOperator& e) {
    ComplexMatrix q(e.dim, e.dim);
    for (const ComplexMatrix& k : e.kraus)
        q = q + k.adjoint() * k;
    return q;
}

bool leq_at(const SuperOperator& e1, const SuperOperator& e2, const ComplexMatrix& rho, double tol) {
    ComplexMatrix q = trace_observable(e2) - trace_observable(e1);
    cplx t = (q * rho).trace();
    return t.real() >= -tol;
}

LeqResult leq_global_check(const SuperOperator& e1, const SuperOperator& e2, double tol) {
    LeqResult r;
    ComplexMatrix q = trace_observable(e2) - trace_observable(e1);
    NegativeWitness w = most_negative_direction(q, tol);
    if (!w.found) return r;
    r.holds = false;
    r.min_eigenvalue = w.eigenvalue;
    ComplexMatrix psi(q.rows, q.rows);
    for (std::size_t i = 0; i < q.rows; ++i)
        for (std::size_t j = 0; j < q.rows; ++j)
            psi.at(i, j) = w.vector[i] * std::conj(w.vector[j]);
    r.witness = std::move(psi);
    return r;
}

bool leq_global(const SuperOperator& e1, const SuperOperator& e2, double tol) {
    return leq_global_check(e1, e2, tol).holds;
}

bool eqsim(const SuperOperator& e1, const SuperOperator& e2, double tol) {
    if (e1.dim != e2.dim) return false;
    return trace_observable(e1).max_abs_diff(trace_observable(e2)) <= tol;
}

bool eqsim_at(const SuperOperator& e1, const SuperOperator& e2, const ComplexMatrix& rho, double tol) {
    return leq_at(e1, e2, rho, tol) && leq_at(e2, e1, rho, tol);
}

bool is_trace_preserving(const SuperOperator& e, double tol) {
    return trace_observable(e).max_abs_diff(ComplexMatrix::identity(e.dim)) <= tol;
}

ComplexMatrix outcome_projector(std::size_t n_qubits,
                                const std::vector<std::size_t>& measured_slots,
                                const std::vector<std::size_t>& ones) {
    std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < dim; ++v) {
        bool ok = true;
        for (std::size_t slot : measured_slots) {
            bool bit = (v >> (n_qubits - 1 - slot)) & 1u;
            bool want = std::find(ones.begin(), ones.end(), slot) != ones.end();
            if (bit != want) { ok = false; break; }
        }
        if (ok) keep.push_back(v);
    }
    return basis_projector(dim, keep);
}

SuperOperator projector_valuations(const std::vector<std::size_t>& indices, std::size_t n_qubits) {
    std::size_t dim = std::size_t{1} << n_qubits;
    if (indices.empty()) return SuperOperator::null_map(dim);
    for (std::size_t i : indices)
        if (i >= dim) throw model_error("valuation index out of range");
    return SuperOperator::single(basis_projector(dim, indices));
}

SuperOperator t_operator(const std::vector<std::string>& A,
                         const std::vector<std::string>& G,
                         const std::vector<std::string>& qB) {
    auto slot_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < qB.size(); ++i)
            if (qB[i] == name) return i;
        throw model_error("qubit '" + name + "' not declared");
    };
    std::vector<std::size_t> measured, ones;
    for (const std::string& g : G) measured.push_back(slot_of(g));
    for (const std::string& a : A) {
        if (std::find(G.begin(), G.end(), a) == G.end())
            throw model_error("measurement outcome set not within the measured set");
        ones.push_back(slot_of(a));
    }
    return SuperOperator::single(outcome_projector(qB.size(), measured, ones));
}

SuperOperator measure_of(const ProjectiveMeasure& pm, const std::vector<std::size_t>& U) {
    std::vector<std::size_t> kept;
    for (std::size_t u : U) {
        if (std::find(pm.admissible.begin(), pm.admissible.end(), u) == pm.admissible.end())
            throw model_error("measured valuation set outside the admissible set");
        kept.push_back(u);
    }
    return projector_valuations(kept, pm.n_qubits);
}

} // namespace eqol
