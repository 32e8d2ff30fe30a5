#include "structure.hpp"

#include <algorithm>
#include <cmath>

namespace eqol {

bool ValSet::contains(std::size_t v) const {
    if (all) return true;
    return std::binary_search(vals.begin(), vals.end(), v);
}

std::vector<std::size_t> ValSet::materialize(std::size_t n_qubits) const {
    if (!all) return vals;
    std::vector<std::size_t> out(std::size_t{1} << n_qubits);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

std::size_t Structure::slot_of(const std::string& name) const {
    auto it = std::find(qubits.begin(), qubits.end(), name);
    if (it == qubits.end()) throw model_error("qubit '" + name + "' not declared");
    return static_cast<std::size_t>(it - qubits.begin());
}

void Structure::validate(double state_tol) const {
    if (qubits.empty()) throw model_error("structure needs at least one qubit");
    if (!std::is_sorted(qubits.begin(), qubits.end()) ||
        std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end())
        throw model_error("qubits must be listed in canonical (lexical) order without repeats");

    std::set<std::string> seen;
    for (const auto& block : partition) {
        for (const std::string& q : block) {
            if (std::find(qubits.begin(), qubits.end(), q) == qubits.end())
                throw model_error("partition mentions undeclared qubit '" + q + "'");
            if (!seen.insert(q).second)
                throw model_error("partition blocks overlap at '" + q + "'");
        }
    }
    if (seen.size() != qubits.size()) throw model_error("partition does not cover all qubits");

    if (!V.all) {
        if (V.vals.empty()) throw model_error("admissible valuation set is empty");
        for (std::size_t v : V.vals)
            if (v >= dim()) throw model_error("admissible valuation out of range");
    }

    if (global_state) {
        if (global_state->dim != dim()) throw model_error("global state dimension mismatch");
        global_state->validate(state_tol);
    } else {
        if (block_states.size() != partition.size())
            throw model_error("one state per partition block required");
        for (std::size_t i = 0; i < partition.size(); ++i) {
            if (block_states[i].dim != (std::size_t{1} << partition[i].size()))
                throw model_error("block state dimension mismatch");
            block_states[i].validate(state_tol);
        }
    }

    for (const auto& [name, e] : sigma)
        if (e.dim != dim())
            throw model_error("assignment for '" + name + "' has wrong dimension");

    // Support restriction: the state must live in the span of the admissible
    // valuations.
    if (!V.all) {
        const DensityOperator& rho = global_density();
        if (rho.diag) {
            for (std::size_t v = 0; v < rho.dim; ++v)
                if ((*rho.diag)[v] > state_tol && !V.contains(v))
                    throw model_error("state weight on inadmissible valuation " + std::to_string(v));
        } else {
            ComplexMatrix p = basis_projector(dim(), V.vals);
            ComplexMatrix m = rho.dense();
            if ((p * m * p).max_abs_diff(m) > state_tol)
                throw model_error("state support exceeds the admissible valuation span");
        }
    }
}

const DensityOperator& Structure::global_density() const {
    if (global_cache_) return *global_cache_;
    if (global_state) {
        global_cache_ = *global_state;
        return *global_cache_;
    }
    // Tensor block states in listed order, then permute the concatenated
    // qubit order to canonical.
    ComplexMatrix acc(1, 1);
    acc.at(0, 0) = 1.0;
    std::vector<std::string> concat;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        acc = tensor_product(acc, block_states[i].dense());
        concat.insert(concat.end(), partition[i].begin(), partition[i].end());
    }
    std::vector<std::size_t> perm(qubits.size());
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        auto it = std::find(concat.begin(), concat.end(), qubits[i]);
        perm[i] = static_cast<std::size_t>(it - concat.begin());
    }
    global_cache_ = DensityOperator::from_dense(permute_qubit_factors(acc, perm));
    return *global_cache_;
}

bool in_alg(const std::set<std::string>& G, const std::vector<std::vector<std::string>>& partition) {
    std::size_t covered = 0;
    for (const auto& block : partition) {
        bool meets = false, inside = true;
        for (const std::string& q : block) {
            if (G.count(q)) { meets = true; ++covered; }
            else inside = false;
        }
        if (meets && !inside) return false;
    }
    // Every member of G must come from some block.
    return covered == G.size();
}

std::vector<std::set<std::string>> alg_of(const std::vector<std::vector<std::string>>& partition) {
    if (partition.size() > 20) throw model_error("partition too large to enumerate its algebra");
    std::vector<std::set<std::string>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << partition.size()); ++mask) {
        std::set<std::string> g;
        for (std::size_t i = 0; i < partition.size(); ++i)
            if ((mask >> i) & 1u) g.insert(partition[i].begin(), partition[i].end());
        out.push_back(std::move(g));
    }
    return out;
}

Structure make_structure(std::vector<std::string> qubits, ValSet v,
                         std::vector<std::vector<std::string>> partition,
                         DensityOperator state) {
    Structure m;
    m.qubits = std::move(qubits);
    m.V = std::move(v);
    for (auto& block : partition) std::sort(block.begin(), block.end());
    m.partition = std::move(partition);
    m.global_state = std::move(state);
    m.validate();
    return m;
}

} // namespace eqol
