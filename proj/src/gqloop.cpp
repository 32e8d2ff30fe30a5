#include "gqloop.hpp"

#include <algorithm>
#include <cmath>

#include "base.hpp"
#include "print.hpp"

namespace eqol {

namespace {

constexpr double kMassTol = 1e-9;
constexpr double kExhausted = 1e-12;

double real_trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t += a.at(i, j) * b.at(j, i);
    return t.real();
}

// Single 0/1 permutation Kraus operator: the exact diagonal recursion applies.
std::optional<std::vector<std::size_t>> permutation_of(const SuperOperator& e) {
    if (e.kraus.size() != 1) return std::nullopt;
    const ComplexMatrix& k = e.kraus[0];
    if (k.rows != k.cols) return std::nullopt;
    std::vector<std::size_t> perm(k.cols, k.rows);
    std::vector<bool> hit(k.rows, false);
    for (std::size_t j = 0; j < k.cols; ++j) {
        for (std::size_t i = 0; i < k.rows; ++i) {
            cplx v = k.at(i, j);
            if (v == cplx(1.0, 0.0)) {
                if (perm[j] != k.rows || hit[i]) return std::nullopt;
                perm[j] = i;
                hit[i] = true;
            } else if (v != cplx(0.0, 0.0)) {
                return std::nullopt;
            }
        }
        if (perm[j] == k.rows) return std::nullopt;
    }
    return perm;
}

struct ExactRun {
    std::vector<Rational> mass, term_mass, p_nonterm;
    std::vector<std::vector<Rational>> diags;
};

ExactRun run_exact(const std::vector<Rational>& d0, const std::vector<std::size_t>& perm,
                   const std::vector<bool>& in_guard, std::size_t max_steps) {
    ExactRun run;
    std::vector<Rational> d = d0;
    for (std::size_t n = 0; n <= max_steps; ++n) {
        Rational mass, keep;
        for (std::size_t v = 0; v < d.size(); ++v) {
            mass = mass + d[v];
            if (in_guard[v]) keep = keep + d[v];
        }
        run.mass.push_back(mass);
        run.term_mass.push_back(mass - keep);
        run.p_nonterm.push_back(mass.is_zero() ? Rational(0) : keep / mass);
        run.diags.push_back(d);
        if (n == max_steps) break;
        std::vector<Rational> next(d.size(), Rational(0));
        for (std::size_t v = 0; v < d.size(); ++v)
            if (in_guard[v]) next[perm[v]] = next[perm[v]] + d[v];
        d = std::move(next);
    }
    return run;
}

} // namespace

void GeneralizedQuantumLoop::validate() const {
    if (qubits.empty()) throw model_error("loop needs at least one qubit");
    if (body.dim != dim() || m_x.rows != dim() || m_x.cols != dim())
        throw model_error("loop dimensions are inconsistent");
    if (!m_x.is_hermitian(1e-9) || (m_x * m_x).max_abs_diff(m_x) > 1e-9)
        throw model_error("loop guard is not a projector");
    if (!is_trace_preserving(body, 1e-7))
        throw model_error("loop body is not trace-preserving");
}

GeneralizedQuantumLoop make_loop(std::vector<std::string> qubits, SuperOperator body,
                                 std::vector<std::size_t> guard_vals) {
    GeneralizedQuantumLoop loop;
    loop.qubits = std::move(qubits);
    loop.body = std::move(body);
    std::sort(guard_vals.begin(), guard_vals.end());
    guard_vals.erase(std::unique(guard_vals.begin(), guard_vals.end()), guard_vals.end());
    for (std::size_t v : guard_vals)
        if (v >= loop.dim()) throw model_error("guard valuation out of range");
    loop.m_x = basis_projector(loop.dim(), guard_vals);
    loop.m_xbar = ComplexMatrix::identity(loop.dim()) - loop.m_x;
    loop.guard_vals = std::move(guard_vals);
    loop.validate();
    return loop;
}

GeneralizedQuantumLoop make_loop_projector(std::vector<std::string> qubits, SuperOperator body,
                                           ComplexMatrix guard_projector) {
    GeneralizedQuantumLoop loop;
    loop.qubits = std::move(qubits);
    loop.body = std::move(body);
    loop.m_x = std::move(guard_projector);
    loop.m_xbar = ComplexMatrix::identity(loop.dim()) - loop.m_x;
    loop.validate();
    return loop;
}

LoopStepResult loop_step(const GeneralizedQuantumLoop& loop, const ComplexMatrix& rho_tilde) {
    if (!is_psd(rho_tilde, 1e-8)) throw model_error("loop state is not positive semidefinite");
    double before = rho_tilde.trace().real();
    LoopStepResult out;
    out.p_term_mass = real_trace_of_product(loop.m_xbar, rho_tilde);
    out.rho_next = apply(loop.body, loop.m_x * rho_tilde * loop.m_x);
    double after = out.rho_next.trace().real();
    if (std::abs(out.p_term_mass + after - before) > kMassTol)
        throw model_error("mass leak in loop step");
    return out;
}

LoopRun run_loop(const GeneralizedQuantumLoop& loop, const DensityOperator& rho0,
                 std::size_t max_steps) {
    LoopRun run;

    if (loop.guard_vals && rho0.diag_exact) {
        auto perm = permutation_of(loop.body);
        if (perm) {
            std::vector<bool> in_guard(loop.dim(), false);
            for (std::size_t v : *loop.guard_vals) in_guard[v] = true;
            ExactRun ex = run_exact(*rho0.diag_exact, *perm, in_guard, max_steps);
            run.exact = true;
            run.exact_nonterm = ex.p_nonterm;
            for (std::size_t n = 0; n < ex.mass.size(); ++n) {
                LoopRunEntry e;
                e.n = n;
                e.mass = ex.mass[n].to_double();
                e.term_mass = ex.term_mass[n].to_double();
                e.p_nonterm = ex.p_nonterm[n].to_double();
                e.p_term = 1.0 - e.p_nonterm;
                if (ex.mass[n].is_zero()) e.p_term = 0.0;
                run.entries.push_back(e);
                ComplexMatrix m(loop.dim(), loop.dim());
                for (std::size_t v = 0; v < loop.dim(); ++v)
                    m.at(v, v) = ex.diags[n][v].to_double();
                run.rho_tilde.push_back(m);
            }
            return run;
        }
    }

    ComplexMatrix rho = rho0.dense();
    for (std::size_t n = 0; n <= max_steps; ++n) {
        LoopRunEntry e;
        e.n = n;
        e.mass = rho.trace().real();
        e.term_mass = real_trace_of_product(loop.m_xbar, rho);
        if (e.mass > kExhausted) {
            e.p_nonterm = real_trace_of_product(loop.m_x, rho) / e.mass;
            e.p_term = e.term_mass / e.mass;
        }
        run.entries.push_back(e);
        run.rho_tilde.push_back(rho);
        if (n == max_steps) break;
        rho = loop_step(loop, rho).rho_next;
    }
    return run;
}

double nonterm_prob(const GeneralizedQuantumLoop& loop, const DensityOperator& rho0,
                    std::size_t n) {
    return run_loop(loop, rho0, n).entries[n].p_nonterm;
}

TerminationResult terminates_within(const GeneralizedQuantumLoop& loop,
                                    const DensityOperator& rho0, std::size_t max_steps,
                                    double tol) {
    LoopRun run = run_loop(loop, rho0, max_steps);
    TerminationResult out;
    out.exact = run.exact;
    for (const LoopRunEntry& e : run.entries) {
        bool zero = run.exact ? run.exact_nonterm[e.n].is_zero() : e.p_nonterm <= tol;
        if (zero) {
            out.terminated = true;
            out.index = e.n;
            return out;
        }
    }
    out.terminated = false;
    out.index = max_steps;
    out.residual = run.entries.back().mass;
    return out;
}

std::pair<ExogenousQMC, QF> to_eqmc(const GeneralizedQuantumLoop& loop) {
    if (!loop.guard_vals)
        throw model_error("chain reduction needs the guard as a valuation set");

    ExogenousQMC chain;
    chain.qubits = loop.qubits;
    chain.epsilon.dim = loop.dim();
    for (const ComplexMatrix& e : loop.body.kraus) chain.epsilon.kraus.push_back(e * loop.m_x);
    chain.epsilon.kraus.push_back(loop.m_xbar);
    chain.V.all = true;
    chain.partition = {loop.qubits};

    CF alpha = cf_falsum();
    bool first = true;
    for (std::size_t v : *loop.guard_vals) {
        CF minterm;
        for (std::size_t i = 0; i < loop.n(); ++i) {
            bool bit = (v >> (loop.n() - 1 - i)) & 1;
            CF lit = bit ? cf_atom(loop.qubits[i]) : cf_not(cf_atom(loop.qubits[i]));
            minterm = i == 0 ? lit : cf_and(minterm, lit);
        }
        alpha = first ? minterm : cf_or(alpha, minterm);
        first = false;
    }
    QF gamma = qf_term_eq(term_integral(alpha), term_null());
    chain.ap = {gamma};
    chain.ap_text = {print_formula(gamma)};
    chain.validate();
    return {chain, gamma};
}

} // namespace eqol
