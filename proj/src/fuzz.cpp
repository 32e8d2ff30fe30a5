#include "fuzz.hpp"

#include <algorithm>

#include "interp.hpp"
#include "jsonio.hpp"
#include "lang.hpp"
#include "print.hpp"

namespace eqol {

namespace {

constexpr double kMargin = 1e-3;  // distance kept between compared values and the tolerance
constexpr std::size_t kResampleCap = 50;
constexpr std::size_t kCounterexampleCap = 3;

std::vector<std::string> sorted_union(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

DensityOperator random_state(DetRng& rng, std::size_t dim) {
    if (rng.index(2) == 0) return rng.random_density(dim);
    std::vector<double> w(dim);
    double total = 0.0;
    for (double& x : w) {
        x = rng.uniform();
        total += x;
    }
    for (double& x : w) x /= total;
    return DensityOperator::from_diag(std::move(w));
}

TermP random_top(DetRng& rng, const std::vector<std::string>& allowed) {
    std::vector<std::string> g = random_subset(rng, allowed);
    std::vector<std::string> a = random_subset(rng, g);
    return term_top(std::move(a), std::move(g));
}

Rational random_coeff(DetRng& rng) {
    std::size_t den = 1 + rng.index(8);
    std::size_t num = rng.index(den + 1);
    return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

// Tautology skeletons over supplied atoms; every shape uses at most two.
QF taut_shape(DetRng& rng, const QF& p, const QF& q) {
    switch (rng.index(7)) {
        case 0: return qf_implies(p, p);
        case 1: return qf_implies(qf_and(p, q), p);
        case 2: return qf_implies(p, qf_implies(q, p));
        case 3: return qf_implies(qf_implies(qf_implies(p, q), p), p);
        case 4: return qf_or(p, qf_not(p));
        case 5: return qf_not(qf_and(p, qf_not(p)));
        default: return qf_or(qf_implies(p, q), qf_implies(q, p));
    }
}

CF classical_tautology(DetRng& rng, const std::vector<std::string>& qubits) {
    CF b = random_cformula(rng, qubits, 2);
    CF c = random_cformula(rng, qubits, 2);
    switch (rng.index(5)) {
        case 0: return cf_or(b, cf_not(b));
        case 1: return cf_implies(b, b);
        case 2: return cf_not(cf_and(b, cf_not(b)));
        case 3: return cf_implies(cf_and(b, c), b);
        default: return cf_implies(cf_implies(cf_implies(b, c), b), b);
    }
}

TermP unit_sum(const std::vector<std::string>& g) {
    TermP acc;
    for (std::size_t mask = 0; mask < (std::size_t{1} << g.size()); ++mask) {
        std::vector<std::string> a;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (mask & (std::size_t{1} << i)) a.push_back(g[i]);
        TermP part = term_top(std::move(a), g);
        acc = acc ? term_add(std::move(acc), std::move(part)) : std::move(part);
    }
    return acc;
}

QF gen_qtaut(DetRng& rng, const Structure& M) {
    return taut_shape(rng, random_quantum_atom(rng, M.qubits), random_quantum_atom(rng, M.qubits));
}

QF gen_unit(DetRng& rng, const Structure& M) {
    if (rng.index(2) == 0) return qf_term_eq(unit_sum(M.qubits), term_ident());
    std::vector<std::string> g = random_subset(rng, M.qubits);
    return qf_implies(qf_subsys(g), qf_term_eq(unit_sum(g), term_ident()));
}

QF gen_ctaut(DetRng& rng, const Structure& M) {
    return qf_term_eq(term_integral(classical_tautology(rng, M.qubits)), term_ident());
}

QF gen_fadd(DetRng& rng, const Structure& M) {
    CF a1 = random_cformula(rng, M.qubits, 2);
    CF a2 = rng.index(2) == 0 ? cf_and(random_cformula(rng, M.qubits, 2), cf_not(a1))
                              : random_cformula(rng, M.qubits, 2);
    return qf_implies(
        qf_term_eq(term_integral(cf_and(a1, a2)), term_null()),
        qf_term_eq(term_integral(cf_or(a1, a2)),
                   term_add(term_integral(a1), term_integral(a2))));
}

QF gen_mon(DetRng& rng, const Structure& M) {
    CF a1 = random_cformula(rng, M.qubits, 2);
    CF a2 = rng.index(2) == 0 ? cf_or(a1, random_cformula(rng, M.qubits, 2))
                              : random_cformula(rng, M.qubits, 2);
    return qf_implies(qf_term_eq(term_integral(cf_implies(a1, a2)), term_ident()),
                      qf_leq(term_integral(a1), term_integral(a2)));
}

QF gen_prob(DetRng& rng, const Structure& M) {
    CF alpha = random_cformula(rng, M.qubits, 2);
    std::vector<std::size_t> vals = valuations_of(alpha, M.qubits);
    if (vals.empty()) return qf_term_eq(term_integral(alpha), term_null());
    std::size_t start = rng.index(vals.size());
    TermP acc;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        std::size_t v = vals[(start + k) % vals.size()];
        std::vector<std::string> a;
        for (std::size_t i = 0; i < M.n(); ++i)
            if (v & (std::size_t{1} << (M.n() - 1 - i))) a.push_back(M.qubits[i]);
        TermP part = term_top(std::move(a), M.qubits);
        acc = acc ? term_add(std::move(acc), std::move(part)) : std::move(part);
    }
    return qf_term_eq(term_integral(alpha), std::move(acc));
}

QF gen_mo1(DetRng& rng, const Structure& M) {
    std::vector<std::string> g1, g2;
    if (rng.index(2) == 0 && M.partition.size() >= 2) {
        // Block-aligned groups, so the antecedent actually holds.
        for (const auto& block : M.partition) {
            switch (rng.index(3)) {
                case 0: g1.insert(g1.end(), block.begin(), block.end()); break;
                case 1: g2.insert(g2.end(), block.begin(), block.end()); break;
                default: break;
            }
        }
    } else {
        for (const std::string& q : M.qubits) {
            switch (rng.index(3)) {
                case 0: g1.push_back(q); break;
                case 1: g2.push_back(q); break;
                default: break;
            }
        }
    }
    std::sort(g1.begin(), g1.end());
    std::sort(g2.begin(), g2.end());
    std::vector<std::string> a1 = random_subset(rng, g1);
    std::vector<std::string> a2 = random_subset(rng, g2);
    return qf_implies(qf_and(qf_subsys(g1), qf_subsys(g2)),
                      qf_term_eq(term_top(sorted_union(a1, a2), sorted_union(g1, g2)),
                                 term_tensor(term_top(a1, g1), term_top(a2, g2))));
}

QF gen_sub_union(DetRng& rng, const Structure& M) {
    std::vector<std::string> g1 = random_subset(rng, M.qubits);
    std::vector<std::string> g2 = random_subset(rng, M.qubits);
    return qf_implies(qf_subsys(g1),
                      qf_implies(qf_subsys(g2), qf_subsys(sorted_union(g1, g2))));
}

QF gen_sub_complement(DetRng& rng, const Structure& M) {
    std::vector<std::string> g = random_subset(rng, M.qubits);
    std::vector<std::string> comp;
    std::set_difference(M.qubits.begin(), M.qubits.end(), g.begin(), g.end(),
                        std::back_inserter(comp));
    return qf_iff(qf_subsys(std::move(g)), qf_subsys(std::move(comp)));
}

// Transitivity is checked with a tolerance, so near-ties on the antecedent
// could chain two tolerances into a false conclusion. Keep every compared
// pair either exactly ordered or separated by a clear margin.
QF gen_leq_trans(DetRng& rng, const Structure& M) {
    for (std::size_t attempt = 0; attempt < kResampleCap; ++attempt) {
        TermP t1 = random_term(rng, M.qubits, 2);
        TermP t2 = random_term(rng, M.qubits, 2);
        TermP t3 = random_term(rng, M.qubits, 2);
        double a = eval_term(M, t1), b = eval_term(M, t2), c = eval_term(M, t3);
        bool ab_clear = a - b <= 0.0 || a - b > kMargin;
        bool bc_clear = b - c <= 0.0 || b - c > kMargin;
        if (ab_clear && bc_clear)
            return qf_implies(qf_and(qf_leq(t1, t2), qf_leq(t2, t3)), qf_leq(t1, t3));
    }
    return qf_implies(qf_and(qf_leq(term_null(), term_ident()),
                             qf_leq(term_ident(), term_ident())),
                      qf_leq(term_null(), term_ident()));
}

// Strict positivity is not preserved by products near the tolerance, so the
// factors are split across unentangled halves and kept well above it.
FuzzCase gen_pos_tensor(DetRng& rng, std::size_t n_min, std::size_t n_max) {
    Structure M = random_product_structure(rng, std::max<std::size_t>(n_min, 2), n_max, 2);
    std::vector<std::string> left, right;
    for (std::size_t b = 0; b < M.partition.size(); ++b) {
        auto& side = (b == 0 || (b > 1 && rng.index(2) == 0)) ? left : right;
        side.insert(side.end(), M.partition[b].begin(), M.partition[b].end());
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    TermP t1 = term_ident(), t2 = term_ident();
    for (std::size_t attempt = 0; attempt < kResampleCap; ++attempt) {
        TermP c1 = random_term(rng, left, 2);
        TermP c2 = random_term(rng, right, 2);
        if (eval_term(M, c1) > kMargin && eval_term(M, c2) > kMargin) {
            t1 = std::move(c1);
            t2 = std::move(c2);
            break;
        }
    }
    QF f = qf_implies(qf_and(qf_term_lt(term_null(), t1), qf_term_lt(term_null(), t2)),
                      qf_term_lt(term_null(), term_tensor(t1, t2)));
    return {std::move(f), std::move(M)};
}

QF gen_rcf(DetRng& rng, const Structure& M) {
    switch (rng.index(5)) {
        case 0: {
            QF p = qf_leq(random_term(rng, M.qubits, 1), random_term(rng, M.qubits, 1));
            QF q = qf_leq(random_term(rng, M.qubits, 1), random_term(rng, M.qubits, 1));
            return taut_shape(rng, p, q);
        }
        case 1: {
            TermP t = random_term(rng, M.qubits, 2);
            return qf_leq(t, t);
        }
        case 2: {
            TermP t1 = random_term(rng, M.qubits, 2);
            TermP t2 = random_term(rng, M.qubits, 2);
            return qf_implies(qf_term_eq(t1, t2), qf_term_eq(t2, t1));
        }
        case 3: {
            TermP t = random_term(rng, M.qubits, 2);
            return qf_implies(qf_and(qf_term_eq(t, term_null()), qf_term_lt(term_null(), t)),
                              qf_falsum());
        }
        default: return gen_leq_trans(rng, M);
    }
}

} // namespace

std::vector<std::string> fuzz_qubit_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string("q") + char('a' + i));
    return out;
}

CF random_cformula(DetRng& rng, const std::vector<std::string>& qubits, int depth) {
    if (depth <= 0 || rng.index(3) == 0) {
        if (qubits.empty() || rng.index(8) == 0)
            return rng.index(2) == 0 ? cf_falsum() : cf_verum();
        return cf_atom(qubits[rng.index(qubits.size())]);
    }
    CF l = random_cformula(rng, qubits, depth - 1);
    CF r = random_cformula(rng, qubits, depth - 1);
    switch (rng.index(5)) {
        case 0: return cf_implies(std::move(l), std::move(r));
        case 1: return cf_not(std::move(l));
        case 2: return cf_and(std::move(l), std::move(r));
        case 3: return cf_or(std::move(l), std::move(r));
        default: return cf_iff(std::move(l), std::move(r));
    }
}

std::vector<std::string> random_subset(DetRng& rng, const std::vector<std::string>& qubits) {
    std::vector<std::string> out;
    for (const std::string& q : qubits)
        if (rng.index(2) == 0) out.push_back(q);
    return out;
}

std::vector<std::vector<std::string>> random_partition(DetRng& rng,
                                                       const std::vector<std::string>& qubits) {
    std::size_t k = 1 + rng.index(qubits.size());
    std::vector<std::vector<std::string>> bins(k);
    for (const std::string& q : qubits) bins[rng.index(k)].push_back(q);
    std::vector<std::vector<std::string>> out;
    for (auto& b : bins)
        if (!b.empty()) out.push_back(std::move(b));
    return out;
}

Structure random_structure(DetRng& rng, std::size_t n_min, std::size_t n_max) {
    if (rng.index(2) == 0) return random_product_structure(rng, n_min, n_max);

    std::size_t n = n_min + rng.index(n_max - n_min + 1);
    Structure M;
    M.qubits = fuzz_qubit_names(n);
    M.partition = random_partition(rng, M.qubits);
    std::size_t dim = M.dim();

    if (rng.index(2) == 0) {
        M.global_state = random_state(rng, dim);
    } else {
        // Restricted admissible set with the state supported inside it.
        std::vector<std::size_t> v;
        for (std::size_t i = 0; i < dim; ++i)
            if (rng.index(2) == 0) v.push_back(i);
        if (v.empty()) v.push_back(rng.index(dim));
        M.V.all = false;
        M.V.vals = v;
        M.global_state = rng.random_density_supported(dim, v);
    }
    M.validate();
    return M;
}

Structure random_product_structure(DetRng& rng, std::size_t n_min, std::size_t n_max,
                                   std::size_t min_blocks) {
    std::size_t lo = std::max(n_min, min_blocks);
    std::size_t hi = std::max(n_max, lo);
    std::size_t n = lo + rng.index(hi - lo + 1);
    Structure M;
    M.qubits = fuzz_qubit_names(n);
    do {
        M.partition = random_partition(rng, M.qubits);
    } while (M.partition.size() < min_blocks);
    for (const auto& block : M.partition)
        M.block_states.push_back(random_state(rng, std::size_t{1} << block.size()));
    M.validate();
    return M;
}

TermP random_term(DetRng& rng, const std::vector<std::string>& allowed, int depth) {
    if (depth <= 0 || rng.index(5) < 2) {
        switch (rng.index(4)) {
            case 0: return term_null();
            case 1: return term_ident();
            case 2: return random_top(rng, allowed);
            default: return term_integral(random_cformula(rng, allowed, 2));
        }
    }
    switch (rng.index(4)) {
        case 0:
            return term_add(random_term(rng, allowed, depth - 1),
                            random_term(rng, allowed, depth - 1));
        case 1:
            return term_compose(random_term(rng, allowed, depth - 1),
                                random_term(rng, allowed, depth - 1));
        case 2: {
            std::vector<std::string> part = random_subset(rng, allowed);
            std::vector<std::string> rest;
            std::set_difference(allowed.begin(), allowed.end(), part.begin(), part.end(),
                                std::back_inserter(rest));
            return term_tensor(random_term(rng, part, depth - 1),
                               random_term(rng, rest, depth - 1));
        }
        default: return term_scale(random_coeff(rng), random_term(rng, allowed, depth - 1));
    }
}

QF random_quantum_atom(DetRng& rng, const std::vector<std::string>& qubits) {
    if (rng.index(3) == 0) return qf_subsys(random_subset(rng, qubits));
    return qf_leq(random_term(rng, qubits, 1), random_term(rng, qubits, 1));
}

FuzzCase random_schema_case(DetRng& rng, AxiomName ax, std::size_t n_min, std::size_t n_max) {
    if (ax == AxiomName::RCF && rng.index(6) == 5) return gen_pos_tensor(rng, n_min, n_max);

    Structure M = random_structure(rng, n_min, n_max);
    QF f;
    switch (ax) {
        case AxiomName::QTaut: f = gen_qtaut(rng, M); break;
        case AxiomName::RCF: f = gen_rcf(rng, M); break;
        case AxiomName::Unit: f = gen_unit(rng, M); break;
        case AxiomName::CTaut: f = gen_ctaut(rng, M); break;
        case AxiomName::MeshEmpty:
            f = qf_term_eq(term_integral(cf_falsum()), term_null());
            break;
        case AxiomName::FAdd: f = gen_fadd(rng, M); break;
        case AxiomName::Mon: f = gen_mon(rng, M); break;
        case AxiomName::Prob: f = gen_prob(rng, M); break;
        case AxiomName::MO1: f = gen_mo1(rng, M); break;
        case AxiomName::SubEmpty: f = qf_subsys({}); break;
        case AxiomName::SubUnion: f = gen_sub_union(rng, M); break;
        case AxiomName::SubComplement: f = gen_sub_complement(rng, M); break;
    }
    return {std::move(f), std::move(M)};
}

bool FuzzReport::all_passed() const {
    return std::all_of(schemas.begin(), schemas.end(),
                       [](const SchemaResult& s) { return s.ok(); });
}

std::size_t FuzzReport::total() const {
    std::size_t t = 0;
    for (const SchemaResult& s : schemas) t += s.checked;
    return t;
}

FuzzReport soundness_fuzz(std::uint64_t seed, std::size_t per_schema, std::size_t n_min,
                          std::size_t n_max, double tol) {
    DetRng rng(seed);
    FuzzReport report;
    report.seed = seed;
    report.tol = tol;
    for (AxiomName ax : all_axioms()) {
        SchemaResult res;
        res.name = axiom_name_str(ax);
        for (std::size_t k = 0; k < per_schema; ++k) {
            FuzzCase c = random_schema_case(rng, ax, n_min, n_max);
            ++res.checked;
            bool matched = is_axiom_instance(c.formula, ax, c.M.qubits);
            bool sat = satisfies(c.M, c.formula, tol);
            if (matched && sat) continue;
            if (!matched) ++res.mismatched;
            if (!sat) ++res.unsatisfied;
            if (res.counterexamples.size() < kCounterexampleCap) {
                std::string why = !matched ? "matcher refused" : "not satisfied";
                res.counterexamples.push_back(why + ": " + print_formula(c.formula) + "  in " +
                                              structure_to_json(c.M).dump());
            }
        }
        report.schemas.push_back(std::move(res));
    }
    return report;
}

} // namespace eqol
