#include "bb84.hpp"

#include "interp.hpp"

namespace eqol {

namespace {

constexpr std::size_t kMaxPositions = 4;

std::size_t table_index(int a, int k, int b, int r) {
    return static_cast<std::size_t>(a * 8 + k * 4 + b * 2 + r);
}

Rational pow_rational(const Rational& base, std::size_t e) {
    Rational out(1);
    for (std::size_t i = 0; i < e; ++i) out = out * base;
    return out;
}

void check_range(std::size_t n) {
    if (n < 1 || n > kMaxPositions)
        throw model_error("transmission count must be between 1 and 4");
}

std::vector<std::size_t> all_positions(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(i);
    return out;
}

// Bit of valuation v for qubit slot s, with slot 0 the most significant.
int bit_at(std::size_t v, std::size_t slots, std::size_t s) {
    return static_cast<int>((v >> (slots - 1 - s)) & 1);
}

CF sift_agreement(const std::vector<std::size_t>& sift) {
    CF acc;
    for (std::size_t i : sift) {
        CF atom = cf_iff(cf_atom("ab" + std::to_string(i)), cf_atom("bb" + std::to_string(i)));
        acc = acc ? cf_and(std::move(acc), std::move(atom)) : std::move(atom);
    }
    return acc;
}

CF key_mismatch(const std::vector<std::size_t>& sift) {
    CF acc;
    for (std::size_t j : sift) {
        CF atom = cf_iff(cf_atom("ak" + std::to_string(j)),
                         cf_not(cf_atom("bk" + std::to_string(j))));
        acc = acc ? cf_or(std::move(acc), std::move(atom)) : std::move(atom);
    }
    return acc;
}

Rational exact_eval(const Structure& M, const TermP& t) {
    std::optional<Rational> v = eval_term_exact(M, t);
    if (!v) throw model_error("expected an exact diagonal evaluation");
    return *v;
}

} // namespace

std::vector<std::string> bb84_qubits(std::size_t n) {
    std::vector<std::string> out;
    for (const char* group : {"ab", "ak", "bb", "bk"})
        for (std::size_t i = 1; i <= n; ++i) out.push_back(group + std::to_string(i));
    return out;
}

std::array<Rational, 16> bb84_position_weights(bool eavesdrop) {
    std::array<Rational, 16> w;
    for (int a = 0; a < 2; ++a)
        for (int k = 0; k < 2; ++k)
            for (int b = 0; b < 2; ++b)
                for (int r = 0; r < 2; ++r) {
                    Rational& cell = w[table_index(a, k, b, r)];
                    if (!eavesdrop) {
                        if (b == a)
                            cell = r == k ? Rational(1, 8) : Rational(0);
                        else
                            cell = Rational(1, 16);
                    } else {
                        if (b == a)
                            cell = r == k ? Rational(3, 32) : Rational(1, 32);
                        else
                            cell = Rational(1, 16);
                    }
                }
    return w;
}

std::array<Rational, 16> bb84_position_oracle(bool eavesdrop) {
    std::array<Rational, 16> w;
    w.fill(Rational(0));
    const Rational half(1, 2);
    for (int a = 0; a < 2; ++a)
        for (int k = 0; k < 2; ++k)
            for (int b = 0; b < 2; ++b) {
                Rational base = half * half * half;  // the three free coin flips
                if (!eavesdrop) {
                    for (int r = 0; r < 2; ++r) {
                        Rational p = b == a ? (r == k ? Rational(1) : Rational(0)) : half;
                        w[table_index(a, k, b, r)] = w[table_index(a, k, b, r)] + base * p;
                    }
                    continue;
                }
                for (int e = 0; e < 2; ++e)
                    for (int m = 0; m < 2; ++m) {
                        Rational pm = e == a ? (m == k ? Rational(1) : Rational(0)) : half;
                        for (int r = 0; r < 2; ++r) {
                            Rational pr = b == e ? (r == m ? Rational(1) : Rational(0)) : half;
                            Rational add = base * half * pm * pr;  // half: attacker's basis
                            w[table_index(a, k, b, r)] = w[table_index(a, k, b, r)] + add;
                        }
                    }
            }
    return w;
}

BB84Instance bb84_state(std::size_t n, bool eavesdrop) {
    check_range(n);
    std::array<Rational, 16> w = bb84_position_weights(eavesdrop);

    std::size_t slots = 4 * n;
    std::vector<Rational> diag(std::size_t{1} << slots);
    for (std::size_t v = 0; v < diag.size(); ++v) {
        Rational prod(1);
        for (std::size_t i = 0; i < n && !prod.is_zero(); ++i) {
            int a = bit_at(v, slots, i);
            int k = bit_at(v, slots, n + i);
            int b = bit_at(v, slots, 2 * n + i);
            int r = bit_at(v, slots, 3 * n + i);
            prod = prod * w[table_index(a, k, b, r)];
        }
        diag[v] = prod;
    }

    BB84Instance inst;
    inst.n = n;
    inst.eavesdrop = eavesdrop;
    inst.sift = all_positions(n);
    inst.structure.qubits = bb84_qubits(n);
    inst.structure.partition = {inst.structure.qubits};
    inst.structure.global_state = DensityOperator::from_diag_exact(std::move(diag));
    inst.structure.validate();
    return inst;
}

BB84Instance bb84_conditioned(const BB84Instance& inst) {
    const DensityOperator& rho = *inst.structure.global_state;
    if (!rho.diag_exact) throw model_error("conditioning needs the exact diagonal state");

    std::size_t n = inst.n;
    std::size_t slots = 4 * n;
    Rational scale(static_cast<long long>(std::size_t{1} << inst.sift.size()));
    std::vector<Rational> diag(*rho.diag_exact);
    for (std::size_t v = 0; v < diag.size(); ++v) {
        bool sifted = true;
        for (std::size_t pos : inst.sift)
            if (bit_at(v, slots, pos - 1) != bit_at(v, slots, 2 * n + pos - 1)) {
                sifted = false;
                break;
            }
        diag[v] = sifted ? diag[v] * scale : Rational(0);
    }

    BB84Instance out = inst;
    out.structure.global_state = DensityOperator::from_diag_exact(std::move(diag));
    out.structure.validate();
    return out;
}

QF bb84_formula(std::size_t n, const std::vector<std::size_t>& sift, const Rational& a) {
    check_range(n);
    if (sift.empty()) throw model_error("the sift set must not be empty");
    for (std::size_t pos : sift)
        if (pos < 1 || pos > n) throw model_error("sift position out of range");
    if (a <= Rational(0) || Rational(1) < a)
        throw model_error("the detection threshold must lie in (0, 1]");

    TermP antecedent = term_integral(sift_agreement(sift));
    TermP consequent = term_integral(key_mismatch(sift));
    return qf_implies(qf_term_lt(term_null(), std::move(antecedent)),
                      qf_leq(term_scale(a, term_ident()), std::move(consequent)));
}

BB84Report bb84_check(std::size_t n, const Rational& a, double tol) {
    check_range(n);
    BB84Report rep;
    rep.n = n;
    rep.threshold = a;
    rep.sift = all_positions(n);
    rep.sift_probability = pow_rational(Rational(1, 2), n);

    BB84Instance honest = bb84_state(n, false);
    BB84Instance tapped = bb84_state(n, true);
    BB84Instance honest_c = bb84_conditioned(honest);
    BB84Instance tapped_c = bb84_conditioned(tapped);

    TermP mismatch = term_integral(key_mismatch(rep.sift));
    rep.honest_consequent = exact_eval(honest_c.structure, mismatch);
    rep.eavesdrop_consequent = exact_eval(tapped_c.structure, mismatch);
    rep.honest_consequent_raw = exact_eval(honest.structure, mismatch);
    rep.eavesdrop_consequent_raw = exact_eval(tapped.structure, mismatch);
    rep.eavesdrop_bit_error =
        exact_eval(tapped_c.structure, term_integral(key_mismatch({1})));

    QF phi = bb84_formula(n, rep.sift, a);
    rep.honest_holds = satisfies(honest_c.structure, phi, tol);
    rep.eavesdrop_holds = satisfies(tapped_c.structure, phi, tol);

    for (const Rational& t :
         {Rational(1, 1000000), Rational(1, 20), Rational(1, 10), Rational(1, 4)}) {
        BB84SweepEntry entry;
        entry.a = t;
        QF phi_t = bb84_formula(n, rep.sift, t);
        entry.honest = satisfies(honest_c.structure, phi_t, tol);
        entry.eavesdrop = satisfies(tapped_c.structure, phi_t, tol);
        rep.sweep.push_back(entry);
    }
    return rep;
}

} // namespace eqol
