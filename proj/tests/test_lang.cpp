#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "interp.hpp"
#include "lang.hpp"
#include "parse.hpp"
#include "print.hpp"
#include "rng.hpp"
#include "structure.hpp"

using namespace eqol;

namespace {

const std::vector<std::string> kAtoms{"qa", "qb", "qc", "qd"};

std::vector<std::string> random_subset(DetRng& rng, const std::vector<std::string>& pool) {
    std::vector<std::string> out;
    for (const auto& name : pool)
        if (rng.index(2)) out.push_back(name);
    return out;
}

CF gen_cf(DetRng& rng, int depth) {
    if (depth <= 0 || rng.index(4) == 0) {
        switch (rng.index(4)) {
            case 0: return cf_falsum();
            case 1: return cf_verum();
            default: return cf_atom(kAtoms[rng.index(kAtoms.size())]);
        }
    }
    switch (rng.index(5)) {
        case 0: return cf_not(gen_cf(rng, depth - 1));
        case 1: return cf_and(gen_cf(rng, depth - 1), gen_cf(rng, depth - 1));
        case 2: return cf_or(gen_cf(rng, depth - 1), gen_cf(rng, depth - 1));
        case 3: return cf_iff(gen_cf(rng, depth - 1), gen_cf(rng, depth - 1));
        default: return cf_implies(gen_cf(rng, depth - 1), gen_cf(rng, depth - 1));
    }
}

Rational gen_coeff(DetRng& rng) {
    const long long den = 1 + static_cast<long long>(rng.index(6));
    const long long num = static_cast<long long>(rng.index(static_cast<std::size_t>(den) + 1));
    return Rational(num, den);
}

TermP gen_term(DetRng& rng, int depth) {
    if (depth <= 0 || rng.index(4) == 0) {
        switch (rng.index(5)) {
            case 0: return term_null();
            case 1: return term_ident();
            case 2: return term_var(rng.index(2) ? "x" : "y");
            case 3: return term_integral(gen_cf(rng, 2));
            default: {
                std::vector<std::string> g = random_subset(rng, kAtoms);
                std::vector<std::string> a = random_subset(rng, g);
                return term_top(a, g);
            }
        }
    }
    switch (rng.index(4)) {
        case 0: return term_add(gen_term(rng, depth - 1), gen_term(rng, depth - 1));
        case 1: return term_compose(gen_term(rng, depth - 1), gen_term(rng, depth - 1));
        case 2: return term_tensor(gen_term(rng, depth - 1), gen_term(rng, depth - 1));
        default: return term_scale(gen_coeff(rng), gen_term(rng, depth - 1));
    }
}

QF gen_qf(DetRng& rng, int depth) {
    if (depth <= 0 || rng.index(4) == 0) {
        switch (rng.index(5)) {
            case 0: return qf_falsum();
            case 1: return qf_subsys(random_subset(rng, kAtoms));
            case 2: return qf_leq(gen_term(rng, 1), gen_term(rng, 1));
            case 3: return qf_term_eq(gen_term(rng, 1), gen_term(rng, 1));
            default: return qf_term_lt(gen_term(rng, 1), gen_term(rng, 1));
        }
    }
    switch (rng.index(5)) {
        case 0: return qf_not(gen_qf(rng, depth - 1));
        case 1: return qf_and(gen_qf(rng, depth - 1), gen_qf(rng, depth - 1));
        case 2: return qf_or(gen_qf(rng, depth - 1), gen_qf(rng, depth - 1));
        case 3: return qf_iff(gen_qf(rng, depth - 1), gen_qf(rng, depth - 1));
        default: return qf_implies(gen_qf(rng, depth - 1), gen_qf(rng, depth - 1));
    }
}

bool cf_eval_oracle(const CF& f, const std::map<std::string, bool>& tv) {
    switch (f->kind) {
        case CFormula::FALSUM: return false;
        case CFormula::ATOM: return tv.at(f->atom);
        case CFormula::IMPLIES: return !cf_eval_oracle(f->lhs, tv) || cf_eval_oracle(f->rhs, tv);
    }
    return false;
}

// Propositional truth of a quantum formula over an assignment to its atoms,
// keyed by printed text; written independently of the library's expansion.
bool skeleton_eval(const QF& f, const std::map<std::string, bool>& tv) {
    switch (f->kind) {
        case QFormula::QFALSUM: return false;
        case QFormula::QIMPLIES:
            return !skeleton_eval(f->lhs, tv) || skeleton_eval(f->rhs, tv);
        default: return tv.at(print_formula(f));
    }
}

std::size_t length_oracle(const QF& f) {
    if (f->kind != QFormula::QIMPLIES) return 0;
    return std::max(length_oracle(f->lhs), length_oracle(f->rhs)) + 1;
}

// Evaluable terms for structure-level preservation checks: no variables and
// no tensor, so the interpretation never faces an overlapping split.
TermP gen_eval_term(DetRng& rng, const std::vector<std::string>& qubits, int depth) {
    if (depth <= 0 || rng.index(3) == 0) {
        switch (rng.index(4)) {
            case 0: return term_null();
            case 1: return term_ident();
            case 2: {
                CF alpha = cf_atom(qubits[rng.index(qubits.size())]);
                if (rng.index(2)) alpha = cf_not(alpha);
                if (rng.index(2)) alpha = cf_or(alpha, cf_atom(qubits[rng.index(qubits.size())]));
                return term_integral(alpha);
            }
            default: {
                std::vector<std::string> g = random_subset(rng, qubits);
                std::vector<std::string> a = random_subset(rng, g);
                return term_top(a, g);
            }
        }
    }
    switch (rng.index(3)) {
        case 0: return term_add(gen_eval_term(rng, qubits, depth - 1),
                                gen_eval_term(rng, qubits, depth - 1));
        case 1: return term_compose(gen_eval_term(rng, qubits, depth - 1),
                                    gen_eval_term(rng, qubits, depth - 1));
        default: return term_scale(gen_coeff(rng), gen_eval_term(rng, qubits, depth - 1));
    }
}

QF gen_eval_formula(DetRng& rng, const std::vector<std::string>& qubits, int depth) {
    if (depth <= 0 || rng.index(3) == 0) {
        if (rng.index(4) == 0) return qf_subsys(random_subset(rng, qubits));
        return qf_leq(gen_eval_term(rng, qubits, 2), gen_eval_term(rng, qubits, 2));
    }
    switch (rng.index(4)) {
        case 0: return qf_not(gen_eval_formula(rng, qubits, depth - 1));
        case 1: return qf_and(gen_eval_formula(rng, qubits, depth - 1),
                              gen_eval_formula(rng, qubits, depth - 1));
        case 2: return qf_or(gen_eval_formula(rng, qubits, depth - 1),
                             gen_eval_formula(rng, qubits, depth - 1));
        default: return qf_implies(gen_eval_formula(rng, qubits, depth - 1),
                                   gen_eval_formula(rng, qubits, depth - 1));
    }
}

std::vector<std::string> lex_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string("q") + char('a' + i));
    return out;
}

} // namespace

TEST_CASE("printing then parsing is the identity on random syntax") {
    DetRng rng(21);
    for (int rep = 0; rep < 170; ++rep) {
        const CF f = gen_cf(rng, 4);
        const std::string text = print_classical(f);
        const CF back = parse_classical(text);
        CHECK(cf_equal(f, back));
        CHECK(print_classical(back) == text);
    }
    for (int rep = 0; rep < 170; ++rep) {
        const TermP t = gen_term(rng, 4);
        const std::string text = print_term(t);
        const TermP back = parse_term(text);
        CHECK(term_equal(t, back));
        CHECK(print_term(back) == text);
    }
    for (int rep = 0; rep < 160; ++rep) {
        const QF f = gen_qf(rng, 4);
        const std::string text = print_formula(f);
        const QF back = parse_formula(text);
        CHECK(qf_equal(f, back));
        CHECK(print_formula(back) == text);
    }
}

TEST_CASE("derived connectives are stored in core form") {
    const TermP t = term_top({"qa"}, {"qa"});
    const QF atom = qf_leq(t, term_ident());

    const QF neg = qf_not(atom);
    REQUIRE(neg->kind == QFormula::QIMPLIES);
    CHECK(qf_equal(neg->lhs, atom));
    CHECK(neg->rhs->kind == QFormula::QFALSUM);

    // t1 = t2 is the conjunction of both inequalities; t1 < t2 additionally
    // refutes the reverse.
    const QF eq = qf_term_eq(t, term_ident());
    CHECK(qf_equal(eq, qf_and(qf_leq(t, term_ident()), qf_leq(term_ident(), t))));
    const QF lt = qf_term_lt(term_null(), t);
    CHECK(qf_equal(lt, qf_and(qf_leq(term_null(), t), qf_not(qf_leq(t, term_null())))));

    // A bare term in formula position means "equals the identity".
    CHECK(qf_equal(parse_formula("T[{qa};{qa}]"), qf_term_eq(t, term_ident())));
    CHECK(qf_equal(qf_term(t), qf_term_eq(t, term_ident())));

    CHECK(qf_equal(desugar(qf_iff(atom, lt)), qf_iff(atom, lt)));
    CHECK(cf_equal(parse_classical("true"), cf_verum()));
}

TEST_CASE("valuation strings use the most significant bit first") {
    CHECK(val_to_string(5, 3) == "101");
    CHECK(val_to_string(0, 2) == "00");
    CHECK(string_to_val("101", 3) == 5);
    CHECK(string_to_val("11", 2) == 3);
    for (std::size_t v = 0; v < 16; ++v) CHECK(string_to_val(val_to_string(v, 4), 4) == v);
}

TEST_CASE("satisfying valuations match brute-force evaluation") {
    DetRng rng(22);
    const std::vector<std::string> qb = lex_names(4);
    for (int rep = 0; rep < 120; ++rep) {
        const CF f = gen_cf(rng, 3);
        const auto vals = valuations_of(f, qb);
        std::set<std::size_t> got(vals.begin(), vals.end());
        CHECK(std::is_sorted(vals.begin(), vals.end()));
        for (std::size_t v = 0; v < 16; ++v) {
            std::map<std::string, bool> tv;
            for (std::size_t i = 0; i < 4; ++i) tv[qb[i]] = (v >> (3 - i)) & 1;
            const bool expect = cf_eval_oracle(f, tv);
            CHECK(eval_classical(f, qb, v) == expect);
            CHECK(got.count(v) == (expect ? 1u : 0u));
        }
    }
}

TEST_CASE("classical tautology check agrees with the truth table") {
    const std::vector<std::string> qb{"qa", "qb"};
    CHECK(is_classical_tautology(parse_classical("qa | ~qa"), qb));
    CHECK(is_classical_tautology(parse_classical("(qa & qb) -> qa"), qb));
    CHECK(is_classical_tautology(parse_classical("true"), qb));
    CHECK_FALSE(is_classical_tautology(parse_classical("qa -> qb"), qb));
    CHECK_FALSE(is_classical_tautology(parse_classical("false"), qb));

    DetRng rng(23);
    for (int rep = 0; rep < 60; ++rep) {
        const CF f = gen_cf(rng, 3);
        bool all_true = true;
        for (std::size_t v = 0; v < 16; ++v) {
            std::map<std::string, bool> tv;
            for (std::size_t i = 0; i < 4; ++i) tv[kAtoms[i]] = (v >> (3 - i)) & 1;
            if (!cf_eval_oracle(f, tv)) all_true = false;
        }
        CHECK(is_classical_tautology(f, kAtoms) == all_true);
    }
}

TEST_CASE("homomorphic lift preserves the implication structure") {
    std::map<std::string, QF> image;
    image["qa"] = qf_subsys({"qa"});
    image["qb"] = qf_leq(term_null(), term_top({"qb"}, {"qb"}));

    CHECK(qf_equal(hom_f(cf_falsum(), image), qf_falsum()));
    CHECK(qf_equal(hom_f(cf_atom("qa"), image), image["qa"]));
    const CF f = cf_implies(cf_atom("qa"), cf_implies(cf_atom("qb"), cf_falsum()));
    const QF expect = qf_implies(image["qa"], qf_implies(image["qb"], qf_falsum()));
    CHECK(qf_equal(hom_f(f, image), expect));

    // Derived classical connectives pass through as images of their own
    // core expansion.
    CHECK(qf_equal(hom_f(cf_and(cf_atom("qa"), cf_atom("qb")), image),
                   qf_not(qf_implies(image["qa"], qf_not(image["qb"])))));
}

TEST_CASE("disjunctive normal form preserves the propositional skeleton") {
    DetRng rng(24);
    for (int rep = 0; rep < 150; ++rep) {
        const QF f = gen_qf(rng, 3);
        const auto atoms = quantum_atoms_of(f);
        if (atoms.size() > 6) continue;
        const auto molecules = to_dnf(f);
        const QF d = dnf_formula(molecules);
        for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
            std::map<std::string, bool> tv;
            for (std::size_t i = 0; i < atoms.size(); ++i)
                tv[print_formula(atoms[i])] = (mask >> i) & 1;
            CHECK(skeleton_eval(f, tv) == skeleton_eval(d, tv));
        }
        for (const auto& m : molecules) CHECK_FALSE(m.overlap);
    }
}

TEST_CASE("normal form and integral elimination preserve satisfaction") {
    DetRng rng(25);
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rng.index(3);
        const std::vector<std::string> qubits = lex_names(n);
        const Structure M = make_structure(qubits, ValSet{}, {qubits},
                                           rng.random_density(std::size_t{1} << n));
        const QF f = gen_eval_formula(rng, qubits, 3);

        const bool direct = satisfies(M, f);
        const bool via_dnf = satisfies(M, dnf_formula(to_dnf(f)));
        const bool via_elim = satisfies(M, eliminate_integrals(f, qubits));
        CHECK(direct == via_dnf);
        CHECK(direct == via_elim);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("integral elimination respects a restricted admissible set") {
    DetRng rng(26);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rng.index(2);
        const std::size_t dim = std::size_t{1} << n;
        const std::vector<std::string> qubits = lex_names(n);

        ValSet v;
        v.all = false;
        for (std::size_t i = 0; i < dim; ++i)
            if (rng.index(2)) v.vals.push_back(i);
        if (v.vals.empty()) v.vals.push_back(rng.index(dim));

        std::vector<double> d(dim, 0.0);
        double total = 0.0;
        for (const std::size_t i : v.vals) {
            d[i] = 0.05 + rng.uniform();
            total += d[i];
        }
        for (auto& x : d) x /= total;
        const Structure M =
            make_structure(qubits, v, {qubits}, DensityOperator::from_diag(d));

        CF alpha = cf_atom(qubits[rng.index(n)]);
        if (rng.index(2)) alpha = cf_not(alpha);
        if (rng.index(2)) alpha = cf_or(alpha, cf_atom(qubits[rng.index(n)]));
        const TermP t = term_integral(alpha);
        const TermP cut = eliminate_integrals_term(t, qubits, &v.vals);
        // The valuations the admissible set rules out carry no weight, so the
        // restricted sum reproduces the integral exactly.
        CHECK(eval_term(M, t) == doctest::Approx(eval_term(M, cut)).epsilon(1e-12));
    }
}

TEST_CASE("formula length counts implication nesting") {
    const QF atom = qf_subsys({"qa"});
    CHECK(formula_length(atom) == 0);
    CHECK(formula_length(qf_falsum()) == 0);
    CHECK(formula_length(qf_not(atom)) == 1);
    CHECK(formula_length(qf_implies(atom, qf_not(atom))) == 2);

    DetRng rng(27);
    for (int rep = 0; rep < 80; ++rep) {
        const QF f = gen_qf(rng, 4);
        CHECK(formula_length(f) == length_oracle(f));
    }
}

TEST_CASE("substitution replaces variables and leaves the rest alone") {
    const TermP body = term_top({"qa"}, {"qa", "qb"});
    const QF f = parse_formula("($x <= T[{qa};{qa,qb}]) /\\ (O < $x)");
    CHECK(formula_has_var(f));
    CHECK_FALSE(is_analytical(f));

    std::map<std::string, TermP> binding;
    binding["x"] = body;
    const QF g = substitute(f, binding);
    CHECK_FALSE(formula_has_var(g));
    CHECK(qf_equal(g, parse_formula("(T[{qa};{qa,qb}] <= T[{qa};{qa,qb}]) /\\ (O < T[{qa};{qa,qb}])")));

    CHECK(term_equal(substitute_term(term_var("x"), binding), body));
    CHECK(term_equal(substitute_term(term_var("z"), binding), term_var("z")));
    CHECK(is_analytical(parse_formula("QF => ($x <= $x)")));
}

TEST_CASE("syntactic support tracks what a term can touch") {
    const std::vector<std::string> qb{"qa", "qb", "qc"};
    CHECK(syntactic_support(term_null(), qb).empty());
    CHECK(syntactic_support(term_ident(), qb).empty());
    CHECK(syntactic_support(term_var("x"), qb) == std::set<std::string>{"qa", "qb", "qc"});
    CHECK(syntactic_support(term_integral(parse_classical("qa | qc")), qb) ==
          std::set<std::string>{"qa", "qc"});
    CHECK(syntactic_support(term_top({}, {"qb"}), qb) == std::set<std::string>{"qb"});
    const TermP prod = term_tensor(term_top({"qa"}, {"qa"}), term_top({}, {"qc"}));
    CHECK(syntactic_support(prod, qb) == std::set<std::string>{"qa", "qc"});
    CHECK(syntactic_support(term_scale(Rational(1, 2), prod), qb) ==
          std::set<std::string>{"qa", "qc"});
}
