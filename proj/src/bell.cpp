#include "bell.hpp"

#include "interp.hpp"
#include "parse.hpp"
#include "rng.hpp"

namespace eqol {

namespace {

const std::vector<std::string> kPair = {"qb1", "qb2"};

Step make_step(const std::string& text, Justification just) {
    Step s;
    s.text = text;
    s.formula = parse_formula(text);
    s.just = std::move(just);
    return s;
}

Justification premise() { return {}; }

Justification hypothesis() {
    Justification j;
    j.kind = Justification::HYPOTHESIS;
    return j;
}

Justification axiom(AxiomName ax) {
    Justification j;
    j.kind = Justification::AXIOM;
    j.axiom = ax;
    return j;
}

Justification qmp(std::size_t i, std::size_t j1) {
    Justification j;
    j.kind = Justification::QMP;
    j.i = i - 1;  // script steps are numbered from 1
    j.j = j1 - 1;
    return j;
}

Justification follows(std::vector<std::size_t> refs) {
    Justification j;
    j.kind = Justification::FOLLOWS;
    for (std::size_t r : refs) j.refs.push_back(r - 1);
    return j;
}

} // namespace

Structure bell_structure(bool v_all) {
    Structure M;
    M.qubits = kPair;
    M.partition = {kPair};
    if (!v_all) {
        M.V.all = false;
        M.V.vals = {1, 2};  // 01 and 10
    }
    ComplexMatrix rho(4, 4);
    rho.at(1, 1) = rho.at(1, 2) = rho.at(2, 1) = rho.at(2, 2) = 0.5;
    M.global_state = DensityOperator::from_dense(std::move(rho));
    M.validate();
    return M;
}

BellFormulas bell_formulas() {
    BellFormulas f;
    f.gamma1 = qf_term_eq(term_top({}, kPair), term_null());
    f.gamma2 = qf_term_eq(term_top(kPair, kPair), term_null());
    TermP half_id = term_scale(Rational(1, 2), term_ident());
    f.gamma3 = qf_term_eq(term_top({"qb1"}, kPair), half_id);
    f.gamma4 = qf_term_eq(term_top({"qb2"}, kPair), half_id);
    f.gamma = qf_and(qf_and(qf_and(f.gamma1, f.gamma2), f.gamma3), f.gamma4);
    f.pos1 = qf_term_lt(term_null(), term_top({"qb1"}, {"qb1"}));
    f.pos2 = qf_term_lt(term_null(), term_top({"qb2"}, {"qb2"}));
    f.eta = qf_implies(qf_and(qf_subsys(kPair), f.gamma),
                       qf_and(qf_not(qf_subsys({"qb1"})), qf_not(qf_subsys({"qb2"}))));
    return f;
}

DerivationScript bell_script() {
    DerivationScript s;
    s.qubits = kPair;
    s.steps.push_back(make_step("[{qb1,qb2}]", premise()));
    s.steps.push_back(make_step("[{qb1}]", hypothesis()));
    s.steps.push_back(make_step("[{qb1}] <=> [{qb2}]", axiom(AxiomName::SubComplement)));
    s.steps.push_back(make_step("[{qb1}] => [{qb2}]", follows({3})));
    s.steps.push_back(make_step("[{qb2}]", qmp(2, 4)));
    s.steps.push_back(make_step(
        "(T[{};{qb1,qb2}] = O) /\\ (T[{qb1,qb2};{qb1,qb2}] = O) /\\ "
        "(T[{qb1};{qb1,qb2}] = 1/2.Id) /\\ (T[{qb2};{qb1,qb2}] = 1/2.Id)",
        premise()));
    s.steps.push_back(make_step("T[{qb1,qb2};{qb1,qb2}] = O", follows({6})));
    s.steps.push_back(make_step(
        "([{qb1}] /\\ [{qb2}]) => "
        "(T[{qb1,qb2};{qb1,qb2}] = T[{qb1};{qb1}] ox T[{qb2};{qb2}])",
        axiom(AxiomName::MO1)));
    s.steps.push_back(
        make_step("T[{qb1};{qb1}] ox T[{qb2};{qb2}] = O", follows({2, 5, 7, 8})));
    s.steps.push_back(
        make_step("(O < T[{qb1};{qb1}]) /\\ (O < T[{qb2};{qb2}])", premise()));
    s.steps.push_back(
        make_step("O < T[{qb1};{qb1}] ox T[{qb2};{qb2}]", follows({10})));
    s.steps.push_back(
        make_step("(O < T[{qb1};{qb1}] ox T[{qb2};{qb2}]) => QF", follows({9})));
    s.steps.push_back(make_step("QF", qmp(11, 12)));
    return s;
}

BellReport bell_check(std::size_t samples, std::uint64_t seed, double tol) {
    BellReport r;
    Structure M = bell_structure();
    BellFormulas f = bell_formulas();

    r.ev_none = eval_term(M, term_top({}, kPair));
    r.ev_both = eval_term(M, term_top(kPair, kPair));
    r.ev_first = eval_term(M, term_top({"qb1"}, kPair));
    r.ev_second = eval_term(M, term_top({"qb2"}, kPair));
    r.gamma_holds = satisfies(M, f.gamma, tol);
    r.eta_holds = satisfies(M, f.eta, tol);
    r.replay = verify_derivation(bell_script());

    QF probe = qf_and(qf_and(f.gamma2, f.pos1), f.pos2);
    DetRng rng(seed);
    r.samples = samples;
    for (std::size_t k = 0; k < samples; ++k) {
        Structure P;
        P.qubits = kPair;
        P.partition = {{"qb1"}, {"qb2"}};
        P.block_states.push_back(rng.random_density(2));
        P.block_states.push_back(rng.random_density(2));
        if (satisfies(P, probe, tol)) ++r.product_satisfied;
    }
    return r;
}

} // namespace eqol
