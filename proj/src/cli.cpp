#include "cli.hpp"

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "axioms.hpp"
#include "bb84.hpp"
#include "bell.hpp"
#include "eqmc.hpp"
#include "fuzz.hpp"
#include "gqloop.hpp"
#include "interp.hpp"
#include "jsonio.hpp"
#include "lang.hpp"
#include "parse.hpp"
#include "print.hpp"

namespace eqol {
namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitParse = 64;
constexpr int kExitModel = 65;
constexpr int kExitUnsupported = 66;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void emit(const Json& j) { std::cout << dump_json(j); }

// Threshold values arrive as "1/20", "0.05", "3", or "1e-6"; all are read
// exactly into a rational.
Rational rational_from_text(const std::string& text) {
    if (text.empty()) throw parse_error("empty number", 0);
    if (text.find('/') != std::string::npos) return parse_rational(text);

    std::string body = text;
    long long exp10 = 0;
    auto epos = body.find_first_of("eE");
    if (epos != std::string::npos) {
        const std::string etail = body.substr(epos + 1);
        if (etail.empty()) throw parse_error("malformed exponent in " + text, epos);
        try {
            exp10 = std::stoll(etail);
        } catch (const std::exception&) {
            throw parse_error("malformed exponent in " + text, epos);
        }
        body = body.substr(0, epos);
    }

    bool negative = false;
    std::size_t at = 0;
    if (at < body.size() && (body[at] == '+' || body[at] == '-')) {
        negative = body[at] == '-';
        ++at;
    }
    std::string digits;
    long long frac_digits = 0;
    bool seen_dot = false;
    for (; at < body.size(); ++at) {
        const char c = body[at];
        if (c == '.') {
            if (seen_dot) throw parse_error("malformed number " + text, at);
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_dot) ++frac_digits;
        } else {
            throw parse_error("malformed number " + text, at);
        }
    }
    if (digits.empty()) throw parse_error("malformed number " + text, 0);
    if (digits.size() > 18) throw parse_error("number has too many digits: " + text, 0);

    long long mantissa = std::stoll(digits);
    if (negative) mantissa = -mantissa;
    long long shift = exp10 - frac_digits;
    if (shift < -18 || shift > 18) throw parse_error("exponent out of range in " + text, 0);

    Rational r(mantissa, 1);
    for (long long k = 0; k < shift; ++k) r = r * Rational(10, 1);
    for (long long k = 0; k > shift; --k) r = r / Rational(10, 1);
    return r;
}

std::vector<std::string> split_qubit_list(const std::string& csv) {
    std::set<std::string> names;
    std::string cur;
    for (std::size_t i = 0; i <= csv.size(); ++i) {
        if (i == csv.size() || csv[i] == ',') {
            std::size_t b = 0, e = cur.size();
            while (b < e && cur[b] == ' ') ++b;
            while (e > b && cur[e - 1] == ' ') --e;
            const std::string name = cur.substr(b, e - b);
            if (!name.empty()) names.insert(name);
            cur.clear();
        } else {
            cur.push_back(csv[i]);
        }
    }
    return {names.begin(), names.end()};
}

int run_check(const std::string& structure_path, const std::string& formula_text, double tol,
              bool json) {
    const Structure M = structure_from_json(json_from_file(structure_path));
    const QF f = parse_formula(formula_text);
    const CheckReport r = model_check(M, f, tol);

    Json atoms = Json::array();
    for (const auto& a : r.atoms) {
        Json ja{{"text", a.text}, {"holds", a.holds}};
        if (a.is_leq) {
            ja["left"] = a.left;
            ja["right"] = a.right;
        }
        atoms.push_back(ja);
    }
    if (json) {
        emit(Json{{"subcommand", "check"},
                  {"verdict", r.verdict ? "HOLDS" : "FAILS"},
                  {"n_qubits", r.n_qubits},
                  {"length", r.length},
                  {"non_physical", r.non_physical},
                  {"tol", tol},
                  {"atoms", atoms}});
    } else {
        std::cout << (r.verdict ? "HOLDS" : "FAILS") << "\n";
        std::cout << "qubits: " << r.n_qubits << "  length: " << r.length << "  elapsed: " << fmt(r.elapsed_ms)
                  << " ms\n";
        if (r.non_physical)
            std::cout << "warning: a term value left [0,1] beyond tolerance\n";
        for (const auto& a : r.atoms) {
            std::cout << "  " << (a.holds ? "sat   " : "unsat ") << a.text;
            if (a.is_leq) std::cout << "  [" << fmt(a.left) << " vs " << fmt(a.right) << "]";
            std::cout << "\n";
        }
    }
    return r.verdict ? kExitHolds : kExitFails;
}

int run_eval(const std::string& structure_path, const std::string& term_text, double tol,
             bool json) {
    const Structure M = structure_from_json(json_from_file(structure_path));
    const TermP t = parse_term(term_text);
    const double value = eval_term(M, t);
    const auto exact = eval_term_exact(M, t);

    if (json) {
        Json out{{"subcommand", "eval"},
                 {"term", print_term(t)},
                 {"value", value},
                 {"clamped", clamp_unit(value, tol)},
                 {"tol", tol}};
        out["exact"] = exact ? Json(exact->str()) : Json();
        emit(out);
    } else {
        std::cout << print_term(t) << " = " << fmt(clamp_unit(value, tol));
        if (exact) std::cout << " (exactly " << exact->str() << ")";
        std::cout << "\n";
    }
    return kExitHolds;
}

int run_dnf(const std::string& formula_text, const std::string& qubits_csv, bool eliminate,
            bool json) {
    const QF f = parse_formula(formula_text);
    std::vector<std::string> qubits;
    if (!qubits_csv.empty()) {
        qubits = split_qubit_list(qubits_csv);
    } else {
        const auto mentioned = mentioned_qubits(f);
        qubits.assign(mentioned.begin(), mentioned.end());
    }

    const auto molecules = to_dnf(f);
    const QF dnf = dnf_formula(molecules);

    Json jm = Json::array();
    for (const auto& m : molecules) {
        Json pos = Json::array(), neg = Json::array();
        for (const auto& a : m.pos) pos.push_back(print_formula(a));
        for (const auto& a : m.neg) neg.push_back(print_formula(a));
        jm.push_back(Json{{"pos", pos}, {"neg", neg}, {"overlap", m.overlap}});
    }
    Json out{{"subcommand", "dnf"},
             {"formula", print_formula(f)},
             {"qubits", qubits},
             {"molecules", jm},
             {"dnf", print_formula(dnf)}};
    std::string eliminated_text;
    if (eliminate) {
        eliminated_text = print_formula(eliminate_integrals(dnf, qubits));
        out["eliminated"] = eliminated_text;
    }

    if (json) {
        emit(out);
    } else {
        std::cout << "dnf: " << print_formula(dnf) << "\n";
        std::cout << "molecules: " << molecules.size() << "\n";
        if (eliminate) std::cout << "eliminated: " << eliminated_text << "\n";
    }
    return kExitHolds;
}

const char* step_status_str(StepStatus s) {
    switch (s) {
        case StepStatus::OK: return "ok";
        case StepStatus::REJECTED: return "rejected";
        case StepStatus::UNSUPPORTED: return "unsupported";
    }
    return "ok";
}

int run_derive(const std::string& script_path, bool json) {
    const DerivationScript script = derivation_from_json(json_from_file(script_path));
    const DerivationReport rep = verify_derivation(script);

    Json steps = Json::array();
    for (std::size_t i = 0; i < rep.steps.size(); ++i) {
        Json js{{"index", i + 1},
                {"status", step_status_str(rep.steps[i].status)},
                {"text", i < script.steps.size() ? script.steps[i].text : ""}};
        if (!rep.steps[i].detail.empty()) js["detail"] = rep.steps[i].detail;
        steps.push_back(js);
    }
    if (json) {
        emit(Json{{"subcommand", "derive"},
                  {"accepted", rep.accepted},
                  {"unsupported", rep.unsupported},
                  {"qubits", rep.qubits},
                  {"steps", steps}});
    } else {
        std::cout << (rep.accepted ? "ACCEPTED" : rep.unsupported ? "UNSUPPORTED" : "REJECTED")
                  << " (" << rep.steps.size() << " steps)\n";
        for (std::size_t i = 0; i < rep.steps.size(); ++i) {
            const auto& sr = rep.steps[i];
            std::cout << "  " << (i + 1) << ". " << step_status_str(sr.status);
            if (i < script.steps.size()) std::cout << "  " << script.steps[i].text;
            if (!sr.detail.empty()) std::cout << "  -- " << sr.detail;
            std::cout << "\n";
        }
    }
    if (rep.accepted) return kExitHolds;
    return rep.unsupported ? kExitUnsupported : kExitFails;
}

int run_fuzz(std::uint64_t seed, std::size_t per_schema, std::size_t min_qubits,
             std::size_t max_qubits, double tol, bool json) {
    const FuzzReport rep = soundness_fuzz(seed, per_schema, min_qubits, max_qubits, tol);

    Json schemas = Json::array();
    for (const auto& s : rep.schemas) {
        schemas.push_back(Json{{"name", s.name},
                               {"checked", s.checked},
                               {"mismatched", s.mismatched},
                               {"unsatisfied", s.unsatisfied},
                               {"counterexamples", s.counterexamples}});
    }
    if (json) {
        emit(Json{{"subcommand", "fuzz-sound"},
                  {"seed", rep.seed},
                  {"per_schema", per_schema},
                  {"min_qubits", min_qubits},
                  {"max_qubits", max_qubits},
                  {"tol", rep.tol},
                  {"all_passed", rep.all_passed()},
                  {"total", rep.total()},
                  {"schemas", schemas}});
    } else {
        for (const auto& s : rep.schemas) {
            std::cout << s.name;
            for (std::size_t pad = s.name.size(); pad < 16; ++pad) std::cout << ' ';
            if (s.ok()) {
                std::cout << "checked " << s.checked << "  ok\n";
            } else {
                std::cout << "checked " << s.checked << "  mismatched " << s.mismatched
                          << "  unsatisfied " << s.unsatisfied << "\n";
                for (const auto& c : s.counterexamples) std::cout << "    " << c << "\n";
            }
        }
        std::cout << (rep.all_passed() ? "all schemas sound" : "soundness violations found")
                  << " (" << rep.total() << " instances)\n";
    }
    return rep.all_passed() ? kExitHolds : kExitFails;
}

const char* cycle_kind_str(CycleKind k) {
    switch (k) {
        case CycleKind::NONE: return "none";
        case CycleKind::EXACT_STATE: return "exact-state";
        case CycleKind::SUPPORT_LABEL: return "support-label";
    }
    return "none";
}

int run_mc(const std::string& chain_path, const std::string& mode_text,
           const std::string& formula_text, std::size_t horizon, long long init_index, double tol,
           bool json) {
    const ExogenousQMC chain = chain_from_json(json_from_file(chain_path));
    const auto mode = mode_from_name(mode_text);
    if (!mode) {
        std::cerr << "error: --mode must be one of F, G, U, I\n";
        return kExitParse;
    }
    const QF gamma = parse_formula(formula_text);
    const std::size_t h = horizon > 0 ? horizon : default_horizon(chain.n());

    std::vector<std::size_t> chosen;
    if (init_index >= 0) {
        if (static_cast<std::size_t>(init_index) >= chain.init_states.size())
            throw model_error("initial-state index " + std::to_string(init_index) +
                              " out of range");
        chosen.push_back(static_cast<std::size_t>(init_index));
    } else {
        for (std::size_t i = 0; i < chain.init_states.size(); ++i) chosen.push_back(i);
    }
    if (chosen.empty()) throw model_error("the chain has no initial states");

    bool any_fails = false, all_hold = true;
    Json states = Json::array();
    std::vector<McResult> results;
    for (const std::size_t idx : chosen) {
        const McResult r = check_reachability(chain, chain.init_states[idx], *mode, gamma, h, tol);
        results.push_back(r);
        if (r.verdict == McVerdict::FAILS) any_fails = true;
        if (r.verdict != McVerdict::HOLDS) all_hold = false;

        Json js{{"init", idx},
                {"verdict", verdict_name(r.verdict)},
                {"steps_examined", r.steps_examined}};
        js["witness"] = r.witness ? Json(*r.witness) : Json();
        if (r.cycle == CycleKind::NONE) {
            js["cycle"] = Json();
        } else {
            js["cycle"] = Json{{"kind", cycle_kind_str(r.cycle)},
                               {"start", r.cycle_start ? Json(*r.cycle_start) : Json()},
                               {"period", r.cycle_period ? Json(*r.cycle_period) : Json()}};
        }
        states.push_back(js);
    }
    const McVerdict combined =
        any_fails ? McVerdict::FAILS : all_hold ? McVerdict::HOLDS : McVerdict::UNKNOWN;

    if (json) {
        emit(Json{{"subcommand", "mc"},
                  {"mode", mode_name(*mode)},
                  {"formula", print_formula(gamma)},
                  {"horizon", h},
                  {"tol", tol},
                  {"semantics", canonical_semantics_note()},
                  {"verdict", verdict_name(combined)},
                  {"states", states}});
    } else {
        std::cout << verdict_name(combined) << "  (mode " << mode_name(*mode) << ", horizon " << h
                  << ")\n";
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            const auto& r = results[k];
            std::cout << "  init " << chosen[k] << ": " << verdict_name(r.verdict);
            if (r.witness) std::cout << "  witness step " << *r.witness;
            if (r.cycle != CycleKind::NONE) {
                std::cout << "  cycle " << cycle_kind_str(r.cycle);
                if (r.cycle_start && r.cycle_period)
                    std::cout << " (start " << *r.cycle_start << ", period " << *r.cycle_period
                              << ")";
            }
            std::cout << "  steps " << r.steps_examined << "\n";
        }
        std::cout << "note: " << canonical_semantics_note() << "\n";
    }
    switch (combined) {
        case McVerdict::HOLDS: return kExitHolds;
        case McVerdict::FAILS: return kExitFails;
        case McVerdict::UNKNOWN: return kExitUnknown;
    }
    return kExitUnknown;
}

int run_loop(const std::string& loop_path, const std::string& input_path, std::size_t max_steps,
             double tol, bool json) {
    const GeneralizedQuantumLoop loop = loop_from_json(json_from_file(loop_path));
    const DensityOperator rho0 = density_from_json(json_from_file(input_path));
    if (rho0.dim != loop.dim())
        throw model_error("input state dimension " + std::to_string(rho0.dim) +
                          " does not match the loop dimension " + std::to_string(loop.dim()));

    const LoopRun run = run_loop(loop, rho0, max_steps);
    const TerminationResult tr = terminates_within(loop, rho0, max_steps, tol);

    const std::size_t shown =
        tr.terminated ? std::min(run.entries.size(), tr.index + 1) : run.entries.size();
    Json entries = Json::array();
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& e = run.entries[i];
        Json je{{"round", e.n},
                {"mass", e.mass},
                {"term_mass", e.term_mass},
                {"p_term", e.p_term},
                {"p_nonterm", e.p_nonterm}};
        if (run.exact && i < run.exact_nonterm.size())
            je["p_nonterm_exact"] = run.exact_nonterm[i].str();
        entries.push_back(je);
    }
    if (json) {
        emit(Json{{"subcommand", "loop"},
                  {"terminated", tr.terminated},
                  {"round", tr.index},
                  {"residual", tr.residual},
                  {"exact", tr.exact},
                  {"max_steps", max_steps},
                  {"tol", tol},
                  {"entries", entries}});
    } else {
        if (tr.terminated) {
            std::cout << "TERMINATED by round " << tr.index << (tr.exact ? " (exact)" : "")
                      << "\n";
        } else {
            std::cout << "NOT TERMINATED within " << max_steps << " rounds, residual mass "
                      << fmt(tr.residual) << (tr.exact ? " (exact)" : "") << "\n";
        }
        for (std::size_t i = 0; i < shown; ++i) {
            const auto& e = run.entries[i];
            std::cout << "  round " << e.n << ": mass " << fmt(e.mass) << "  p_term "
                      << fmt(e.p_term) << "  p_nonterm " << fmt(e.p_nonterm);
            if (run.exact && i < run.exact_nonterm.size())
                std::cout << " = " << run.exact_nonterm[i].str();
            std::cout << "\n";
        }
    }
    return tr.terminated ? kExitHolds : kExitUnknown;
}

int run_bell(std::size_t samples, std::uint64_t seed, double tol, bool json) {
    const BellReport r = bell_check(samples, seed, tol);
    const bool ok =
        r.gamma_holds && r.eta_holds && r.replay.accepted && r.product_satisfied == 0;

    Json steps = Json::array();
    for (const auto& sr : r.replay.steps) steps.push_back(step_status_str(sr.status));
    if (json) {
        emit(Json{{"subcommand", "bell"},
                  {"outcomes",
                   Json{{"none", r.ev_none},
                        {"first", r.ev_first},
                        {"second", r.ev_second},
                        {"both", r.ev_both}}},
                  {"gamma_holds", r.gamma_holds},
                  {"eta_holds", r.eta_holds},
                  {"replay", Json{{"accepted", r.replay.accepted},
                                  {"unsupported", r.replay.unsupported},
                                  {"steps", steps}}},
                  {"samples", r.samples},
                  {"product_satisfied", r.product_satisfied},
                  {"tol", tol},
                  {"verdict", ok ? "HOLDS" : "FAILS"}});
    } else {
        std::cout << (ok ? "HOLDS" : "FAILS") << "\n";
        std::cout << "outcome weights: none " << fmt(r.ev_none) << ", first " << fmt(r.ev_first)
                  << ", second " << fmt(r.ev_second) << ", both " << fmt(r.ev_both) << "\n";
        std::cout << "gamma " << (r.gamma_holds ? "holds" : "fails") << ", eta "
                  << (r.eta_holds ? "holds" : "fails") << ", refutation replay "
                  << (r.replay.accepted ? "accepted" : "not accepted") << " ("
                  << r.replay.steps.size() << " steps)\n";
        std::cout << "product-state scan: " << r.product_satisfied << " of " << r.samples
                  << " samples satisfied the local-hidden-outcome conjunction\n";
    }
    return ok ? kExitHolds : kExitFails;
}

int run_bb84(std::size_t n, bool eavesdrop, const std::string& threshold_text, double tol,
             bool json) {
    const Rational a = rational_from_text(threshold_text);
    const BB84Report r = bb84_check(n, a, tol);
    const bool verdict = eavesdrop ? r.eavesdrop_holds : r.honest_holds;

    Json sweep = Json::array();
    for (const auto& e : r.sweep) {
        sweep.push_back(Json{{"threshold", e.a.str()},
                             {"honest", e.honest},
                             {"eavesdrop", e.eavesdrop}});
    }
    if (json) {
        emit(Json{{"subcommand", "bb84"},
                  {"n", r.n},
                  {"eavesdrop", eavesdrop},
                  {"threshold", r.threshold.str()},
                  {"sift", r.sift},
                  {"sift_probability", r.sift_probability.str()},
                  {"honest", Json{{"consequent", r.honest_consequent.str()},
                                  {"consequent_raw", r.honest_consequent_raw.str()},
                                  {"holds", r.honest_holds}}},
                  {"eavesdropped", Json{{"consequent", r.eavesdrop_consequent.str()},
                                        {"consequent_raw", r.eavesdrop_consequent_raw.str()},
                                        {"bit_error", r.eavesdrop_bit_error.str()},
                                        {"holds", r.eavesdrop_holds}}},
                  {"sweep", sweep},
                  {"tol", tol},
                  {"verdict", verdict ? "HOLDS" : "FAILS"}});
    } else {
        std::cout << (verdict ? "HOLDS" : "FAILS") << "  (" << (eavesdrop ? "eavesdropped" : "honest")
                  << " run, threshold " << r.threshold.str() << ", " << r.n << " transmissions)\n";
        std::cout << "sift probability: " << r.sift_probability.str() << "\n";
        std::cout << "honest run: sifted mismatch " << r.honest_consequent.str() << " (raw "
                  << r.honest_consequent_raw.str() << "), detection "
                  << (r.honest_holds ? "holds" : "fails") << "\n";
        std::cout << "eavesdropped run: sifted mismatch " << r.eavesdrop_consequent.str()
                  << " (raw " << r.eavesdrop_consequent_raw.str() << "), per-bit error "
                  << r.eavesdrop_bit_error.str() << ", detection "
                  << (r.eavesdrop_holds ? "holds" : "fails") << "\n";
        for (const auto& e : r.sweep) {
            std::cout << "  threshold " << e.a.str() << ": honest "
                      << (e.honest ? "holds" : "fails") << ", eavesdropped "
                      << (e.eavesdrop ? "holds" : "fails") << "\n";
        }
    }
    return verdict ? kExitHolds : kExitFails;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Model checking and reasoning for exogenous quantum operator logic"};
    app.require_subcommand(1);
    int rc = kExitHolds;

    std::string check_structure, check_formula;
    double check_tol = kDefaultTol;
    bool check_json = false;
    auto* check = app.add_subcommand("check", "Decide a formula against a structure");
    check->add_option("--structure", check_structure, "Structure description file")->required();
    check->add_option("--formula", check_formula, "Formula text")->required();
    check->add_option("--tol", check_tol, "Comparison tolerance");
    check->add_flag("--json", check_json, "Emit a JSON report");
    check->callback([&] { rc = run_check(check_structure, check_formula, check_tol, check_json); });

    std::string eval_structure, eval_term;
    double eval_tol = kDefaultTol;
    bool eval_json = false;
    auto* eval = app.add_subcommand("eval", "Evaluate a term against a structure");
    eval->add_option("--structure", eval_structure, "Structure description file")->required();
    eval->add_option("--term", eval_term, "Term text")->required();
    eval->add_option("--tol", eval_tol, "Band-snapping tolerance");
    eval->add_flag("--json", eval_json, "Emit a JSON report");
    eval->callback([&] { rc = run_eval(eval_structure, eval_term, eval_tol, eval_json); });

    std::string dnf_formula, dnf_qubits;
    double dnf_tol = kDefaultTol;
    bool dnf_eliminate = false, dnf_json = false;
    auto* dnf = app.add_subcommand("dnf", "Expand a formula into disjunctive normal form");
    dnf->add_option("--formula", dnf_formula, "Formula text")->required();
    dnf->add_option("--qubits", dnf_qubits, "Comma-separated ambient qubit list");
    dnf->add_flag("--eliminate", dnf_eliminate, "Also replace integrals by measurement sums");
    dnf->add_option("--tol", dnf_tol, "Unused; accepted for uniformity");
    dnf->add_flag("--json", dnf_json, "Emit a JSON report");
    dnf->callback([&] { rc = run_dnf(dnf_formula, dnf_qubits, dnf_eliminate, dnf_json); });

    std::string derive_script;
    double derive_tol = kDefaultTol;
    bool derive_json = false;
    auto* derive = app.add_subcommand("derive", "Replay and verify a derivation script");
    derive->add_option("--script", derive_script, "Derivation script file")->required();
    derive->add_option("--tol", derive_tol, "Unused; accepted for uniformity");
    derive->add_flag("--json", derive_json, "Emit a JSON report");
    derive->callback([&] { rc = run_derive(derive_script, derive_json); });

    std::uint64_t fuzz_seed = 20240801;
    std::size_t fuzz_per = 100, fuzz_min_q = 1, fuzz_max_q = 4;
    double fuzz_tol = kDefaultTol;
    bool fuzz_json = false;
    auto* fuzz = app.add_subcommand("fuzz-sound", "Fuzz every axiom schema over random structures");
    fuzz->add_option("--seed", fuzz_seed, "Generator seed");
    fuzz->add_option("--per-schema", fuzz_per, "Instances per schema");
    fuzz->add_option("--min-qubits", fuzz_min_q, "Smallest structure size");
    fuzz->add_option("--max-qubits", fuzz_max_q, "Largest structure size");
    fuzz->add_option("--tol", fuzz_tol, "Satisfaction tolerance");
    fuzz->add_flag("--json", fuzz_json, "Emit a JSON report");
    fuzz->callback(
        [&] { rc = run_fuzz(fuzz_seed, fuzz_per, fuzz_min_q, fuzz_max_q, fuzz_tol, fuzz_json); });

    std::string mc_chain, mc_mode, mc_formula;
    std::size_t mc_horizon = 0;
    long long mc_init = -1;
    double mc_tol = kDefaultTol;
    bool mc_json = false;
    auto* mc = app.add_subcommand("mc", "Check a temporal query on a quantum Markov chain");
    mc->add_option("--chain", mc_chain, "Chain description file")->required();
    mc->add_option("--mode", mc_mode, "Temporal mode: F, G, U, or I")->required();
    mc->add_option("--formula", mc_formula, "State formula text")->required();
    mc->add_option("--horizon", mc_horizon, "Step bound; 0 picks the default");
    mc->add_option("--init", mc_init, "Initial-state index; all states when omitted");
    mc->add_option("--tol", mc_tol, "Satisfaction tolerance");
    mc->add_flag("--json", mc_json, "Emit a JSON report");
    mc->callback(
        [&] { rc = run_mc(mc_chain, mc_mode, mc_formula, mc_horizon, mc_init, mc_tol, mc_json); });

    std::string loop_file, loop_input;
    std::size_t loop_max_steps = 64;
    double loop_tol = kDefaultTol;
    bool loop_json = false;
    auto* loop = app.add_subcommand("loop", "Analyze termination of a guarded quantum loop");
    loop->add_option("--loop", loop_file, "Loop description file")->required();
    loop->add_option("--input", loop_input, "Input state file")->required();
    loop->add_option("--max-steps", loop_max_steps, "Round bound");
    loop->add_option("--tol", loop_tol, "Termination tolerance");
    loop->add_flag("--json", loop_json, "Emit a JSON report");
    loop->callback([&] { rc = run_loop(loop_file, loop_input, loop_max_steps, loop_tol, loop_json); });

    std::size_t bell_samples = 1000;
    std::uint64_t bell_seed = 20240801;
    double bell_tol = kDefaultTol;
    bool bell_json = false;
    auto* bell = app.add_subcommand("bell", "Entangled-pair statistics and nonlocality refutation");
    bell->add_option("--samples", bell_samples, "Product states to scan");
    bell->add_option("--seed", bell_seed, "Generator seed");
    bell->add_option("--tol", bell_tol, "Satisfaction tolerance");
    bell->add_flag("--json", bell_json, "Emit a JSON report");
    bell->callback([&] { rc = run_bell(bell_samples, bell_seed, bell_tol, bell_json); });

    std::size_t bb84_n = 2;
    bool bb84_eavesdrop = false, bb84_json = false;
    std::string bb84_threshold = "0.05";
    double bb84_tol = kDefaultTol;
    auto* bb84 = app.add_subcommand("bb84", "Key-distribution detection analysis");
    bb84->add_option("--n", bb84_n, "Transmissions per run");
    bb84->add_flag("--eavesdrop", bb84_eavesdrop, "Judge the eavesdropped run");
    bb84->add_option("--threshold", bb84_threshold, "Detection threshold (rational or decimal)");
    bb84->add_option("--tol", bb84_tol, "Satisfaction tolerance");
    bb84->add_flag("--json", bb84_json, "Emit a JSON report");
    bb84->callback(
        [&] { rc = run_bb84(bb84_n, bb84_eavesdrop, bb84_threshold, bb84_tol, bb84_json); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitHolds : kExitParse;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const model_error& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModel;
    } catch (const Json::exception& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return kExitModel;
    }
    return rc;
}

} // namespace eqol
