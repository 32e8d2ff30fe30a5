#include "jsonio.hpp"

#include <fstream>

#include "base.hpp"
#include "lang.hpp"
#include "parse.hpp"

namespace eqol {

namespace {

[[noreturn]] void bad(const std::string& what) { throw model_error(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t dim_of(const Json& j) {
    const Json& d = field(j, "dim");
    if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) bad("\"dim\" must be a positive integer");
    return d.get<std::size_t>();
}

std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const Json& e : j) {
        if (!e.is_string()) bad(std::string(what) + " must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

ValSet valset_from_json(const Json& j, std::size_t n) {
    ValSet v;
    if (j.is_string() && j.get<std::string>() == "all") return v;
    if (!j.is_array()) bad("\"V\" must be \"all\" or an array of valuation strings");
    v.all = false;
    for (const Json& e : j) {
        if (!e.is_string()) bad("valuations must be bit strings");
        v.vals.push_back(string_to_val(e.get<std::string>(), n));
    }
    std::sort(v.vals.begin(), v.vals.end());
    v.vals.erase(std::unique(v.vals.begin(), v.vals.end()), v.vals.end());
    return v;
}

std::vector<std::vector<std::string>> partition_from_json(const Json& j) {
    if (!j.is_array()) bad("\"partition\" must be an array of qubit-name arrays");
    std::vector<std::vector<std::string>> out;
    for (const Json& b : j) out.push_back(string_list(b, "partition block"));
    return out;
}

} // namespace

Json json_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open file: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) bad("malformed JSON in file: " + path);
    return j;
}

Json json_from_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) bad("malformed JSON");
    return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

ComplexMatrix matrix_from_json(const Json& j) {
    std::size_t dim = dim_of(j);
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "diagonal") {
        const Json& diag = field(j, "diag");
        if (!diag.is_array() || diag.size() != dim) bad("\"diag\" must list one weight per dimension");
        ComplexMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const Json& e = diag.at(i);
            if (e.is_string()) m.at(i, i) = parse_rational(e.get<std::string>()).to_double();
            else if (e.is_number()) m.at(i, i) = e.get<double>();
            else bad("diagonal weights must be numbers or rational strings");
        }
        return m;
    }
    if (kind != "dense") bad("matrix \"kind\" must be \"dense\" or \"diagonal\"");
    const Json& rows = field(j, "rows");
    if (!rows.is_array() || rows.size() != dim) bad("\"rows\" must list one row per dimension");
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const Json& row = rows.at(i);
        if (!row.is_array() || row.size() != dim) bad("matrix rows must have \"dim\" entries");
        for (std::size_t k = 0; k < dim; ++k) {
            const Json& e = row.at(k);
            if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number())
                bad("matrix entries must be [re, im] pairs");
            m.at(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json j;
    j["dim"] = m.rows;
    j["kind"] = "dense";
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols; ++k)
            row.push_back(Json::array({m.at(i, k).real(), m.at(i, k).imag()}));
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

DensityOperator density_from_json(const Json& j) {
    std::size_t dim = dim_of(j);
    std::string kind = field(j, "kind").get<std::string>();
    if (kind == "diagonal") {
        const Json& diag = field(j, "diag");
        if (!diag.is_array() || diag.size() != dim) bad("\"diag\" must list one weight per dimension");
        bool all_exact = true;
        for (const Json& e : diag)
            if (!e.is_string()) all_exact = false;
        if (all_exact) {
            std::vector<Rational> d;
            for (const Json& e : diag) d.push_back(parse_rational(e.get<std::string>()));
            return DensityOperator::from_diag_exact(std::move(d));
        }
        std::vector<double> d;
        for (const Json& e : diag) {
            if (e.is_string()) d.push_back(parse_rational(e.get<std::string>()).to_double());
            else if (e.is_number()) d.push_back(e.get<double>());
            else bad("diagonal weights must be numbers or rational strings");
        }
        return DensityOperator::from_diag(std::move(d));
    }
    return DensityOperator::from_dense(matrix_from_json(j));
}

Json density_to_json(const DensityOperator& rho) {
    if (rho.diag_exact) {
        Json j;
        j["dim"] = rho.dim;
        j["kind"] = "diagonal";
        Json diag = Json::array();
        for (const Rational& r : *rho.diag_exact) diag.push_back(r.str());
        j["diag"] = diag;
        return j;
    }
    if (rho.is_diagonal()) {
        Json j;
        j["dim"] = rho.dim;
        j["kind"] = "diagonal";
        j["diag"] = *rho.diag;
        return j;
    }
    return matrix_to_json(rho.dense());
}

SuperOperator superop_from_json(const Json& j) {
    SuperOperator e;
    e.dim = dim_of(j);
    const Json& kraus = field(j, "kraus");
    if (!kraus.is_array()) bad("\"kraus\" must be an array of matrices");
    for (const Json& k : kraus) {
        ComplexMatrix m = matrix_from_json(k);
        if (m.rows != e.dim) bad("Kraus operator dimension mismatch");
        e.kraus.push_back(std::move(m));
    }
    return e;
}

Json superop_to_json(const SuperOperator& e) {
    Json j;
    j["dim"] = e.dim;
    Json kraus = Json::array();
    for (const ComplexMatrix& k : e.kraus) kraus.push_back(matrix_to_json(k));
    j["kraus"] = kraus;
    return j;
}

Structure structure_from_json(const Json& j) {
    Structure m;
    m.qubits = string_list(field(j, "qubits"), "\"qubits\"");
    std::size_t n = m.qubits.size();
    m.V = j.contains("V") ? valset_from_json(j.at("V"), n) : ValSet{};
    m.partition = j.contains("partition") ? partition_from_json(j.at("partition"))
                                          : std::vector<std::vector<std::string>>{m.qubits};
    for (std::vector<std::string>& block : m.partition) std::sort(block.begin(), block.end());

    const Json& state = field(j, "state");
    if (state.contains("global")) {
        m.global_state = density_from_json(state.at("global"));
    } else if (state.contains("blocks")) {
        const Json& blocks = state.at("blocks");
        if (!blocks.is_object()) bad("\"blocks\" must map block names to states");
        for (const std::vector<std::string>& block : m.partition) {
            if (block.empty()) bad("empty partition block");
            if (!blocks.contains(block.front()))
                bad("missing state for the block containing " + block.front());
            m.block_states.push_back(density_from_json(blocks.at(block.front())));
        }
        if (blocks.size() != m.partition.size())
            bad("block states do not match the partition");
    } else {
        bad("\"state\" needs \"global\" or \"blocks\"");
    }

    if (j.contains("assign")) {
        const Json& assign = j.at("assign");
        if (!assign.is_object()) bad("\"assign\" must map variables to super-operators");
        for (auto it = assign.begin(); it != assign.end(); ++it)
            m.sigma[it.key()] = superop_from_json(it.value());
    }
    m.validate();
    return m;
}

Json structure_to_json(const Structure& m) {
    Json j;
    j["qubits"] = m.qubits;
    if (m.V.all) {
        j["V"] = "all";
    } else {
        Json v = Json::array();
        for (std::size_t val : m.V.vals) v.push_back(val_to_string(val, m.n()));
        j["V"] = v;
    }
    j["partition"] = m.partition;
    Json state;
    if (m.global_state) {
        state["global"] = density_to_json(*m.global_state);
    } else {
        Json blocks;
        for (std::size_t b = 0; b < m.partition.size(); ++b)
            blocks[m.partition[b].front()] = density_to_json(m.block_states[b]);
        state["blocks"] = blocks;
    }
    j["state"] = state;
    if (!m.sigma.empty()) {
        Json assign;
        for (const auto& [name, e] : m.sigma) assign[name] = superop_to_json(e);
        j["assign"] = assign;
    }
    return j;
}

DerivationScript derivation_from_json(const Json& j) {
    DerivationScript script;
    if (j.contains("qubits")) script.qubits = string_list(j.at("qubits"), "\"qubits\"");
    const Json& steps = field(j, "steps");
    if (!steps.is_array()) bad("\"steps\" must be an array");

    auto ref_index = [&](const Json& e) -> std::size_t {
        if (!e.is_number_integer() || e.get<long long>() < 1)
            bad("step references are 1-based indices");
        return e.get<std::size_t>() - 1;
    };

    for (const Json& js : steps) {
        Step step;
        step.text = field(js, "formula").get<std::string>();
        step.classical_level = js.contains("level") && js.at("level") == "classical";
        if (step.classical_level)
            step.classical = parse_classical(step.text);
        else
            step.formula = parse_formula(step.text);

        const Json& just = field(js, "just");
        if (just.is_string()) {
            std::string s = just.get<std::string>();
            if (s == "P") step.just.kind = Justification::PREMISE;
            else if (s == "H") step.just.kind = Justification::HYPOTHESIS;
            else bad("unknown justification \"" + s + "\"");
        } else if (just.is_object() && just.size() == 1) {
            if (just.contains("axiom")) {
                auto ax = axiom_from_name(just.at("axiom").get<std::string>());
                if (!ax) bad("unknown axiom \"" + just.at("axiom").get<std::string>() + "\"");
                step.just.kind = Justification::AXIOM;
                step.just.axiom = *ax;
            } else if (just.contains("template")) {
                auto tpl = template_from_name(just.at("template").get<std::string>());
                if (!tpl) bad("unknown template \"" + just.at("template").get<std::string>() + "\"");
                step.just.kind = Justification::TEMPLATE;
                step.just.tpl = *tpl;
            } else if (just.contains("qmp") || just.contains("cmp")) {
                const bool quantum = just.contains("qmp");
                const Json& pair = quantum ? just.at("qmp") : just.at("cmp");
                if (!pair.is_array() || pair.size() != 2) bad("modus ponens needs two step indices");
                step.just.kind = quantum ? Justification::QMP : Justification::CMP;
                step.just.i = ref_index(pair.at(0));
                step.just.j = ref_index(pair.at(1));
            } else if (just.contains("from")) {
                const Json& refs = just.at("from");
                if (!refs.is_array() || refs.empty()) bad("\"from\" needs at least one step index");
                step.just.kind = Justification::FOLLOWS;
                for (const Json& e : refs) step.just.refs.push_back(ref_index(e));
            } else {
                bad("unknown justification object");
            }
        } else {
            bad("justification must be \"P\", \"H\", or a one-key object");
        }
        script.steps.push_back(std::move(step));
    }
    return script;
}

ExogenousQMC chain_from_json(const Json& j) {
    ExogenousQMC chain;
    chain.qubits = string_list(field(j, "qubits"), "\"qubits\"");
    chain.epsilon = superop_from_json(field(j, "epsilon"));
    if (j.contains("init")) {
        const Json& states = field(j.at("init"), "states");
        if (!states.is_array()) bad("\"init.states\" must be an array");
        for (const Json& s : states) chain.init_states.push_back(density_from_json(s));
    }
    if (j.contains("ap")) {
        for (const std::string& text : string_list(j.at("ap"), "\"ap\"")) {
            chain.ap.push_back(parse_formula(text));
            chain.ap_text.push_back(text);
        }
    }
    chain.V = j.contains("V") ? valset_from_json(j.at("V"), chain.qubits.size()) : ValSet{};
    chain.partition = j.contains("partition") ? partition_from_json(j.at("partition"))
                                              : std::vector<std::vector<std::string>>{chain.qubits};
    for (std::vector<std::string>& block : chain.partition) std::sort(block.begin(), block.end());
    chain.validate();
    return chain;
}

GeneralizedQuantumLoop loop_from_json(const Json& j) {
    std::vector<std::string> qubits = string_list(field(j, "qubits"), "\"qubits\"");
    SuperOperator body = superop_from_json(field(j, "body"));
    const Json& guard = field(j, "guard");
    if (guard.contains("valuations")) {
        std::vector<std::size_t> vals;
        for (const std::string& s : string_list(guard.at("valuations"), "\"valuations\""))
            vals.push_back(string_to_val(s, qubits.size()));
        return make_loop(std::move(qubits), std::move(body), std::move(vals));
    }
    if (guard.contains("projector"))
        return make_loop_projector(std::move(qubits), std::move(body),
                                   matrix_from_json(guard.at("projector")));
    bad("\"guard\" needs \"valuations\" or \"projector\"");
}

} // namespace eqol
