#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qecx/gottesman.hpp"
#include "qecx/graph.hpp"
#include "qecx/pasting.hpp"
#include "qecx/pauli.hpp"
#include "qecx/pauli_sum.hpp"
#include "qecx/small_codes.hpp"

namespace qecx {

using Json = nlohmann::ordered_json;

/* {"vertices": [labels...], "edges": [[a,b]...]} with edges sorted
   lexicographically (a < b inside each pair). */
inline Json graph_to_json(const Graph& g) {
    Json j;
    j["vertices"] = g.labels;
    Json es = Json::array();
    for (auto [a, b] : g.edges()) es.push_back(Json::array({a, b}));
    j["edges"] = es;
    return j;
}

inline Graph graph_from_json(const Json& j) {
    Graph g(j.at("vertices").get<std::vector<int>>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("graph_from_json: edge must be a pair");
        g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    }
    return g;
}

/* Compact Pauli form {x_mask_hex, z_mask_hex, phase_exp}; masks are
   big-endian hex over the qubit bit order. */
inline Json pauli_to_json(const PauliOperator& p) {
    Json j;
    j["x_mask_hex"] = p.x.hex();
    j["z_mask_hex"] = p.z.hex();
    j["phase_exp"] = p.phase_exp;
    return j;
}

inline PauliOperator pauli_from_json(std::size_t n, const Json& j) {
    return PauliOperator(n, BinaryVector::parse_hex(n, j.at("x_mask_hex").get<std::string>()),
                         BinaryVector::parse_hex(n, j.at("z_mask_hex").get<std::string>()),
                         j.at("phase_exp").get<unsigned>() & 3u);
}

inline Json stabilizer_to_json(const StabilizerCode& code) {
    Json j;
    j["n"] = code.n;
    Json gens = Json::array();
    for (const auto& g : code.generators) gens.push_back(pauli_to_json(g));
    j["generators"] = gens;
    return j;
}

inline StabilizerCode stabilizer_from_json(const Json& j) {
    StabilizerCode code;
    code.n = j.at("n").get<std::size_t>();
    for (const auto& g : j.at("generators")) code.generators.push_back(pauli_from_json(code.n, g));
    return code;
}

/* Pasted-code description: observable rows as lists of per-block factors,
   symbolic Paulis in mask form and seed operators by tag. */
inline Json pasted_to_json(const PastedCode& code) {
    Json j;
    j["m"] = code.m;
    j["a"] = code.a;
    j["N"] = code.layout.total;
    if (code.family) {
        PastedParams p = params(code.m, code.a);
        j["K"] = "3*2^" + std::to_string(p.N - 2 * p.m - 7);
    }
    Json blocks = Json::array();
    for (std::size_t c = 0; c < code.layout.sizes.size(); ++c) {
        Json b;
        b["size"] = code.layout.sizes[c];
        b["offset"] = code.layout.offsets[c];
        blocks.push_back(b);
    }
    j["blocks"] = blocks;
    Json rows = Json::array();
    for (const auto& obs : code.observables) {
        Json row = Json::array();
        for (const auto& f : obs.factors) {
            Json cell;
            if (f.is_named) cell["named"] = f.tag;
            else cell["pauli"] = pauli_to_json(f.pauli);
            row.push_back(cell);
        }
        rows.push_back(row);
    }
    j["observables"] = rows;
    return j;
}

/* Pauli decomposition of an operator sum: one entry per term in fixed key
   order, masks over qubit indices, coefficient as exact dyadic parts. */
inline Json pauli_sum_to_json(const PauliSum& s) {
    Json j;
    j["qubits"] = s.n;
    Json terms = Json::array();
    for (const auto& [k, c] : s.terms) {
        Json t;
        t["x_mask"] = PauliSum::key_x(k);
        t["z_mask"] = PauliSum::key_z(k);
        t["re"] = c.re.str();
        t["im"] = c.im.str();
        t["den_exp"] = c.den_exp;
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

/* Small-block code description: base graph, dimension, named observables
   and derived products with full Pauli decompositions. */
inline Json small_code_to_json(const SmallCode& code) {
    Json j;
    j["qubits"] = code.graph.size();
    j["dimension"] = code.declared_dimension;
    j["graph"] = graph_to_json(code.graph);
    Json obs = Json::array();
    for (std::size_t i = 0; i < code.names.size(); ++i) {
        Json o;
        o["name"] = code.names[i];
        o["sum"] = pauli_sum_to_json(code.sums[i]);
        obs.push_back(o);
    }
    j["observables"] = obs;
    Json prods(Json::value_t::object);
    for (const auto& [tag, sum] : code.products) prods[tag] = pauli_sum_to_json(sum);
    j["products"] = prods;
    return j;
}

inline Json codeword_subsets_to_json(const CodewordSet& cw) {
    Json arr = Json::array();
    for (const auto& s : cw.subsets) {
        Json e = Json::array();
        for (int v : s) e.push_back(v);
        arr.push_back(e);
    }
    return arr;
}

/* Canonical sweep payload; timing is reported separately so payloads stay
   bit-identical across runs and thread counts. */
inline Json sweep_report_to_json(const PastedSweepReport& rep) {
    Json j;
    j["errors_checked"] = rep.errors_checked;
    j["all_pass"] = rep.all_pass;
    Json v = Json::array();
    for (const auto& e : rep.violations) v.push_back(to_string(e));
    j["violations"] = v;
    return j;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return Json::parse(in);
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qecx
