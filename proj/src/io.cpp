#include "boxtimes/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace boxtimes::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
    throw std::runtime_error(where + ": " + msg);
}

std::size_t get_positive(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) fail(where, std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
        fail(where, std::string("field '") + key + "' must be a positive integer");
    return v.get<std::size_t>();
}

double get_finite_number(const json& v, const std::string& where,
                         const std::string& what) {
    if (!v.is_number()) fail(where, what + " is not a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where, what + " is not finite");
    return x;
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
    json entries = json::array();
    for (const Complex& z : m.entries) entries.push_back({z.real(), z.imag()});
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

CMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "matrix must be a JSON object");
    const std::size_t rows = get_positive(j, "rows", where);
    const std::size_t cols = get_positive(j, "cols", where);
    if (!j.contains("entries") || !j.at("entries").is_array())
        fail(where, "missing 'entries' array");
    const json& entries = j.at("entries");
    if (entries.size() != rows * cols)
        fail(where, "entries has " + std::to_string(entries.size()) +
                        " elements, want rows*cols = " + std::to_string(rows * cols));
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const json& e = entries[i];
        const std::string what = "entry " + std::to_string(i);
        if (!e.is_array() || e.size() != 2)
            fail(where, what + " must be a [re, im] pair");
        m.entries[i] = Complex(get_finite_number(e[0], where, what + " (re)"),
                               get_finite_number(e[1], where, what + " (im)"));
    }
    return m;
}

json gate_to_json(const Gate& g) {
    json j = matrix_to_json(g.matrix);
    j["d"] = g.d;
    j["k"] = g.k;
    return j;
}

Gate gate_from_json(const json& j, const std::string& where) {
    CMatrix m = matrix_from_json(j, where);
    std::size_t d = 0, k = 0;
    if (j.contains("d") || j.contains("k")) {
        d = get_positive(j, "d", where);
        k = get_positive(j, "k", where);
    } else {
        // Bare matrix: accept as a 2-qudit gate when the size allows it.
        const auto side = m.rows;
        if (m.rows != m.cols)
            fail(where, "matrix is not square and carries no d/k fields");
        std::size_t r = static_cast<std::size_t>(std::llround(std::sqrt(double(side))));
        while (r * r > side) --r;
        while ((r + 1) * (r + 1) <= side) ++r;
        if (r * r != side)
            fail(where, "size " + std::to_string(side) +
                            " is not a perfect square; supply d and k");
        d = r;
        k = 2;
    }
    try {
        return Gate(std::move(m), d, k);
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

json partition_to_json(const BlockPartition& p) {
    return json{{"row_cuts", p.row_cuts}, {"col_cuts", p.col_cuts}};
}

BlockPartition partition_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "partition must be a JSON object");
    BlockPartition p;
    for (const char* key : {"row_cuts", "col_cuts"}) {
        if (!j.contains(key) || !j.at(key).is_array())
            fail(where, std::string("missing '") + key + "' array");
        auto& dst = std::string(key) == "row_cuts" ? p.row_cuts : p.col_cuts;
        for (const json& v : j.at(key)) {
            if (!v.is_number_integer() || v.get<long long>() <= 0)
                fail(where, std::string(key) + " must hold positive integers");
            dst.push_back(v.get<std::size_t>());
        }
    }
    return p;
}

json circuit_to_json(const Circuit& c) {
    json layers = json::array();
    for (const PlacedGate& pg : c.gates) {
        json g;
        if (!pg.gate.name.empty())
            g = pg.gate.name;
        else
            g = gate_to_json(pg.gate);
        layers.push_back(json{{"gate", std::move(g)}, {"wires", pg.wires}});
    }
    return json{{"width", c.width}, {"d", c.d}, {"layers", std::move(layers)}};
}

Circuit circuit_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "circuit must be a JSON object");
    Circuit c;
    c.width = get_positive(j, "width", where);
    c.d = get_positive(j, "d", where);
    if (!j.contains("layers") || !j.at("layers").is_array())
        fail(where, "missing 'layers' array");
    std::size_t idx = 0;
    for (const json& layer : j.at("layers")) {
        const std::string here = where + ": layer " + std::to_string(idx++);
        if (!layer.is_object() || !layer.contains("gate") || !layer.contains("wires"))
            fail(here, "need 'gate' and 'wires'");
        PlacedGate pg;
        const json& g = layer.at("gate");
        if (g.is_string()) {
            try {
                pg.gate = builtin_gate(g.get<std::string>());
            } catch (const std::invalid_argument& e) {
                fail(here, e.what());
            }
        } else {
            pg.gate = gate_from_json(g, here);
        }
        if (!layer.at("wires").is_array()) fail(here, "'wires' must be an array");
        for (const json& wv : layer.at("wires")) {
            if (!wv.is_number_integer() || wv.get<long long>() < 0)
                fail(here, "wires must be non-negative integers");
            pg.wires.push_back(wv.get<std::size_t>());
        }
        c.gates.push_back(std::move(pg));
    }
    return c;
}

namespace {

// A matrix position inside a factorization: inline object, "builtin:" name,
// or a path relative to the factorization file.
CMatrix resolve_matrix(const json& v, const std::string& base_dir,
                       const std::string& where) {
    if (v.is_object()) return matrix_from_json(v, where);
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.rfind("builtin:", 0) == 0) {
            try {
                return builtin_gate(s.substr(8)).matrix;
            } catch (const std::invalid_argument& e) {
                fail(where, e.what());
            }
        }
        fs::path p(s);
        if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
        return matrix_from_json(read_json_file(p.string()), p.string());
    }
    fail(where, "expected a matrix object, a path, or builtin:<name>");
}

Gate resolve_gate(const json& v, const std::string& base_dir,
                  const std::string& where) {
    if (v.is_object()) return gate_from_json(v, where);
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.rfind("builtin:", 0) == 0) {
            try {
                return builtin_gate(s.substr(8));
            } catch (const std::invalid_argument& e) {
                fail(where, e.what());
            }
        }
        fs::path p(s);
        if (p.is_relative() && !base_dir.empty()) p = fs::path(base_dir) / p;
        return gate_from_json(read_json_file(p.string()), p.string());
    }
    fail(where, "expected a gate object, a path, or builtin:<name>");
}

}  // namespace

Factorization factorization_from_json(const json& j, const std::string& base_dir,
                                      const std::string& where) {
    if (!j.is_object()) fail(where, "factorization must be a JSON object");
    if (!j.contains("target")) fail(where, "missing 'target'");
    Factorization f;
    f.target = resolve_gate(j.at("target"), base_dir, where + ": target");
    if (!j.contains("factors") || !j.at("factors").is_array())
        fail(where, "missing 'factors' array");
    std::size_t idx = 0;
    for (const json& fac : j.at("factors")) {
        const std::string here = where + ": factor " + std::to_string(idx++);
        if (!fac.is_object() || !fac.contains("kind") || !fac.at("kind").is_string())
            fail(here, "need a 'kind' of \"U\" or \"local\"");
        const std::string kind = fac.at("kind").get<std::string>();
        if (kind == "U") {
            if (!fac.contains("matrix")) fail(here, "kind U needs 'matrix'");
            f.factors.push_back(UniversalFactor{
                resolve_matrix(fac.at("matrix"), base_dir, here + ": matrix")});
        } else if (kind == "local") {
            if (!fac.contains("S") || !fac.contains("T"))
                fail(here, "kind local needs 'S' and 'T'");
            f.factors.push_back(
                LocalFactor{resolve_matrix(fac.at("S"), base_dir, here + ": S"),
                            resolve_matrix(fac.at("T"), base_dir, here + ": T")});
        } else {
            fail(here, "unknown kind '" + kind + "'");
        }
    }
    return f;
}

json pair_report_to_json(const PairReport& r) {
    return json{{"commutant_residual", r.commutant},
                {"trace_plus_residual", r.trace_plus},
                {"trace_minus_residual", r.trace_minus},
                {"accepted", r.accepted}};
}

json gate_report_to_json(const GateReport& r) {
    json j{{"d", r.d},
           {"k", r.k},
           {"unitarity_residual", r.unitarity_residual},
           {"is_unitary", r.is_unitary}};
    j["ybe_residual"] = r.ybe_residual ? json(*r.ybe_residual) : json(nullptr);
    j["is_yang_baxter"] = r.is_yang_baxter ? json(*r.is_yang_baxter) : json(nullptr);
    j["entanglement_class"] =
        r.entanglement_class ? json(to_string(*r.entanglement_class)) : json(nullptr);
    j["operator_schmidt_rank"] =
        r.operator_schmidt_rank ? json(*r.operator_schmidt_rank) : json(nullptr);
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (in.bad()) fail(path, "read error");
    return text;
}

json read_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(path, std::string("JSON parse error: ") + e.what());
    }
}

void atomic_write_text(const std::string& path, const std::string& text) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(tmp.string(), "cannot open for writing");
        out << text;
        out.flush();
        if (!out) fail(tmp.string(), "write error");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) fail(path, "rename failed: " + ec.message());
}

void write_json_file(const std::string& path, const json& j) {
    atomic_write_text(path, j.dump() + "\n");
}

Gate load_gate(const std::string& ref, std::optional<std::size_t> d_hint,
               std::optional<std::size_t> k_hint) {
    if (ref.rfind("builtin:", 0) == 0) return builtin_gate(ref.substr(8));
    const json j = read_json_file(ref);
    if (d_hint || k_hint) {
        if (!(d_hint && k_hint))
            fail(ref, "supply both d and k overrides or neither");
        CMatrix m = matrix_from_json(j, ref);
        try {
            return Gate(std::move(m), *d_hint, *k_hint);
        } catch (const std::invalid_argument& e) {
            fail(ref, e.what());
        }
    }
    return gate_from_json(j, ref);
}

CMatrix load_matrix(const std::string& ref) {
    if (ref.rfind("builtin:", 0) == 0) return builtin_gate(ref.substr(8)).matrix;
    return matrix_from_json(read_json_file(ref), ref);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace boxtimes::io
