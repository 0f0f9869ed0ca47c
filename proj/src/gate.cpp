#include "boxtimes/gate.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "boxtimes/linalg.hpp"

namespace boxtimes {

namespace {

std::size_t pow_st(std::size_t d, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= d;
    return r;
}

CMatrix swap_matrix(std::size_t d) {
    CMatrix p(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) p.at(j * d + i, i * d + j) = 1.0;
    return p;
}

void require_arity2(const Gate& g, const char* op) {
    if (g.k != 2)
        throw std::invalid_argument(std::string(op) + ": gate arity is " +
                                    std::to_string(g.k) + ", need 2");
}

}  // namespace

Gate::Gate(CMatrix m, std::size_t local_dim, std::size_t arity, std::string nm)
    : matrix(std::move(m)), d(local_dim), k(arity), name(std::move(nm)) {
    if (d == 0 || k == 0) throw std::invalid_argument("Gate: d and k must be >= 1");
    const std::size_t dim = pow_st(d, k);
    if (matrix.rows != dim || matrix.cols != dim)
        throw std::invalid_argument(
            "Gate: matrix is " + std::to_string(matrix.rows) + "x" +
            std::to_string(matrix.cols) + ", want " + std::to_string(dim) + " = " +
            std::to_string(d) + "^" + std::to_string(k));
}

const char* to_string(GateClass c) {
    switch (c) {
        case GateClass::primitive_tensor: return "primitive-tensor";
        case GateClass::primitive_swap: return "primitive-swap";
        case GateClass::entangling: return "entangling";
    }
    return "?";
}

double unitarity_residual(const Gate& g) {
    return max_abs_diff(adjoint(g.matrix) * g.matrix, identity(g.matrix.rows));
}

double ybe_residual(const Gate& g) {
    require_arity2(g, "ybe_residual");
    const CMatrix id = identity(g.d);
    const CMatrix c12 = kron(g.matrix, id);
    const CMatrix c23 = kron(id, g.matrix);
    return max_abs_diff(c12 * (c23 * c12), c23 * (c12 * c23));
}

CMatrix realign(const Gate& g) {
    require_arity2(g, "realign");
    const std::size_t d = g.d;
    CMatrix r(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                    r.at(i * d + k, j * d + l) = g.matrix.at(i * d + j, k * d + l);
    return r;
}

std::size_t operator_schmidt_rank(const Gate& g, double rank_tol) {
    return numeric_rank(singular_values(realign(g)), rank_tol);
}

GateClass classify_entangling(const Gate& g, double rank_tol) {
    require_arity2(g, "classify_entangling");
    const auto sv = singular_values(g.matrix);
    if (numeric_rank(sv, 1e-8) < g.matrix.rows)
        throw std::invalid_argument("classify_entangling: gate is numerically singular");
    if (operator_schmidt_rank(g, rank_tol) == 1) return GateClass::primitive_tensor;
    Gate gp(g.matrix * swap_matrix(g.d), g.d, 2);
    if (operator_schmidt_rank(gp, rank_tol) == 1) return GateClass::primitive_swap;
    return GateClass::entangling;
}

std::optional<std::pair<CMatrix, CMatrix>> tensor_factor(const Gate& g,
                                                         double rank_tol) {
    require_arity2(g, "tensor_factor");
    const SvdResult r = svd(realign(g));
    if (numeric_rank(r.singular, rank_tol) != 1) return std::nullopt;
    const std::size_t d = g.d;
    // Rank-one realignment sigma * u v^H unfolds to (mat u) (x) (sigma mat v*).
    CMatrix c1(d, d), c2(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            c1.at(i, j) = r.u.at(i * d + j, 0);
            c2.at(i, j) = r.singular[0] * std::conj(r.v.at(i * d + j, 0));
        }
    // c1 already has unit Frobenius norm; rotate its leading entry real
    // positive and push the phase into c2.
    std::size_t lead = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < c1.entries.size(); ++i) {
        const double v = std::abs(c1.entries[i]);
        if (v > best) { best = v; lead = i; }
    }
    const Complex z = c1.entries[lead];
    const Complex phase = z / std::abs(z);
    c1 = (1.0 / phase) * c1;
    c2 = phase * c2;
    return std::make_pair(std::move(c1), std::move(c2));
}

GateReport gate_report(const Gate& g, const Tolerance& tol) {
    GateReport rep;
    rep.d = g.d;
    rep.k = g.k;
    rep.unitarity_residual = unitarity_residual(g);
    rep.is_unitary = rep.unitarity_residual <= tol.eps;
    if (g.k == 2) {
        rep.ybe_residual = ybe_residual(g);
        rep.is_yang_baxter = *rep.ybe_residual <= tol.eps;
        rep.operator_schmidt_rank = operator_schmidt_rank(g);
        try {
            rep.entanglement_class = classify_entangling(g);
        } catch (const std::invalid_argument&) {
            // singular gate: class undefined, rank still reported
        }
    }
    return rep;
}

std::map<std::string, Gate> builtin_gates() {
    const double r2 = 1.0 / std::sqrt(2.0);
    CMatrix kc(4, 4, {r2, 0, 0, r2,      //
                      0, r2, -r2, 0,     //
                      0, r2, r2, 0,      //
                      -r2, 0, 0, r2});
    CMatrix ed(4, 4, {2, 0, 0, 0,        //
                      0, 0, 1, 0,        //
                      0, 1, 1.5, 0,      //
                      0, 0, 0, 2});
    CMatrix cn(4, 4, {1, 0, 0, 0,        //
                      0, 1, 0, 0,        //
                      0, 0, 0, 1,        //
                      0, 0, 1, 0});
    std::map<std::string, Gate> m;
    m.emplace("kauffman_c", Gate(std::move(kc), 2, 2, "kauffman_c"));
    m.emplace("example_d", Gate(std::move(ed), 2, 2, "example_d"));
    m.emplace("cnot", Gate(std::move(cn), 2, 2, "cnot"));
    m.emplace("swap", Gate(swap_matrix(2), 2, 2, "swap"));
    m.emplace("identity", Gate(identity(4), 2, 2, "identity"));
    return m;
}

Gate builtin_gate(const std::string& name) {
    std::string head = name;
    std::vector<std::size_t> args;
    std::size_t pos = name.find(':');
    if (pos != std::string::npos) {
        head = name.substr(0, pos);
        std::size_t start = pos + 1;
        while (start <= name.size()) {
            std::size_t next = name.find(':', start);
            const std::string tok =
                name.substr(start, next == std::string::npos ? next : next - start);
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (tok.empty() || used != tok.size() || !std::isdigit(tok.front()))
                throw std::invalid_argument("builtin_gate: bad parameter '" + tok +
                                            "' in '" + name + "'");
            args.push_back(v);
            if (next == std::string::npos) break;
            start = next + 1;
        }
    }
    if (head == "swap") {
        const std::size_t d = args.empty() ? 2 : args[0];
        if (args.size() > 1 || d < 1)
            throw std::invalid_argument("builtin_gate: swap takes one local dimension");
        return Gate(swap_matrix(d), d, 2, "swap" + (args.empty() ? "" : ":" + std::to_string(d)));
    }
    if (head == "identity") {
        const std::size_t d = args.size() > 0 ? args[0] : 2;
        const std::size_t k = args.size() > 1 ? args[1] : 2;
        if (args.size() > 2 || d < 1 || k < 1)
            throw std::invalid_argument("builtin_gate: identity takes d and k");
        std::string nm = "identity";
        if (!args.empty()) {
            nm += ":" + std::to_string(d);
            if (args.size() > 1) nm += ":" + std::to_string(k);
        }
        return Gate(identity(pow_st(d, k)), d, k, nm);
    }
    auto fixed = builtin_gates();
    auto it = fixed.find(head);
    if (it == fixed.end() || !args.empty()) {
        std::string names;
        for (const auto& [n, g] : fixed) names += (names.empty() ? "" : ", ") + n;
        throw std::invalid_argument("builtin_gate: unknown gate '" + name +
                                    "'; available: " + names +
                                    " (swap and identity take :d / :d:k)");
    }
    return it->second;
}

}  // namespace boxtimes
