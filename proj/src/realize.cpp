#include "boxtimes/realize.hpp"

#include <stdexcept>
#include <string>

namespace boxtimes {

namespace {

Gate swap_gate(std::size_t d) { return builtin_gate(d == 2 ? "swap" : "swap:" + std::to_string(d)); }

void place_factor(Circuit& c, const Factor& f, std::size_t d, std::size_t wire0) {
    if (std::holds_alternative<UniversalFactor>(f)) {
        c.gates.push_back(
            {Gate(std::get<UniversalFactor>(f).u, d, 2), {wire0, wire0 + 1}});
    } else {
        const LocalFactor& lf = std::get<LocalFactor>(f);
        c.gates.push_back({Gate(lf.s, d, 1), {wire0}});
        c.gates.push_back({Gate(lf.t, d, 1), {wire0 + 1}});
    }
}

void shift_into(Circuit& dst, const Circuit& src, std::size_t offset) {
    for (const PlacedGate& pg : src.gates) {
        PlacedGate moved = pg;
        for (std::size_t& w : moved.wires) w += offset;
        dst.gates.push_back(std::move(moved));
    }
}

}  // namespace

CMatrix factor_matrix(const Factor& f, std::size_t d) {
    if (std::holds_alternative<UniversalFactor>(f)) {
        const CMatrix& u = std::get<UniversalFactor>(f).u;
        if (u.rows != d * d || u.cols != d * d)
            throw std::invalid_argument("factor: U is " + std::to_string(u.rows) +
                                        "x" + std::to_string(u.cols) + ", want " +
                                        std::to_string(d * d));
        return u;
    }
    const LocalFactor& lf = std::get<LocalFactor>(f);
    if (lf.s.rows != d || lf.s.cols != d || lf.t.rows != d || lf.t.cols != d)
        throw std::invalid_argument("factor: local parts must be " +
                                    std::to_string(d) + "x" + std::to_string(d));
    return kron(lf.s, lf.t);
}

double check_factorization(const Factorization& f, const Tolerance& tol) {
    if (f.target.k != 2)
        throw std::invalid_argument("factorization: target arity is " +
                                    std::to_string(f.target.k) + ", need 2");
    const std::size_t d = f.target.d;
    CMatrix prod = identity(d * d);
    for (const Factor& fac : f.factors) prod = prod * factor_matrix(fac, d);
    const double residual = max_abs_diff(prod, f.target.matrix);
    if (residual > tol.eps)
        throw std::invalid_argument(
            "factorization: factors multiply to the wrong matrix, residual " +
            std::to_string(residual) + " > " + std::to_string(tol.eps));
    return residual;
}

Circuit sandwich_realization(const Gate& c, const Gate& cp) {
    if (c.k != 2 || cp.k != 2)
        throw std::invalid_argument("sandwich_realization: both gates must have arity 2");
    if (c.d != cp.d)
        throw std::invalid_argument("sandwich_realization: local dimensions " +
                                    std::to_string(c.d) + " and " +
                                    std::to_string(cp.d) + " differ");
    Circuit out;
    out.width = 4;
    out.d = c.d;
    const Gate sw = swap_gate(c.d);
    out.gates.push_back({sw, {1, 2}});
    out.gates.push_back({c, {0, 1}});
    out.gates.push_back({cp, {2, 3}});
    out.gates.push_back({sw, {1, 2}});
    return out;
}

Circuit realize_boxtimes(const Factorization& fc, const Factorization& fcp,
                         const Tolerance& tol) {
    check_factorization(fc, tol);
    check_factorization(fcp, tol);
    if (fc.target.d != fcp.target.d)
        throw std::invalid_argument("realize_boxtimes: local dimensions " +
                                    std::to_string(fc.target.d) + " and " +
                                    std::to_string(fcp.target.d) + " differ");
    const std::size_t d = fc.target.d;
    Circuit out;
    out.width = 4;
    out.d = d;
    const Gate sw = swap_gate(d);
    out.gates.push_back({sw, {1, 2}});
    // Middle layers in lockstep; an exhausted side contributes the identity
    // and places nothing.
    const std::size_t layers = std::max(fc.factors.size(), fcp.factors.size());
    for (std::size_t i = 0; i < layers; ++i) {
        if (i < fc.factors.size()) place_factor(out, fc.factors[i], d, 0);
        if (i < fcp.factors.size()) place_factor(out, fcp.factors[i], d, 2);
    }
    out.gates.push_back({sw, {1, 2}});
    return out;
}

Circuit iterate_realization(const Factorization& f, std::size_t k,
                            const Tolerance& tol, std::size_t cap) {
    if (k == 0) throw std::invalid_argument("iterate_realization: k must be >= 1");
    if (k > 32)
        throw std::invalid_argument("iterate_realization: k = " + std::to_string(k) +
                                    " is far over any dimension cap");
    check_factorization(f, tol);
    const std::size_t d = f.target.d;
    const std::size_t width = std::size_t(1) << k;
    checked_power(d, width, cap);  // reject oversized results up front

    Circuit out;
    out.d = d;
    if (k == 1) {
        out.width = 2;
        for (const Factor& fac : f.factors) place_factor(out, fac, d, 0);
        return out;
    }
    const Circuit prev = iterate_realization(f, k - 1, tol, cap);
    out.width = width;
    const Gate sw = swap_gate(d);
    const std::vector<std::size_t> net = block_swap_network(width, width / 4, width / 4);
    for (std::size_t j : net) out.gates.push_back({sw, {j, j + 1}});
    shift_into(out, prev, 0);
    shift_into(out, prev, width / 2);
    for (std::size_t j : net) out.gates.push_back({sw, {j, j + 1}});
    return out;
}

}  // namespace boxtimes
