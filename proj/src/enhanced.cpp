#include "boxtimes/enhanced.hpp"

#include <cmath>
#include <stdexcept>

#include "boxtimes/linalg.hpp"
#include "boxtimes/tracy_singh.hpp"

namespace boxtimes {

EnhancedPair::EnhancedPair(Gate gate, CMatrix enhancer)
    : c(std::move(gate)), mu(std::move(enhancer)) {
    if (c.k != 2)
        throw std::invalid_argument("enhanced pair: gate arity is " +
                                    std::to_string(c.k) + ", need 2");
    if (mu.rows != c.d || mu.cols != c.d)
        throw std::invalid_argument("enhanced pair: enhancer is " +
                                    std::to_string(mu.rows) + "x" +
                                    std::to_string(mu.cols) + ", want " +
                                    std::to_string(c.d));
}

PairReport check_enhanced_pair(const EnhancedPair& p, const Tolerance& tol) {
    const CMatrix mm = kron(p.mu, p.mu);
    const CMatrix cinv = inverse(p.c.matrix);
    PairReport r;
    r.commutant = max_abs_diff(p.c.matrix * mm, mm * p.c.matrix);
    r.trace_plus =
        max_abs_diff(partial_trace_second(p.c.matrix * mm, p.c.d, p.c.d), p.mu);
    r.trace_minus = max_abs_diff(partial_trace_second(cinv * mm, p.c.d, p.c.d), p.mu);
    r.accepted = r.commutant <= tol.eps && r.trace_plus <= tol.eps &&
                 r.trace_minus <= tol.eps;
    return r;
}

Complex turaev_invariant(const EnhancedPair& p, const BraidWord& w,
                         const Tolerance& tol, std::vector<std::string>* warnings) {
    if (warnings) {
        const PairReport r = check_enhanced_pair(p, tol);
        if (!r.accepted)
            warnings->push_back(
                "pair fails the enhancement conditions (residuals " +
                std::to_string(r.commutant) + ", " + std::to_string(r.trace_plus) +
                ", " + std::to_string(r.trace_minus) +
                "); the trace is not a link invariant");
    }
    const CMatrix rho = braid_rep(p.c, w, tol, warnings);
    CMatrix weight = p.mu;
    for (std::size_t i = 1; i < w.strands; ++i) weight = kron(weight, p.mu);
    // Tr(rho * weight) without forming the product.
    Complex t = 0.0;
    for (std::size_t i = 0; i < rho.rows; ++i)
        for (std::size_t j = 0; j < rho.cols; ++j) t += rho.at(i, j) * weight.at(j, i);
    return t;
}

EnhancedPair boxtimes_pair(const EnhancedPair& p, const EnhancedPair& q) {
    if (p.c.d != q.c.d)
        throw std::invalid_argument("boxtimes_pair: local dimensions " +
                                    std::to_string(p.c.d) + " and " +
                                    std::to_string(q.c.d) + " differ");
    Gate g(tracy_singh_canonical(p.c.matrix, q.c.matrix), p.c.d * q.c.d, 2);
    return EnhancedPair(std::move(g), kron(p.mu, q.mu));
}

ProductCheck verify_product_formula(const EnhancedPair& p, const EnhancedPair& q,
                                    const BraidWord& w, const Tolerance& tol,
                                    std::vector<std::string>* warnings) {
    for (const EnhancedPair* pair : {&p, &q}) {
        const GateClass cls = classify_entangling(pair->c);
        if (cls != GateClass::primitive_tensor)
            throw std::invalid_argument(
                std::string("verify_product_formula: gate is ") + to_string(cls) +
                "; the product rule assumes c and c' are primitive with "
                "c = c1 (x) c2");
    }
    ProductCheck out;
    out.lhs = turaev_invariant(boxtimes_pair(p, q), w, tol, warnings);
    out.rhs = turaev_invariant(p, w, tol, warnings) *
              turaev_invariant(q, w, tol, warnings);
    out.abs_error = std::abs(out.lhs - out.rhs);
    return out;
}

std::vector<SwapFormRow> explore_swap_form(const EnhancedPair& p,
                                           const EnhancedPair& q,
                                           const std::vector<BraidWord>& words,
                                           const Tolerance& tol) {
    for (const EnhancedPair* pair : {&p, &q}) {
        const GateClass cls = classify_entangling(pair->c);
        if (cls != GateClass::primitive_swap)
            throw std::invalid_argument(std::string("explore_swap_form: gate is ") +
                                        to_string(cls) + ", need primitive-swap");
    }
    const EnhancedPair combined = boxtimes_pair(p, q);
    std::vector<SwapFormRow> rows;
    rows.reserve(words.size());
    for (const BraidWord& w : words) {
        SwapFormRow r;
        r.word = braid_word_to_string(w);
        r.strands = w.strands;
        r.lhs = turaev_invariant(combined, w, tol, nullptr);
        r.rhs = turaev_invariant(p, w, tol, nullptr) *
                turaev_invariant(q, w, tol, nullptr);
        r.abs_error = std::abs(r.lhs - r.rhs);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace boxtimes
