#pragma once

#include <string>
#include <vector>

#include "boxtimes/braid.hpp"
#include "boxtimes/gate.hpp"

namespace boxtimes {

// A 2-qudit gate together with a candidate enhancement mu (d x d).
struct EnhancedPair {
    Gate c;
    CMatrix mu;

    EnhancedPair() = default;
    EnhancedPair(Gate gate, CMatrix enhancer);
};

struct PairReport {
    double commutant = 0.0;     // max |[c, mu (x) mu]|
    double trace_plus = 0.0;    // max |Tr_2(c (mu (x) mu)) - mu|
    double trace_minus = 0.0;   // max |Tr_2(c^{-1} (mu (x) mu)) - mu|
    bool accepted = false;
};

// The three enhancement conditions at tol; c must be invertible.
PairReport check_enhanced_pair(const EnhancedPair& p, const Tolerance& tol);

// Tr(rho(w) mu^{(x)n}) for the braid representation of c on w.strands
// strands. Appends warnings (if non-null) when the pair fails
// check_enhanced_pair or c fails the Yang-Baxter check; the trace is
// returned regardless.
Complex turaev_invariant(const EnhancedPair& p, const BraidWord& w,
                         const Tolerance& tol,
                         std::vector<std::string>* warnings = nullptr);

// Componentwise product pair: gates combine by the canonical Tracy-Singh
// product, enhancers by the Kronecker product. Local dimensions must match.
EnhancedPair boxtimes_pair(const EnhancedPair& p, const EnhancedPair& q);

struct ProductCheck {
    Complex lhs;  // invariant of the combined pair
    Complex rhs;  // product of the individual invariants
    double abs_error = 0.0;
};

// Multiplicativity of the invariant on one word. Both gates must classify
// as primitive_tensor; throws std::invalid_argument otherwise.
ProductCheck verify_product_formula(const EnhancedPair& p, const EnhancedPair& q,
                                    const BraidWord& w, const Tolerance& tol,
                                    std::vector<std::string>* warnings = nullptr);

struct SwapFormRow {
    std::string word;
    std::size_t strands = 0;
    Complex lhs;
    Complex rhs;
    double abs_error = 0.0;
};

// Same comparison for primitive_swap gates, reported rather than asserted:
// one row per word, no pass/fail judgement. Throws if either gate is not
// primitive_swap.
std::vector<SwapFormRow> explore_swap_form(const EnhancedPair& p,
                                           const EnhancedPair& q,
                                           const std::vector<BraidWord>& words,
                                           const Tolerance& tol);

}  // namespace boxtimes
