#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "boxtimes/circuit.hpp"
#include "boxtimes/gate.hpp"
#include "boxtimes/tracy_singh.hpp"

namespace boxtimes {

// One layer of a gate decomposition: either an arbitrary 2-qudit unitary or
// a pair of 1-qudit gates s (x) t.
struct UniversalFactor {
    CMatrix u;  // d^2 x d^2
};
struct LocalFactor {
    CMatrix s, t;  // d x d each
};
using Factor = std::variant<UniversalFactor, LocalFactor>;

// The d^2 x d^2 matrix a factor contributes.
CMatrix factor_matrix(const Factor& f, std::size_t d);

// target = product of factors, leftmost factor first.
struct Factorization {
    Gate target;
    std::vector<Factor> factors;
};

// max |product(factors) - target|. Throws (reporting the residual) if it
// exceeds tol.
double check_factorization(const Factorization& f, const Tolerance& tol);

// The 4-wire sandwich computing c (ts) cp from gates on adjacent pairs:
// swap(1,2), then c on (0,1) and cp on (2,3), then swap(1,2).
Circuit sandwich_realization(const Gate& c, const Gate& cp);

// Sandwich circuit with the middle expanded layer by layer from the two
// factorizations. Layers are consumed in lockstep; the shorter list is
// padded with identity layers that place no gates.
Circuit realize_boxtimes(const Factorization& fc, const Factorization& fcp,
                         const Tolerance& tol);

// Circuit for the k-fold iterated square of f.target on 2^k wires:
// level k wraps two copies of level k-1 in a block-swap network on the
// middle half of the wires. Throws when d^(2^k) would exceed cap.
Circuit iterate_realization(const Factorization& f, std::size_t k,
                            const Tolerance& tol, std::size_t cap = kDefaultDimCap);

}  // namespace boxtimes
