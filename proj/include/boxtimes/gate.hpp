#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boxtimes/cmatrix.hpp"

namespace boxtimes {

// A k-qudit gate: a d^k x d^k matrix acting on (C^d)^{(x)k}. d and k are
// stored, not inferred, so a 16x16 matrix can be a 2-qudit gate at d=4 or a
// 4-qudit gate at d=2.
struct Gate {
    CMatrix matrix;
    std::size_t d = 0;
    std::size_t k = 0;
    std::string name;  // empty for anonymous gates

    Gate() = default;
    // Validates that matrix is square of size d^k.
    Gate(CMatrix m, std::size_t local_dim, std::size_t arity, std::string nm = "");
};

enum class GateClass { primitive_tensor, primitive_swap, entangling };

// "primitive-tensor" / "primitive-swap" / "entangling".
const char* to_string(GateClass c);

// max |g^H g - I|.
double unitarity_residual(const Gate& g);

// Braid-form Yang-Baxter residual on (C^d)^{(x)3} for a 2-qudit gate:
// max |c12 c23 c12 - c23 c12 c23| with c12 = c (x) I_d, c23 = I_d (x) c.
double ybe_residual(const Gate& g);

// Realignment of a 2-qudit gate: R[(i,k),(j,l)] = g[(i,j),(k,l)].
// g = A (x) B iff R has rank one.
CMatrix realign(const Gate& g);

// Rank of the realignment: singular values above rank_tol * sigma_max.
std::size_t operator_schmidt_rank(const Gate& g, double rank_tol = 1e-8);

// primitive_tensor if g has operator Schmidt rank 1, primitive_swap if g*P
// does (P the swap gate), entangling otherwise. Throws on arity != 2 and on
// numerically singular input.
GateClass classify_entangling(const Gate& g, double rank_tol = 1e-8);

// For a primitive-tensor gate, factors (c1, c2) with g = c1 (x) c2,
// normalised so c1 has unit Frobenius norm and its largest-magnitude entry
// (first in row-major order on ties) is real positive; scale and phase fold
// into c2. Empty if g is not primitive-tensor at rank_tol.
std::optional<std::pair<CMatrix, CMatrix>> tensor_factor(const Gate& g,
                                                         double rank_tol = 1e-8);

struct GateReport {
    std::size_t d = 0;
    std::size_t k = 0;
    double unitarity_residual = 0.0;
    bool is_unitary = false;
    // Present for 2-qudit gates only.
    std::optional<double> ybe_residual;
    std::optional<bool> is_yang_baxter;
    // Present for invertible 2-qudit gates only.
    std::optional<GateClass> entanglement_class;
    std::optional<std::size_t> operator_schmidt_rank;
};

GateReport gate_report(const Gate& g, const Tolerance& tol);

/* Built-in gates.
 *
 * kauffman_c (d=2):                 example_d (d=2):
 *   1/r2    0     0   1/r2            2   0   0   0
 *     0   1/r2 -1/r2    0             0   0   1   0
 *     0   1/r2  1/r2    0             0   1  1.5  0
 *  -1/r2    0     0   1/r2            0   0   0   2
 *
 * cnot is the permutation exchanging basis states |10> and |11>; swap(d)
 * exchanges the two factors of (C^d)^(x)2; identity(d,k) is I on d^k.
 */

// The five gates under their bare names (swap and identity at d=2, k=2).
std::map<std::string, Gate> builtin_gates();

// Name resolver used by "builtin:" references. Parameterised names take
// colon-separated integers: "swap:3", "identity:3:2". Unknown names raise
// an error listing the available names.
Gate builtin_gate(const std::string& name);

}  // namespace boxtimes
