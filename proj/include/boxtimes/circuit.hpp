#pragma once

#include <vector>

#include "boxtimes/gate.hpp"

namespace boxtimes {

// A gate applied to specific wires. Wires are 0-based, listed in the order
// the gate's tensor slots bind to them, and need not be adjacent or
// ascending.
struct PlacedGate {
    Gate gate;
    std::vector<std::size_t> wires;
};

struct Circuit {
    std::size_t width = 0;  // number of wires
    std::size_t d = 0;      // local dimension, shared by all gates
    std::vector<PlacedGate> gates;
};

// d^n, throwing once the value exceeds cap.
std::size_t checked_power(std::size_t d, std::size_t n, std::size_t cap);

// Embed a k-wire gate on the given wires of an n-wire register: the
// d^n x d^n matrix acting as g on the named wires and trivially elsewhere.
CMatrix embed(const Gate& g, const std::vector<std::size_t>& wires,
              std::size_t n, std::size_t d);

// Full unitary of the circuit. Gates listed first are leftmost factors:
// a circuit [g1, g2] simulates to embed(g1) * embed(g2).
CMatrix simulate(const Circuit& c, std::size_t cap = 1u << 14);

// Positions j of adjacent transpositions (j, j+1) realising the wire
// permutation perm (output slot t reads input wire perm[t]), in application
// order under the convention above. Bubble-sort network: at most |perm|^2/2
// transpositions, deterministic.
std::vector<std::size_t> adjacent_swap_network(const std::vector<std::size_t>& perm);

// Network exchanging the wire ranges [start, start+w) and [start+w, start+2w).
std::vector<std::size_t> block_swap_network(std::size_t width, std::size_t start,
                                            std::size_t w);

}  // namespace boxtimes
