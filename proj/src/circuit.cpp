#include "boxtimes/circuit.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "boxtimes/kernels.hpp"

namespace boxtimes {

std::size_t checked_power(std::size_t d, std::size_t n, std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (d != 0 && r > cap / d)
            throw std::invalid_argument("dimension " + std::to_string(d) + "^" +
                                        std::to_string(n) + " exceeds cap " +
                                        std::to_string(cap));
        r *= d;
    }
    return r;
}

CMatrix embed(const Gate& g, const std::vector<std::size_t>& wires, std::size_t n,
              std::size_t d) {
    if (g.d != d)
        throw std::invalid_argument("embed: gate local dimension " +
                                    std::to_string(g.d) + " != circuit's " +
                                    std::to_string(d));
    if (wires.size() != g.k)
        throw std::invalid_argument("embed: " + std::to_string(wires.size()) +
                                    " wires for arity " + std::to_string(g.k));
    for (std::size_t w : wires)
        if (w >= n)
            throw std::invalid_argument("embed: wire " + std::to_string(w) +
                                        " outside width " + std::to_string(n));
    {
        std::vector<std::size_t> sorted = wires;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("embed: repeated wire index");
    }

    const std::size_t dim = checked_power(d, n, std::size_t(1) << 30);
    const std::size_t gdim = g.matrix.rows;

    // Mixed-radix strides: wire w owns factor d^(n-1-w) of the index.
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t w = n; w-- > 1;) stride[w - 1] = stride[w] * d;

    CMatrix out(dim, dim);
    const std::int64_t ncols = static_cast<std::int64_t>(dim);
    const bool par = dim * gdim >= kernels::kParallelGrain;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t col = 0; col < ncols; ++col) {
        const std::size_t c = static_cast<std::size_t>(col);
        // Column digit of each placed wire, in gate slot order.
        std::size_t gcol = 0;
        for (std::size_t s = 0; s < wires.size(); ++s)
            gcol = gcol * d + (c / stride[wires[s]]) % d;
        // Base row index: column with the placed wires' digits cleared.
        std::size_t rest = c;
        for (std::size_t s = 0; s < wires.size(); ++s)
            rest -= ((c / stride[wires[s]]) % d) * stride[wires[s]];
        for (std::size_t gr = 0; gr < gdim; ++gr) {
            const Complex v = g.matrix.at(gr, gcol);
            if (v == Complex(0.0)) continue;
            std::size_t row = rest, digits = gr;
            for (std::size_t s = wires.size(); s-- > 0;) {
                row += (digits % d) * stride[wires[s]];
                digits /= d;
            }
            out.at(row, c) = v;
        }
    }
    return out;
}

CMatrix simulate(const Circuit& c, std::size_t cap) {
    if (c.width == 0 || c.d == 0)
        throw std::invalid_argument("simulate: circuit width and d must be >= 1");
    const std::size_t dim = checked_power(c.d, c.width, cap);
    for (const PlacedGate& pg : c.gates)
        if (pg.gate.d != c.d)
            throw std::invalid_argument("simulate: gate local dimension " +
                                        std::to_string(pg.gate.d) +
                                        " != circuit's " + std::to_string(c.d));
    CMatrix acc = identity(dim);
    for (const PlacedGate& pg : c.gates) {
        // Adjacent ascending 2-wire placements skip the embedded matrix.
        if (pg.gate.k == 2 && pg.wires.size() == 2 && pg.wires[1] == pg.wires[0] + 1) {
            CMatrix next(acc.rows, acc.cols);
            kernels::apply_two_site_right(acc, pg.gate.matrix, pg.wires[0], c.width,
                                          c.d, next);
            acc = std::move(next);
        } else {
            acc = acc * embed(pg.gate, pg.wires, c.width, c.d);
        }
    }
    return acc;
}

std::vector<std::size_t> adjacent_swap_network(const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    {
        std::vector<bool> seen(n, false);
        for (std::size_t v : perm) {
            if (v >= n || seen[v])
                throw std::invalid_argument("adjacent_swap_network: not a permutation");
            seen[v] = true;
        }
    }
    // Bubble sort the slot->wire map into the identity, collecting each
    // neighbour exchange. In collection order the transposition matrices
    // multiply (first listed leftmost) to exactly the permutation matrix
    // P with P[y, x] = 1 iff y_t = x_{perm[t]} for all slots t.
    std::vector<std::size_t> work = perm;
    std::vector<std::size_t> swaps;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t j = 0; j + 1 < n; ++j)
            if (work[j] > work[j + 1]) {
                std::swap(work[j], work[j + 1]);
                swaps.push_back(j);
                moved = true;
            }
    }
    return swaps;
}

std::vector<std::size_t> block_swap_network(std::size_t width, std::size_t start,
                                            std::size_t w) {
    if (start + 2 * w > width)
        throw std::invalid_argument("block_swap_network: blocks [" +
                                    std::to_string(start) + ", " +
                                    std::to_string(start + 2 * w) +
                                    ") exceed width " + std::to_string(width));
    std::vector<std::size_t> perm(width);
    for (std::size_t i = 0; i < width; ++i) perm[i] = i;
    for (std::size_t i = 0; i < w; ++i) {
        perm[start + i] = start + w + i;
        perm[start + w + i] = start + i;
    }
    return adjacent_swap_network(perm);
}

}  // namespace boxtimes
