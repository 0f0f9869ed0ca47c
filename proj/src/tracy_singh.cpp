#include "boxtimes/tracy_singh.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

#include "boxtimes/kernels.hpp"

namespace boxtimes {

namespace {

// Flat index maps for one axis of the product: for each output index, the
// source index in a and in b. Output order runs a-blocks outer, b-blocks
// middle, then entries within the a-block and b-block.
struct AxisMap {
    std::vector<std::size_t> in_a, in_b;
};

AxisMap build_axis(const std::vector<std::size_t>& a_cuts,
                   const std::vector<std::size_t>& b_cuts) {
    std::size_t a_total = 0, b_total = 0;
    for (std::size_t c : a_cuts) a_total += c;
    for (std::size_t c : b_cuts) b_total += c;
    const auto a_off = block_offsets(a_cuts);
    const auto b_off = block_offsets(b_cuts);
    AxisMap map;
    map.in_a.reserve(a_total * b_total);
    map.in_b.reserve(a_total * b_total);
    for (std::size_t i = 0; i < a_cuts.size(); ++i)
        for (std::size_t k = 0; k < b_cuts.size(); ++k)
            for (std::size_t x = 0; x < a_cuts[i]; ++x)
                for (std::size_t y = 0; y < b_cuts[k]; ++y) {
                    map.in_a.push_back(a_off[i] + x);
                    map.in_b.push_back(b_off[k] + y);
                }
    return map;
}

}  // namespace

CMatrix tracy_singh(const PartitionedMatrix& a, const PartitionedMatrix& b) {
    const AxisMap rmap = build_axis(a.part.row_cuts, b.part.row_cuts);
    const AxisMap cmap = build_axis(a.part.col_cuts, b.part.col_cuts);
    CMatrix out(rmap.in_a.size(), cmap.in_a.size());
    const std::int64_t nrows = static_cast<std::int64_t>(out.rows);
    const bool par = out.entries.size() >= kernels::kParallelGrain;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t r = 0; r < nrows; ++r) {
        const std::size_t ra = rmap.in_a[static_cast<std::size_t>(r)];
        const std::size_t rb = rmap.in_b[static_cast<std::size_t>(r)];
        Complex* orow = out.entries.data() + static_cast<std::size_t>(r) * out.cols;
        const Complex* arow = a.m.entries.data() + ra * a.m.cols;
        const Complex* brow = b.m.entries.data() + rb * b.m.cols;
        for (std::size_t c = 0; c < out.cols; ++c)
            orow[c] = arow[cmap.in_a[c]] * brow[cmap.in_b[c]];
    }
    return out;
}

CMatrix tracy_singh_canonical(const CMatrix& a, const CMatrix& b) {
    return tracy_singh(with_canonical_partition(a), with_canonical_partition(b));
}

BlockPartition induced_partition(const BlockPartition& a, const BlockPartition& b) {
    BlockPartition out;
    out.row_cuts.reserve(a.row_cuts.size() * b.row_cuts.size());
    out.col_cuts.reserve(a.col_cuts.size() * b.col_cuts.size());
    for (std::size_t i : a.row_cuts)
        for (std::size_t k : b.row_cuts) out.row_cuts.push_back(i * k);
    for (std::size_t j : a.col_cuts)
        for (std::size_t l : b.col_cuts) out.col_cuts.push_back(j * l);
    return out;
}

CMatrix ts_via_commutation(const CMatrix& c, const CMatrix& cp) {
    const BlockPartition pc = canonical_partition(c.rows, c.cols);
    const BlockPartition pcp = canonical_partition(cp.rows, cp.cols);
    const std::size_t n = pc.row_cuts.size(), p = pc.col_cuts.size();
    const std::size_t m = pcp.row_cuts.size(), q = pcp.col_cuts.size();
    // Row side regroups (a, k, b) to (k, a, b) for a in C^n, k in C^m;
    // column side undoes the same regrouping on (C^p, C^q) indices.
    const CMatrix left = kron(kron(identity(n), commutation_matrix(n, m)), identity(m));
    const CMatrix right = kron(kron(identity(p), commutation_matrix(q, p)), identity(q));
    return left * kron(c, cp) * right;
}

CMatrix boxtimes_power(const CMatrix& c, std::size_t k, std::size_t cap) {
    if (k == 0) throw std::invalid_argument("boxtimes_power: k must be >= 1");
    if (c.rows > cap || c.cols > cap)
        throw std::invalid_argument("boxtimes_power: input is " +
                                    std::to_string(c.rows) + "x" +
                                    std::to_string(c.cols) + ", cap " +
                                    std::to_string(cap));
    CMatrix acc = c;
    for (std::size_t step = 1; step < k; ++step) {
        if (acc.rows > cap / acc.rows || acc.cols > cap / acc.cols)
            throw std::invalid_argument(
                "boxtimes_power: step " + std::to_string(step + 1) + " would be " +
                std::to_string(acc.rows) + "^2 x " + std::to_string(acc.cols) +
                "^2, over the dimension cap " + std::to_string(cap));
        acc = tracy_singh_canonical(acc, acc);
    }
    return acc;
}

namespace reference {

CMatrix tracy_singh(const PartitionedMatrix& a, const PartitionedMatrix& b) {
    const auto a_roff = block_offsets(a.part.row_cuts);
    const auto a_coff = block_offsets(a.part.col_cuts);
    const auto b_roff = block_offsets(b.part.row_cuts);
    const auto b_coff = block_offsets(b.part.col_cuts);

    CMatrix out(a.m.rows * b.m.rows, a.m.cols * b.m.cols);
    std::size_t row_base = 0;
    for (std::size_t i = 0; i < a.part.row_cuts.size(); ++i)
        for (std::size_t k = 0; k < b.part.row_cuts.size(); ++k) {
            const std::size_t bh = a.part.row_cuts[i] * b.part.row_cuts[k];
            std::size_t col_base = 0;
            for (std::size_t j = 0; j < a.part.col_cuts.size(); ++j)
                for (std::size_t l = 0; l < b.part.col_cuts.size(); ++l) {
                    const std::size_t bw = a.part.col_cuts[j] * b.part.col_cuts[l];
                    // block (i,k),(j,l) = A_ij (x) B_kl
                    for (std::size_t x = 0; x < a.part.row_cuts[i]; ++x)
                        for (std::size_t u = 0; u < b.part.row_cuts[k]; ++u)
                            for (std::size_t y = 0; y < a.part.col_cuts[j]; ++y)
                                for (std::size_t w = 0; w < b.part.col_cuts[l]; ++w)
                                    out.at(row_base + x * b.part.row_cuts[k] + u,
                                           col_base + y * b.part.col_cuts[l] + w) =
                                        a.m.at(a_roff[i] + x, a_coff[j] + y) *
                                        b.m.at(b_roff[k] + u, b_coff[l] + w);
                    col_base += bw;
                }
            row_base += bh;
        }
    return out;
}

}  // namespace reference

}  // namespace boxtimes
