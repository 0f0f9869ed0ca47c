#include "boxtimes/partition.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace boxtimes {

namespace {

void check_cuts(const std::vector<std::size_t>& cuts, std::size_t total,
                const char* which) {
    if (cuts.empty())
        throw std::invalid_argument(std::string("partition: empty ") + which);
    std::size_t sum = 0;
    for (std::size_t c : cuts) {
        if (c == 0)
            throw std::invalid_argument(std::string("partition: zero-size block in ") +
                                        which);
        sum += c;
    }
    if (sum != total)
        throw std::invalid_argument(std::string("partition: ") + which + " sum to " +
                                    std::to_string(sum) + ", matrix has " +
                                    std::to_string(total));
}

std::size_t exact_sqrt(std::size_t n, const char* which) {
    std::size_t r = static_cast<std::size_t>(std::llround(std::sqrt(double(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r != n)
        throw std::invalid_argument("canonical_partition: " + std::string(which) +
                                    " dimension " + std::to_string(n) +
                                    " is not a perfect square");
    return r;
}

}  // namespace

void check_partition(const BlockPartition& p, std::size_t rows, std::size_t cols) {
    check_cuts(p.row_cuts, rows, "row_cuts");
    check_cuts(p.col_cuts, cols, "col_cuts");
}

std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& cuts) {
    std::vector<std::size_t> off(cuts.size());
    std::size_t acc = 0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        off[i] = acc;
        acc += cuts[i];
    }
    return off;
}

PartitionedMatrix::PartitionedMatrix(CMatrix mat, BlockPartition p)
    : m(std::move(mat)), part(std::move(p)) {
    check_partition(part, m.rows, m.cols);
}

BlockPartition canonical_partition(std::size_t rows, std::size_t cols) {
    const std::size_t n = exact_sqrt(rows, "row");
    const std::size_t p = exact_sqrt(cols, "column");
    BlockPartition bp;
    bp.row_cuts.assign(n, n);
    bp.col_cuts.assign(p, p);
    return bp;
}

PartitionedMatrix with_canonical_partition(CMatrix m) {
    BlockPartition bp = canonical_partition(m.rows, m.cols);
    return PartitionedMatrix(std::move(m), std::move(bp));
}

}  // namespace boxtimes
