#pragma once

#include <cstddef>
#include <vector>

#include "boxtimes/cmatrix.hpp"

namespace boxtimes {

// Contiguous block partition of row and column index ranges. Cut lists hold
// block sizes, all positive; their sums must equal the partitioned matrix's
// dimensions.
struct BlockPartition {
    std::vector<std::size_t> row_cuts;
    std::vector<std::size_t> col_cuts;
};

// Validates that the cuts are positive and sum to the matrix dimensions.
void check_partition(const BlockPartition& p, std::size_t rows, std::size_t cols);

// Row/col offsets of each block (prefix sums, one entry per block).
std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& cuts);

// A matrix together with a partition it has been checked against.
struct PartitionedMatrix {
    CMatrix m;
    BlockPartition part;

    PartitionedMatrix(CMatrix mat, BlockPartition p);
};

// For an n^2 x p^2 matrix: n row blocks of height n, p column blocks of
// width p. Throws if a dimension is not a perfect square, naming it.
BlockPartition canonical_partition(std::size_t rows, std::size_t cols);

PartitionedMatrix with_canonical_partition(CMatrix m);

}  // namespace boxtimes
