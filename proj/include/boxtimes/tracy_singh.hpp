#pragma once

#include "boxtimes/partition.hpp"

namespace boxtimes {

// Hard ceiling on result dimensions of the power iteration (rows or cols).
inline constexpr std::size_t kDefaultDimCap = 10000;

// Tracy-Singh product: the block matrix whose (i,k),(j,l) block is
// A_ij (x) B_kl, blocks ordered with A's block index outer and B's inner.
CMatrix tracy_singh(const PartitionedMatrix& a, const PartitionedMatrix& b);

// Both factors under their canonical square-root partitions.
CMatrix tracy_singh_canonical(const CMatrix& a, const CMatrix& b);

// Block structure carried by tracy_singh(a, b): one block per (i,k) pair,
// sized a_block * b_block, b's index fastest.
BlockPartition induced_partition(const BlockPartition& a, const BlockPartition& b);

// Same product computed through commutation matrices instead of block
// assembly. For c of size n^2 x p^2 and cp of size m^2 x q^2 under
// canonical partitions:
//   c (ts) cp = (I_n (x) K(n,m) (x) I_m) (c (x) cp) (I_p (x) K(q,p) (x) I_q)
// with K as built by commutation_matrix.
CMatrix ts_via_commutation(const CMatrix& c, const CMatrix& cp);

// k-fold iterated square: power(c,1) = c, power(c,k) = let s = power(c,k-1)
// in s (ts) s, canonical partitions throughout. A d^2 x d^2 input yields a
// d^(2^k) x d^(2^k) matrix. Throws once a result dimension would exceed cap.
CMatrix boxtimes_power(const CMatrix& c, std::size_t k,
                       std::size_t cap = kDefaultDimCap);

namespace reference {
// Serial block-by-block assembly of the same product.
CMatrix tracy_singh(const PartitionedMatrix& a, const PartitionedMatrix& b);
}  // namespace reference

}  // namespace boxtimes
