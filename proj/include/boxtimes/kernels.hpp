#pragma once

#include "boxtimes/cmatrix.hpp"

namespace boxtimes {

// Parallel kernels. Each writes a preallocated output and parallelises over
// output entries only, so results do not depend on the thread count.
namespace kernels {

// Work threshold below which the kernels stay serial.
inline constexpr std::size_t kParallelGrain = 1u << 15;

// out must be a.rows x b.cols, zero-initialised by the caller.
void matmul_into(const CMatrix& a, const CMatrix& b, CMatrix& out);

// out must be a.rows*b.rows x a.cols*b.cols.
void kron_into(const CMatrix& a, const CMatrix& b, CMatrix& out);

// Right-multiply m by g placed on adjacent tensor slots (slot, slot+1) of
// n factors of local dimension d, without forming the embedded matrix:
//   out(r, (pre,loc,post)) = sum_{loc'} m(r, (pre,loc',post)) g(loc', loc).
// m must have d^n columns; g must be d^2 x d^2; out same shape as m.
void apply_two_site_right(const CMatrix& m, const CMatrix& g,
                          std::size_t slot, std::size_t n, std::size_t d,
                          CMatrix& out);

}  // namespace kernels

// Serial single-loop-nest implementations kept as comparison baselines for
// the parallel kernels.
namespace reference {

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace reference

}  // namespace boxtimes
