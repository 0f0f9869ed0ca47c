#pragma once

#include <vector>

#include "boxtimes/cmatrix.hpp"

namespace boxtimes {

// Inverse by Gauss-Jordan elimination with partial pivoting.
// Throws std::invalid_argument on non-square or numerically singular input.
CMatrix inverse(const CMatrix& a);

struct SvdResult {
    CMatrix u;                      // rows x k, orthonormal columns
    std::vector<double> singular;   // k values, descending, k = min(rows, cols)
    CMatrix v;                      // cols x k, orthonormal columns
};

// One-sided Jacobi SVD: a = u diag(singular) v^H. Intended for the small
// dense matrices this library works with.
SvdResult svd(const CMatrix& a);

std::vector<double> singular_values(const CMatrix& a);

// Count of singular values above rel_tol * sigma_max.
std::size_t numeric_rank(const std::vector<double>& singular, double rel_tol);

}  // namespace boxtimes
