#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace boxtimes {

using Complex = std::complex<double>;

// Absolute entrywise bound used by every verification predicate.
struct Tolerance {
    double eps = 1e-10;
    Tolerance() = default;
    explicit Tolerance(double e) : eps(e) {}
};

inline constexpr double kDefaultTol = 1e-10;
// Default for enhanced-pair acceptance; those residuals consume a matrix inverse.
inline constexpr double kDefaultPairTol = 1e-9;

// Dense complex matrix, row-major. Treated as an immutable value by every
// operation below: inputs are never modified, results are fresh matrices.
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> entries;  // rows*cols, entry (r,c) at r*cols + c

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
    CMatrix(std::size_t r, std::size_t c, std::vector<Complex> e);

    Complex& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

    bool is_square() const { return rows == cols; }
};

CMatrix identity(std::size_t n);
CMatrix diag(const std::vector<Complex>& d);

// Throws if any entry is NaN or infinite.
void require_finite(const CMatrix& m, const char* what);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const Complex& s, const CMatrix& a);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

CMatrix transpose(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);
CMatrix adjoint(const CMatrix& a);
Complex trace(const CMatrix& a);

double max_abs(const CMatrix& a);
// max entrywise |a - b|; shapes must match.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool approx_eq(const CMatrix& a, const CMatrix& b, const Tolerance& tol);

// Commutation matrix K of size mn x mn: K (e_i (x) e_j) = e_j (x) e_i
// for e_i in C^m, e_j in C^n. Satisfies K_{mn} vec(X) = vec(X^T) for
// n x m matrices X under column-stacking vec.
CMatrix commutation_matrix(std::size_t m, std::size_t n);

// Trace out the second tensor factor of a d1*d2 x d1*d2 matrix:
// out(i,k) = sum_j a((i,j),(k,j)).
CMatrix partial_trace_second(const CMatrix& a, std::size_t d1, std::size_t d2);

// I_d (x) P (x) I_d on (C^d)^{(x)4}, where P swaps the two middle factors.
CMatrix middle_swap(std::size_t d);

}  // namespace boxtimes
