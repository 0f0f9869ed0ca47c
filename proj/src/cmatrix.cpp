#include "boxtimes/cmatrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "boxtimes/kernels.hpp"

namespace boxtimes {

namespace {

std::string shape_str(const CMatrix& m) {
    return std::to_string(m.rows) + "x" + std::to_string(m.cols);
}

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

CMatrix::CMatrix(std::size_t r, std::size_t c, std::vector<Complex> e)
    : rows(r), cols(c), entries(std::move(e)) {
    if (entries.size() != rows * cols)
        fail("CMatrix: " + std::to_string(entries.size()) + " entries for shape " +
             shape_str(*this));
}

CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix diag(const std::vector<Complex>& d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
}

void require_finite(const CMatrix& m, const char* what) {
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        const Complex& z = m.entries[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            fail(std::string(what) + ": non-finite entry at flat index " +
                 std::to_string(i));
    }
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols != b.rows)
        fail("matmul: a is " + shape_str(a) + ", b is " + shape_str(b));
    CMatrix out(a.rows, b.cols);
    kernels::matmul_into(a, b, out);
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    if (a.rows == 0 || b.rows == 0) fail("kron: empty operand");
    CMatrix out(a.rows * b.rows, a.cols * b.cols);
    kernels::kron_into(a, b, out);
    return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CMatrix operator*(const Complex& s, const CMatrix& a) {
    CMatrix out = a;
    for (auto& z : out.entries) z *= s;
    return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        fail("add: a is " + shape_str(a) + ", b is " + shape_str(b));
    CMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += b.entries[i];
    return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        fail("sub: a is " + shape_str(a) + ", b is " + shape_str(b));
    CMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] -= b.entries[i];
    return out;
}

CMatrix transpose(const CMatrix& a) {
    CMatrix out(a.cols, a.rows);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) out.at(c, r) = a.at(r, c);
    return out;
}

CMatrix conjugate(const CMatrix& a) {
    CMatrix out = a;
    for (auto& z : out.entries) z = std::conj(z);
    return out;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix out(a.cols, a.rows);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) out.at(c, r) = std::conj(a.at(r, c));
    return out;
}

Complex trace(const CMatrix& a) {
    if (!a.is_square()) fail("trace: matrix is " + shape_str(a));
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) t += a.at(i, i);
    return t;
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.entries) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        fail("max_abs_diff: a is " + shape_str(a) + ", b is " + shape_str(b));
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

bool approx_eq(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    return max_abs_diff(a, b) <= tol.eps;
}

CMatrix commutation_matrix(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0)
        fail("commutation_matrix: zero dimension " + std::to_string(m) + "," +
             std::to_string(n));
    CMatrix k(m * n, m * n);
    // e_i (x) e_j sits at column i*n + j and maps to row j*m + i.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) k.at(j * m + i, i * n + j) = 1.0;
    return k;
}

CMatrix partial_trace_second(const CMatrix& a, std::size_t d1, std::size_t d2) {
    if (!a.is_square()) fail("partial_trace_second: matrix is " + shape_str(a));
    if (a.rows != d1 * d2)
        fail("partial_trace_second: matrix is " + shape_str(a) + ", expected " +
             std::to_string(d1 * d2) + " = " + std::to_string(d1) + "*" +
             std::to_string(d2));
    CMatrix out(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t k = 0; k < d1; ++k) {
            Complex s = 0.0;
            for (std::size_t j = 0; j < d2; ++j) s += a.at(i * d2 + j, k * d2 + j);
            out.at(i, k) = s;
        }
    return out;
}

CMatrix middle_swap(std::size_t d) {
    if (d == 0) fail("middle_swap: zero dimension");
    const std::size_t dim = d * d * d * d;
    CMatrix out(dim, dim);
    // (a, b, c, e) -> (a, c, b, e) on column indices.
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t e = 0; e < d; ++e) {
                    std::size_t col = ((a * d + b) * d + c) * d + e;
                    std::size_t row = ((a * d + c) * d + b) * d + e;
                    out.at(row, col) = 1.0;
                }
    return out;
}

}  // namespace boxtimes
