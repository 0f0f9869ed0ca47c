#include "boxtimes/kernels.hpp"

#include <cassert>
#include <cstdint>

namespace boxtimes {

namespace kernels {

void matmul_into(const CMatrix& a, const CMatrix& b, CMatrix& out) {
    assert(a.cols == b.rows && out.rows == a.rows && out.cols == b.cols);
    const std::int64_t n = static_cast<std::int64_t>(a.rows);
    const std::size_t inner = a.cols, width = b.cols;
    const bool par = a.rows * width * inner >= kParallelGrain;
    // i-k-j order: row i of out accumulates scaled rows of b; the k-sum for
    // each entry runs in ascending order on every path, so the parallel and
    // serial schedules produce the same floating-point result.
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t i = 0; i < n; ++i) {
        Complex* orow = out.entries.data() + static_cast<std::size_t>(i) * width;
        const Complex* arow = a.entries.data() + static_cast<std::size_t>(i) * inner;
        for (std::size_t k = 0; k < inner; ++k) {
            const Complex aik = arow[k];
            if (aik == Complex(0.0)) continue;
            const Complex* brow = b.entries.data() + k * width;
            for (std::size_t j = 0; j < width; ++j) orow[j] += aik * brow[j];
        }
    }
}

void kron_into(const CMatrix& a, const CMatrix& b, CMatrix& out) {
    assert(out.rows == a.rows * b.rows && out.cols == a.cols * b.cols);
    const std::int64_t nrows = static_cast<std::int64_t>(out.rows);
    const bool par = out.entries.size() >= kParallelGrain;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t r = 0; r < nrows; ++r) {
        const std::size_t ar = static_cast<std::size_t>(r) / b.rows;
        const std::size_t br = static_cast<std::size_t>(r) % b.rows;
        Complex* orow = out.entries.data() + static_cast<std::size_t>(r) * out.cols;
        const Complex* brow = b.entries.data() + br * b.cols;
        for (std::size_t ac = 0; ac < a.cols; ++ac) {
            const Complex av = a.at(ar, ac);
            Complex* dst = orow + ac * b.cols;
            for (std::size_t bc = 0; bc < b.cols; ++bc) dst[bc] = av * brow[bc];
        }
    }
}

void apply_two_site_right(const CMatrix& m, const CMatrix& g, std::size_t slot,
                          std::size_t n, std::size_t d, CMatrix& out) {
    const std::size_t d2 = d * d;
    assert(g.rows == d2 && g.cols == d2 && slot + 2 <= n);
    std::size_t post = 1;
    for (std::size_t i = slot + 2; i < n; ++i) post *= d;
    std::size_t pre = m.cols / (d2 * post);
    assert(pre * d2 * post == m.cols && out.rows == m.rows && out.cols == m.cols);

    const std::int64_t nrows = static_cast<std::int64_t>(m.rows);
    const bool par = m.entries.size() * d2 >= kParallelGrain;
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t r = 0; r < nrows; ++r) {
        const Complex* mrow = m.entries.data() + static_cast<std::size_t>(r) * m.cols;
        Complex* orow = out.entries.data() + static_cast<std::size_t>(r) * m.cols;
        for (std::size_t p = 0; p < pre; ++p)
            for (std::size_t q = 0; q < post; ++q) {
                const std::size_t base = p * d2 * post + q;
                for (std::size_t loc = 0; loc < d2; ++loc) {
                    Complex s = 0.0;
                    for (std::size_t lp = 0; lp < d2; ++lp)
                        s += mrow[base + lp * post] * g.at(lp, loc);
                    orow[base + loc * post] = s;
                }
            }
    }
}

}  // namespace kernels

namespace reference {

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Complex aik = a.at(i, k);
            for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t ar = 0; ar < a.rows; ++ar)
        for (std::size_t ac = 0; ac < a.cols; ++ac) {
            const Complex av = a.at(ar, ac);
            for (std::size_t br = 0; br < b.rows; ++br)
                for (std::size_t bc = 0; bc < b.cols; ++bc)
                    out.at(ar * b.rows + br, ac * b.cols + bc) = av * b.at(br, bc);
        }
    return out;
}

}  // namespace reference

}  // namespace boxtimes
