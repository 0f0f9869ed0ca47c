#include "boxtimes/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace boxtimes {

CMatrix inverse(const CMatrix& a) {
    if (!a.is_square())
        throw std::invalid_argument("inverse: matrix is " + std::to_string(a.rows) +
                                    "x" + std::to_string(a.cols));
    const std::size_t n = a.rows;
    const double scale = max_abs(a);
    CMatrix w = a;
    CMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(w.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::abs(w.at(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best <= 1e-14 * scale || best == 0.0)
            throw std::invalid_argument("inverse: singular matrix, pivot " +
                                        std::to_string(best) + " at column " +
                                        std::to_string(col));
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(w.at(piv, c), w.at(col, c));
                std::swap(inv.at(piv, c), inv.at(col, c));
            }
        }
        const Complex p = w.at(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            w.at(col, c) /= p;
            inv.at(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex f = w.at(r, col);
            if (f == Complex(0.0)) continue;
            for (std::size_t c = 0; c < n; ++c) {
                w.at(r, c) -= f * w.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

namespace {

// One-sided Jacobi on the columns of w (rows >= cols): repeatedly applies
// 2x2 unitaries on column pairs until all pairs are orthogonal, tracking
// the accumulated right factor in v. Invariant: w0 * v == w.
void jacobi_orthogonalize(CMatrix& w, CMatrix& v) {
    const std::size_t n = w.cols, m = w.rows;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double worst = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                Complex apq = 0.0;
                for (std::size_t r = 0; r < m; ++r) {
                    app += std::norm(w.at(r, p));
                    aqq += std::norm(w.at(r, q));
                    apq += std::conj(w.at(r, p)) * w.at(r, q);
                }
                const double denom = std::sqrt(app * aqq);
                const double g = std::abs(apq);
                if (denom == 0.0 || g <= 1e-15 * denom) continue;
                worst = std::max(worst, g / denom);
                // Phase the q column so the inner product is real, then a
                // real Jacobi rotation zeroes it.
                const Complex phase = apq / g;  // e^{i arg(apq)}
                const double zeta = (aqq - app) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const Complex ph = std::conj(phase);
                for (std::size_t r = 0; r < m; ++r) {
                    const Complex up = w.at(r, p), uq = w.at(r, q);
                    w.at(r, p) = c * up - s * ph * uq;
                    w.at(r, q) = s * up + c * ph * uq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex vp = v.at(r, p), vq = v.at(r, q);
                    v.at(r, p) = c * vp - s * ph * vq;
                    v.at(r, q) = s * vp + c * ph * vq;
                }
            }
        if (worst <= 1e-14) return;
    }
}

}  // namespace

SvdResult svd(const CMatrix& a) {
    if (a.rows == 0 || a.cols == 0) throw std::invalid_argument("svd: empty matrix");
    if (a.rows < a.cols) {
        SvdResult t = svd(adjoint(a));
        return {t.v, t.singular, t.u};
    }
    CMatrix w = a;
    CMatrix v = identity(a.cols);
    jacobi_orthogonalize(w, v);

    const std::size_t n = a.cols;
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows; ++r) s += std::norm(w.at(r, j));
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out;
    out.u = CMatrix(a.rows, n);
    out.v = CMatrix(n, n);
    out.singular.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.singular[j] = sigma[src];
        if (sigma[src] > 0.0)
            for (std::size_t r = 0; r < a.rows; ++r)
                out.u.at(r, j) = w.at(r, src) / sigma[src];
        for (std::size_t r = 0; r < n; ++r) out.v.at(r, j) = v.at(r, src);
    }
    return out;
}

std::vector<double> singular_values(const CMatrix& a) { return svd(a).singular; }

std::size_t numeric_rank(const std::vector<double>& singular, double rel_tol) {
    double top = 0.0;
    for (double s : singular) top = std::max(top, s);
    if (top == 0.0) return 0;
    std::size_t r = 0;
    for (double s : singular)
        if (s > rel_tol * top) ++r;
    return r;
}

}  // namespace boxtimes
