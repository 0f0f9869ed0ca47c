#pragma once

#include <boxtimes/cmatrix.hpp>
#include <boxtimes/gate.hpp>
#include <boxtimes/io.hpp>
#include <boxtimes/linalg.hpp>

#include <json.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bx = boxtimes;

namespace bxtest {

using bx::CMatrix;
using bx::Complex;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed5eedULL);
    return gen;
}

inline CMatrix random_matrix(std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> dist(0.0, 1.0);
    CMatrix m(rows, cols);
    for (auto& e : m.entries) e = Complex(dist(rng()), dist(rng()));
    return m;
}

// Ginibre sample followed by modified Gram-Schmidt; columns end up orthonormal.
inline CMatrix random_unitary(std::size_t n) {
    CMatrix a = random_matrix(n, n);
    CMatrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Complex> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = a.at(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                Complex dot(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i)
                    dot += std::conj(q.at(i, p)) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q.at(i, p);
            }
        }
        double norm = 0.0;
        for (const auto& e : v) norm += std::norm(e);
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw std::runtime_error("degenerate Ginibre sample");
        for (std::size_t i = 0; i < n; ++i) q.at(i, j) = v[i] / norm;
    }
    return q;
}

// Shifting the spectrum away from zero keeps the inverse well conditioned.
inline CMatrix random_invertible(std::size_t n) {
    CMatrix m = random_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) += Complex(4.0, 0.0);
    return m;
}

// Diagonal-type Yang-Baxter solution: c(e_i (x) e_j) = q_ij e_j (x) e_i
// with unimodular phases q. Both sides of the braid relation act on a basis
// vector by the same three phases, so the relation holds for every q, and
// the gate is unitary and of primitive-swap type for generic phases.
// (Strictly diagonal invertible solutions of the braid-form equation reduce
// to scalar multiples of the identity, so this is the nontrivial family.)
inline bx::Gate random_diagonal_ybe_gate(std::size_t d) {
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    CMatrix m(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double t = angle(rng());
            m.at(j * d + i, i * d + j) = Complex(std::cos(t), std::sin(t));
        }
    return bx::Gate(m, d, 2, "random-diagonal-ybe");
}

// Plain triple loop, kept independent of the library's kernels so kernel
// bugs cannot cancel in tests that compare against it.
inline CMatrix oracle_matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("oracle_matmul shape");
    CMatrix out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t k = 0; k < a.cols; ++k)
                acc += a.at(i, k) * b.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

inline CMatrix oracle_kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    out.at(i * b.rows + k, j * b.cols + l) =
                        a.at(i, j) * b.at(k, l);
    return out;
}

// Schmidt rank of a bipartite vector: rank of its d x d unfolding.
inline std::size_t vector_schmidt_rank(const std::vector<Complex>& w,
                                       std::size_t d) {
    CMatrix unfold(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) unfold.at(i, j) = w[i * d + j];
    return bx::numeric_rank(bx::singular_values(unfold), 1e-8);
}

inline std::vector<Complex> apply_matrix(const CMatrix& g,
                                         const std::vector<Complex>& x) {
    std::vector<Complex> y(g.rows, Complex(0.0, 0.0));
    for (std::size_t r = 0; r < g.rows; ++r)
        for (std::size_t c = 0; c < g.cols; ++c) y[r] += g.at(r, c) * x[c];
    return y;
}

inline std::vector<Complex> product_state(const std::vector<Complex>& u,
                                          const std::vector<Complex>& v) {
    std::vector<Complex> out;
    out.reserve(u.size() * v.size());
    for (const auto& a : u)
        for (const auto& b : v) out.push_back(a * b);
    return out;
}

// Independent classification oracle built on the defining geometric property:
// a primitive gate maps every product state to a product state, and the two
// primitive types differ in which input factor steers the first output
// factor. Probes: basis products plus two-term superpositions on both sides.
inline bx::GateClass oracle_classify(const bx::Gate& g) {
    const std::size_t d = g.d;
    std::vector<std::vector<Complex>> locals;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Complex> e(d, Complex(0.0, 0.0));
        e[i] = 1.0;
        locals.push_back(e);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = i + 1; k < d; ++k) {
            std::vector<Complex> e(d, Complex(0.0, 0.0));
            e[i] = M_SQRT1_2;
            e[k] = M_SQRT1_2;
            locals.push_back(e);
        }

    for (const auto& u : locals)
        for (const auto& v : locals)
            if (vector_schmidt_rank(apply_matrix(g.matrix, product_state(u, v)), d) > 1)
                return bx::GateClass::entangling;

    // Fix a generic left factor and vary the right one over the basis. For a
    // tensor-form gate the first output factor cannot move; for a swap-form
    // gate it must, because an invertible map sends independent vectors to
    // independent vectors.
    std::vector<Complex> u0(d);
    for (std::size_t i = 0; i < d; ++i)
        u0[i] = Complex(1.0 + 0.1 * double(i), 0.05 * double(i));

    auto first_factor = [&](const std::vector<Complex>& v) {
        std::vector<Complex> w = apply_matrix(g.matrix, product_state(u0, v));
        CMatrix unfold(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) unfold.at(i, j) = w[i * d + j];
        bx::SvdResult s = bx::svd(unfold);
        std::vector<Complex> f(d);
        for (std::size_t i = 0; i < d; ++i) f[i] = s.u.at(i, 0);
        return f;
    };

    std::vector<Complex> fa = first_factor(locals[0]);
    std::vector<Complex> fb = first_factor(locals[1]);
    Complex overlap(0.0, 0.0);
    for (std::size_t i = 0; i < d; ++i) overlap += std::conj(fa[i]) * fb[i];
    return std::abs(overlap) > 1.0 - 1e-6 ? bx::GateClass::primitive_tensor
                                          : bx::GateClass::primitive_swap;
}

struct CorpusPair {
    std::string name;
    std::string family;
    bx::Gate gate;
    CMatrix enhancer;
};

inline std::string fixture_dir() {
#ifdef BOXTIMES_FIXTURE_DIR
    return BOXTIMES_FIXTURE_DIR;
#else
    return "tests/fixtures";
#endif
}

inline const std::vector<CorpusPair>& corpus() {
    static const std::vector<CorpusPair> pairs = [] {
        nlohmann::json doc =
            bx::io::read_json_file(fixture_dir() + "/enhanced_pairs.json");
        std::vector<CorpusPair> out;
        for (const auto& item : doc.at("pairs")) {
            std::string name = item.at("name").get<std::string>();
            out.push_back(CorpusPair{
                name,
                item.at("family").get<std::string>(),
                bx::io::gate_from_json(item.at("gate"), name),
                bx::io::matrix_from_json(item.at("enhancer"), name),
            });
        }
        if (out.empty()) throw std::runtime_error("empty fixture corpus");
        return out;
    }();
    return pairs;
}

}  // namespace bxtest
