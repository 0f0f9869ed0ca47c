// Generates the enhanced-pair fixture corpus. Each pair (c, mu) must pass
// check_enhanced_pair at 1e-10 before it is written; the tensor-diag family
// is found by a least-squares search over diagonal parameters, the rest by
// closed-form constructions, and half the corpus is conjugated by fixed
// random unitaries so the files are not all diagonal.

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "boxtimes/enhanced.hpp"
#include "boxtimes/io.hpp"
#include "boxtimes/linalg.hpp"
#include "boxtimes/tracy_singh.hpp"

namespace bx = boxtimes;
using bx::CMatrix;
using bx::Complex;

namespace {

std::mt19937_64 rng(0xB0857135ULL);

CMatrix haar_unitary(std::size_t d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix m(d, d);
    for (auto& z : m.entries) z = Complex(gauss(rng), gauss(rng));
    // modified Gram-Schmidt, twice for orthogonality at machine precision
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex dot = 0.0;
                for (std::size_t r = 0; r < d; ++r)
                    dot += std::conj(m.at(r, i)) * m.at(r, j);
                for (std::size_t r = 0; r < d; ++r) m.at(r, j) -= dot * m.at(r, i);
            }
            double nrm = 0.0;
            for (std::size_t r = 0; r < d; ++r) nrm += std::norm(m.at(r, j));
            nrm = std::sqrt(nrm);
            for (std::size_t r = 0; r < d; ++r) m.at(r, j) /= nrm;
        }
    return m;
}

// Stacked real residuals of the three enhancement conditions.
std::vector<double> pair_residual_vector(const CMatrix& c, const CMatrix& mu) {
    const std::size_t d = mu.rows;
    const CMatrix mm = bx::kron(mu, mu);
    const CMatrix cinv = bx::inverse(c);
    std::vector<double> r;
    auto push = [&](const CMatrix& m) {
        for (const Complex& z : m.entries) {
            r.push_back(z.real());
            r.push_back(z.imag());
        }
    };
    push(c * mm - mm * c);
    push(bx::partial_trace_second(c * mm, d, d) - mu);
    push(bx::partial_trace_second(cinv * mm, d, d) - mu);
    return r;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Plain Gauss-Newton with a numeric Jacobian; good enough for a handful of
// well-seeded parameters.
bool least_squares(std::vector<double>& x,
                   const std::function<std::vector<double>(const std::vector<double>&)>& f) {
    const std::size_t p = x.size();
    for (int iter = 0; iter < 60; ++iter) {
        const std::vector<double> r = f(x);
        if (max_abs(r) < 1e-13) return true;
        const std::size_t m = r.size();
        const double h = 1e-7;
        std::vector<std::vector<double>> jac(m, std::vector<double>(p));
        for (std::size_t j = 0; j < p; ++j) {
            std::vector<double> xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const std::vector<double> rp = f(xp), rm = f(xm);
            for (std::size_t i = 0; i < m; ++i) jac[i][j] = (rp[i] - rm[i]) / (2 * h);
        }
        // normal equations, solved with the library's (complex) inverse
        CMatrix jtj(p, p);
        std::vector<double> jtr(p, 0.0);
        for (std::size_t a = 0; a < p; ++a) {
            for (std::size_t b = 0; b < p; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < m; ++i) s += jac[i][a] * jac[i][b];
                jtj.at(a, b) = s;
            }
            for (std::size_t i = 0; i < m; ++i) jtr[a] += jac[i][a] * r[i];
        }
        for (std::size_t a = 0; a < p; ++a) jtj.at(a, a) += 1e-12;
        const CMatrix inv = bx::inverse(jtj);
        for (std::size_t a = 0; a < p; ++a) {
            double step = 0.0;
            for (std::size_t b = 0; b < p; ++b) step += inv.at(a, b).real() * jtr[b];
            x[a] -= step;
        }
    }
    return max_abs(f(x)) < 1e-13;
}

CMatrix diag2(double a, double b) { return bx::diag({Complex(a), Complex(b)}); }

CMatrix conj_by(const CMatrix& w, const CMatrix& m) {
    return w * m * bx::adjoint(w);
}

struct Fixture {
    std::string name;
    std::string family;  // "tensor" or "swap"
    CMatrix gate;
    CMatrix mu;
};

// c = s (I (x) diag(b1, b2)), mu = diag(u1, u2): both trace conditions
// reduce to s (b1 u1 + b2 u2) = 1 and (u1/b1 + u2/b2)(b1 u1 + b2 u2) = 1.
// Seed u2 from the quadratic those imply, then polish every parameter by
// least squares on the full residual vector.
Fixture tensor_diag_fixture() {
    std::uniform_real_distribution<double> uni(0.5, 1.5);
    for (int attempt = 0; attempt < 50; ++attempt) {
        const double b1 = uni(rng), b2 = b1 + uni(rng), u1 = 0.5 * uni(rng);
        const double bsum = b1 / b2 + b2 / b1;
        const double disc = u1 * u1 * bsum * bsum - 4.0 * (u1 * u1 - 1.0);
        if (disc <= 0) continue;
        const double u2 = (-u1 * bsum + std::sqrt(disc)) / 2.0;
        const double s = 1.0 / (b1 * u1 + b2 * u2);

        std::vector<double> x = {b1, b2, u1, u2, s};
        auto build = [](const std::vector<double>& v) {
            const CMatrix c = Complex(v[4]) * bx::kron(bx::identity(2), diag2(v[0], v[1]));
            return std::pair<CMatrix, CMatrix>(c, diag2(v[2], v[3]));
        };
        auto f = [&](const std::vector<double>& v) {
            auto [c, mu] = build(v);
            return pair_residual_vector(c, mu);
        };
        if (!least_squares(x, f)) continue;
        auto [c, mu] = build(x);
        return {"tensor-diag", "tensor", c, mu};
    }
    throw std::runtime_error("tensor-diag search failed");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string out = argc > 1 ? argv[1] : "tests/fixtures/enhanced_pairs.json";

    std::vector<Fixture> fixtures;

    // identity gate with any trace-1 enhancer
    fixtures.push_back({"identity-pair", "tensor", bx::identity(4), diag2(0.25, 0.75)});

    const Fixture td = tensor_diag_fixture();
    fixtures.push_back(td);

    const CMatrix w1 = haar_unitary(2);
    fixtures.push_back({"tensor-diag-conj", "tensor",
                        conj_by(bx::kron(w1, w1), td.gate), conj_by(w1, td.mu)});

    // c = diag(a1,a2) (x) diag(b1,b2), mu = diag(1, 0): conditions collapse
    // to a1 b1 = 1 with a2, b2 free.
    {
        std::uniform_real_distribution<double> uni(0.5, 2.0);
        const double a1 = uni(rng), a2 = uni(rng), b2 = uni(rng);
        const CMatrix c = bx::kron(diag2(a1, a2), diag2(1.0 / a1, b2));
        fixtures.push_back({"tensor-singular-mu", "tensor", c, diag2(1.0, 0.0)});
        const CMatrix w2 = haar_unitary(2);
        fixtures.push_back({"tensor-singular-conj", "tensor",
                            conj_by(bx::kron(w2, w2), c), conj_by(w2, diag2(1.0, 0.0))});
    }

    const CMatrix swp = bx::builtin_gate("swap").matrix;

    fixtures.push_back({"swap-plain", "swap", swp, bx::identity(2)});

    // (A (x) A^-1) P is an involution with partial trace A A^-1 = I.
    {
        CMatrix a = haar_unitary(2);
        a.at(0, 0) *= 1.3;  // keep it away from the unitary special case
        a.at(1, 1) *= 0.8;
        fixtures.push_back({"swap-conj", "swap",
                            bx::kron(a, bx::inverse(a)) * swp, bx::identity(2)});
    }

    // (diag(a) (x) diag(b)) P with mu = diag(1, -1) and a_i b_i = mu_ii.
    fixtures.push_back({"swap-diag", "swap",
                        bx::kron(diag2(2.0, 3.0), diag2(0.5, -1.0 / 3.0)) * swp,
                        diag2(1.0, -1.0)});

    nlohmann::json arr = nlohmann::json::array();
    const bx::Tolerance accept(1e-10);
    for (const Fixture& f : fixtures) {
        bx::EnhancedPair pair(bx::Gate(f.gate, 2, 2), f.mu);
        const bx::PairReport rep = bx::check_enhanced_pair(pair, accept);
        const bx::GateClass cls = bx::classify_entangling(pair.c);
        const char* want = f.family == "tensor" ? "primitive-tensor" : "primitive-swap";
        if (!rep.accepted || std::string(bx::to_string(cls)) != want) {
            std::cerr << f.name << ": rejected (residuals " << rep.commutant << ", "
                      << rep.trace_plus << ", " << rep.trace_minus << "; class "
                      << bx::to_string(cls) << ")\n";
            return 1;
        }
        arr.push_back({{"name", f.name},
                       {"family", f.family},
                       {"gate", bx::io::gate_to_json(pair.c)},
                       {"enhancer", bx::io::matrix_to_json(f.mu)}});
        std::cout << f.name << ": accepted (worst residual "
                  << std::max({rep.commutant, rep.trace_plus, rep.trace_minus})
                  << ", " << want << ")\n";
    }
    bx::io::write_json_file(out, nlohmann::json{{"pairs", arr}});
    std::cout << "wrote " << arr.size() << " pairs to " << out << "\n";
    return 0;
}
