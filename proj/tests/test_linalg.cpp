#include <doctest.h>

#include <boxtimes/cmatrix.hpp>
#include <boxtimes/linalg.hpp>

#include "helpers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

using namespace boxtimes;
using bxtest::random_invertible;
using bxtest::random_matrix;
using bxtest::random_unitary;

namespace {

CMatrix reconstruct(const SvdResult& s) {
    CMatrix sigma(s.singular.size(), s.singular.size());
    for (std::size_t i = 0; i < s.singular.size(); ++i)
        sigma.at(i, i) = Complex(s.singular[i], 0.0);
    return matmul(matmul(s.u, sigma), adjoint(s.v));
}

double orthonormality_residual(const CMatrix& q) {
    return max_abs_diff(matmul(adjoint(q), q), identity(q.cols));
}

}  // namespace

TEST_CASE("inverse inverts well-conditioned matrices") {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{5},
                          std::size_t{8}}) {
        CMatrix a = random_invertible(n);
        CMatrix ainv = inverse(a);
        CHECK(max_abs_diff(matmul(a, ainv), identity(n)) <= 1e-12);
        CHECK(max_abs_diff(matmul(ainv, a), identity(n)) <= 1e-12);
    }
}

TEST_CASE("inverse of a known 2x2") {
    CMatrix a(2, 2);
    a.at(0, 0) = 2.0;
    a.at(0, 1) = 1.0;
    a.at(1, 0) = 1.0;
    a.at(1, 1) = 1.0;
    CMatrix want(2, 2);
    want.at(0, 0) = 1.0;
    want.at(0, 1) = -1.0;
    want.at(1, 0) = -1.0;
    want.at(1, 1) = 2.0;
    CHECK(max_abs_diff(inverse(a), want) <= 1e-15);
}

TEST_CASE("inverse rejects bad input") {
    CHECK_THROWS_AS(inverse(random_matrix(2, 3)), std::invalid_argument);

    // rank-1 outer product
    CMatrix u = random_matrix(3, 1);
    CMatrix s = matmul(u, adjoint(u));
    CHECK_THROWS_WITH_AS(inverse(s), doctest::Contains("singular"),
                         std::invalid_argument);
}

TEST_CASE("svd reconstructs the input") {
    const std::vector<std::pair<std::size_t, std::size_t>> shapes = {
        {1, 1}, {3, 3}, {5, 3}, {3, 5}, {6, 6}};
    for (auto [r, c] : shapes) {
        CMatrix a = random_matrix(r, c);
        SvdResult s = svd(a);
        CHECK(s.singular.size() == std::min(r, c));
        CHECK(max_abs_diff(reconstruct(s), a) <= 1e-12);
        CHECK(orthonormality_residual(s.u) <= 1e-12);
        CHECK(orthonormality_residual(s.v) <= 1e-12);
        for (std::size_t i = 1; i < s.singular.size(); ++i)
            CHECK(s.singular[i] <= s.singular[i - 1]);
        for (double sv : s.singular) CHECK(sv >= 0.0);
    }
}

TEST_CASE("svd of a diagonal matrix recovers the diagonal magnitudes") {
    CMatrix a = diag({Complex(0.0, 3.0), Complex(-1.0, 0.0), Complex(0.5, 0.0)});
    std::vector<double> sv = singular_values(a);
    REQUIRE(sv.size() == 3);
    CHECK(sv[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sv[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sv[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("svd of a unitary is flat at one") {
    CMatrix q = random_unitary(5);
    for (double sv : singular_values(q))
        CHECK(sv == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svd handles rank deficiency") {
    // two identical columns next to a zero column
    CMatrix a(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
        a.at(r, 0) = Complex(double(r + 1), 0.0);
        a.at(r, 1) = Complex(double(r + 1), 0.0);
    }
    SvdResult s = svd(a);
    CHECK(s.singular[1] <= 1e-13);
    CHECK(s.singular[2] <= 1e-13);
    CHECK(max_abs_diff(reconstruct(s), a) <= 1e-13);
    CHECK(numeric_rank(s.singular, 1e-8) == 1);
}

TEST_CASE("numeric_rank thresholds relative to the largest value") {
    CHECK(numeric_rank({}, 1e-8) == 0);
    CHECK(numeric_rank({0.0, 0.0}, 1e-8) == 0);
    CHECK(numeric_rank({5.0, 1e-3, 1e-12}, 1e-8) == 2);
    CHECK(numeric_rank({5.0, 1e-3, 1e-12}, 1e-5) == 2);
    CHECK(numeric_rank({5.0, 1e-3, 1e-12}, 1e-1) == 1);
    // scale invariance
    CHECK(numeric_rank({5e-9, 1e-12, 1e-21}, 1e-8) == 2);
}
