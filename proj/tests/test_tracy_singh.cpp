#include <doctest.h>

#include <boxtimes/cmatrix.hpp>
#include <boxtimes/gate.hpp>
#include <boxtimes/linalg.hpp>
#include <boxtimes/partition.hpp>
#include <boxtimes/tracy_singh.hpp>

#include "helpers.hpp"

#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

using namespace boxtimes;
using bxtest::random_invertible;
using bxtest::random_matrix;
using bxtest::rng;

namespace {

// Random composition of n into positive parts.
std::vector<std::size_t> random_cuts(std::size_t n) {
    std::vector<std::size_t> cuts;
    std::uniform_int_distribution<std::size_t> part(1, 3);
    while (n > 0) {
        std::size_t p = std::min(part(rng()), n);
        cuts.push_back(p);
        n -= p;
    }
    return cuts;
}

PartitionedMatrix random_partitioned(std::size_t rows, std::size_t cols) {
    return PartitionedMatrix(random_matrix(rows, cols),
                             BlockPartition{random_cuts(rows), random_cuts(cols)});
}

BlockPartition single_block(std::size_t rows, std::size_t cols) {
    return BlockPartition{{rows}, {cols}};
}

BlockPartition scattered(std::size_t rows, std::size_t cols) {
    return BlockPartition{std::vector<std::size_t>(rows, 1),
                          std::vector<std::size_t>(cols, 1)};
}

BlockPartition transposed(const BlockPartition& p) {
    return BlockPartition{p.col_cuts, p.row_cuts};
}

}  // namespace

TEST_CASE("canonical partition takes square roots") {
    BlockPartition p = canonical_partition(4, 4);
    CHECK(p.row_cuts == std::vector<std::size_t>{2, 2});
    CHECK(p.col_cuts == std::vector<std::size_t>{2, 2});

    p = canonical_partition(9, 4);
    CHECK(p.row_cuts == std::vector<std::size_t>{3, 3, 3});
    CHECK(p.col_cuts == std::vector<std::size_t>{2, 2});

    p = canonical_partition(1, 1);
    CHECK(p.row_cuts == std::vector<std::size_t>{1});

    CHECK_THROWS_WITH_AS(canonical_partition(6, 4), doctest::Contains("6"),
                         std::invalid_argument);
    CHECK_THROWS_AS(canonical_partition(4, 10), std::invalid_argument);
}

TEST_CASE("partition validation") {
    CHECK_NOTHROW(check_partition(BlockPartition{{2, 2}, {1, 3}}, 4, 4));
    CHECK_THROWS_AS(check_partition(BlockPartition{{2, 2}, {1, 2}}, 4, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_partition(BlockPartition{{2, 0, 2}, {4}}, 4, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_partition(BlockPartition{{}, {4}}, 4, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        PartitionedMatrix(random_matrix(4, 4), BlockPartition{{3}, {4}}),
        std::invalid_argument);

    CHECK(block_offsets({2, 1, 3}) == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("single-block partitions reduce to the Kronecker product") {
    CMatrix a = random_matrix(3, 2), b = random_matrix(2, 4);
    CMatrix ts = tracy_singh(PartitionedMatrix(a, single_block(3, 2)),
                             PartitionedMatrix(b, single_block(2, 4)));
    CHECK(max_abs_diff(ts, kron(a, b)) == 0.0);
}

TEST_CASE("fully scattered partitions also reduce to the Kronecker product") {
    CMatrix a = random_matrix(3, 2), b = random_matrix(2, 4);
    CMatrix ts = tracy_singh(PartitionedMatrix(a, scattered(3, 2)),
                             PartitionedMatrix(b, scattered(2, 4)));
    CHECK(max_abs_diff(ts, kron(a, b)) == 0.0);
}

TEST_CASE("block ordering: left factor single block, right scattered") {
    // With a as one block, the result's blocks are indexed by b's entries,
    // so the product flips to b (x) a. This pins the outer/inner order.
    CMatrix a = random_matrix(2, 3), b = random_matrix(3, 2);
    CMatrix ts = tracy_singh(PartitionedMatrix(a, single_block(2, 3)),
                             PartitionedMatrix(b, scattered(3, 2)));
    CHECK(max_abs_diff(ts, kron(b, a)) == 0.0);
}

TEST_CASE("parallel product equals serial reference exactly") {
    for (int trial = 0; trial < 10; ++trial) {
        PartitionedMatrix a = random_partitioned(5, 4);
        PartitionedMatrix b = random_partitioned(3, 6);
        CHECK(max_abs_diff(tracy_singh(a, b), reference::tracy_singh(a, b)) ==
              0.0);
    }
}

TEST_CASE("induced partition crosses the factors, right factor fastest") {
    BlockPartition a{{2, 1}, {3}};
    BlockPartition b{{1, 2}, {2, 2}};
    BlockPartition ind = induced_partition(a, b);
    CHECK(ind.row_cuts == std::vector<std::size_t>{2, 4, 1, 2});
    CHECK(ind.col_cuts == std::vector<std::size_t>{6, 6});

    PartitionedMatrix pa(random_matrix(3, 3), a);
    PartitionedMatrix pb(random_matrix(3, 4), b);
    CMatrix ts = tracy_singh(pa, pb);
    CHECK_NOTHROW(check_partition(ind, ts.rows, ts.cols));
}

TEST_CASE("commutation-matrix route agrees with block assembly") {
    SUBCASE("square equal sizes") {
        CMatrix c = random_matrix(4, 4), cp = random_matrix(4, 4);
        CHECK(max_abs_diff(tracy_singh_canonical(c, cp),
                           ts_via_commutation(c, cp)) <= 1e-12);
    }
    SUBCASE("mixed local dimensions and rectangles") {
        // c: n^2 x p^2, cp: m^2 x q^2 over n,m,p,q in {2,3}
        CMatrix c = random_matrix(4, 9), cp = random_matrix(9, 4);
        CHECK(max_abs_diff(tracy_singh_canonical(c, cp),
                           ts_via_commutation(c, cp)) <= 1e-12);
        c = random_matrix(9, 9);
        cp = random_matrix(4, 4);
        CHECK(max_abs_diff(tracy_singh_canonical(c, cp),
                           ts_via_commutation(c, cp)) <= 1e-12);
    }
    SUBCASE("identity on identities") {
        CHECK(max_abs_diff(ts_via_commutation(identity(4), identity(4)),
                           identity(16)) == 0.0);
    }
    SUBCASE("square case equals the middle-swap sandwich") {
        const std::size_t d = 3;
        CMatrix c = random_matrix(d * d, d * d), cp = random_matrix(d * d, d * d);
        CMatrix f = middle_swap(d);
        CMatrix sandwich = matmul(matmul(f, kron(c, cp)), f);
        CHECK(max_abs_diff(tracy_singh_canonical(c, cp), sandwich) <= 1e-12);
    }
}

TEST_CASE("product is noncommutative: the builtin witness pair") {
    CMatrix c = builtin_gate("kauffman_c").matrix;
    CMatrix d = builtin_gate("example_d").matrix;
    CMatrix cd = tracy_singh_canonical(c, d);
    CMatrix dc = tracy_singh_canonical(d, c);
    double diff = max_abs_diff(cd, dc);
    CHECK(diff > 2.0);
    CHECK(diff < 2.2);
}

TEST_CASE("associativity under induced partitions") {
    PartitionedMatrix a = random_partitioned(4, 3);
    PartitionedMatrix b = random_partitioned(3, 4);
    PartitionedMatrix c = random_partitioned(2, 2);

    CMatrix ab = tracy_singh(a, b);
    PartitionedMatrix pab(ab, induced_partition(a.part, b.part));
    CMatrix left = tracy_singh(pab, c);

    CMatrix bc = tracy_singh(b, c);
    PartitionedMatrix pbc(bc, induced_partition(b.part, c.part));
    CMatrix right = tracy_singh(a, pbc);

    CHECK(max_abs_diff(left, right) <= 1e-12);
}

TEST_CASE("bilinearity in both arguments") {
    BlockPartition pa{{2, 2}, {1, 2}};
    BlockPartition pb{{1, 2}, {2, 2}};
    CMatrix a1 = random_matrix(4, 3), a2 = random_matrix(4, 3);
    CMatrix b1 = random_matrix(3, 4), b2 = random_matrix(3, 4);

    CMatrix lhs = tracy_singh(PartitionedMatrix(a1 + a2, pa),
                              PartitionedMatrix(b1 + b2, pb));
    CMatrix rhs = tracy_singh(PartitionedMatrix(a1, pa), PartitionedMatrix(b1, pb)) +
                  tracy_singh(PartitionedMatrix(a1, pa), PartitionedMatrix(b2, pb)) +
                  tracy_singh(PartitionedMatrix(a2, pa), PartitionedMatrix(b1, pb)) +
                  tracy_singh(PartitionedMatrix(a2, pa), PartitionedMatrix(b2, pb));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("mixed product rule") {
    // (A (ts) B)(C (ts) D) = (AC) (ts) (BD); A's column cuts must match C's
    // row cuts, same for B and D.
    std::vector<std::size_t> ka = random_cuts(4), kb = random_cuts(3);
    PartitionedMatrix a(random_matrix(3, 4),
                        BlockPartition{random_cuts(3), ka});
    PartitionedMatrix c(random_matrix(4, 2),
                        BlockPartition{ka, random_cuts(2)});
    PartitionedMatrix b(random_matrix(2, 3),
                        BlockPartition{random_cuts(2), kb});
    PartitionedMatrix d(random_matrix(3, 3),
                        BlockPartition{kb, random_cuts(3)});

    CMatrix lhs = matmul(tracy_singh(a, b), tracy_singh(c, d));
    CMatrix rhs = tracy_singh(
        PartitionedMatrix(matmul(a.m, c.m), BlockPartition{a.part.row_cuts,
                                                           c.part.col_cuts}),
        PartitionedMatrix(matmul(b.m, d.m), BlockPartition{b.part.row_cuts,
                                                           d.part.col_cuts}));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("scalars pull out of either factor") {
    PartitionedMatrix a = random_partitioned(3, 3);
    PartitionedMatrix b = random_partitioned(2, 4);
    Complex s(0.7, -1.3);
    CMatrix base = tracy_singh(a, b);
    CMatrix left = tracy_singh(PartitionedMatrix(s * a.m, a.part), b);
    CMatrix right = tracy_singh(a, PartitionedMatrix(s * b.m, b.part));
    CHECK(max_abs_diff(left, s * base) <= 1e-12);
    CHECK(max_abs_diff(right, s * base) <= 1e-12);
}

TEST_CASE("inverse distributes over the product") {
    std::vector<std::size_t> ra = random_cuts(4), ca = random_cuts(4);
    std::vector<std::size_t> rb = random_cuts(3), cb = random_cuts(3);
    CMatrix a = random_invertible(4), b = random_invertible(3);

    CMatrix lhs = inverse(tracy_singh(PartitionedMatrix(a, BlockPartition{ra, ca}),
                                      PartitionedMatrix(b, BlockPartition{rb, cb})));
    // The inverse carries the transposed block structure.
    CMatrix rhs = tracy_singh(PartitionedMatrix(inverse(a), BlockPartition{ca, ra}),
                              PartitionedMatrix(inverse(b), BlockPartition{cb, rb}));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-9);
}

TEST_CASE("transpose distributes exactly") {
    PartitionedMatrix a = random_partitioned(4, 3);
    PartitionedMatrix b = random_partitioned(3, 5);
    CMatrix lhs = transpose(tracy_singh(a, b));
    CMatrix rhs = tracy_singh(PartitionedMatrix(transpose(a.m), transposed(a.part)),
                              PartitionedMatrix(transpose(b.m), transposed(b.part)));
    CHECK(max_abs_diff(lhs, rhs) == 0.0);
}

TEST_CASE("identity times identity is the identity under conformal partitions") {
    // Conformal means row cuts == col cuts per factor (square diagonal
    // blocks). With mismatched cuts the product is a nontrivial permutation:
    // the row and column orderings interleave the two factors differently.
    CMatrix lhs = tracy_singh(
        PartitionedMatrix(identity(4), BlockPartition{{1, 3}, {1, 3}}),
        PartitionedMatrix(identity(6), BlockPartition{{2, 2, 2}, {2, 2, 2}}));
    CHECK(max_abs_diff(lhs, identity(24)) == 0.0);
    CHECK(max_abs_diff(tracy_singh_canonical(identity(4), identity(4)),
                       identity(16)) == 0.0);

    CMatrix skew = tracy_singh(
        PartitionedMatrix(identity(3), BlockPartition{{1, 2}, {2, 1}}),
        PartitionedMatrix(identity(2), BlockPartition{{1, 1}, {1, 1}}));
    CHECK(max_abs_diff(skew, identity(6)) == 1.0);  // a permutation, not I
}

TEST_CASE("power iteration squares repeatedly") {
    CMatrix c = builtin_gate("kauffman_c").matrix;

    CHECK(max_abs_diff(boxtimes_power(c, 1), c) == 0.0);

    CMatrix p2 = boxtimes_power(c, 2);
    CHECK(p2.rows == 16);
    CHECK(max_abs_diff(p2, tracy_singh_canonical(c, c)) == 0.0);

    CMatrix p3 = boxtimes_power(c, 3);
    CHECK(p3.rows == 256);
    CHECK(max_abs_diff(p3, tracy_singh_canonical(p2, p2)) == 0.0);

    Gate g2(p2, 4, 2, "");
    CHECK(unitarity_residual(g2) <= 1e-11);
    CHECK(ybe_residual(g2) <= 1e-11);
}

TEST_CASE("power iteration respects the dimension cap") {
    CMatrix c = builtin_gate("kauffman_c").matrix;
    CHECK_THROWS_WITH_AS(boxtimes_power(c, 4), doctest::Contains("cap"),
                         std::invalid_argument);
    CHECK_THROWS_AS(boxtimes_power(c, 30), std::invalid_argument);
    CHECK_THROWS_AS(boxtimes_power(c, 3, 100), std::invalid_argument);
}

TEST_CASE("squared tensor factors against the product of squares") {
    // (mu (x) eta)^{(x)2} = (mu (x) mu) (ts) (eta (x) eta), canonically.
    for (std::size_t d1 : {std::size_t{2}, std::size_t{3}})
        for (std::size_t d2 : {std::size_t{2}, std::size_t{3}}) {
            CMatrix mu = random_matrix(d1, d1), eta = random_matrix(d2, d2);
            CMatrix both = kron(mu, eta);
            CMatrix lhs = kron(both, both);
            CMatrix rhs = tracy_singh_canonical(kron(mu, mu), kron(eta, eta));
            CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
        }
}

TEST_CASE("partial trace distributes over the product") {
    // Tr_2(A (ts) B) = Tr_2(A) (x) Tr_2(B) for canonical square factors.
    for (std::size_t d1 : {std::size_t{2}, std::size_t{3}})
        for (std::size_t d2 : {std::size_t{2}, std::size_t{3}}) {
            CMatrix a = random_matrix(d1 * d1, d1 * d1);
            CMatrix b = random_matrix(d2 * d2, d2 * d2);
            CMatrix ts = tracy_singh_canonical(a, b);
            CMatrix lhs = partial_trace_second(ts, d1 * d2, d1 * d2);
            CMatrix rhs = kron(partial_trace_second(a, d1, d1),
                               partial_trace_second(b, d2, d2));
            CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
        }
}
