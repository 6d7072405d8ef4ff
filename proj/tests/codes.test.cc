// Copyright 2026 The hiermem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hiermem/codes.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "hiermem/error.h"

using namespace hiermem;

namespace {

// Rank as log2 of the number of distinct row combinations.
size_t span_rank(const BinaryMatrix &m) {
    std::set<std::vector<uint8_t>> seen;
    for (uint64_t mask = 0; mask < (uint64_t{1} << m.rows()); mask++) {
        std::vector<uint8_t> v(m.cols(), 0);
        for (size_t r = 0; r < m.rows(); r++) {
            if ((mask >> r) & 1) {
                for (size_t c = 0; c < m.cols(); c++) {
                    v[c] ^= m.get(r, c);
                }
            }
        }
        seen.insert(v);
    }
    size_t rank = 0;
    while ((size_t{1} << rank) < seen.size()) {
        rank++;
    }
    return rank;
}

BinaryMatrix random_matrix(size_t rows, size_t cols, std::mt19937_64 &rng, double density = 0.4) {
    std::bernoulli_distribution bit(density);
    BinaryMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            m.set(r, c, bit(rng));
        }
    }
    return m;
}

// Kronecker product built entry by entry.
BinaryMatrix kron(const BinaryMatrix &a, const BinaryMatrix &b) {
    BinaryMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            if (!a.get(i, j)) {
                continue;
            }
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    out.set(i * b.rows() + k, j * b.cols() + l, b.get(k, l));
                }
            }
        }
    }
    return out;
}

BinaryMatrix hstack(const BinaryMatrix &a, const BinaryMatrix &b) {
    BinaryMatrix out(a.rows(), a.cols() + b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            out.set(r, c, a.get(r, c));
        }
        for (size_t c = 0; c < b.cols(); c++) {
            out.set(r, a.cols() + c, b.get(r, c));
        }
    }
    return out;
}

CssCode from_dense(const BinaryMatrix &hx, const BinaryMatrix &hz) {
    CssCode c;
    c.hx = SparseBinaryMatrix::from_dense(hx);
    c.hz = SparseBinaryMatrix::from_dense(hz);
    c.validate();
    return c;
}

}  // namespace

TEST(codes, rank_examples) {
    EXPECT_EQ(rank_f2(BinaryMatrix::identity(4)), 4u);
    EXPECT_EQ(rank_f2(BinaryMatrix(3, 5)), 0u);
    EXPECT_EQ(rank_f2(BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})), 2u);
    EXPECT_EQ(rank_f2(BinaryMatrix(0, 0)), 0u);
}

TEST(codes, rank_matches_span_enumeration) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; trial++) {
        size_t rows = 1 + rng() % 10, cols = 1 + rng() % 140;
        auto m = random_matrix(rows, cols, rng, trial % 2 ? 0.1 : 0.5);
        ASSERT_EQ(rank_f2(m), span_rank(m));
        ASSERT_EQ(rank_f2(m), rank_f2(m.transpose()));
    }
}

TEST(codes, matrix_basics) {
    auto m = BinaryMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
    EXPECT_EQ(m.row_weight(0), 2u);
    EXPECT_EQ(m.col_weight(2), 2u);
    EXPECT_EQ(m.transpose().transpose(), m);
    EXPECT_TRUE((m * m.transpose()) == BinaryMatrix::from_rows({{0, 1}, {1, 0}}));
    EXPECT_THROW(m * m, Error);
    EXPECT_THROW(BinaryMatrix::from_rows({{1, 0}, {1}}), Error);
    EXPECT_EQ(SparseBinaryMatrix::from_dense(m).to_dense(), m);
    EXPECT_THROW(SparseBinaryMatrix(3, {{0, 0}}), Error);
    EXPECT_THROW(SparseBinaryMatrix(3, {{3}}), Error);
}

TEST(codes, sample_regular_examples) {
    auto h = sample_regular_parity_check(8, 1, 2, 0);
    ASSERT_EQ(h.rows(), 4u);
    ASSERT_EQ(h.cols(), 8u);
    for (size_t r = 0; r < 4; r++) {
        EXPECT_EQ(h.row_weight(r), 2u);
    }
    for (size_t c = 0; c < 8; c++) {
        EXPECT_EQ(h.col_weight(c), 1u);
    }
    auto toy = sample_regular_parity_check(16, 3, 4, 1);
    ASSERT_EQ(toy.rows(), 12u);
    for (size_t r = 0; r < 12; r++) {
        EXPECT_EQ(toy.row_weight(r), 4u);
    }
    for (size_t c = 0; c < 16; c++) {
        EXPECT_EQ(toy.col_weight(c), 3u);
    }
}

TEST(codes, sample_regular_large_and_deterministic) {
    auto h = sample_regular_parity_check(896, 5, 8, 42);
    ASSERT_EQ(h.rows(), 560u);
    ASSERT_EQ(h.cols(), 896u);
    for (size_t r = 0; r < h.rows(); r++) {
        ASSERT_EQ(h.row_weight(r), 8u);
    }
    auto t = h.transpose();
    for (size_t c = 0; c < h.cols(); c++) {
        ASSERT_EQ(t.row_weight(c), 5u);
    }
    EXPECT_LE(rank_f2(h), 560u);
    EXPECT_EQ(h, sample_regular_parity_check(896, 5, 8, 42));
    EXPECT_NE(h, sample_regular_parity_check(896, 5, 8, 43));
}

TEST(codes, sample_regular_errors) {
    EXPECT_THROW(sample_regular_parity_check(10, 3, 4, 0), Error);
    EXPECT_THROW(sample_regular_parity_check(4, 1, 8, 0), Error);
    // Even column weight: every column sums to zero over the rows, so rank <= m - 1.
    EXPECT_THROW(sample_regular_parity_check(512, 4, 8, 0, 5, true), Error);
    auto h = sample_regular_parity_check(512, 4, 8, 0);
    EXPECT_LE(rank_f2(h), 255u);
    try {
        sample_regular_parity_check(512, 4, 8, 0, 5, true);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), "sampling-failure");
    }
}

TEST(codes, hypergraph_product_five_one_two) {
    auto h = BinaryMatrix::from_rows({{1, 1}});
    auto c = hypergraph_product(h, h);
    auto p = code_params(c);
    EXPECT_EQ(p.n, 5u);
    EXPECT_EQ(p.k, 1u);
    EXPECT_EQ(c.hx.rows(), 2u);
    EXPECT_EQ(c.hz.rows(), 2u);
    EXPECT_EQ(5 - rank_f2(c.hx.to_dense()) - rank_f2(c.hz.to_dense()), 1u);
    EXPECT_EQ(distance_bruteforce(c, 2), std::optional<size_t>(2));
}

TEST(codes, hypergraph_product_matches_kronecker_form) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; trial++) {
        auto h1 = random_matrix(1 + rng() % 4, 1 + rng() % 5, rng);
        auto h2 = random_matrix(1 + rng() % 4, 1 + rng() % 5, rng);
        auto c = hypergraph_product(h1, h2);
        auto hx = hstack(kron(h1, BinaryMatrix::identity(h2.cols())),
                         kron(BinaryMatrix::identity(h1.rows()), h2.transpose()));
        auto hz = hstack(kron(BinaryMatrix::identity(h1.cols()), h2),
                         kron(h1.transpose(), BinaryMatrix::identity(h2.rows())));
        ASSERT_EQ(c.hx.to_dense(), hx);
        ASSERT_EQ(c.hz.to_dense(), hz);
        ASSERT_TRUE((hx * hz.transpose()).is_zero());
    }
}

TEST(codes, hypergraph_product_k_formula_matches_ranks) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; trial++) {
        size_t n1 = 1 + rng() % 6, n2 = 1 + rng() % 6;
        auto h1 = random_matrix(1 + rng() % 5, n1, rng, trial % 3 ? 0.5 : 0.2);
        auto h2 = random_matrix(1 + rng() % 5, n2, rng);
        auto c = hypergraph_product(h1, h2);
        ASSERT_LE(c.n(), 32u + 25u);
        size_t direct = c.n() - rank_f2(c.hx.to_dense()) - rank_f2(c.hz.to_dense());
        ASSERT_EQ(code_params(c).k, direct);
        c.known_k.reset();
        ASSERT_EQ(code_params(c).k, direct);
    }
}

TEST(codes, hypergraph_product_five_eight_family) {
    auto h = sample_regular_parity_check(896, 5, 8, 42, 1000, true);
    ASSERT_EQ(rank_f2(h), 560u);
    auto c = hypergraph_product(h, h);
    auto p = code_params(c);
    EXPECT_EQ(p.n, 1116416u);
    EXPECT_EQ(p.k, 112896u);
    EXPECT_EQ(p.delta_q, 16u);
    EXPECT_EQ(p.delta_g, 13u);
    auto wx = c.hx.col_weights(), wz = c.hz.col_weights();
    for (size_t q = 0; q < p.n; q++) {
        size_t deg = wx[q] + wz[q];
        ASSERT_TRUE(deg == 10 || deg == 16) << q;
    }
}

TEST(codes, hypergraph_product_four_eight_family) {
    auto h = sample_regular_parity_check(512, 4, 8, 7);
    size_t r = rank_f2(h);
    ASSERT_LE(r, 255u);
    auto c = hypergraph_product(h, h);
    auto p = code_params(c);
    EXPECT_EQ(p.n, 327680u);
    EXPECT_EQ(p.delta_g, 12u);
    EXPECT_EQ(p.delta_q, 16u);
    // Full rank 256 is impossible with even column weight, so k exceeds 65536.
    EXPECT_EQ(p.k, (512 - r) * (512 - r) + (256 - r) * (256 - r));
    EXPECT_GT(p.k, 65536u);
}

TEST(codes, rotated_surface_code_three) {
    auto c = rotated_surface_code(3);
    EXPECT_EQ(c.n(), 9u);
    EXPECT_EQ(c.hx.rows(), 4u);
    EXPECT_EQ(c.hz.rows(), 4u);
    ASSERT_TRUE((c.hx.to_dense() * c.hz.to_dense().transpose()).is_zero());
    for (const auto *h : {&c.hx, &c.hz}) {
        for (size_t r = 0; r < h->rows(); r++) {
            EXPECT_TRUE(h->row(r).size() == 2 || h->row(r).size() == 4);
        }
    }
    auto p = code_params(c);
    EXPECT_EQ(p.k, 1u);
    EXPECT_EQ(p.delta_q, 4u);
    EXPECT_EQ(p.delta_g, 4u);
    EXPECT_EQ(distance_bruteforce(c, 3), std::optional<size_t>(3));
    EXPECT_EQ(distance_bruteforce(c, 2), std::nullopt);
    ASSERT_TRUE(c.qubit_coords.has_value());
    EXPECT_EQ((*c.qubit_coords)[5], (Coord{2, 1}));
}

TEST(codes, rotated_surface_code_family) {
    for (size_t d : {5u, 7u, 9u}) {
        auto c = rotated_surface_code(d);
        EXPECT_EQ(c.hx.rows() + c.hz.rows(), d * d - 1);
        EXPECT_EQ(c.hx.rows(), c.hz.rows());
        EXPECT_EQ(c.n() + c.hx.rows() + c.hz.rows(), 2 * d * d - 1);
        EXPECT_EQ(code_params(c).k, 1u);
    }
    EXPECT_EQ(2 * 5 * 5 - 1, 49);
    EXPECT_EQ(distance_bruteforce(rotated_surface_code(5), 5), std::optional<size_t>(5));
    EXPECT_THROW(rotated_surface_code(4), Error);
    EXPECT_THROW(rotated_surface_code(1), Error);
}

TEST(codes, code_params_edge_cases) {
    CssCode empty;
    empty.hx = SparseBinaryMatrix(6, {});
    empty.hz = SparseBinaryMatrix(6, {});
    EXPECT_EQ(code_params(empty).k, 6u);
    EXPECT_FALSE(code_params(empty).d.has_value());

    auto rep = from_dense(BinaryMatrix(0, 3), BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 0}}));
    EXPECT_EQ(code_params(rep).k, 0u);
    EXPECT_EQ(distance_bruteforce(rep, 3), std::nullopt);

    CssCode bad;
    bad.hx = SparseBinaryMatrix(2, {{0}});
    bad.hz = SparseBinaryMatrix(2, {{0, 1}});
    EXPECT_THROW(bad.validate(), Error);
    CssCode big;
    big.hx = SparseBinaryMatrix(40, {});
    big.hz = SparseBinaryMatrix(40, {});
    EXPECT_THROW(distance_bruteforce(big, 5), Error);
}

TEST(codes, distance_bruteforce_against_codespace) {
    // Steane code: both check matrices are the [7,4] Hamming parity check.
    auto ham = BinaryMatrix::from_rows({{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}});
    auto steane = from_dense(ham, ham);
    EXPECT_EQ(code_params(steane).k, 1u);
    EXPECT_EQ(distance_bruteforce(steane, 7), std::optional<size_t>(3));
}

TEST(codes, alist_round_trip) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; trial++) {
        auto m = random_matrix(1 + rng() % 9, 1 + rng() % 13, rng);
        std::string text = to_alist(m);
        auto back = from_alist(text);
        ASSERT_EQ(back, m);
        ASSERT_EQ(to_alist(back), text);
    }
    auto m = BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
    EXPECT_EQ(to_alist(m), "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n");
    EXPECT_THROW(from_alist("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 1\n"), Error);
    EXPECT_THROW(from_alist("3 2\n"), Error);
}

TEST(codes, pbm_round_trip) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; trial++) {
        auto m = random_matrix(1 + rng() % 9, 1 + rng() % 70, rng);
        std::string text = to_pbm(m);
        ASSERT_EQ(from_pbm(text), m);
        ASSERT_EQ(to_pbm(from_pbm(text)), text);
    }
    auto m = BinaryMatrix::from_rows({{1, 0}, {0, 1}});
    EXPECT_EQ(to_pbm(m), "P1\n2 2\n1 0\n0 1\n");
    EXPECT_EQ(from_pbm("P1\n# comment\n2 2\n10\n01\n"), m);
    EXPECT_THROW(from_pbm("P4\n2 2\n"), Error);
    EXPECT_THROW(from_pbm("P1\n2 2\n1 0 1\n"), Error);
}
