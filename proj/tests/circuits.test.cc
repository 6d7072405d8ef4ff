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

#include "hiermem/circuits.h"

#include <random>
#include <set>

#include "gtest/gtest.h"
#include "hiermem/error.h"

using namespace hiermem;

namespace {

CssCode hgp_toy() {
    auto h = sample_regular_parity_check(16, 3, 4, 1);
    return hypergraph_product(h, h);
}

size_t max_degree(const CssCode &c) {
    auto p = code_params(c);
    return std::max(p.delta_q, p.delta_g);
}

std::vector<uint8_t> mat_vec(const SparseBinaryMatrix &h, const std::vector<uint8_t> &v) {
    std::vector<uint8_t> out(h.rows(), 0);
    for (size_t r = 0; r < h.rows(); r++) {
        for (uint32_t c : h.row(r)) {
            out[r] ^= v[c];
        }
    }
    return out;
}

CssCode single_check() {
    CssCode c;
    c.hx = SparseBinaryMatrix(1, {{0}});
    c.hz = SparseBinaryMatrix(1, {{0}});
    return c;
}

}  // namespace

TEST(circuits, stage_coloring_examples) {
    auto surface = tanner_stage_coloring(rotated_surface_code(3));
    EXPECT_LE(surface.entangle_count(true), 4u);
    EXPECT_LE(surface.entangle_count(false), 4u);
    EXPECT_LE(surface.stages.size(), 12u);

    auto one = tanner_stage_coloring(single_check());
    EXPECT_EQ(one.entangle_count(true), 1u);
    EXPECT_EQ(one.entangle_count(false), 1u);

    auto h = BinaryMatrix::from_rows({{1, 1}});
    auto small = tanner_stage_coloring(hypergraph_product(h, h));
    EXPECT_LE(small.stages.size(), 10u);
}

TEST(circuits, stage_pairs_disjoint_and_complete) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; trial++) {
        auto h1 = sample_regular_parity_check(8, 3, 4, rng());
        auto h2 = sample_regular_parity_check(4 + 2 * (trial % 3), 1, 2, rng());
        auto code = hypergraph_product(h1, h2);
        auto plan = tanner_stage_coloring(code);
        size_t delta = max_degree(code);
        std::set<std::pair<uint32_t, uint32_t>> seen_x, seen_z;
        for (const auto &stage : plan.stages) {
            if (stage.kind != Stage::Kind::entangle) {
                continue;
            }
            std::set<uint32_t> checks, data;
            for (auto [i, j] : stage.pairs) {
                ASSERT_TRUE(checks.insert(i).second);
                ASSERT_TRUE(data.insert(j).second);
                (stage.x_phase ? seen_x : seen_z).insert({i, j});
            }
        }
        ASSERT_EQ(seen_x.size(), code.hx.nonzeros());
        ASSERT_EQ(seen_z.size(), code.hz.nonzeros());
        ASSERT_LE(plan.entangle_count(true), delta);
        ASSERT_LE(plan.entangle_count(false), delta);
    }
}

TEST(circuits, ideal_examples) {
    auto surface = rotated_surface_code(3);
    auto circ = build_ideal_sec(surface);
    EXPECT_EQ(circ.width, 13u);
    EXPECT_LE(circ.depth(), 12u);
    auto rep = verify_schedule(circ, 1);
    EXPECT_TRUE(rep.ok);
    EXPECT_FALSE(rep.geometry_checked);

    CssCode empty;
    empty.hx = SparseBinaryMatrix(4, {});
    empty.hz = SparseBinaryMatrix(4, {});
    EXPECT_EQ(build_ideal_sec(empty).depth(), 0u);

    auto toy = hgp_toy();
    auto big = build_ideal_sec(toy);
    EXPECT_EQ(big.width, toy.n() + std::max(toy.hx.rows(), toy.hz.rows()));
    EXPECT_TRUE(verify_schedule(big, 1).ok);
}

TEST(circuits, ideal_space_and_depth_bounds) {
    std::mt19937_64 rng(7);
    std::vector<CssCode> codes{rotated_surface_code(3), rotated_surface_code(5), hgp_toy(), single_check()};
    for (int t = 0; t < 10; t++) {
        auto h = sample_regular_parity_check(6 + 2 * (t % 3), 1 + t % 2, 2, rng());
        codes.push_back(hypergraph_product(h, sample_regular_parity_check(4, 1, 2, rng())));
    }
    for (const auto &code : codes) {
        auto circ = build_ideal_sec(code);
        size_t m0 = std::max(code.hx.rows(), code.hz.rows());
        ASSERT_EQ(circ.width, code.n() + m0);
        ASSERT_LE(circ.depth(), 2 * (max_degree(code) + 2));
        ASSERT_TRUE(verify_schedule(circ, 1).ok);
    }
}

TEST(circuits, place_bilayer_examples) {
    auto pl = place_bilayer(rotated_surface_code(3));
    EXPECT_EQ(pl.side, 3u);
    EXPECT_EQ(pl.width(), 18u);
    auto one = place_bilayer(single_check());
    EXPECT_EQ(one.side, 1u);
    EXPECT_EQ(one.width(), 2u);
    CssCode wide;
    wide.hx = SparseBinaryMatrix(1116416, {});
    wide.hz = SparseBinaryMatrix(1116416, {});
    EXPECT_EQ(place_bilayer(wide).side, 1057u);

    auto toy = place_bilayer(hgp_toy());
    EXPECT_EQ(toy.side, 20u);
    std::set<std::tuple<int, int64_t, int64_t>> sites;
    for (size_t q = 0; q < toy.width(); q++) {
        sites.insert({toy.sites[q].layer, toy.sites[q].x, toy.sites[q].y});
        if (toy.roles[q] == QubitRole::data) {
            EXPECT_EQ(toy.sites[q].layer, 0);
        } else if (toy.roles[q] != QubitRole::buffer) {
            EXPECT_EQ(toy.sites[q].layer, 1);
        }
    }
    EXPECT_EQ(sites.size(), 800u);
}

TEST(circuits, local_surface_code_unit) {
    auto code = rotated_surface_code(3);
    auto circ = build_local_sec(code, 1, LatticeMode::unit, 0);
    EXPECT_LE(circ.depth(), 2 * 4 * (3 * 3 + 1) + 4);
    auto rep = verify_schedule(circ, 1);
    EXPECT_TRUE(rep.ok) << (rep.diagnostics.empty() ? "" : rep.diagnostics[0]);
    EXPECT_TRUE(rep.geometry_checked);
}

TEST(circuits, local_aligned_stage_costs_one_step) {
    CssCode c;
    c.hx = SparseBinaryMatrix(2, {{0}, {1}});
    c.hz = SparseBinaryMatrix(2, {});
    auto circ = build_local_sec(c, 1, LatticeMode::unit, 0);
    // prep, one entangle step, measure
    EXPECT_EQ(circ.depth(), 3u);
    EXPECT_TRUE(verify_schedule(circ, 1).ok);
}

TEST(circuits, local_hgp_toy_unit_all_seeds) {
    auto code = hgp_toy();
    size_t delta = max_degree(code);
    size_t L = place_bilayer(code).side;
    for (uint64_t seed = 0; seed < 20; seed++) {
        auto circ = build_local_sec(code, 1, LatticeMode::unit, seed);
        auto rep = verify_schedule(circ, 1);
        ASSERT_TRUE(rep.ok) << rep.diagnostics[0];
        ASSERT_LE(circ.depth(), 2 * delta * (3 * L + 1) + 4);
    }
}

TEST(circuits, local_hgp_toy_dense) {
    auto code = hgp_toy();
    size_t delta = max_degree(code);
    size_t L = place_bilayer(code).side;
    for (size_t R : {2u, 4u, 10u}) {
        auto circ = build_local_sec(code, R, LatticeMode::dense, 0);
        auto rep = verify_schedule(circ, (double)R);
        ASSERT_TRUE(rep.ok) << rep.diagnostics[0];
        EXPECT_LE(circ.depth(), 2 * delta * (3 * L / R + 13) + 4) << R;
    }
    EXPECT_THROW(build_local_sec(code, 3, LatticeMode::dense, 0), Error);
    EXPECT_THROW(build_local_sec(code, 8, LatticeMode::dense, 0), Error);
}

TEST(circuits, local_hgp_toy_sparse) {
    auto code = hgp_toy();
    for (size_t R : {4u, 10u}) {
        auto circ = build_local_sec(code, R, LatticeMode::sparse, 3);
        auto rep = verify_schedule(circ, (double)R, 16);
        ASSERT_TRUE(rep.ok) << rep.diagnostics[0];
        EXPECT_LE(rep.max_partners, 16u);
    }
}

TEST(circuits, verify_schedule_diagnostics) {
    Circuit c;
    c.width = 4;
    c.placement = {{0, 0, 0}, {0, 2, 0}, {1, 0, 0}, {1, 1, 1}};
    c.roles.assign(4, QubitRole::buffer);
    c.steps = {{{GateKind::swap, 0, 1}}};
    auto rep = verify_schedule(c, 1);
    EXPECT_FALSE(rep.ok);
    EXPECT_NE(rep.diagnostics[0].find("range violation"), std::string::npos);
    EXPECT_TRUE(verify_schedule(c, 2).ok);

    c.steps = {{{GateKind::swap, 0, 2}}};
    EXPECT_NE(verify_schedule(c, 5).diagnostics[0].find("layer violation"), std::string::npos);
    c.steps = {{{GateKind::cnot, 3, 0}}};
    EXPECT_NE(verify_schedule(c, 5).diagnostics[0].find("locality violation"), std::string::npos);
    c.steps = {{{GateKind::cnot, 2, 0}, {GateKind::meas_x, 2}}};
    EXPECT_NE(verify_schedule(c, 5).diagnostics[0].find("exclusivity"), std::string::npos);
    c.steps = {{{GateKind::swap, 0, 1}}, {{GateKind::cz, 2, 0}}};
    auto moved = verify_schedule(c, 2);
    EXPECT_TRUE(moved.ok);
    EXPECT_EQ(moved.max_partners, 2u);
    EXPECT_FALSE(verify_schedule(c, 2, 1).ok);
}

TEST(circuits, noiseless_syndrome_single_errors) {
    auto code = rotated_surface_code(3);
    auto hx = code.hx.to_dense(), hz = code.hz.to_dense();
    for (const auto &circ : {build_ideal_sec(code), build_local_sec(code, 1, LatticeMode::unit, 0)}) {
        auto zero = noiseless_syndrome(circ, code, PauliVec(code.n()));
        EXPECT_EQ(zero.x_checks, std::vector<uint8_t>(4, 0));
        EXPECT_EQ(zero.z_checks, std::vector<uint8_t>(4, 0));
        for (size_t q = 0; q < code.n(); q++) {
            PauliVec z(code.n()), x(code.n());
            z.z[q] = 1;
            x.x[q] = 1;
            auto sz = noiseless_syndrome(circ, code, z);
            auto sx = noiseless_syndrome(circ, code, x);
            for (size_t r = 0; r < 4; r++) {
                ASSERT_EQ(sz.x_checks[r], hx.get(r, q));
                ASSERT_EQ(sz.z_checks[r], 0);
                ASSERT_EQ(sx.z_checks[r], hz.get(r, q));
                ASSERT_EQ(sx.x_checks[r], 0);
            }
        }
    }
}

TEST(circuits, noiseless_syndrome_random_errors) {
    auto code = hgp_toy();
    std::vector<Circuit> circs{build_ideal_sec(code), build_local_sec(code, 4, LatticeMode::dense, 0)};
    std::mt19937_64 rng(21);
    for (const auto &circ : circs) {
        for (int trial = 0; trial < 1000; trial++) {
            PauliVec e(code.n());
            for (size_t q = 0; q < code.n(); q++) {
                e.x[q] = (rng() % 10) == 0;
                e.z[q] = (rng() % 10) == 0;
            }
            auto s = noiseless_syndrome(circ, code, e);
            ASSERT_EQ(s.x_checks, mat_vec(code.hx, e.z));
            ASSERT_EQ(s.z_checks, mat_vec(code.hz, e.x));
        }
    }
}

TEST(circuits, text_round_trip) {
    auto circ = build_local_sec(rotated_surface_code(3), 1, LatticeMode::unit, 0);
    auto text = circ.to_text();
    auto back = Circuit::from_text(text);
    EXPECT_EQ(back, circ);
    EXPECT_EQ(back.to_text(), text);
    EXPECT_EQ(text.substr(0, 12), "circuit 18 " + std::to_string(circ.depth()).substr(0, 1));
    EXPECT_THROW(Circuit::from_text("circuit 1 1\nqubit 0 data\nstep\nFOO 0\n"), Error);
    EXPECT_THROW(Circuit::from_text("circuit 1 1\nqubit 0 data\nstep\nMX 0\nMX 0\n"), Error);
    auto ideal = build_ideal_sec(rotated_surface_code(3));
    EXPECT_EQ(Circuit::from_text(ideal.to_text()), ideal);
}
