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

#include "hiermem/routing.h"

#include <algorithm>
#include <map>
#include <set>

#include "gtest/gtest.h"
#include "hiermem/error.h"

using namespace hiermem;

namespace {

// Minimum number of parallel swap layers on path(L) realizing alpha, by breadth-first search over
// all labelings with every matching of the path as a move.
size_t brute_force_path_depth(const Permutation &alpha) {
    size_t L = alpha.size();
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> matchings{{}};
    for (uint32_t mask = 1; mask < (1u << (L - 1)); mask++) {
        if (mask & (mask >> 1)) {
            continue;
        }
        std::vector<std::pair<uint32_t, uint32_t>> m;
        for (uint32_t i = 0; i + 1 < L; i++) {
            if (mask >> i & 1) {
                m.emplace_back(i, i + 1);
            }
        }
        matchings.push_back(m);
    }
    // State: pebble at each vertex. Target: pebble p sits at alpha[p].
    std::vector<uint32_t> start(L), target(L);
    for (uint32_t i = 0; i < L; i++) {
        start[i] = i;
        target[alpha[i]] = i;
    }
    std::map<std::vector<uint32_t>, size_t> dist{{start, 0}};
    std::vector<std::vector<uint32_t>> frontier{start};
    while (!frontier.empty()) {
        std::vector<std::vector<uint32_t>> next;
        for (const auto &s : frontier) {
            if (s == target) {
                return dist[s];
            }
            for (const auto &m : matchings) {
                auto t = s;
                for (auto [a, b] : m) {
                    std::swap(t[a], t[b]);
                }
                if (!dist.count(t)) {
                    dist[t] = dist[s] + 1;
                    next.push_back(t);
                }
            }
        }
        frontier = std::move(next);
    }
    return SIZE_MAX;
}

Permutation reversal(size_t n) {
    std::vector<uint32_t> m(n);
    for (size_t i = 0; i < n; i++) {
        m[i] = n - 1 - i;
    }
    return Permutation(m);
}

}  // namespace

TEST(routing, permutation_basics) {
    auto a = Permutation::from_one_based({6, 7, 2, 5, 3, 4, 8, 1});
    ASSERT_EQ(a[0], 5u);
    ASSERT_EQ(a.inverse().inverse(), a);
    ASSERT_TRUE(Permutation::identity(5).is_identity());
    ASSERT_THROW(Permutation({0, 0, 1}), Error);
}

TEST(routing, route_path_eight_vertex_example) {
    auto alpha = Permutation::from_one_based({6, 7, 2, 5, 3, 4, 8, 1});
    auto s = route_path(alpha, 8);
    ASSERT_TRUE(verify_routing(alpha, s).ok);
    ASSERT_LE(s.depth(), 7u);
}

TEST(routing, route_path_examples) {
    for (size_t L = 1; L < 7; L++) {
        ASSERT_EQ(route_path(Permutation::identity(L), L).depth(), 0u);
    }
    auto s = route_path(reversal(3), 3);
    ASSERT_TRUE(verify_routing(reversal(3), s).ok);
    ASSERT_EQ(s.depth(), 3u);
    ASSERT_EQ(brute_force_path_depth(reversal(3)), 3u);
    ASSERT_THROW(route_path(Permutation::identity(3), 4), Error);
}

TEST(routing, route_path_never_beats_brute_force_minimum) {
    for (size_t L = 2; L <= 5; L++) {
        std::vector<uint32_t> m(L);
        for (size_t i = 0; i < L; i++) {
            m[i] = i;
        }
        do {
            Permutation alpha(m);
            auto s = route_path(alpha, L);
            ASSERT_TRUE(verify_routing(alpha, s).ok);
            ASSERT_LE(s.depth(), L);
            ASSERT_GE(s.depth(), brute_force_path_depth(alpha));
        } while (std::next_permutation(m.begin(), m.end()));
    }
}

TEST(routing, route_path_untrimmed_has_l_phases) {
    auto s = route_path(reversal(5), 5, PathOptions{0, false});
    ASSERT_EQ(s.depth(), 5u);
    ASSERT_TRUE(verify_routing(reversal(5), s).ok);
}

TEST(routing, route_complete_examples) {
    ASSERT_EQ(route_complete(Permutation::identity(5), 5).depth(), 0u);
    Permutation t({1, 0, 2, 3});
    auto st = route_complete(t, 4);
    ASSERT_EQ(st.depth(), 1u);
    ASSERT_TRUE(verify_routing(t, st).ok);
    auto c3 = Permutation::from_one_based({2, 3, 1});
    auto sc = route_complete(c3, 3);
    ASSERT_EQ(sc.depth(), 2u);
    ASSERT_TRUE(verify_routing(c3, sc).ok);
}

TEST(routing, edge_color_bipartite_examples) {
    BipartiteMultigraph pm{3, 3, {{0, 1}, {1, 2}, {2, 0}}};
    auto c = edge_color_bipartite(pm, 1);
    ASSERT_EQ(c, (std::vector<uint32_t>{0, 0, 0}));

    BipartiteMultigraph k33{3, 3, {}};
    for (uint32_t i = 0; i < 3; i++) {
        for (uint32_t j = 0; j < 3; j++) {
            k33.edges.emplace_back(i, j);
        }
    }
    auto ck = edge_color_bipartite(k33, 3);
    for (uint32_t color = 0; color < 3; color++) {
        std::set<uint32_t> l, r;
        for (size_t e = 0; e < 9; e++) {
            if (ck[e] == color) {
                ASSERT_TRUE(l.insert(k33.edges[e].first).second);
                ASSERT_TRUE(r.insert(k33.edges[e].second).second);
            }
        }
        ASSERT_EQ(l.size(), 3u);
    }

    BipartiteMultigraph dbl{1, 1, {{0, 0}, {0, 0}}};
    auto cd = edge_color_bipartite(dbl, 2);
    ASSERT_NE(cd[0], cd[1]);
    ASSERT_THROW(edge_color_bipartite(dbl, 1), Error);
}

TEST(routing, edge_color_bipartite_random_multigraphs) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; trial++) {
        size_t l = 1 + rng() % 7, r = 1 + rng() % 7, e = rng() % 30;
        BipartiteMultigraph b{l, r, {}};
        std::vector<size_t> dl(l), dr(r);
        for (size_t i = 0; i < e; i++) {
            uint32_t u = rng() % l, v = rng() % r;
            b.edges.emplace_back(u, v);
            dl[u]++;
            dr[v]++;
        }
        size_t colors = std::max(*std::max_element(dl.begin(), dl.end()), *std::max_element(dr.begin(), dr.end()));
        auto c = edge_color_bipartite(b, std::max<size_t>(colors, 1));
        std::set<std::pair<uint32_t, uint32_t>> seen_l, seen_r;
        for (size_t i = 0; i < b.edges.size(); i++) {
            ASSERT_LT(c[i], std::max<size_t>(colors, 1));
            ASSERT_TRUE(seen_l.insert({b.edges[i].first, c[i]}).second);
            ASSERT_TRUE(seen_r.insert({b.edges[i].second, c[i]}).second);
        }
    }
}

TEST(routing, route_product_examples) {
    Router p4 = make_path_router(4);
    auto id = route_product(Permutation::identity(16), p4, p4);
    ASSERT_EQ(id.schedule.depth(), 0u);

    Router p2 = make_path_router(2);
    Permutation row_swap({1, 0, 2, 3});
    auto rs = route_product(row_swap, p2, p2);
    ASSERT_TRUE(verify_routing(row_swap, rs.schedule).ok);
    ASSERT_LE(rs.schedule.depth(), 4u);

    std::mt19937_64 rng(1);
    for (int seed = 0; seed < 100; seed++) {
        auto alpha = Permutation::random(16, rng);
        auto r = route_product(alpha, p4, p4);
        ASSERT_TRUE(verify_routing(alpha, r.schedule).ok);
        ASSERT_LE(r.schedule.depth(), 12u);
        ASSERT_LE(r.schedule.depth(), r.pre_depth + r.row_depth + r.post_depth);
        ASSERT_LE(r.schedule.depth(), 2 * std::max(r.pre_depth, r.post_depth) + r.row_depth);
    }
}

TEST(routing, route_product_mixed_factors) {
    Router k3 = make_complete_router(3);
    Router p5 = make_path_router(5);
    std::mt19937_64 rng(2);
    for (int seed = 0; seed < 100; seed++) {
        auto alpha = Permutation::random(15, rng);
        auto r = route_product(alpha, k3, p5);
        ASSERT_TRUE(verify_routing(alpha, r.schedule).ok);
        ASSERT_LE(r.schedule.depth(), 2 * 2 + 5u);
    }
}

TEST(routing, route_expander_examples) {
    auto g = sample_expander(64, 4, 0.5, 1).first;
    for (auto strategy : {ExpanderStrategy::greedy, ExpanderStrategy::tree}) {
        ASSERT_EQ(route_expander(Permutation::identity(64), g, strategy).depth(), 0u);
        auto [u, v] = g.edges()[3];
        std::vector<uint32_t> m(64);
        for (uint32_t i = 0; i < 64; i++) {
            m[i] = i;
        }
        std::swap(m[u], m[v]);
        auto s = route_expander(Permutation(m), g, strategy);
        ASSERT_TRUE(verify_routing(Permutation(m), s).ok);
        if (strategy == ExpanderStrategy::greedy) {
            ASSERT_EQ(s.depth(), 1u);
        }
    }
    Graph two_parts(4, {{0, 1}, {2, 3}});
    ASSERT_THROW(route_expander(Permutation::identity(4), two_parts, ExpanderStrategy::tree), Error);
}

TEST(routing, route_expander_greedy_median_depth) {
    auto g = sample_expander(64, 4, 0.5, 1).first;
    std::mt19937_64 rng(3);
    std::vector<size_t> depths;
    for (int seed = 0; seed < 100; seed++) {
        auto alpha = Permutation::random(64, rng);
        auto s = route_expander(alpha, g, ExpanderStrategy::greedy, seed);
        ASSERT_TRUE(verify_routing(alpha, s).ok);
        depths.push_back(s.depth());
    }
    std::sort(depths.begin(), depths.end());
    size_t median = depths[depths.size() / 2];
    RecordProperty("median_depth", (int)median);
    ASSERT_LE(median, 60u);
}

TEST(routing, route_expander_tree_depth_bound) {
    std::mt19937_64 rng(4);
    std::vector<Graph> graphs{sample_expander(64, 4, 0.5, 2).first, make_path(20), make_nn2(5, 1),
                              make_complete(9)};
    for (const auto &g : graphs) {
        size_t m = g.vertex_count();
        for (int seed = 0; seed < 100; seed++) {
            auto alpha = Permutation::random(m, rng);
            auto s = route_expander(alpha, g, ExpanderStrategy::tree);
            ASSERT_TRUE(verify_routing(alpha, s).ok);
            ASSERT_LE(s.depth(), 3 * m);
        }
    }
}

TEST(routing, route_lattice_unit) {
    std::mt19937_64 rng(6);
    ASSERT_EQ(route_lattice(Permutation::identity(64), 8, 1, LatticeMode::unit, 0).depth(), 0u);
    for (size_t L : {4, 8, 16}) {
        for (int seed = 0; seed < 50; seed++) {
            auto alpha = Permutation::random(L * L, rng);
            auto s = route_lattice(alpha, L, 1, LatticeMode::unit, 0);
            ASSERT_TRUE(verify_routing(alpha, s).ok);
            ASSERT_LE(s.depth(), 3 * L);
        }
    }
}

TEST(routing, route_lattice_dense) {
    std::mt19937_64 rng(7);
    ASSERT_EQ(route_lattice(Permutation::identity(1024), 32, 4, LatticeMode::dense, 0).depth(), 0u);
    for (int seed = 0; seed < 50; seed++) {
        auto alpha = Permutation::random(1024, rng);
        auto s = route_lattice(alpha, 32, 4, LatticeMode::dense, 0);
        ASSERT_TRUE(verify_routing(alpha, s).ok);
        ASSERT_LE(s.depth(), 36u);
    }
    ASSERT_THROW(route_lattice(Permutation::identity(100), 10, 4, LatticeMode::dense, 0), Error);
    ASSERT_THROW(route_lattice(Permutation::identity(81), 9, 3, LatticeMode::dense, 0), Error);
}

TEST(routing, route_lattice_sparse) {
    std::mt19937_64 rng(8);
    auto sparse = build_sparse_router_graph(32, 8, 11);
    Router router = make_lattice_router(32, 8, LatticeMode::sparse, 11);
    ASSERT_EQ(router.graph->edges(), sparse.graph.edges());
    size_t worst = 0;
    for (int seed = 0; seed < 20; seed++) {
        auto alpha = Permutation::random(1024, rng);
        auto s = route_lattice(alpha, 32, 8, LatticeMode::sparse, 11);
        ASSERT_TRUE(verify_routing(alpha, s).ok);
        RoutingSchedule on_sparse{std::make_shared<const Graph>(sparse.graph), s.steps};
        ASSERT_TRUE(verify_routing(alpha, on_sparse).ok);
        worst = std::max(worst, s.depth());
    }
    RecordProperty("worst_depth", (int)worst);
    ASSERT_LE(worst, 60u);
}

TEST(routing, inversion_restores_identity) {
    std::mt19937_64 rng(9);
    for (int seed = 0; seed < 20; seed++) {
        auto alpha = Permutation::random(64, rng);
        auto forward = route_lattice(alpha, 8, 1, LatticeMode::unit, 0);
        // Pebbles now sit at alpha; route each position back to where its pebble started.
        auto back = route_lattice(alpha.inverse(), 8, 1, LatticeMode::unit, 0);
        auto steps = forward.steps;
        steps.insert(steps.end(), back.steps.begin(), back.steps.end());
        ASSERT_TRUE(realized_permutation(64, steps).is_identity());
    }
}

TEST(routing, verify_routing_diagnostics) {
    auto alpha = Permutation::from_one_based({2, 1, 3});
    RoutingSchedule s{std::make_shared<const Graph>(make_path(3)), {{{0, 1}}}};
    ASSERT_TRUE(verify_routing(alpha, s).ok);

    RoutingSchedule overlap{s.graph, {{{0, 1}, {1, 2}}}};
    auto v1 = verify_routing(alpha, overlap);
    ASSERT_FALSE(v1.ok);
    ASSERT_EQ(v1.diagnostic.substr(0, 12), "non-disjoint");

    RoutingSchedule far{s.graph, {{{0, 2}}}};
    auto v2 = verify_routing(Permutation::from_one_based({3, 2, 1}), far);
    ASSERT_FALSE(v2.ok);
    ASSERT_EQ(v2.diagnostic.substr(0, 8), "non-edge");

    auto v3 = verify_routing(Permutation::from_one_based({1, 3, 2}), s);
    ASSERT_FALSE(v3.ok);
    ASSERT_EQ(v3.diagnostic, "wrong permutation");
}

TEST(routing, schedule_text_round_trip) {
    auto alpha = Permutation::from_one_based({6, 7, 2, 5, 3, 4, 8, 1});
    auto s = route_path(alpha, 8);
    std::string text = s.to_text();
    std::string hash;
    auto back = RoutingSchedule::from_text(text, &hash);
    ASSERT_EQ(hash, s.graph->content_hash());
    ASSERT_EQ(back.steps, s.steps);
    back.graph = s.graph;
    ASSERT_EQ(back.to_text(), text);
    ASSERT_THROW(RoutingSchedule::from_text("route x 2\n0-1\n", nullptr), Error);
}

TEST(routing, property_suite_all_routers) {
    std::mt19937_64 rng(10);
    auto expander = sample_expander(16, 4, 0.5, 4).first;
    for (int seed = 0; seed < 100; seed++) {
        auto a8 = Permutation::random(8, rng);
        auto sp = route_path(a8, 8);
        ASSERT_TRUE(verify_routing(a8, sp).ok);
        ASSERT_LE(sp.depth(), 8u);
        auto sc = route_complete(a8, 8);
        ASSERT_TRUE(verify_routing(a8, sc).ok);
        ASSERT_LE(sc.depth(), 2u);
        auto a16 = Permutation::random(16, rng);
        ASSERT_TRUE(verify_routing(a16, route_expander(a16, expander, ExpanderStrategy::greedy, seed)).ok);
        ASSERT_TRUE(verify_routing(a16, route_expander(a16, expander, ExpanderStrategy::tree)).ok);
        auto a144 = Permutation::random(144, rng);
        ASSERT_TRUE(verify_routing(a144, route_lattice(a144, 12, 6, LatticeMode::sparse, 3)).ok);
        ASSERT_TRUE(verify_routing(a144, route_lattice(a144, 12, 6, LatticeMode::dense, 3)).ok);
    }
}
