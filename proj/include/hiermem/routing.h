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

#ifndef HIERMEM_ROUTING_H
#define HIERMEM_ROUTING_H

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hiermem/graph.h"

namespace hiermem {

/// One-line notation: the pebble starting at vertex i must end at vertex map()[i].
class Permutation {
   public:
    Permutation() = default;
    explicit Permutation(std::vector<uint32_t> map);
    static Permutation identity(size_t n);
    /// From 1-indexed one-line notation such as (6 7 2 5 3 4 8 1).
    static Permutation from_one_based(const std::vector<uint32_t> &one_based);
    static Permutation random(size_t n, std::mt19937_64 &rng);

    size_t size() const {
        return map_.size();
    }
    uint32_t operator[](size_t i) const {
        return map_[i];
    }
    const std::vector<uint32_t> &map() const {
        return map_;
    }
    Permutation inverse() const;
    bool is_identity() const;
    bool operator==(const Permutation &other) const = default;

   private:
    std::vector<uint32_t> map_;
};

using Transposition = std::pair<uint32_t, uint32_t>;
/// Disjoint edge transpositions executed in one parallel step.
using SimplePermutation = std::vector<Transposition>;

struct RoutingSchedule {
    std::shared_ptr<const Graph> graph;
    std::vector<SimplePermutation> steps;

    size_t depth() const {
        return steps.size();
    }
    /// Text form: header `route <graph-hash> <depth>`, then one line of `u-v` tokens per step.
    std::string to_text() const;
    /// Parses steps; the graph hash in the header is returned through expected_hash.
    static RoutingSchedule from_text(const std::string &text, std::string *graph_hash);
};

/// Applies steps to the identity labeling and returns where each starting pebble ended.
Permutation realized_permutation(size_t n, const std::vector<SimplePermutation> &steps);

/// Merges per-part schedules step by step (parts act on disjoint vertex sets).
std::vector<SimplePermutation> merge_parallel(const std::vector<std::vector<SimplePermutation>> &parts);
void drop_empty_steps(std::vector<SimplePermutation> &steps);

using RouteFn = std::function<std::vector<SimplePermutation>(const Permutation &)>;

struct Router {
    std::shared_ptr<const Graph> graph;
    RouteFn route;
    RoutingSchedule operator()(const Permutation &alpha) const;
};

struct PathOptions {
    /// Offset of the first phase's pairs: 0 starts with (0,1),(2,3),...; 1 with (1,2),(3,4),...
    size_t first_offset = 0;
    /// Drops empty phases; when false exactly L phases are returned.
    bool trim = true;
};

RoutingSchedule route_path(const Permutation &alpha, size_t L, PathOptions options = {});
RoutingSchedule route_complete(const Permutation &alpha, size_t m);

struct ProductRouting {
    RoutingSchedule schedule;
    size_t pre_depth = 0;
    size_t row_depth = 0;
    size_t post_depth = 0;
};

/// Bipartite multigraph with `left` and `right` vertex counts.
struct BipartiteMultigraph {
    size_t left = 0;
    size_t right = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges;
};

/// Proper edge coloring with at most `colors` colors, by padding to a regular
/// multigraph and peeling perfect matchings.
std::vector<uint32_t> edge_color_bipartite(const BipartiteMultigraph &b, size_t colors);

/// Vertex (v1, v2) has index v1*|V2| + v2. Columns are V1 x {v2} and are routed by router1.
ProductRouting route_product(const Permutation &alpha, const Router &router1, const Router &router2);

enum class ExpanderStrategy { greedy, tree };

RoutingSchedule route_expander(const Permutation &alpha, const Graph &g, ExpanderStrategy strategy,
                               uint64_t seed = 0);

enum class LatticeMode { unit, dense, sparse };

LatticeMode parse_lattice_mode(const std::string &name);
std::string lattice_mode_name(LatticeMode mode);

Router make_path_router(size_t L, PathOptions options = {});
Router make_complete_router(size_t m);
Router make_expander_router(const Graph &g, ExpanderStrategy strategy, uint64_t seed);
Router make_product_router(const Router &router1, const Router &router2);
/// Routes on `outer` through `inner`, where to_outer[i] is the outer vertex of inner vertex i.
Router make_relabeled_router(const Router &inner, std::vector<uint32_t> to_outer,
                             std::shared_ptr<const Graph> outer);

/// Router for [L]x[L] permutations whose every transposition is an edge of nn2(L, R).
/// The router's graph is the product graph actually used.
Router make_lattice_router(size_t L, size_t R, LatticeMode mode, uint64_t seed,
                           PathOptions path_options = {});

/// Routes on [L]x[L]; the returned schedule's graph is nn2(L, R) (nn2(L, 1) in unit mode).
RoutingSchedule route_lattice(const Permutation &alpha, size_t L, size_t R, LatticeMode mode,
                              uint64_t seed);

struct RoutingVerdict {
    bool ok = true;
    std::string diagnostic;
};

RoutingVerdict verify_routing(const Permutation &alpha, const RoutingSchedule &schedule);

}  // namespace hiermem

#endif
