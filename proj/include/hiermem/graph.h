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

#ifndef HIERMEM_GRAPH_H
#define HIERMEM_GRAPH_H

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hiermem {

struct Coord {
    int64_t x;
    int64_t y;
    bool operator==(const Coord &other) const = default;
};

/// Simple undirected graph with a canonical sorted edge list (u < v).
class Graph {
   public:
    Graph() = default;
    /// Builds a graph; edges are normalized, sorted and deduplicated. Self-loops are rejected.
    Graph(size_t vertex_count, std::vector<std::pair<uint32_t, uint32_t>> edges,
          std::optional<std::vector<Coord>> coords = std::nullopt);

    size_t vertex_count() const {
        return n_;
    }
    const std::vector<std::pair<uint32_t, uint32_t>> &edges() const {
        return edges_;
    }
    const std::optional<std::vector<Coord>> &coords() const {
        return coords_;
    }
    const std::vector<std::vector<uint32_t>> &adjacency() const {
        return adj_;
    }
    bool has_edge(uint32_t u, uint32_t v) const;
    size_t degree(uint32_t v) const {
        return adj_[v].size();
    }
    size_t max_degree() const;
    bool is_connected() const;
    /// Breadth-first distances from a source; unreachable vertices get SIZE_MAX.
    std::vector<size_t> bfs_distances(uint32_t source) const;

    /// Edge-list text: `graph <n>`, one `u v` per edge, then `coords` and one `x y` per vertex.
    std::string to_text() const;
    static Graph from_text(const std::string &text);
    /// FNV-1a hash of to_text().
    std::string content_hash() const;

    bool operator==(const Graph &other) const;

   private:
    size_t n_ = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges_;
    std::optional<std::vector<Coord>> coords_;
    std::vector<std::vector<uint32_t>> adj_;
    std::unordered_set<uint64_t> edge_keys_;
};

Graph make_path(size_t L);
Graph make_nn1(size_t L, size_t R);
/// Vertices of [L]x[L] indexed row-major: index = row*L + col, coords (col+1, row+1).
Graph make_nn2(size_t L, double R);
Graph make_complete(size_t m);

/// Vertex (u1, u2) of the product has index u1*|V2| + u2. No coordinates are attached.
Graph cartesian_product(const Graph &g1, const Graph &g2);

struct ExpanderCertificate {
    size_t m;
    size_t d;
    double lambda;
    double threshold;
    size_t tries;
};

/// Uniform simple d-regular graph from the pairing model, resampled until
/// the second eigenvalue magnitude is at most 2*sqrt(d-1)+epsilon.
std::pair<Graph, ExpanderCertificate> sample_expander(
    size_t m, size_t d, double epsilon, uint64_t seed, size_t max_tries = 10000);

/// Max |eigenvalue| over the non-principal spectrum of a regular graph.
double spectral_lambda(const Graph &g);

struct SparseRouterGraph {
    Graph graph;
    /// One-dimensional factor on [L]: embedding of inner x path(L/R).
    Graph axis;
    /// The R-vertex inner factor (certified expander, or K_R when R < 6).
    Graph inner;
    bool complete_fallback;
};

/// Embeds inner x path(blocks) onto a line of blocks*|inner| positions via (a, b) -> a*R + b.
Graph embed_block_line(const Graph &inner, size_t blocks);

/// Two-axis product of the embedded line graph, as a graph on [L]x[L].
Graph grid_product(const Graph &axis);

SparseRouterGraph build_sparse_router_graph(size_t L, size_t R, uint64_t seed);

}  // namespace hiermem

#endif
