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

#include "hiermem/graph.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>

#include "hiermem/error.h"

namespace hiermem {

namespace {

uint64_t edge_key(uint32_t u, uint32_t v) {
    if (u > v) {
        std::swap(u, v);
    }
    return ((uint64_t)u << 32) | v;
}

}  // namespace

Graph::Graph(size_t vertex_count, std::vector<std::pair<uint32_t, uint32_t>> edges,
             std::optional<std::vector<Coord>> coords)
    : n_(vertex_count), edges_(std::move(edges)), coords_(std::move(coords)) {
    for (auto &e : edges_) {
        if (e.first == e.second) {
            throw Error("invalid-parameters", "self-loop at vertex " + std::to_string(e.first));
        }
        if (e.first >= n_ || e.second >= n_) {
            throw Error("invalid-parameters", "edge endpoint out of range");
        }
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    if (coords_.has_value() && coords_->size() != n_) {
        throw Error("invalid-parameters", "coordinate count does not match vertex count");
    }
    adj_.resize(n_);
    edge_keys_.reserve(edges_.size() * 2);
    for (const auto &[u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        edge_keys_.insert(edge_key(u, v));
    }
    for (auto &a : adj_) {
        std::sort(a.begin(), a.end());
    }
}

bool Graph::has_edge(uint32_t u, uint32_t v) const {
    if (u == v || u >= n_ || v >= n_) {
        return false;
    }
    return edge_keys_.count(edge_key(u, v)) > 0;
}

size_t Graph::max_degree() const {
    size_t best = 0;
    for (const auto &a : adj_) {
        best = std::max(best, a.size());
    }
    return best;
}

std::vector<size_t> Graph::bfs_distances(uint32_t source) const {
    std::vector<size_t> dist(n_, SIZE_MAX);
    std::deque<uint32_t> queue;
    dist[source] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        uint32_t u = queue.front();
        queue.pop_front();
        for (uint32_t v : adj_[u]) {
            if (dist[v] == SIZE_MAX) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

bool Graph::is_connected() const {
    if (n_ == 0) {
        return true;
    }
    auto dist = bfs_distances(0);
    return std::none_of(dist.begin(), dist.end(), [](size_t d) {
        return d == SIZE_MAX;
    });
}

std::string Graph::to_text() const {
    std::ostringstream out;
    out << "graph " << n_ << "\n";
    for (const auto &[u, v] : edges_) {
        out << u << " " << v << "\n";
    }
    if (coords_.has_value()) {
        out << "coords\n";
        for (const auto &c : *coords_) {
            out << c.x << " " << c.y << "\n";
        }
    }
    return out.str();
}

Graph Graph::from_text(const std::string &text) {
    std::istringstream in(text);
    std::string word;
    size_t n;
    if (!(in >> word >> n) || word != "graph") {
        throw Error("parse-error", "expected `graph <n>` header");
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    std::optional<std::vector<Coord>> coords;
    std::string line;
    std::getline(in, line);
    bool in_coords = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line == "coords") {
            in_coords = true;
            coords.emplace();
            continue;
        }
        std::istringstream ls(line);
        if (in_coords) {
            Coord c;
            if (!(ls >> c.x >> c.y)) {
                throw Error("parse-error", "bad coordinate line: " + line);
            }
            coords->push_back(c);
        } else {
            uint32_t u, v;
            if (!(ls >> u >> v)) {
                throw Error("parse-error", "bad edge line: " + line);
            }
            edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges), std::move(coords));
}

std::string Graph::content_hash() const {
    return hex64(fnv1a64(to_text()));
}

bool Graph::operator==(const Graph &other) const {
    return n_ == other.n_ && edges_ == other.edges_ && coords_ == other.coords_;
}

Graph make_path(size_t L) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    std::vector<Coord> coords;
    for (size_t i = 0; i < L; i++) {
        coords.push_back({(int64_t)i + 1, 1});
        if (i + 1 < L) {
            edges.emplace_back(i, i + 1);
        }
    }
    return Graph(L, std::move(edges), std::move(coords));
}

Graph make_nn1(size_t L, size_t R) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    std::vector<Coord> coords;
    for (size_t i = 0; i < L; i++) {
        coords.push_back({(int64_t)i + 1, 1});
        for (size_t j = i + 1; j < L && j - i <= R; j++) {
            edges.emplace_back(i, j);
        }
    }
    return Graph(L, std::move(edges), std::move(coords));
}

Graph make_nn2(size_t L, double R) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    std::vector<Coord> coords;
    int64_t reach = (int64_t)std::floor(R);
    double r2 = R * R;
    for (size_t row = 0; row < L; row++) {
        for (size_t col = 0; col < L; col++) {
            coords.push_back({(int64_t)col + 1, (int64_t)row + 1});
            uint32_t u = row * L + col;
            for (int64_t dr = 0; dr <= reach; dr++) {
                for (int64_t dc = -reach; dc <= reach; dc++) {
                    if (dr == 0 && dc <= 0) {
                        continue;
                    }
                    if ((double)(dr * dr + dc * dc) > r2 + 1e-9) {
                        continue;
                    }
                    int64_t r2i = (int64_t)row + dr;
                    int64_t c2i = (int64_t)col + dc;
                    if (r2i < 0 || c2i < 0 || r2i >= (int64_t)L || c2i >= (int64_t)L) {
                        continue;
                    }
                    edges.emplace_back(u, r2i * L + c2i);
                }
            }
        }
    }
    return Graph(L * L, std::move(edges), std::move(coords));
}

Graph make_complete(size_t m) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (size_t i = 0; i < m; i++) {
        for (size_t j = i + 1; j < m; j++) {
            edges.emplace_back(i, j);
        }
    }
    return Graph(m, std::move(edges));
}

Graph cartesian_product(const Graph &g1, const Graph &g2) {
    size_t n1 = g1.vertex_count();
    size_t n2 = g2.vertex_count();
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    edges.reserve(g1.edges().size() * n2 + g2.edges().size() * n1);
    for (size_t u1 = 0; u1 < n1; u1++) {
        for (const auto &[a, b] : g2.edges()) {
            edges.emplace_back(u1 * n2 + a, u1 * n2 + b);
        }
    }
    for (const auto &[a, b] : g1.edges()) {
        for (size_t u2 = 0; u2 < n2; u2++) {
            edges.emplace_back(a * n2 + u2, b * n2 + u2);
        }
    }
    return Graph(n1 * n2, std::move(edges));
}

namespace {

bool is_regular(const Graph &g, size_t *degree) {
    if (g.vertex_count() == 0) {
        *degree = 0;
        return true;
    }
    size_t d = g.degree(0);
    for (size_t v = 0; v < g.vertex_count(); v++) {
        if (g.degree(v) != d) {
            return false;
        }
    }
    *degree = d;
    return true;
}

double lambda_dense(const Graph &g) {
    size_t n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto &[u, v] : g.edges()) {
        a(u, v) = 1;
        a(v, u) = 1;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = solver.eigenvalues();
    // Eigenvalues are ascending; the principal one is the last.
    double best = 0;
    for (size_t i = 0; i + 1 < n; i++) {
        best = std::max(best, std::abs(ev[i]));
    }
    return best;
}

double lambda_iterative(const Graph &g) {
    size_t n = g.vertex_count();
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal;
    Eigen::VectorXd x(n);
    for (size_t i = 0; i < n; i++) {
        x[i] = normal(rng);
    }
    auto deflate = [&](Eigen::VectorXd &v) {
        v.array() -= v.mean();
    };
    auto apply = [&](const Eigen::VectorXd &v) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
        for (const auto &[a, b] : g.edges()) {
            out[a] += v[b];
            out[b] += v[a];
        }
        return out;
    };
    deflate(x);
    x.normalize();
    // Power iteration on A^2 restricted to the complement of the all-ones vector.
    double estimate = 0;
    for (int iter = 0; iter < 20000; iter++) {
        Eigen::VectorXd y = apply(apply(x));
        deflate(y);
        double norm = y.norm();
        if (norm == 0) {
            return 0;
        }
        double next = std::sqrt(norm);
        y /= norm;
        x = y;
        if (iter > 50 && std::abs(next - estimate) < 1e-12) {
            estimate = next;
            break;
        }
        estimate = next;
    }
    return estimate;
}

}  // namespace

double spectral_lambda(const Graph &g) {
    size_t d;
    if (!is_regular(g, &d)) {
        throw Error("non-regular-graph", "spectral_lambda requires a regular graph");
    }
    if (g.vertex_count() <= 1) {
        return 0;
    }
    if (g.vertex_count() <= 4096) {
        return lambda_dense(g);
    }
    return lambda_iterative(g);
}

std::pair<Graph, ExpanderCertificate> sample_expander(
    size_t m, size_t d, double epsilon, uint64_t seed, size_t max_tries) {
    if (m % 2 != 0 || d % 2 != 0 || d < 4 || m <= d) {
        throw Error("invalid-parameters", "sample_expander needs even m > d and even d >= 4");
    }
    double threshold = 2 * std::sqrt((double)d - 1) + epsilon;
    std::mt19937_64 rng(seed);
    std::vector<uint32_t> points(m * d);
    for (size_t tries = 1; tries <= max_tries; tries++) {
        for (size_t i = 0; i < points.size(); i++) {
            points[i] = i / d;
        }
        std::shuffle(points.begin(), points.end(), rng);
        std::unordered_set<uint64_t> seen;
        std::vector<std::pair<uint32_t, uint32_t>> edges;
        bool simple = true;
        for (size_t i = 0; i < points.size(); i += 2) {
            uint32_t u = points[i], v = points[i + 1];
            if (u == v || !seen.insert(edge_key(u, v)).second) {
                simple = false;
                break;
            }
            edges.emplace_back(u, v);
        }
        if (!simple) {
            continue;
        }
        Graph g(m, std::move(edges));
        double lambda = spectral_lambda(g);
        if (lambda <= threshold) {
            return {std::move(g), ExpanderCertificate{m, d, lambda, threshold, tries}};
        }
    }
    throw Error("certification-failure", "no certified expander within max_tries");
}

Graph embed_block_line(const Graph &inner, size_t blocks) {
    size_t R = inner.vertex_count();
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    std::vector<Coord> coords;
    for (size_t a = 0; a < blocks; a++) {
        for (const auto &[u, v] : inner.edges()) {
            edges.emplace_back(a * R + u, a * R + v);
        }
        if (a + 1 < blocks) {
            for (size_t b = 0; b < R; b++) {
                edges.emplace_back(a * R + b, (a + 1) * R + b);
            }
        }
    }
    for (size_t i = 0; i < blocks * R; i++) {
        coords.push_back({(int64_t)i + 1, 1});
    }
    return Graph(blocks * R, std::move(edges), std::move(coords));
}

Graph grid_product(const Graph &axis) {
    size_t L = axis.vertex_count();
    Graph product = cartesian_product(axis, axis);
    std::vector<Coord> coords;
    for (size_t row = 0; row < L; row++) {
        for (size_t col = 0; col < L; col++) {
            coords.push_back({(int64_t)col + 1, (int64_t)row + 1});
        }
    }
    return Graph(L * L, product.edges(), std::move(coords));
}

SparseRouterGraph build_sparse_router_graph(size_t L, size_t R, uint64_t seed) {
    if (R == 0 || R % 2 != 0 || L % R != 0) {
        throw Error("invalid-parameters", "R must be even and divide L");
    }
    Graph inner;
    bool fallback = false;
    if (R >= 6) {
        inner = sample_expander(R, 4, 0.5, seed).first;
    } else {
        inner = make_complete(R);
        fallback = true;
    }
    Graph axis = embed_block_line(inner, L / R);
    Graph graph = grid_product(axis);
    return SparseRouterGraph{std::move(graph), std::move(axis), std::move(inner), fallback};
}

}  // namespace hiermem
