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
#include <numeric>
#include <sstream>
#include <tuple>

#include "hiermem/error.h"

namespace hiermem {

Permutation::Permutation(std::vector<uint32_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (uint32_t v : map_) {
        if (v >= map_.size() || seen[v]) {
            throw Error("invalid-parameters", "not a bijection");
        }
        seen[v] = true;
    }
}

Permutation Permutation::identity(size_t n) {
    std::vector<uint32_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::from_one_based(const std::vector<uint32_t> &one_based) {
    std::vector<uint32_t> m;
    for (uint32_t v : one_based) {
        if (v == 0) {
            throw Error("invalid-parameters", "one-based permutation contains 0");
        }
        m.push_back(v - 1);
    }
    return Permutation(std::move(m));
}

Permutation Permutation::random(size_t n, std::mt19937_64 &rng) {
    std::vector<uint32_t> m(n);
    std::iota(m.begin(), m.end(), 0);
    std::shuffle(m.begin(), m.end(), rng);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<uint32_t> inv(map_.size());
    for (size_t i = 0; i < map_.size(); i++) {
        inv[map_[i]] = i;
    }
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < map_.size(); i++) {
        if (map_[i] != i) {
            return false;
        }
    }
    return true;
}

std::string RoutingSchedule::to_text() const {
    std::ostringstream out;
    out << "route " << (graph ? graph->content_hash() : std::string("none")) << " " << steps.size() << "\n";
    for (const auto &step : steps) {
        for (size_t i = 0; i < step.size(); i++) {
            if (i) {
                out << " ";
            }
            out << step[i].first << "-" << step[i].second;
        }
        out << "\n";
    }
    return out.str();
}

RoutingSchedule RoutingSchedule::from_text(const std::string &text, std::string *graph_hash) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) {
        throw Error("parse-error", "empty schedule");
    }
    std::istringstream hs(header);
    std::string word, hash;
    size_t depth;
    if (!(hs >> word >> hash >> depth) || word != "route") {
        throw Error("parse-error", "expected `route <graph-hash> <depth>` header");
    }
    if (graph_hash != nullptr) {
        *graph_hash = hash;
    }
    RoutingSchedule result;
    std::string line;
    while (std::getline(in, line)) {
        SimplePermutation step;
        std::istringstream ls(line);
        std::string token;
        while (ls >> token) {
            auto dash = token.find('-');
            if (dash == std::string::npos) {
                throw Error("parse-error", "bad transposition token: " + token);
            }
            try {
                step.emplace_back((uint32_t)std::stoul(token.substr(0, dash)),
                                  (uint32_t)std::stoul(token.substr(dash + 1)));
            } catch (const std::logic_error &) {
                throw Error("parse-error", "bad transposition token: " + token);
            }
        }
        result.steps.push_back(std::move(step));
    }
    if (result.steps.size() != depth) {
        throw Error("parse-error", "header depth does not match step count");
    }
    return result;
}

Permutation realized_permutation(size_t n, const std::vector<SimplePermutation> &steps) {
    std::vector<uint32_t> label(n);
    std::iota(label.begin(), label.end(), 0);
    for (const auto &step : steps) {
        for (const auto &[a, b] : step) {
            std::swap(label[a], label[b]);
        }
    }
    std::vector<uint32_t> out(n);
    for (size_t v = 0; v < n; v++) {
        out[label[v]] = v;
    }
    return Permutation(std::move(out));
}

std::vector<SimplePermutation> merge_parallel(const std::vector<std::vector<SimplePermutation>> &parts) {
    size_t depth = 0;
    for (const auto &p : parts) {
        depth = std::max(depth, p.size());
    }
    std::vector<SimplePermutation> out(depth);
    for (const auto &p : parts) {
        for (size_t t = 0; t < p.size(); t++) {
            out[t].insert(out[t].end(), p[t].begin(), p[t].end());
        }
    }
    return out;
}

void drop_empty_steps(std::vector<SimplePermutation> &steps) {
    steps.erase(std::remove_if(steps.begin(), steps.end(),
                               [](const SimplePermutation &s) {
                                   return s.empty();
                               }),
                steps.end());
}

RoutingSchedule Router::operator()(const Permutation &alpha) const {
    return RoutingSchedule{graph, route(alpha)};
}

namespace {

void check_size(const Permutation &alpha, size_t n) {
    if (alpha.size() != n) {
        throw Error("size-mismatch",
                    "permutation has " + std::to_string(alpha.size()) + " entries, expected " + std::to_string(n));
    }
}

std::vector<SimplePermutation> path_steps(const Permutation &alpha, const PathOptions &options) {
    size_t L = alpha.size();
    std::vector<uint32_t> dest = alpha.map();
    std::vector<SimplePermutation> steps;
    for (size_t t = 0; t < L; t++) {
        size_t start = t % 2 == 0 ? options.first_offset : 1 - options.first_offset;
        SimplePermutation step;
        for (size_t a = start; a + 1 < L; a += 2) {
            if (dest[a] > dest[a + 1]) {
                std::swap(dest[a], dest[a + 1]);
                step.emplace_back(a, a + 1);
            }
        }
        steps.push_back(std::move(step));
    }
    for (size_t i = 0; i < L; i++) {
        if (dest[i] != i) {
            throw Error("internal-error", "odd-even transposition routing did not finish");
        }
    }
    if (options.trim) {
        drop_empty_steps(steps);
    }
    return steps;
}

std::vector<SimplePermutation> complete_steps(const Permutation &alpha) {
    size_t m = alpha.size();
    SimplePermutation first, second;
    std::vector<bool> done(m, false);
    for (size_t s = 0; s < m; s++) {
        if (done[s]) {
            continue;
        }
        std::vector<uint32_t> cycle;
        for (uint32_t v = s; !done[v]; v = alpha[v]) {
            done[v] = true;
            cycle.push_back(v);
        }
        size_t k = cycle.size();
        for (size_t i = 0; i < k; i++) {
            size_t j1 = (k - i) % k;
            size_t j2 = (k + 1 - i) % k;
            if (i < j1) {
                first.emplace_back(cycle[i], cycle[j1]);
            }
            if (i < j2) {
                second.emplace_back(cycle[i], cycle[j2]);
            }
        }
    }
    std::vector<SimplePermutation> steps;
    if (!first.empty()) {
        steps.push_back(std::move(first));
    }
    if (!second.empty()) {
        steps.push_back(std::move(second));
    }
    return steps;
}

/// Kuhn augmenting-path perfect matching over alive edges of a bipartite multigraph.
class Matcher {
   public:
    Matcher(size_t n, const std::vector<std::pair<uint32_t, uint32_t>> &edges, const std::vector<bool> &alive)
        : n_(n), edges_(edges), alive_(alive), adj_(n), match_left_(n, UINT32_MAX), match_right_(n, UINT32_MAX),
          stamp_(n, 0) {
        for (size_t e = 0; e < edges.size(); e++) {
            if (alive[e]) {
                adj_[edges[e].first].push_back(e);
            }
        }
    }

    std::vector<uint32_t> perfect_matching() {
        for (size_t u = 0; u < n_; u++) {
            for (uint32_t e : adj_[u]) {
                uint32_t v = edges_[e].second;
                if (match_right_[v] == UINT32_MAX) {
                    match_left_[u] = e;
                    match_right_[v] = e;
                    break;
                }
            }
        }
        for (size_t u = 0; u < n_; u++) {
            if (match_left_[u] != UINT32_MAX) {
                continue;
            }
            round_++;
            if (!augment(u)) {
                throw Error("coloring-failure", "no perfect matching in regular multigraph");
            }
        }
        return match_left_;
    }

   private:
    bool augment(uint32_t u) {
        for (uint32_t e : adj_[u]) {
            uint32_t v = edges_[e].second;
            if (stamp_[v] == round_) {
                continue;
            }
            stamp_[v] = round_;
            if (match_right_[v] == UINT32_MAX || augment(edges_[match_right_[v]].first)) {
                match_left_[u] = e;
                match_right_[v] = e;
                return true;
            }
        }
        return false;
    }

    size_t n_;
    const std::vector<std::pair<uint32_t, uint32_t>> &edges_;
    const std::vector<bool> &alive_;
    std::vector<std::vector<uint32_t>> adj_;
    std::vector<uint32_t> match_left_;
    std::vector<uint32_t> match_right_;
    std::vector<uint64_t> stamp_;
    uint64_t round_ = 0;
};

}  // namespace

std::vector<uint32_t> edge_color_bipartite(const BipartiteMultigraph &b, size_t colors) {
    size_t n = std::max(b.left, b.right);
    std::vector<size_t> deg_l(n, 0), deg_r(n, 0);
    for (const auto &[u, v] : b.edges) {
        if (u >= b.left || v >= b.right) {
            throw Error("invalid-parameters", "bipartite edge endpoint out of range");
        }
        deg_l[u]++;
        deg_r[v]++;
    }
    for (size_t i = 0; i < n; i++) {
        if (deg_l[i] > colors || deg_r[i] > colors) {
            throw Error("degree-exceeds-colors", "vertex degree exceeds the color count");
        }
    }
    if (b.edges.empty()) {
        return {};
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges = b.edges;
    size_t j = 0;
    for (size_t i = 0; i < n; i++) {
        while (deg_l[i] < colors) {
            while (deg_r[j] >= colors) {
                j++;
            }
            size_t add = std::min(colors - deg_l[i], colors - deg_r[j]);
            for (size_t k = 0; k < add; k++) {
                edges.emplace_back(i, j);
            }
            deg_l[i] += add;
            deg_r[j] += add;
        }
    }
    std::vector<bool> alive(edges.size(), true);
    std::vector<uint32_t> color(b.edges.size(), UINT32_MAX);
    for (size_t c = 0; c < colors; c++) {
        Matcher matcher(n, edges, alive);
        auto match = matcher.perfect_matching();
        for (size_t u = 0; u < n; u++) {
            uint32_t e = match[u];
            alive[e] = false;
            if (e < b.edges.size()) {
                color[e] = c;
            }
        }
    }
    return color;
}

ProductRouting route_product(const Permutation &alpha, const Router &router1, const Router &router2) {
    size_t n1 = router1.graph->vertex_count();
    size_t n2 = router2.graph->vertex_count();
    check_size(alpha, n1 * n2);
    size_t n = n1 * n2;

    BipartiteMultigraph b{n2, n2, {}};
    b.edges.reserve(n);
    for (size_t p = 0; p < n; p++) {
        b.edges.emplace_back(p % n2, alpha[p] % n2);
    }
    std::vector<uint32_t> mid_row = n > 0 ? edge_color_bipartite(b, n1) : std::vector<uint32_t>{};

    // Column phase before: pebble p moves within its column from row p/n2 to mid_row[p].
    std::vector<std::vector<SimplePermutation>> parts;
    size_t pre_depth = 0;
    for (size_t col = 0; col < n2; col++) {
        std::vector<uint32_t> local(n1);
        for (size_t row = 0; row < n1; row++) {
            local[row] = mid_row[row * n2 + col];
        }
        auto steps = router1.route(Permutation(std::move(local)));
        pre_depth = std::max(pre_depth, steps.size());
        for (auto &step : steps) {
            for (auto &[a, c] : step) {
                a = a * n2 + col;
                c = c * n2 + col;
            }
        }
        parts.push_back(std::move(steps));
    }
    auto pre = merge_parallel(parts);
    parts.clear();

    // Row phase: in row mid_row[p], pebble p moves from its start column to its destination column.
    std::vector<std::vector<uint32_t>> row_local(n1, std::vector<uint32_t>(n2));
    for (size_t p = 0; p < n; p++) {
        row_local[mid_row[p]][p % n2] = alpha[p] % n2;
    }
    size_t row_depth = 0;
    for (size_t row = 0; row < n1; row++) {
        auto steps = router2.route(Permutation(std::move(row_local[row])));
        row_depth = std::max(row_depth, steps.size());
        for (auto &step : steps) {
            for (auto &[a, c] : step) {
                a = row * n2 + a;
                c = row * n2 + c;
            }
        }
        parts.push_back(std::move(steps));
    }
    auto mid = merge_parallel(parts);
    parts.clear();

    // Column phase after: in destination column, pebble moves from mid_row[p] to its destination row.
    std::vector<std::vector<uint32_t>> col_local(n2, std::vector<uint32_t>(n1));
    for (size_t p = 0; p < n; p++) {
        col_local[alpha[p] % n2][mid_row[p]] = alpha[p] / n2;
    }
    size_t post_depth = 0;
    for (size_t col = 0; col < n2; col++) {
        auto steps = router1.route(Permutation(std::move(col_local[col])));
        post_depth = std::max(post_depth, steps.size());
        for (auto &step : steps) {
            for (auto &[a, c] : step) {
                a = a * n2 + col;
                c = c * n2 + col;
            }
        }
        parts.push_back(std::move(steps));
    }
    auto post = merge_parallel(parts);

    ProductRouting result;
    result.pre_depth = pre_depth;
    result.row_depth = row_depth;
    result.post_depth = post_depth;
    auto &steps = result.schedule.steps;
    steps.insert(steps.end(), pre.begin(), pre.end());
    steps.insert(steps.end(), mid.begin(), mid.end());
    steps.insert(steps.end(), post.begin(), post.end());
    drop_empty_steps(steps);
    result.schedule.graph = std::make_shared<const Graph>(cartesian_product(*router1.graph, *router2.graph));
    return result;
}

RoutingSchedule route_path(const Permutation &alpha, size_t L, PathOptions options) {
    check_size(alpha, L);
    return RoutingSchedule{std::make_shared<const Graph>(make_path(L)), path_steps(alpha, options)};
}

RoutingSchedule route_complete(const Permutation &alpha, size_t m) {
    check_size(alpha, m);
    return RoutingSchedule{std::make_shared<const Graph>(make_complete(m)), complete_steps(alpha)};
}

namespace {

std::vector<SimplePermutation> compact_serial(size_t n, const std::vector<Transposition> &serial) {
    std::vector<size_t> ready(n, 0);
    std::vector<SimplePermutation> steps;
    for (const auto &[a, b] : serial) {
        size_t t = std::max(ready[a], ready[b]);
        if (t >= steps.size()) {
            steps.resize(t + 1);
        }
        steps[t].emplace_back(a, b);
        ready[a] = ready[b] = t + 1;
    }
    return steps;
}

std::vector<SimplePermutation> tree_steps(const Permutation &alpha, const Graph &g) {
    size_t m = g.vertex_count();
    std::vector<uint32_t> order, parent(m, UINT32_MAX), level(m, 0);
    std::vector<bool> seen(m, false);
    order.push_back(0);
    seen[0] = true;
    for (size_t i = 0; i < order.size(); i++) {
        uint32_t u = order[i];
        for (uint32_t v : g.adjacency()[u]) {
            if (!seen[v]) {
                seen[v] = true;
                parent[v] = u;
                level[v] = level[u] + 1;
                order.push_back(v);
            }
        }
    }
    std::vector<uint32_t> pebble_at(m), pos(m);
    std::iota(pebble_at.begin(), pebble_at.end(), 0);
    std::iota(pos.begin(), pos.end(), 0);
    Permutation inv = alpha.inverse();
    std::vector<Transposition> serial;
    for (size_t i = m; i-- > 1;) {
        uint32_t target = order[i];
        uint32_t u = pos[inv[target]];
        if (u == target) {
            continue;
        }
        std::vector<uint32_t> up, down;
        uint32_t a = u, b = target;
        while (a != b) {
            if (level[a] >= level[b]) {
                up.push_back(a);
                a = parent[a];
            } else {
                down.push_back(b);
                b = parent[b];
            }
        }
        up.push_back(a);
        up.insert(up.end(), down.rbegin(), down.rend());
        for (size_t k = 0; k + 1 < up.size(); k++) {
            uint32_t x = up[k], y = up[k + 1];
            serial.emplace_back(std::min(x, y), std::max(x, y));
            std::swap(pebble_at[x], pebble_at[y]);
            pos[pebble_at[x]] = x;
            pos[pebble_at[y]] = y;
        }
    }
    return compact_serial(m, serial);
}

std::vector<SimplePermutation> greedy_steps(const Permutation &alpha, const Graph &g, uint64_t seed) {
    size_t m = g.vertex_count();
    std::vector<std::vector<size_t>> dist(m);
    for (size_t v = 0; v < m; v++) {
        dist[v] = g.bfs_distances(v);
    }
    std::vector<uint32_t> dest = alpha.map();
    auto phi = [&]() {
        size_t total = 0;
        for (size_t v = 0; v < m; v++) {
            total += dist[v][dest[v]];
        }
        return total;
    };
    auto delta = [&](uint32_t u, uint32_t v) {
        return (long)(dist[v][dest[u]] + dist[u][dest[v]]) - (long)(dist[u][dest[u]] + dist[v][dest[v]]);
    };
    std::mt19937_64 rng(seed);
    std::vector<SimplePermutation> steps;
    size_t limit = 200 * m + 1000;
    while (phi() > 0) {
        if (steps.size() > limit) {
            throw Error("routing-failure", "greedy expander routing did not converge");
        }
        std::vector<std::pair<long, size_t>> improving;
        for (size_t e = 0; e < g.edges().size(); e++) {
            long dl = delta(g.edges()[e].first, g.edges()[e].second);
            if (dl < 0) {
                improving.emplace_back(dl, e);
            }
        }
        SimplePermutation step;
        if (!improving.empty()) {
            std::sort(improving.begin(), improving.end());
            std::vector<bool> used(m, false);
            for (const auto &[dl, e] : improving) {
                auto [u, v] = g.edges()[e];
                if (!used[u] && !used[v]) {
                    used[u] = used[v] = true;
                    step.emplace_back(u, v);
                }
            }
        } else {
            // Deadlock: break ties with the sum of squared distances, which forbids undoing the last move.
            auto delta_sq = [&](uint32_t u, uint32_t v) {
                auto sq = [](size_t x) {
                    return (long)(x * x);
                };
                return sq(dist[v][dest[u]]) + sq(dist[u][dest[v]]) - sq(dist[u][dest[u]]) - sq(dist[v][dest[v]]);
            };
            std::vector<std::tuple<long, long, size_t>> neutral;
            for (size_t e = 0; e < g.edges().size(); e++) {
                auto [u, v] = g.edges()[e];
                long ds = delta_sq(u, v);
                if (delta(u, v) <= 0 && ds < 0) {
                    neutral.emplace_back(ds, (long)(rng() & 0xffff), e);
                }
            }
            if (!neutral.empty()) {
                std::sort(neutral.begin(), neutral.end());
                std::vector<bool> used(m, false);
                for (const auto &[ds, tie, e] : neutral) {
                    auto [u, v] = g.edges()[e];
                    if (!used[u] && !used[v]) {
                        used[u] = used[v] = true;
                        step.emplace_back(u, v);
                    }
                }
            } else {
                // Every unsatisfied pebble's next hop holds another unsatisfied pebble, so following
                // next hops closes a cycle; rotating it brings each pebble on it home.
                auto next_hop = [&](uint32_t v) {
                    for (uint32_t w : g.adjacency()[v]) {
                        if (dist[w][dest[v]] + 1 == dist[v][dest[v]]) {
                            return w;
                        }
                    }
                    return v;
                };
                uint32_t start = 0;
                while (dist[start][dest[start]] == 0) {
                    start++;
                }
                std::vector<size_t> seen_at(m, SIZE_MAX);
                std::vector<uint32_t> walk;
                uint32_t v = start;
                while (seen_at[v] == SIZE_MAX) {
                    seen_at[v] = walk.size();
                    walk.push_back(v);
                    v = next_hop(v);
                }
                std::vector<uint32_t> cycle(walk.begin() + seen_at[v], walk.end());
                size_t k = cycle.size();
                std::vector<SimplePermutation> rotation;
                rotation.push_back({{std::min(cycle[k - 1], cycle[0]), std::max(cycle[k - 1], cycle[0])}});
                for (size_t j = k - 1; j >= 2; j--) {
                    rotation.push_back({{std::min(cycle[j], cycle[j - 1]), std::max(cycle[j], cycle[j - 1])}});
                }
                for (size_t r = 0; r + 1 < rotation.size(); r++) {
                    for (const auto &[x, y] : rotation[r]) {
                        std::swap(dest[x], dest[y]);
                    }
                    steps.push_back(std::move(rotation[r]));
                }
                step = std::move(rotation.back());
            }
        }
        for (const auto &[x, y] : step) {
            std::swap(dest[x], dest[y]);
        }
        steps.push_back(std::move(step));
    }
    std::vector<Transposition> serial;
    for (const auto &step : steps) {
        serial.insert(serial.end(), step.begin(), step.end());
    }
    return compact_serial(m, serial);
}

}  // namespace

RoutingSchedule route_expander(const Permutation &alpha, const Graph &g, ExpanderStrategy strategy,
                               uint64_t seed) {
    check_size(alpha, g.vertex_count());
    if (!g.is_connected()) {
        throw Error("disconnected-graph", "expander routing needs a connected graph");
    }
    RoutingSchedule out;
    out.graph = std::make_shared<const Graph>(g);
    out.steps = strategy == ExpanderStrategy::tree ? tree_steps(alpha, g) : greedy_steps(alpha, g, seed);
    return out;
}

LatticeMode parse_lattice_mode(const std::string &name) {
    if (name == "unit") {
        return LatticeMode::unit;
    }
    if (name == "dense") {
        return LatticeMode::dense;
    }
    if (name == "sparse") {
        return LatticeMode::sparse;
    }
    throw Error("invalid-mode-parameters", "unknown lattice mode `" + name + "`");
}

std::string lattice_mode_name(LatticeMode mode) {
    switch (mode) {
        case LatticeMode::unit:
            return "unit";
        case LatticeMode::dense:
            return "dense";
        case LatticeMode::sparse:
            return "sparse";
    }
    return "?";
}

Router make_path_router(size_t L, PathOptions options) {
    return Router{std::make_shared<const Graph>(make_path(L)), [L, options](const Permutation &alpha) {
                      check_size(alpha, L);
                      return path_steps(alpha, options);
                  }};
}

Router make_complete_router(size_t m) {
    return Router{std::make_shared<const Graph>(make_complete(m)), [m](const Permutation &alpha) {
                      check_size(alpha, m);
                      return complete_steps(alpha);
                  }};
}

Router make_expander_router(const Graph &g, ExpanderStrategy strategy, uint64_t seed) {
    auto graph = std::make_shared<const Graph>(g);
    return Router{graph, [graph, strategy, seed](const Permutation &alpha) {
                      return route_expander(alpha, *graph, strategy, seed).steps;
                  }};
}

Router make_product_router(const Router &router1, const Router &router2) {
    auto graph = std::make_shared<const Graph>(cartesian_product(*router1.graph, *router2.graph));
    return Router{graph, [router1, router2](const Permutation &alpha) {
                      return route_product(alpha, router1, router2).schedule.steps;
                  }};
}

Router make_relabeled_router(const Router &inner, std::vector<uint32_t> to_outer,
                             std::shared_ptr<const Graph> outer) {
    size_t n = to_outer.size();
    std::vector<uint32_t> to_inner(n);
    for (size_t i = 0; i < n; i++) {
        to_inner[to_outer[i]] = i;
    }
    return Router{outer, [inner, to_outer, to_inner](const Permutation &alpha) {
                      size_t n = to_outer.size();
                      check_size(alpha, n);
                      std::vector<uint32_t> local(n);
                      for (size_t i = 0; i < n; i++) {
                          local[i] = to_inner[alpha[to_outer[i]]];
                      }
                      auto steps = inner.route(Permutation(std::move(local)));
                      for (auto &step : steps) {
                          for (auto &[a, b] : step) {
                              a = to_outer[a];
                              b = to_outer[b];
                              if (a > b) {
                                  std::swap(a, b);
                              }
                          }
                      }
                      return steps;
                  }};
}

Router make_lattice_router(size_t L, size_t R, LatticeMode mode, uint64_t seed, PathOptions path_options) {
    if (L == 0) {
        throw Error("invalid-mode-parameters", "L must be positive");
    }
    if (mode == LatticeMode::unit) {
        Router path = make_path_router(L, path_options);
        return make_product_router(path, path);
    }
    if (R == 0 || R % 2 != 0 || L % R != 0) {
        throw Error("invalid-mode-parameters", "dense and sparse modes need even R dividing L");
    }
    size_t blocks = L / R;
    Router inner;
    if (mode == LatticeMode::dense || R < 6) {
        inner = make_complete_router(R);
    } else {
        Graph expander = sample_expander(R, 4, 0.5, seed).first;
        inner = make_expander_router(expander, ExpanderStrategy::greedy, seed);
    }
    // Product vertex (b, a) has index b*blocks + a; it sits at line position a*R + b.
    Router block_product = make_product_router(inner, make_path_router(blocks, path_options));
    std::vector<uint32_t> to_line(L);
    for (size_t b = 0; b < R; b++) {
        for (size_t a = 0; a < blocks; a++) {
            to_line[b * blocks + a] = a * R + b;
        }
    }
    auto axis = std::make_shared<const Graph>(embed_block_line(*inner.graph, blocks));
    Router line = make_relabeled_router(block_product, std::move(to_line), axis);
    Router grid = make_product_router(line, line);
    grid.graph = std::make_shared<const Graph>(grid_product(*axis));
    return grid;
}

RoutingSchedule route_lattice(const Permutation &alpha, size_t L, size_t R, LatticeMode mode, uint64_t seed) {
    Router router = make_lattice_router(L, R, mode, seed);
    check_size(alpha, L * L);
    RoutingSchedule out;
    out.steps = router.route(alpha);
    out.graph = std::make_shared<const Graph>(make_nn2(L, mode == LatticeMode::unit ? 1.0 : (double)R));
    return out;
}

RoutingVerdict verify_routing(const Permutation &alpha, const RoutingSchedule &schedule) {
    if (!schedule.graph) {
        return {false, "no graph attached to schedule"};
    }
    const Graph &g = *schedule.graph;
    size_t n = g.vertex_count();
    if (alpha.size() != n) {
        return {false, "wrong permutation: size differs from graph"};
    }
    std::vector<size_t> last_step(n, SIZE_MAX);
    for (size_t t = 0; t < schedule.steps.size(); t++) {
        for (const auto &[a, b] : schedule.steps[t]) {
            if (!g.has_edge(a, b)) {
                return {false, "non-edge: " + std::to_string(a) + "-" + std::to_string(b) + " at step " +
                                   std::to_string(t)};
            }
            if (last_step[a] == t || last_step[b] == t) {
                return {false, "non-disjoint: " + std::to_string(a) + "-" + std::to_string(b) + " at step " +
                                   std::to_string(t)};
            }
            last_step[a] = last_step[b] = t;
        }
    }
    if (realized_permutation(n, schedule.steps) != alpha) {
        return {false, "wrong permutation"};
    }
    return {true, ""};
}

}  // namespace hiermem
