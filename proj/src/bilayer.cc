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

#include "hiermem/bilayer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "hiermem/error.h"

namespace hiermem {

size_t tile_side(size_t d_l) {
    if (d_l == 0) {
        throw Error("invalid-argument", "d_l must be positive");
    }
    uint64_t target = 2 * (uint64_t)d_l * d_l - 1;
    uint64_t s = (uint64_t)std::sqrt((double)target);
    while (s * s < target) {
        s++;
    }
    while (s > 0 && (s - 1) * (s - 1) >= target) {
        s--;
    }
    return s;
}

size_t physical_qubit_count(size_t L, size_t d_l) {
    if (L == 0) {
        throw Error("invalid-argument", "L must be positive");
    }
    size_t e = tile_side(d_l) + 1;
    return 2 * e * e * (L + 1) * (L + 1);
}

TileLayout tile_layout(size_t L, size_t d_l) {
    TileLayout t;
    t.L = L;
    t.d_l = d_l;
    t.ell = tile_side(d_l);
    t.physical_qubits = physical_qubit_count(L, d_l);
    return t;
}

size_t t_route(size_t d_l, size_t L) {
    if (d_l == 0 || L == 0) {
        throw Error("invalid-argument", "t_route needs d_l >= 1 and L >= 1");
    }
    return (2 * d_l + 1) * (3 * L - 3) + 8;
}

SwapPrimitiveDepths swap_primitive_depths(size_t d_l) {
    if (d_l == 0) {
        throw Error("invalid-argument", "d_l must be positive");
    }
    return {3, d_l, 2 * d_l + 9};
}

size_t logical_route_depth(size_t L, size_t d_l, size_t R, double c_sparse) {
    if (L == 0 || d_l == 0 || R == 0) {
        throw Error("invalid-argument", "logical_route_depth needs L, d_l, R >= 1");
    }
    if (!(c_sparse >= 0)) {
        throw Error("invalid-argument", "c_sparse must be nonnegative");
    }
    size_t ell = tile_side(d_l);
    size_t per_swap = (2 * d_l + R - 1) / R + 1;
    size_t layers = 3 * L - 3;
    if (R >= ell) {
        for (size_t r1 = 1; r1 <= R / ell; r1++) {
            size_t lg = 0;
            while (((size_t)1 << lg) < r1) {
                lg++;
            }
            size_t cand = 3 * ((L + r1 - 1) / r1) + (size_t)std::ceil(c_sparse * (double)(lg * lg));
            layers = std::min(layers, cand);
        }
    }
    return per_swap * layers + 8;
}

HierarchicalParams hierarchical_params(uint64_t n, uint64_t k, uint64_t d, uint64_t d_l) {
    if (n == 0 || k == 0 || d == 0 || d_l == 0) {
        throw Error("invalid-argument", "code parameters must be positive");
    }
    if (k > n) {
        throw Error("invalid-argument", "k exceeds n");
    }
    HierarchicalParams h;
    h.n = n;
    h.k = k;
    h.d = d;
    h.d_l = d_l;
    h.N = n * d_l * d_l;
    h.K = k;
    h.D = d * d_l;
    return h;
}

std::pair<size_t, size_t> biased_tile_dims(size_t d_z, double eta, double p) {
    if (!(p > 0 && p < 1)) {
        throw Error("invalid-p", "p must lie in (0, 1)");
    }
    if (d_z == 0 || !(eta >= 1)) {
        throw Error("invalid-argument", "need d_z >= 1 and eta >= 1");
    }
    double extra = 2 * std::log(eta) / std::log(1 / p);
    // Absorb rounding so that exact ratios such as eta = 1/p give an integer.
    size_t add = (size_t)std::max(0.0, std::ceil(extra - 1e-9));
    return {d_z + add, d_z};
}

namespace {

struct Vec2 {
    int64_t x = 0;
    int64_t y = 0;
    Vec2 operator+(Vec2 o) const {
        return {x + o.x, y + o.y};
    }
    Vec2 operator-(Vec2 o) const {
        return {x - o.x, y - o.y};
    }
    Vec2 operator-() const {
        return {-x, -y};
    }
    Vec2 operator*(int64_t s) const {
        return {x * s, y * s};
    }
    bool operator==(const Vec2 &o) const = default;
};

struct Site {
    int layer = 0;
    Vec2 p;
};

// One logical SWAP layer: pairs of slots exchanged along one axis.
struct LogicalLayer {
    bool horizontal = false;
    int dir = 1;
    std::vector<Transposition> top;
    std::vector<Transposition> bottom;
};

class TileSim {
   public:
    TileSim(size_t L, size_t d_l) : L_(L), d_(d_l) {
        W_ = 2 * (int64_t)d_l;
        H_ = (int64_t)d_l + (int64_t)(d_l % 2);
        for (int64_t y = 0; y < (int64_t)d_l; y++) {
            for (int64_t x = 0; x < W_; x++) {
                if ((x + y) % 2 == 0) {
                    rel_.push_back({x, y});
                }
            }
        }
        size_t slots = L * L;
        slot_tile_[0].resize(slots);
        slot_tile_[1].resize(slots);
        pos_.resize(2 * slots * rel_.size());
        for (int layer = 0; layer < 2; layer++) {
            for (size_t s = 0; s < slots; s++) {
                uint32_t tile = (uint32_t)(layer * slots + s);
                slot_tile_[layer][s] = tile;
                for (size_t i = 0; i < rel_.size(); i++) {
                    Site site{layer, origin(s) + rel_[i]};
                    size_t q = tile * rel_.size() + i;
                    pos_[q] = site;
                    at_[key(site)] = (uint32_t)q;
                    touched_.insert(key(site));
                }
            }
        }
    }

    size_t depth() const {
        return depth_;
    }
    size_t touched() const {
        return touched_.size();
    }
    std::vector<std::string> &violations() {
        return violations_;
    }

    // Tile at every logical slot; while staggered the layers are exchanged on S.
    std::vector<uint32_t> table() const {
        std::vector<uint32_t> out(slot_tile_[0]);
        out.insert(out.end(), slot_tile_[1].begin(), slot_tile_[1].end());
        if (staggered_) {
            for (size_t s = 0; s < L_ * L_; s++) {
                if (in_s(s)) {
                    std::swap(out[s], out[L_ * L_ + s]);
                }
            }
        }
        return out;
    }

    bool in_s(size_t slot) const {
        return (slot / L_ + slot % L_) % 2 == 1;
    }

    // Aligned to staggered; swaps the layers at every slot in S.
    void stagger_in() {
        shift_layers({1, 0}, {0, 0});
        exchange(s_pairs());
        staggered_ = true;
    }

    // Staggered to aligned; undoes stagger_in.
    void stagger_out() {
        exchange(s_pairs());
        Vec2 t = disp_[1];
        Vec2 b = disp_[0];
        shift_layers(-t, -b);
        staggered_ = false;
    }

    // Aligned to aligned in three steps; exchanges the stacked pairs.
    void staggered_swap(const std::vector<std::pair<size_t, size_t>> &pairs) {
        shift_layers({1, 0}, {0, 0});
        exchange(pairs);
        shift_layers(-disp_rel(1), -disp_rel(0));
    }

    void walk(bool horizontal, int dir, bool back) {
        int sign = back ? -dir : dir;
        int64_t steps = horizontal ? d_ : H_ / 2;
        Vec2 e = horizontal ? Vec2{sign, 0} : Vec2{0, sign};
        for (int64_t i = 0; i < steps; i++) {
            shift_layers(e, -e);
        }
        if (back) {
            walk_ = 0;
        } else {
            walk_ = dir;
            walk_horizontal_ = horizontal;
        }
    }

    // Stacked (top slot, bottom slot) pairs realizing the layer's transpositions.
    std::vector<std::pair<size_t, size_t>> stacked_pairs(const LogicalLayer &layer) {
        std::vector<std::pair<size_t, size_t>> out;
        int64_t unit = layer.horizontal ? 1 : (int64_t)L_;
        auto add = [&](Transposition t, bool top) {
            size_t a = t.first;
            size_t b = t.second;
            // The physical top holds top tiles outside S and bottom tiles inside S.
            size_t p = (in_s(a) != top) ? a : b;
            size_t q = p == a ? b : a;
            if ((int64_t)q - (int64_t)p != layer.dir * unit) {
                violations_.push_back("internal: transposition " + std::to_string(a) + "-" + std::to_string(b) +
                                      " is not stacked by the walk");
                return;
            }
            out.push_back({p, q});
        };
        for (auto t : layer.top) {
            add(t, true);
        }
        for (auto t : layer.bottom) {
            add(t, false);
        }
        return out;
    }

    // One step in the staggered state: vertical SWAPs for selected stacked pairs, unit shifts for the rest.
    void exchange(const std::vector<std::pair<size_t, size_t>> &pairs) {
        std::vector<char> top_sel(L_ * L_, 0);
        std::vector<char> bottom_sel(L_ * L_, 0);
        Vec2 delta;
        bool have_delta = false;
        for (auto [p, q] : pairs) {
            top_sel[p] = 1;
            bottom_sel[q] = 1;
            Vec2 dlt = origin(q) + disp_[0] - origin(p) - disp_[1];
            if (have_delta && !(dlt == delta)) {
                violations_.push_back("internal: inconsistent stacking offset");
            }
            delta = dlt;
            have_delta = true;
        }
        if (!have_delta) {
            delta = disp_[0] - disp_[1] + partner_offset();
        }
        if (std::llabs(delta.x) + std::llabs(delta.y) != 1) {
            violations_.push_back("internal: layers are not staggered before an exchange");
        }
        std::vector<std::pair<Site, Site>> step;
        for (size_t s = 0; s < L_ * L_; s++) {
            for (int layer = 0; layer < 2; layer++) {
                bool sel = layer == 1 ? top_sel[s] : bottom_sel[s];
                uint32_t tile = slot_tile_[layer][s];
                for (size_t i = 0; i < rel_.size(); i++) {
                    Site a = pos_[tile * rel_.size() + i];
                    if (sel) {
                        step.push_back({a, Site{1 - a.layer, a.p}});
                    } else {
                        Vec2 e = layer == 1 ? delta : -delta;
                        step.push_back({a, Site{a.layer, a.p + e}});
                    }
                }
            }
        }
        apply(step);
        for (auto [p, q] : pairs) {
            std::swap(slot_tile_[1][p], slot_tile_[0][q]);
        }
        disp_[1] = disp_[1] + delta;
        disp_[0] = disp_[0] - delta;
    }

    // (c): every data qubit sits where alpha sends its tile, with the layers aligned.
    void check_final(const Permutation &alpha) {
        size_t slots = L_ * L_;
        for (uint32_t tile = 0; tile < 2 * slots; tile++) {
            uint32_t dest = alpha[tile];
            int layer = (int)(dest / slots);
            size_t slot = dest % slots;
            for (size_t i = 0; i < rel_.size(); i++) {
                Site s = pos_[tile * rel_.size() + i];
                Vec2 want = origin(slot) + rel_[i];
                if (s.layer != layer || !(s.p == want)) {
                    violations_.push_back("(c) tile " + std::to_string(tile) + " does not reach its destination");
                    return;
                }
            }
        }
    }

   private:
    static uint64_t key(const Site &s) {
        const int64_t off = (int64_t)1 << 28;
        return ((uint64_t)s.layer << 62) | ((uint64_t)(s.p.x + off) << 31) | (uint64_t)(s.p.y + off);
    }

    Vec2 origin(size_t slot) const {
        return {(int64_t)(slot % L_) * W_, (int64_t)(slot / L_) * H_};
    }

    // Offset of a layer relative to the other one, excluding the walk.
    Vec2 disp_rel(int layer) const {
        Vec2 w = walk_offset(layer);
        return disp_[layer] - w;
    }

    Vec2 walk_offset(int layer) const {
        if (walk_ == 0) {
            return {0, 0};
        }
        int sign = layer == 1 ? walk_ : -walk_;
        return walk_horizontal_ ? Vec2{sign * d_, 0} : Vec2{0, sign * (H_ / 2)};
    }

    Vec2 partner_offset() const {
        if (walk_ == 0) {
            return {0, 0};
        }
        return walk_horizontal_ ? Vec2{walk_ * W_, 0} : Vec2{0, walk_ * H_};
    }

    std::vector<std::pair<size_t, size_t>> s_pairs() const {
        std::vector<std::pair<size_t, size_t>> out;
        for (size_t s = 0; s < L_ * L_; s++) {
            if (in_s(s)) {
                out.push_back({s, s});
            }
        }
        return out;
    }

    void shift_layers(Vec2 top, Vec2 bottom) {
        std::vector<std::pair<Site, Site>> step;
        for (size_t q = 0; q < pos_.size(); q++) {
            Vec2 e = pos_[q].layer == 1 ? top : bottom;
            if (!(e == Vec2{0, 0})) {
                step.push_back({pos_[q], Site{pos_[q].layer, pos_[q].p + e}});
            }
        }
        if (!step.empty()) {
            apply(step);
        }
        disp_[1] = disp_[1] + top;
        disp_[0] = disp_[0] + bottom;
    }

    void apply(const std::vector<std::pair<Site, Site>> &step) {
        depth_++;
        std::unordered_set<uint64_t> used;
        std::vector<std::pair<uint64_t, uint32_t>> moved;
        for (auto &[a, b] : step) {
            uint64_t ka = key(a);
            uint64_t kb = key(b);
            bool adjacent = a.layer != b.layer ? a.p == b.p : std::llabs(a.p.x - b.p.x) + std::llabs(a.p.y - b.p.y) == 1;
            if (!adjacent) {
                violations_.push_back("(a) non-adjacent SWAP at step " + std::to_string(depth_));
            }
            if (!used.insert(ka).second || !used.insert(kb).second) {
                violations_.push_back("(a) qubit in two SWAPs at step " + std::to_string(depth_));
                continue;
            }
            auto ia = at_.find(ka);
            auto ib = at_.find(kb);
            if (ia != at_.end() && ib != at_.end()) {
                uint32_t ta = ia->second / (uint32_t)rel_.size();
                uint32_t tb = ib->second / (uint32_t)rel_.size();
                if (ta != tb) {
                    violations_.push_back("(b) data qubits of tiles " + std::to_string(ta) + " and " +
                                          std::to_string(tb) + " swapped at step " + std::to_string(depth_));
                }
            }
            touched_.insert(ka);
            touched_.insert(kb);
            if (ia != at_.end()) {
                moved.push_back({kb, ia->second});
                pos_[ia->second] = b;
            }
            if (ib != at_.end()) {
                moved.push_back({ka, ib->second});
                pos_[ib->second] = a;
            }
        }
        for (auto &[a, b] : step) {
            at_.erase(key(a));
            at_.erase(key(b));
        }
        for (auto &[k, q] : moved) {
            at_[k] = q;
        }
    }

    size_t L_;
    int64_t d_;
    int64_t W_ = 0;
    int64_t H_ = 0;
    std::vector<Vec2> rel_;
    std::vector<uint32_t> slot_tile_[2];
    std::vector<Site> pos_;
    std::unordered_map<uint64_t, uint32_t> at_;
    std::unordered_set<uint64_t> touched_;
    Vec2 disp_[2];
    int walk_ = 0;
    bool walk_horizontal_ = false;
    bool staggered_ = false;
    size_t depth_ = 0;
    std::vector<std::string> violations_;
};

// Relabels colors as rows to keep as many tiles as possible in place.
std::vector<uint32_t> best_row_labels(size_t L, const std::vector<uint32_t> &color, const std::vector<uint32_t> &src_row,
                                      const std::vector<uint32_t> &dst_row) {
    std::vector<uint32_t> label(L);
    std::iota(label.begin(), label.end(), 0);
    if (L > 7) {
        return label;
    }
    std::vector<std::vector<int>> gain(L, std::vector<int>(L, 0));
    for (size_t i = 0; i < color.size(); i++) {
        gain[color[i]][src_row[i]]++;
        gain[color[i]][dst_row[i]]++;
    }
    std::vector<uint32_t> best = label;
    int best_score = -1;
    do {
        int score = 0;
        for (size_t c = 0; c < L; c++) {
            score += gain[c][label[c]];
        }
        if (score > best_score) {
            best_score = score;
            best = label;
        }
    } while (std::next_permutation(label.begin(), label.end()));
    return best;
}

// Three-stage product routing of one layer; line `l` starts its odd-even phases at offset (l + base) mod 2.
// Returns per stage and phase the slot transpositions.
std::vector<std::vector<std::vector<Transposition>>> route_layer(size_t L, const std::vector<uint32_t> &dest,
                                                                 size_t base) {
    size_t n = L * L;
    BipartiteMultigraph b;
    b.left = L;
    b.right = L;
    std::vector<uint32_t> src_row(n);
    std::vector<uint32_t> dst_row(n);
    for (size_t s = 0; s < n; s++) {
        b.edges.push_back({(uint32_t)(s % L), dest[s] % (uint32_t)L});
        src_row[s] = (uint32_t)(s / L);
        dst_row[s] = dest[s] / (uint32_t)L;
    }
    std::vector<uint32_t> color = edge_color_bipartite(b, L);
    std::vector<uint32_t> label = best_row_labels(L, color, src_row, dst_row);
    std::vector<uint32_t> mid(n);
    for (size_t s = 0; s < n; s++) {
        mid[s] = label[color[s]];
    }
    std::vector<std::vector<std::vector<Transposition>>> stages(3, std::vector<std::vector<Transposition>>(L));
    // Pebble positions as (row, col); stage 0 and 2 move rows inside columns, stage 1 columns inside rows.
    std::vector<uint32_t> row(src_row);
    std::vector<uint32_t> col(n);
    for (size_t s = 0; s < n; s++) {
        col[s] = (uint32_t)(s % L);
    }
    for (size_t stage = 0; stage < 3; stage++) {
        bool horizontal = stage == 1;
        for (size_t line = 0; line < L; line++) {
            std::vector<uint32_t> local(L);
            for (size_t s = 0; s < n; s++) {
                if ((horizontal ? row[s] : col[s]) != line) {
                    continue;
                }
                uint32_t from = horizontal ? col[s] : row[s];
                uint32_t to = stage == 0 ? mid[s] : stage == 1 ? dest[s] % (uint32_t)L : dst_row[s];
                local[from] = to;
            }
            RoutingSchedule sched = route_path(Permutation(local), L, PathOptions{(line + base) % 2, false});
            for (size_t t = 0; t < sched.steps.size(); t++) {
                for (auto [a, c] : sched.steps[t]) {
                    uint32_t lo = std::min(a, c);
                    uint32_t hi = std::max(a, c);
                    if (horizontal) {
                        stages[stage][t].push_back({(uint32_t)(line * L + lo), (uint32_t)(line * L + hi)});
                    } else {
                        stages[stage][t].push_back({(uint32_t)(lo * L + line), (uint32_t)(hi * L + line)});
                    }
                }
            }
        }
        for (size_t s = 0; s < n; s++) {
            if (stage == 0) {
                row[s] = mid[s];
            } else if (stage == 1) {
                col[s] = dest[s] % (uint32_t)L;
            } else {
                row[s] = dst_row[s];
            }
        }
    }
    return stages;
}

std::vector<LogicalLayer> plan_layers(size_t L, const Permutation &alpha) {
    size_t n = L * L;
    std::vector<uint32_t> top(n);
    std::vector<uint32_t> bottom(n);
    for (size_t s = 0; s < n; s++) {
        bottom[s] = alpha[s];
        top[s] = alpha[n + s] - (uint32_t)n;
    }
    // Top lines start at parity (line) and bottom lines at (line + 1), matching the checkerboard stagger.
    auto top_stages = route_layer(L, top, 0);
    auto bottom_stages = route_layer(L, bottom, 1);
    std::vector<LogicalLayer> out;
    for (size_t stage = 0; stage < 3; stage++) {
        for (size_t t = 0; t < L; t++) {
            LogicalLayer layer;
            layer.horizontal = stage == 1;
            layer.dir = t % 2 == 0 ? 1 : -1;
            layer.top = top_stages[stage][t];
            layer.bottom = bottom_stages[stage][t];
            if (!layer.top.empty() || !layer.bottom.empty()) {
                out.push_back(std::move(layer));
            }
        }
    }
    return out;
}

}  // namespace

std::string TileSimReport::to_json() const {
    nlohmann::json j;
    j["L"] = L;
    j["d_l"] = d_l;
    j["layers"] = layers;
    j["depth"] = depth;
    j["unoptimized_depth"] = unoptimized_depth;
    j["logical_swap_depth"] = logical_swap_depth;
    j["layer_depths"] = layer_depths;
    j["depth_bound"] = depth_bound;
    j["touched_qubits"] = touched_qubits;
    j["physical_qubits"] = physical_qubit_count(L, d_l);
    j["tile_positions"] = tile_positions;
    j["violations"] = violations;
    j["ok"] = ok();
    return j.dump();
}

TileSimReport tile_permutation_sim(size_t L, size_t d_l, const Permutation &alpha, bool strict) {
    if (L == 0 || L > 6 || d_l == 0 || d_l > 5) {
        throw Error("instance-too-large", "tile simulation supports 1 <= L <= 6 and 1 <= d_l <= 5");
    }
    size_t n = L * L;
    if (alpha.size() != 2 * n) {
        throw Error("size-mismatch", "alpha must act on 2*L*L tiles");
    }
    for (size_t t = 0; t < 2 * n; t++) {
        if ((t < n) != (alpha[t] < n)) {
            throw Error("invalid-argument", "alpha must keep every tile in its layer");
        }
    }
    TileSimReport rep;
    rep.L = L;
    rep.d_l = d_l;
    rep.depth_bound = t_route(d_l, L) + 9;
    std::vector<LogicalLayer> layers = plan_layers(L, alpha);
    rep.layers = layers.size();

    TileSim sim(L, d_l);
    rep.tile_positions.push_back(sim.table());
    if (!layers.empty()) {
        sim.stagger_in();
        for (const LogicalLayer &layer : layers) {
            size_t before = sim.depth();
            sim.walk(layer.horizontal, layer.dir, false);
            sim.exchange(sim.stacked_pairs(layer));
            sim.walk(layer.horizontal, layer.dir, true);
            rep.layer_depths.push_back(sim.depth() - before);
            rep.tile_positions.push_back(sim.table());
        }
        sim.stagger_out();
    }
    sim.check_final(alpha);
    rep.depth = sim.depth();
    rep.touched_qubits = sim.touched();
    rep.violations = sim.violations();

    // Every layer again as a stand-alone logical SWAP that starts and ends aligned.
    TileSim full(L, d_l);
    std::vector<std::pair<size_t, size_t>> s_pairs;
    for (size_t s = 0; s < n; s++) {
        if (full.in_s(s)) {
            s_pairs.push_back({s, s});
        }
    }
    for (const LogicalLayer &layer : layers) {
        size_t before = full.depth();
        full.staggered_swap(s_pairs);
        full.walk(layer.horizontal, layer.dir, false);
        full.staggered_swap(full.stacked_pairs(layer));
        full.walk(layer.horizontal, layer.dir, true);
        full.staggered_swap(s_pairs);
        rep.logical_swap_depth = std::max(rep.logical_swap_depth, full.depth() - before);
    }
    full.check_final(alpha);
    rep.unoptimized_depth = full.depth();
    for (auto &v : full.violations()) {
        rep.violations.push_back("stand-alone: " + v);
    }
    rep.touched_qubits = std::max(rep.touched_qubits, full.touched());

    if (rep.logical_swap_depth > 2 * d_l + 9) {
        rep.violations.push_back("(d) logical SWAP depth exceeds 2*d_l+9");
    }
    if (rep.depth > rep.depth_bound) {
        rep.violations.push_back("(d) permutation depth " + std::to_string(rep.depth) + " exceeds t_route+9 = " +
                                 std::to_string(rep.depth_bound));
    }
    if (rep.touched_qubits > physical_qubit_count(L, d_l)) {
        rep.violations.push_back("touched qubits " + std::to_string(rep.touched_qubits) + " exceed the layout budget " +
                                 std::to_string(physical_qubit_count(L, d_l)));
    }
    if (strict && !rep.violations.empty()) {
        throw Error("verification-failure", rep.violations.front());
    }
    return rep;
}

}  // namespace hiermem
