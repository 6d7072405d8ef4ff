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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hiermem/error.h"

namespace hiermem {

size_t StagePlan::entangle_count(bool x_phase) const {
    return std::count_if(stages.begin(), stages.end(), [&](const Stage &s) {
        return s.kind == Stage::Kind::entangle && s.x_phase == x_phase;
    });
}

StagePlan tanner_stage_coloring(const CssCode &c) {
    StagePlan plan;
    for (bool x_phase : {true, false}) {
        const SparseBinaryMatrix &h = x_phase ? c.hx : c.hz;
        if (h.rows() == 0) {
            continue;
        }
        BipartiteMultigraph tanner{h.rows(), h.cols(), {}};
        for (size_t i = 0; i < h.rows(); i++) {
            for (uint32_t j : h.row(i)) {
                tanner.edges.emplace_back((uint32_t)i, j);
            }
        }
        size_t colors = h.max_row_weight();
        for (size_t w : h.col_weights()) {
            colors = std::max(colors, w);
        }
        Stage prep{Stage::Kind::prep, x_phase, {}};
        for (size_t i = 0; i < h.rows(); i++) {
            prep.pairs.emplace_back((uint32_t)i, 0);
        }
        plan.stages.push_back(prep);
        if (colors > 0) {
            auto color = edge_color_bipartite(tanner, colors);
            std::vector<Stage> entangle(colors, Stage{Stage::Kind::entangle, x_phase, {}});
            for (size_t e = 0; e < tanner.edges.size(); e++) {
                entangle[color[e]].pairs.push_back(tanner.edges[e]);
            }
            for (auto &stage : entangle) {
                if (!stage.pairs.empty()) {
                    plan.stages.push_back(std::move(stage));
                }
            }
        }
        plan.stages.push_back(Stage{Stage::Kind::measure, x_phase, prep.pairs});
    }
    return plan;
}

namespace {

std::vector<Location> stage_step(const Stage &stage, size_t n) {
    std::vector<Location> step;
    for (auto [i, j] : stage.pairs) {
        uint32_t a = (uint32_t)(n + i);
        switch (stage.kind) {
            case Stage::Kind::prep:
                step.push_back({GateKind::prep_plus, a});
                break;
            case Stage::Kind::measure:
                step.push_back({GateKind::meas_x, a});
                break;
            case Stage::Kind::entangle:
                step.push_back({stage.x_phase ? GateKind::cnot : GateKind::cz, a, j});
                break;
        }
    }
    return step;
}

QubitRole ancilla_role(size_t i, const CssCode &c) {
    return i < c.hx.rows() ? QubitRole::ancilla_x : QubitRole::ancilla_z;
}

}  // namespace

Circuit build_ideal_sec(const CssCode &c) {
    size_t n = c.n();
    size_t m0 = std::max(c.hx.rows(), c.hz.rows());
    Circuit circ;
    circ.width = n + m0;
    circ.roles.assign(n, QubitRole::data);
    for (size_t i = 0; i < m0; i++) {
        circ.roles.push_back(ancilla_role(i, c));
    }
    for (const auto &stage : tanner_stage_coloring(c).stages) {
        circ.steps.push_back(stage_step(stage, n));
    }
    circ.validate();
    return circ;
}

size_t bilayer_side(uint64_t data_count, uint64_t ancilla_count) {
    uint64_t need = std::max<uint64_t>({data_count, ancilla_count, 1});
    uint64_t side = (uint64_t)std::sqrt((double)need);
    while (side * side < need) {
        side++;
    }
    while (side > 1 && (side - 1) * (side - 1) >= need) {
        side--;
    }
    return (size_t)side;
}

BilayerPlacement place_bilayer(const CssCode &c) {
    BilayerPlacement pl;
    pl.data_count = c.n();
    pl.ancilla_count = std::max(c.hx.rows(), c.hz.rows());
    size_t side = bilayer_side(pl.data_count, pl.ancilla_count);
    pl.side = side;
    auto site = [&](uint8_t layer, size_t slot) {
        return Site{layer, (int64_t)(slot % side), (int64_t)(slot / side)};
    };
    for (size_t j = 0; j < pl.data_count; j++) {
        pl.sites.push_back(site(0, j));
        pl.roles.push_back(QubitRole::data);
    }
    for (size_t i = 0; i < pl.ancilla_count; i++) {
        pl.sites.push_back(site(1, i));
        pl.roles.push_back(ancilla_role(i, c));
    }
    for (size_t s = pl.data_count; s < side * side; s++) {
        pl.sites.push_back(site(0, s));
        pl.roles.push_back(QubitRole::buffer);
    }
    for (size_t s = pl.ancilla_count; s < side * side; s++) {
        pl.sites.push_back(site(1, s));
        pl.roles.push_back(QubitRole::buffer);
    }
    return pl;
}

Circuit build_local_sec(const CssCode &c, size_t R, LatticeMode mode, uint64_t seed) {
    BilayerPlacement pl = place_bilayer(c);
    size_t L = pl.side, slots = L * L;
    Circuit circ;
    circ.width = pl.width();
    circ.placement = pl.sites;
    circ.roles = pl.roles;

    // Qubit ids are physical sites; SWAPs move states. site_id[s] is the top-layer qubit at slot s,
    // holder[s] the ancilla state it currently holds (or UINT32_MAX), slot_of[i] the slot holding ancilla i.
    size_t m0 = pl.ancilla_count;
    std::vector<uint32_t> site_id(slots), holder(slots, UINT32_MAX), slot_of(m0);
    for (uint32_t q = 0; q < circ.width; q++) {
        if (pl.sites[q].layer == 1) {
            site_id[pl.sites[q].y * (int64_t)L + pl.sites[q].x] = q;
        }
    }
    for (uint32_t i = 0; i < m0; i++) {
        holder[i] = i;
        slot_of[i] = i;
    }
    StagePlan plan = tanner_stage_coloring(c);
    bool needs_router = std::any_of(plan.stages.begin(), plan.stages.end(), [](const Stage &s) {
        return s.kind == Stage::Kind::entangle;
    });
    Router router;
    if (needs_router) {
        router = make_lattice_router(L, R, mode, seed);
    }
    auto dist2 = [&](uint32_t a, uint32_t b) {
        int64_t dx = (int64_t)(a % L) - (int64_t)(b % L), dy = (int64_t)(a / L) - (int64_t)(b / L);
        return dx * dx + dy * dy;
    };

    for (const auto &stage : plan.stages) {
        if (stage.kind != Stage::Kind::entangle) {
            std::vector<Location> step;
            GateKind kind = stage.kind == Stage::Kind::prep ? GateKind::prep_plus : GateKind::meas_x;
            for (auto [i, unused] : stage.pairs) {
                step.push_back({kind, site_id[slot_of[i]]});
            }
            circ.steps.push_back(std::move(step));
            continue;
        }
        std::vector<uint32_t> dest(slots, UINT32_MAX);
        std::vector<bool> claimed(slots, false);
        for (auto [i, j] : stage.pairs) {
            dest[slot_of[i]] = j;
            claimed[j] = true;
        }
        std::vector<uint32_t> displaced;
        for (uint32_t s = 0; s < slots; s++) {
            if (dest[s] != UINT32_MAX) {
                continue;
            }
            if (!claimed[s]) {
                dest[s] = s;
                claimed[s] = true;
            } else {
                displaced.push_back(s);
            }
        }
        std::vector<uint32_t> free_slots;
        for (uint32_t s = 0; s < slots; s++) {
            if (!claimed[s]) {
                free_slots.push_back(s);
            }
        }
        for (uint32_t s : displaced) {
            size_t best = 0;
            for (size_t k = 1; k < free_slots.size(); k++) {
                if (dist2(s, free_slots[k]) < dist2(s, free_slots[best])) {
                    best = k;
                }
            }
            dest[s] = free_slots[best];
            free_slots.erase(free_slots.begin() + best);
        }
        Permutation alpha(dest);
        if (!alpha.is_identity()) {
            RoutingSchedule sched = router(alpha);
            for (const auto &step : sched.steps) {
                std::vector<Location> swaps;
                for (auto [u, v] : step) {
                    swaps.push_back({GateKind::swap, site_id[u], site_id[v]});
                    std::swap(holder[u], holder[v]);
                    for (uint32_t s : {u, v}) {
                        if (holder[s] != UINT32_MAX) {
                            slot_of[holder[s]] = s;
                        }
                    }
                }
                circ.steps.push_back(std::move(swaps));
            }
        }
        std::vector<Location> gates;
        for (auto [i, j] : stage.pairs) {
            if (holder[j] != i) {
                throw Error("routing-failure", "ancilla did not reach its data partner");
            }
            gates.push_back({stage.x_phase ? GateKind::cnot : GateKind::cz, site_id[j], j});
        }
        circ.steps.push_back(std::move(gates));
    }
    circ.validate();
    return circ;
}

ScheduleReport verify_schedule(const Circuit &circ, double R, size_t partner_limit) {
    ScheduleReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        if (rep.diagnostics.size() < 20) {
            rep.diagnostics.push_back(std::move(msg));
        }
    };
    std::vector<size_t> last(circ.width, SIZE_MAX);
    for (size_t t = 0; t < circ.steps.size(); t++) {
        for (const auto &loc : circ.steps[t]) {
            std::vector<uint32_t> qs{loc.q0};
            if (is_two_qubit(loc.kind)) {
                qs.push_back(loc.q1);
            }
            for (uint32_t q : qs) {
                if (q >= circ.width) {
                    fail("qubit out of range: " + std::to_string(q) + " at step " + std::to_string(t));
                } else if (last[q] == t) {
                    fail("exclusivity violation: qubit " + std::to_string(q) + " at step " + std::to_string(t));
                } else {
                    last[q] = t;
                }
            }
        }
    }
    if (circ.placement.empty() || !rep.ok) {
        return rep;
    }
    rep.geometry_checked = true;
    const std::vector<Site> &pos = circ.placement;
    auto key = [](const Site &s) {
        return std::make_tuple(s.layer, s.x, s.y);
    };
    std::map<std::tuple<uint8_t, int64_t, int64_t>, std::set<std::tuple<uint8_t, int64_t, int64_t>>> partners;
    for (size_t t = 0; t < circ.steps.size(); t++) {
        for (const auto &loc : circ.steps[t]) {
            if (!is_two_qubit(loc.kind)) {
                continue;
            }
            Site a = pos[loc.q0], b = pos[loc.q1];
            int64_t dx = a.x - b.x, dy = a.y - b.y;
            double d = std::sqrt((double)(dx * dx + dy * dy));
            std::string where = std::string(gate_token(loc.kind)) + " " + std::to_string(loc.q0) + " " +
                                std::to_string(loc.q1) + " at step " + std::to_string(t);
            if (loc.kind == GateKind::swap) {
                if (a.layer != b.layer) {
                    fail("layer violation: " + where);
                } else if (d > R + 1e-9) {
                    fail("range violation: " + where);
                }
            } else {
                bool vertical = a.layer != b.layer && dx == 0 && dy == 0;
                bool adjacent = a.layer == b.layer && dx * dx + dy * dy == 1;
                if (!vertical && !adjacent) {
                    fail("locality violation: " + where);
                }
            }
            partners[key(a)].insert(key(b));
            partners[key(b)].insert(key(a));
        }
    }
    for (const auto &[site, set] : partners) {
        rep.max_partners = std::max(rep.max_partners, set.size());
    }
    if (rep.max_partners > partner_limit) {
        fail("partner bound violation: " + std::to_string(rep.max_partners) + " > " + std::to_string(partner_limit));
    }
    return rep;
}

Syndrome noiseless_syndrome(const Circuit &circ, const CssCode &c, const PauliVec &error) {
    PauliVec input(circ.width);
    if (error.width() == c.n()) {
        std::copy(error.x.begin(), error.x.end(), input.x.begin());
        std::copy(error.z.begin(), error.z.end(), input.z.begin());
    } else if (error.width() == circ.width) {
        input = error;
    } else {
        throw Error("width-mismatch", "error must cover the data qubits or the whole circuit");
    }
    SimResult res = simulate_faulty(circ, {}, input);
    if (res.flips.size() != c.hx.rows() + c.hz.rows()) {
        throw Error("invalid-circuit", "measurement count does not match the check count");
    }
    Syndrome s;
    s.x_checks.assign(res.flips.begin(), res.flips.begin() + c.hx.rows());
    s.z_checks.assign(res.flips.begin() + c.hx.rows(), res.flips.end());
    return s;
}

}  // namespace hiermem
