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

#include "hiermem/pauli.h"

#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

#include "hiermem/error.h"

namespace hiermem {

size_t PauliVec::weight() const {
    size_t w = 0;
    for (size_t q = 0; q < width(); q++) {
        w += (x[q] | z[q]) != 0;
    }
    return w;
}

bool PauliVec::is_identity() const {
    return weight() == 0;
}

bool PauliVec::operator<(const PauliVec &other) const {
    return std::tie(x, z) < std::tie(other.x, other.z);
}

DecayRate::DecayRate(double value) : p(value) {
    if (!(value >= 0)) {
        throw Error("invalid-argument", "decay rate must be non-negative");
    }
}

namespace {

void apply_gate(const Location &loc, PauliVec &out) {
    uint32_t a = loc.q0, b = loc.q1;
    switch (loc.kind) {
        case GateKind::cnot:
            out.x[b] ^= out.x[a];
            out.z[a] ^= out.z[b];
            break;
        case GateKind::cz:
            out.z[a] ^= out.x[b];
            out.z[b] ^= out.x[a];
            break;
        case GateKind::swap:
            std::swap(out.x[a], out.x[b]);
            std::swap(out.z[a], out.z[b]);
            break;
        case GateKind::prep_plus:
        case GateKind::prep_zero:
        case GateKind::meas_x:
        case GateKind::meas_z:
            out.x[a] = out.z[a] = 0;
            break;
        case GateKind::idle:
        case GateKind::pauli:
            break;
    }
}

void apply_fault(const Location &loc, const Fault &f, PauliVec &out) {
    out.x[loc.q0] ^= f.p0 & 1;
    out.z[loc.q0] ^= (f.p0 >> 1) & 1;
    if (is_two_qubit(loc.kind)) {
        out.x[loc.q1] ^= f.p1 & 1;
        out.z[loc.q1] ^= (f.p1 >> 1) & 1;
    }
}

void check_width(const std::vector<Location> &step, size_t width) {
    for (const auto &loc : step) {
        if (loc.q0 >= width || (is_two_qubit(loc.kind) && loc.q1 >= width)) {
            throw Error("width-mismatch", "location references a qubit beyond the Pauli width");
        }
    }
}

}  // namespace

PauliVec propagate_step(const std::vector<Location> &step, const PauliVec &pauli) {
    check_width(step, pauli.width());
    PauliVec out = pauli;
    for (const auto &loc : step) {
        apply_gate(loc, out);
    }
    return out;
}

SimResult simulate_faulty(const Circuit &circ, const FaultAssignment &faults, const PauliVec &input) {
    if (input.width() != circ.width) {
        throw Error("width-mismatch", "input Pauli width differs from circuit width");
    }
    SimResult res{input, {}};
    PauliVec &cur = res.final;
    for (size_t t = 0; t < circ.steps.size(); t++) {
        const auto &step = circ.steps[t];
        auto it = faults.find(t);
        std::vector<const Fault *> at(step.size(), nullptr);
        if (it != faults.end()) {
            for (const auto &f : it->second) {
                if (f.location >= step.size()) {
                    throw Error("invalid-argument", "fault location out of range at step " + std::to_string(t));
                }
                at[f.location] = &f;
            }
        }
        for (size_t i = 0; i < step.size(); i++) {
            const Location &loc = step[i];
            if (is_measurement(loc.kind)) {
                if (at[i]) {
                    apply_fault(loc, *at[i], cur);
                }
                uint32_t q = loc.q0;
                res.flips.push_back(loc.kind == GateKind::meas_x ? cur.z[q] : cur.x[q]);
                apply_gate(loc, cur);
            } else {
                apply_gate(loc, cur);
                if (at[i]) {
                    apply_fault(loc, *at[i], cur);
                }
            }
        }
    }
    return res;
}

namespace {

/// Every fault a location can suffer, each equally likely given that it fails.
std::vector<Fault> fault_choices(const Location &loc, size_t index) {
    switch (loc.kind) {
        case GateKind::prep_plus:
        case GateKind::meas_x:
            return {{index, 2}};
        case GateKind::prep_zero:
        case GateKind::meas_z:
            return {{index, 1}};
        default:
            break;
    }
    std::vector<Fault> out;
    if (is_two_qubit(loc.kind)) {
        for (uint8_t k = 1; k < 16; k++) {
            out.push_back({index, (uint8_t)(k & 3), (uint8_t)(k >> 2)});
        }
    } else {
        for (uint8_t k = 1; k < 4; k++) {
            out.push_back({index, k});
        }
    }
    return out;
}

double failure_probability(const Location &loc, double p, double r_swap) {
    return loc.kind == GateKind::swap ? std::min(1.0, r_swap * p) : p;
}

}  // namespace

FaultAssignment sample_circuit_faults(const Circuit &circ, double p, double r_swap, uint64_t seed) {
    if (!(p >= 0 && p <= 1) || !(r_swap >= 0)) {
        throw Error("invalid-argument", "need 0 <= p <= 1 and r_swap >= 0");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    FaultAssignment out;
    for (size_t t = 0; t < circ.steps.size(); t++) {
        for (size_t i = 0; i < circ.steps[t].size(); i++) {
            const Location &loc = circ.steps[t][i];
            if (u(rng) < failure_probability(loc, p, r_swap)) {
                auto choices = fault_choices(loc, i);
                out[t].push_back(choices[rng() % choices.size()]);
            }
        }
    }
    return out;
}

DecayRate compose_rates(DecayRate p1, DecayRate p2) {
    return DecayRate(p1.p + p2.p);
}

DecayRate map_rate(DecayRate p, size_t delta) {
    if (delta == 0) {
        throw Error("invalid-argument", "delta must be at least 1");
    }
    return DecayRate(std::pow(2.0, (double)delta) * std::pow(p.p, 1.0 / (double)delta));
}

DecayRate depth1_rate(DecayRate p_phys) {
    return DecayRate(std::sqrt(p_phys.p));
}

DecayRate pround_bound(size_t delta, size_t depth, DecayRate p_phys, std::optional<double> constant) {
    if (delta == 0) {
        throw Error("invalid-argument", "delta must be at least 1");
    }
    double c = constant.value_or(std::pow(2.0, (double)delta + 1));
    return DecayRate(c * (double)depth * std::pow(p_phys.p, 1.0 / (2.0 * (double)delta + 2.0)));
}

namespace {

PauliVec fold_flips(const Circuit &circ, const SimResult &res) {
    PauliVec out = res.final;
    size_t k = 0;
    for (const auto &step : circ.steps) {
        for (const auto &loc : step) {
            if (is_measurement(loc.kind)) {
                auto &bits = loc.kind == GateKind::meas_x ? out.z : out.x;
                bits[loc.q0] ^= res.flips[k++];
            }
        }
    }
    return out;
}

}  // namespace

FaultDistribution enumerate_fault_distribution(const Circuit &circ, double p, double r_swap) {
    if (circ.location_count() > 14) {
        throw Error("instance-too-large", "exact enumeration is limited to 14 locations");
    }
    if (!(p >= 0 && p <= 1)) {
        throw Error("invalid-argument", "need 0 <= p <= 1");
    }
    // With a zero input the circuit acts linearly on faults, so the joint distribution is the
    // XOR-convolution of the per-location distributions.
    PauliVec zero(circ.width);
    FaultDistribution dist{{fold_flips(circ, simulate_faulty(circ, {}, zero)), 1.0}};
    for (size_t t = 0; t < circ.steps.size(); t++) {
        for (size_t i = 0; i < circ.steps[t].size(); i++) {
            const Location &loc = circ.steps[t][i];
            double q = failure_probability(loc, p, r_swap);
            auto choices = fault_choices(loc, i);
            std::vector<std::pair<PauliVec, double>> effects;
            for (const auto &f : choices) {
                FaultAssignment single{{t, {f}}};
                effects.emplace_back(fold_flips(circ, simulate_faulty(circ, single, zero)), q / choices.size());
            }
            FaultDistribution next;
            for (const auto &[pattern, mass] : dist) {
                if (q < 1) {
                    next[pattern] += mass * (1 - q);
                }
                if (q == 0) {
                    continue;
                }
                for (const auto &[effect, weight] : effects) {
                    PauliVec combined = pattern;
                    for (size_t b = 0; b < combined.width(); b++) {
                        combined.x[b] ^= effect.x[b];
                        combined.z[b] ^= effect.z[b];
                    }
                    next[combined] += mass * weight;
                }
            }
            dist = std::move(next);
        }
    }
    return dist;
}

std::string distribution_to_csv(const FaultDistribution &dist) {
    std::ostringstream out;
    out << "x_support,z_support,probability\n";
    auto support = [](const std::vector<uint8_t> &bits) {
        std::string s;
        for (size_t q = 0; q < bits.size(); q++) {
            if (bits[q]) {
                s += (s.empty() ? "" : " ") + std::to_string(q);
            }
        }
        return s;
    };
    char buf[64];
    for (const auto &[pattern, mass] : dist) {
        std::snprintf(buf, sizeof(buf), "%.17g", mass);
        out << support(pattern.x) << "," << support(pattern.z) << "," << buf << "\n";
    }
    return out.str();
}

}  // namespace hiermem
