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

#include "hiermem/circuit.h"

#include <sstream>

#include "hiermem/error.h"

namespace hiermem {

namespace {

constexpr const char *kTokens[] = {"PX", "PZ", "MX", "MZ", "CNOT", "CZ", "SWAP", "I", "PAULI"};
constexpr const char *kRoles[] = {"data", "ancilla_x", "ancilla_z", "buffer"};

}  // namespace

const char *gate_token(GateKind kind) {
    return kTokens[(int)kind];
}

bool is_two_qubit(GateKind kind) {
    return kind == GateKind::cnot || kind == GateKind::cz || kind == GateKind::swap;
}

bool is_measurement(GateKind kind) {
    return kind == GateKind::meas_x || kind == GateKind::meas_z;
}

bool is_preparation(GateKind kind) {
    return kind == GateKind::prep_plus || kind == GateKind::prep_zero;
}

const char *role_name(QubitRole role) {
    return kRoles[(int)role];
}

size_t Circuit::location_count() const {
    size_t total = 0;
    for (const auto &step : steps) {
        total += step.size();
    }
    return total;
}

void Circuit::validate() const {
    if (!placement.empty() && placement.size() != width) {
        throw Error("invalid-circuit", "placement size differs from width");
    }
    if (!roles.empty() && roles.size() != width) {
        throw Error("invalid-circuit", "role table size differs from width");
    }
    std::vector<size_t> last_step(width, SIZE_MAX);
    for (size_t t = 0; t < steps.size(); t++) {
        for (const auto &loc : steps[t]) {
            std::vector<uint32_t> qs{loc.q0};
            if (is_two_qubit(loc.kind)) {
                qs.push_back(loc.q1);
                if (loc.q0 == loc.q1) {
                    throw Error("invalid-circuit", "two-qubit location on one qubit at step " + std::to_string(t));
                }
            }
            for (uint32_t q : qs) {
                if (q >= width) {
                    throw Error("invalid-circuit", "qubit " + std::to_string(q) + " out of range");
                }
                if (last_step[q] == t) {
                    throw Error("invalid-circuit",
                                "qubit " + std::to_string(q) + " used twice at step " + std::to_string(t));
                }
                last_step[q] = t;
            }
        }
    }
}

std::string Circuit::to_text() const {
    std::ostringstream out;
    out << "circuit " << width << " " << depth() << "\n";
    for (size_t q = 0; q < width; q++) {
        out << "qubit " << q << " " << (roles.empty() ? "data" : role_name(roles[q]));
        if (!placement.empty()) {
            out << " " << (int)placement[q].layer << " " << placement[q].x << " " << placement[q].y;
        }
        out << "\n";
    }
    for (const auto &step : steps) {
        out << "step\n";
        for (const auto &loc : step) {
            out << gate_token(loc.kind) << " " << loc.q0;
            if (is_two_qubit(loc.kind)) {
                out << " " << loc.q1;
            }
            out << "\n";
        }
    }
    return out.str();
}

Circuit Circuit::from_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    Circuit c;
    size_t depth = 0;
    if (!std::getline(in, line) || std::sscanf(line.c_str(), "circuit %zu %zu", &c.width, &depth) != 2) {
        throw Error("parse-error", "circuit: expected header");
    }
    bool any_placement = false;
    std::vector<Site> placement(c.width);
    c.roles.assign(c.width, QubitRole::data);
    for (size_t q = 0; q < c.width; q++) {
        if (!std::getline(in, line)) {
            throw Error("parse-error", "circuit: missing qubit line");
        }
        std::istringstream ls(line);
        std::string tag, role;
        size_t id;
        if (!(ls >> tag >> id >> role) || tag != "qubit" || id != q) {
            throw Error("parse-error", "circuit: bad qubit line: " + line);
        }
        bool found = false;
        for (int r = 0; r < 4; r++) {
            if (role == kRoles[r]) {
                c.roles[q] = (QubitRole)r;
                found = true;
            }
        }
        if (!found) {
            throw Error("parse-error", "circuit: unknown role " + role);
        }
        int layer;
        if (ls >> layer >> placement[q].x >> placement[q].y) {
            placement[q].layer = (uint8_t)layer;
            any_placement = true;
        }
    }
    if (any_placement) {
        c.placement = std::move(placement);
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line == "step") {
            c.steps.emplace_back();
            continue;
        }
        if (c.steps.empty()) {
            throw Error("parse-error", "circuit: location before first step");
        }
        std::istringstream ls(line);
        std::string token;
        ls >> token;
        int kind = -1;
        for (int k = 0; k < 9; k++) {
            if (token == kTokens[k]) {
                kind = k;
            }
        }
        if (kind < 0) {
            throw Error("parse-error", "circuit: unknown gate " + token);
        }
        Location loc{(GateKind)kind, 0};
        if (!(ls >> loc.q0) || (is_two_qubit(loc.kind) && !(ls >> loc.q1))) {
            throw Error("parse-error", "circuit: bad operands: " + line);
        }
        c.steps.back().push_back(loc);
    }
    if (c.steps.size() != depth) {
        throw Error("parse-error", "circuit: depth mismatch");
    }
    c.validate();
    return c;
}

}  // namespace hiermem
