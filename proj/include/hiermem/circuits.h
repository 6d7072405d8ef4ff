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

#ifndef HIERMEM_CIRCUITS_H
#define HIERMEM_CIRCUITS_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hiermem/circuit.h"
#include "hiermem/codes.h"
#include "hiermem/pauli.h"
#include "hiermem/routing.h"

namespace hiermem {

struct Stage {
    enum class Kind : uint8_t { prep, entangle, measure };
    Kind kind;
    /// True for the X-check phase (CNOT gates), false for the Z-check phase (CZ gates).
    bool x_phase;
    /// Entangle stages: (check index, data qubit) pairs. Prep and measure stages: (check index, 0).
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
};

struct StagePlan {
    std::vector<Stage> stages;

    size_t entangle_count(bool x_phase) const;
};

/// Prep, edge-colored entangle stages and measure for the X checks, then the same for the Z checks.
/// A phase without checks is omitted.
StagePlan tanner_stage_coloring(const CssCode &c);

/// Data qubits are 0..n-1 and ancilla i is n+i, shared by X check i and Z check i.
/// Measurements appear in X-check order, then Z-check order.
Circuit build_ideal_sec(const CssCode &c);

struct BilayerPlacement {
    size_t side = 0;
    size_t data_count = 0;
    size_t ancilla_count = 0;
    /// Site of every qubit: data j at layer 0 slot j, ancilla i (qubit n+i) at layer 1 slot i,
    /// then buffers filling the free slots of layer 0 and then layer 1. Slot s is (s % side, s / side).
    std::vector<Site> sites;
    std::vector<QubitRole> roles;

    size_t width() const {
        return sites.size();
    }
};

/// Smallest square side holding both the data layer and the ancilla layer.
size_t bilayer_side(uint64_t data_count, uint64_t ancilla_count);

BilayerPlacement place_bilayer(const CssCode &c);

/// Local circuit on the bilayer placement. Before each entangle stage the top layer is permuted so
/// every participating ancilla state sits above its data partner, routed on the [side]x[side] lattice.
/// Gates act on the physical top-layer qubit currently holding the ancilla state.
Circuit build_local_sec(const CssCode &c, size_t R, LatticeMode mode, uint64_t seed);

struct ScheduleReport {
    bool ok = true;
    bool geometry_checked = false;
    size_t max_partners = 0;
    std::vector<std::string> diagnostics;
};

/// Checks (a) per-step exclusivity, and for placed circuits (b) SWAPs intra-layer within distance R,
/// (c) CNOT/CZ vertical or unit-distance, (d) per-position partner counts, failing if above partner_limit.
ScheduleReport verify_schedule(const Circuit &circ, double R, size_t partner_limit = SIZE_MAX);

struct Syndrome {
    std::vector<uint8_t> x_checks;
    std::vector<uint8_t> z_checks;
};

/// Noiseless run with `error` on the input; x_checks = H_X e_z and z_checks = H_Z e_x.
Syndrome noiseless_syndrome(const Circuit &circ, const CssCode &c, const PauliVec &error);

}  // namespace hiermem

#endif
