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

#ifndef HIERMEM_CIRCUIT_H
#define HIERMEM_CIRCUIT_H

#include <cstdint>
#include <string>
#include <vector>

namespace hiermem {

enum class GateKind : uint8_t { prep_plus, prep_zero, meas_x, meas_z, cnot, cz, swap, idle, pauli };

const char *gate_token(GateKind kind);
bool is_two_qubit(GateKind kind);
bool is_measurement(GateKind kind);
bool is_preparation(GateKind kind);

/// For CNOT and CZ, q0 is the control (ancilla) and q1 the target (data).
struct Location {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = UINT32_MAX;

    bool operator==(const Location &other) const = default;
};

enum class QubitRole : uint8_t { data, ancilla_x, ancilla_z, buffer };

const char *role_name(QubitRole role);

struct Site {
    uint8_t layer;
    int64_t x;
    int64_t y;

    bool operator==(const Site &other) const = default;
};

/// Qubit ids name physical qubits; a SWAP exchanges the states of two of them.
struct Circuit {
    size_t width = 0;
    std::vector<std::vector<Location>> steps;
    /// Initial site of every qubit; empty for circuits without geometry.
    std::vector<Site> placement;
    std::vector<QubitRole> roles;

    size_t depth() const {
        return steps.size();
    }
    size_t location_count() const;
    /// Throws unless every location is in range, two-qubit locations use distinct qubits
    /// and no qubit appears twice in one step.
    void validate() const;

    /// Header `circuit <width> <depth>`, one `qubit <id> <role> [<layer> <x> <y>]` line per qubit,
    /// then `step` followed by one location per line (`CNOT a b`, `SWAP a b`, `PX q`, `MX q`, ...).
    std::string to_text() const;
    static Circuit from_text(const std::string &text);

    bool operator==(const Circuit &other) const = default;
};

}  // namespace hiermem

#endif
