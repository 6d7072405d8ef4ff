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

#ifndef HIERMEM_PAULI_H
#define HIERMEM_PAULI_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hiermem/circuit.h"

namespace hiermem {

/// Pauli operator X(x) Z(z) up to phase, one byte per qubit.
struct PauliVec {
    std::vector<uint8_t> x;
    std::vector<uint8_t> z;

    PauliVec() = default;
    explicit PauliVec(size_t width) : x(width, 0), z(width, 0) {
    }
    size_t width() const {
        return x.size();
    }
    size_t weight() const;
    bool is_identity() const;
    bool operator==(const PauliVec &other) const = default;
    bool operator<(const PauliVec &other) const;
};

/// Single-qubit Pauli codes: bit 0 is the X component, bit 1 the Z component (0=I, 1=X, 2=Z, 3=Y).
struct Fault {
    size_t location;
    uint8_t p0;
    uint8_t p1 = 0;
};

/// Step index -> faults at that step; `location` indexes into the step's location list.
using FaultAssignment = std::map<size_t, std::vector<Fault>>;

struct SimResult {
    PauliVec final;
    /// One entry per measurement, in step order then location order.
    std::vector<uint8_t> flips;
};

struct DecayRate {
    double p = 0;

    DecayRate() = default;
    DecayRate(double value);
    bool vacuous() const {
        return p > 1;
    }
};

PauliVec propagate_step(const std::vector<Location> &step, const PauliVec &pauli);
SimResult simulate_faulty(const Circuit &circ, const FaultAssignment &faults, const PauliVec &input);
/// Non-SWAP locations fail with probability p, SWAPs with r_swap*p. A failing gate or idle location
/// applies a uniform nontrivial Pauli on its support; a failing preparation or measurement flips its basis.
FaultAssignment sample_circuit_faults(const Circuit &circ, double p, double r_swap, uint64_t seed);

DecayRate compose_rates(DecayRate p1, DecayRate p2);
DecayRate map_rate(DecayRate p, size_t delta);
DecayRate depth1_rate(DecayRate p_phys);
/// constant * depth * p_phys^(1/(2 delta + 2)); constant defaults to 2^(delta+1).
DecayRate pround_bound(size_t delta, size_t depth, DecayRate p_phys, std::optional<double> constant = std::nullopt);

/// Exact output distribution over error patterns. A pattern is the final Pauli with every measurement
/// flip folded onto its measured qubit (an X-basis flip as Z, a Z-basis flip as X).
using FaultDistribution = std::map<PauliVec, double>;

FaultDistribution enumerate_fault_distribution(const Circuit &circ, double p, double r_swap = 1.0);
/// CSV with header `x_support,z_support,probability`; supports are space-separated sorted qubit ids.
std::string distribution_to_csv(const FaultDistribution &dist);

}  // namespace hiermem

#endif
