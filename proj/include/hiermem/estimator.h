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

#ifndef HIERMEM_ESTIMATOR_H
#define HIERMEM_ESTIMATOR_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hiermem {

/// Outer-code parameters used by the failure-rate model.
struct OuterCode {
    uint64_t n = 0;
    uint64_t k = 0;
    uint64_t d = 0;
    size_t delta_q = 0;
    size_t delta_g = 0;
    /// Ancilla count of the bilayer placement; 0 means n.
    uint64_t checks = 0;
};

/// The (5,8) hypergraph-product code with n = 1116416, k = 112896 and declared distance 119.
OuterCode expander_58_code();

/// Members m = 0..count-1 of the (4,8) hypergraph-product family with input length 512 * 2^m.
std::vector<OuterCode> expander_48_family(size_t count = 6);

struct EstimatorConfig {
    OuterCode outer;
    size_t d_l = 3;
    double r_swap = 1.0;
    double surface_threshold = 1e-2;
    double ldpc_threshold = 1e-3;
    double surface_prefactor = 0.1;
    std::optional<double> eta;
    std::optional<size_t> d_x;
    /// Tiles per side; derived from the outer code when absent.
    std::optional<size_t> L;
    /// Physical rounds per hierarchical cycle; derived when absent.
    std::optional<uint64_t> cycle_rounds;

    void validate() const;
    size_t tiles_per_side() const;
};

double p_surf(double p, size_t d, const EstimatorConfig &cfg);
double p_level1(double p, const EstimatorConfig &cfg);
size_t hook_exponent(uint64_t d, size_t delta_g);

double wer_hier_unclamped(double p, const EstimatorConfig &cfg);
double wer_hier(double p, const EstimatorConfig &cfg);

/// Requires cfg.d_x, or cfg.eta from which d_x is derived at the given p.
double wer_hier_biased_unclamped(double p, const EstimatorConfig &cfg);
double wer_hier_biased(double p, const EstimatorConfig &cfg);

uint64_t hier_cycle_rounds(const EstimatorConfig &cfg);
double wer_basic(double p, uint64_t K, size_t d_M, uint64_t T_rounds, const EstimatorConfig &cfg);
size_t match_surface_distance(uint64_t qubits_hier, uint64_t K);
uint64_t hierarchical_qubits(const EstimatorConfig &cfg);

/// Log-domain bisection for the gate rate where the hierarchical and basic WERs cross.
std::optional<double> find_crossover(const EstimatorConfig &cfg, double p_lo, double p_hi);

struct ResourceRatio {
    double ratio = 0;
    size_t member = 0;
    size_t d_l = 0;
    size_t d_M = 0;
    uint64_t qubits_hier = 0;
    uint64_t qubits_basic = 0;
};

/// `base` supplies r_swap, thresholds and bias settings; d_l is scanned over odd values in [3, d_l_max].
ResourceRatio resource_ratio(double target_wer, double p, const std::vector<OuterCode> &family,
                             const EstimatorConfig &base, size_t d_l_max = 51);

struct EstimateRow {
    double p = 0;
    size_t d_l = 0;
    double r_swap = 0;
    double wer_hier = 0;
    double wer_basic = 0;
    size_t d_M = 0;
    uint64_t qubits_hier = 0;
    uint64_t qubits_basic = 0;
};

/// Rows ordered by d_l, then r_swap, then p. Empty d_ls or r_swaps fall back to the config value.
std::vector<EstimateRow> sweep(const EstimatorConfig &cfg, const std::vector<double> &p_grid,
                               const std::vector<size_t> &d_ls = {}, const std::vector<double> &r_swaps = {});
std::vector<double> log_grid(double lo, double hi, size_t points);

std::string sweep_to_csv(const std::vector<EstimateRow> &rows);
/// Log-log plot of both WER columns, one color per (d_l, r_swap) series.
std::string sweep_to_svg(const std::vector<EstimateRow> &rows);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace hiermem

#endif
