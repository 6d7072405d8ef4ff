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

#ifndef HIERMEM_BILAYER_H
#define HIERMEM_BILAYER_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hiermem/routing.h"

namespace hiermem {

/// Integer tile side: ceil(sqrt(2 d_l^2 - 1)).
size_t tile_side(size_t d_l);

struct TileLayout {
    size_t L = 0;
    size_t d_l = 0;
    size_t ell = 0;
    size_t physical_qubits = 0;
};

TileLayout tile_layout(size_t L, size_t d_l);
size_t physical_qubit_count(size_t L, size_t d_l);

size_t t_route(size_t d_l, size_t L);

struct SwapPrimitiveDepths {
    size_t staggered = 0;
    size_t walk = 0;
    size_t full_swap = 0;
};

SwapPrimitiveDepths swap_primitive_depths(size_t d_l);

/// Depth of a tile permutation with range-R physical SWAPs; c_sparse weights the log^2 term of
/// sparse Level-1 routing.
size_t logical_route_depth(size_t L, size_t d_l, size_t R, double c_sparse = 4.0);

struct HierarchicalParams {
    uint64_t N = 0;
    uint64_t K = 0;
    uint64_t D = 0;
    uint64_t n = 0;
    uint64_t k = 0;
    uint64_t d = 0;
    uint64_t d_l = 0;
};

HierarchicalParams hierarchical_params(uint64_t n, uint64_t k, uint64_t d, uint64_t d_l);

/// Returns (d_x, d_z) with d_x = d_z + ceil(2 ln(eta) / ln(1/p)).
std::pair<size_t, size_t> biased_tile_dims(size_t d_z, double eta, double p);

struct TileSimReport {
    size_t L = 0;
    size_t d_l = 0;
    /// Logical SWAP layers actually executed.
    size_t layers = 0;
    /// Depth with layers kept staggered between logical SWAPs.
    size_t depth = 0;
    /// Depth when every layer is a stand-alone logical SWAP.
    size_t unoptimized_depth = 0;
    /// Largest stand-alone logical SWAP layer depth.
    size_t logical_swap_depth = 0;
    std::vector<size_t> layer_depths;
    size_t depth_bound = 0;
    size_t touched_qubits = 0;
    /// After each layer, the tile at every slot (index layer*L*L + row*L + col).
    std::vector<std::vector<uint32_t>> tile_positions;
    std::vector<std::string> violations;

    bool ok() const {
        return violations.empty();
    }
    std::string to_json() const;
};

/// Moves tiles of a 2 x L x L bilayer (tile index layer*L*L + row*L + col, layer 1 on top) by alpha,
/// tracking every physical data qubit. alpha must keep each tile in its layer.
/// With `strict`, a violated condition raises verification-failure; otherwise it is only reported.
TileSimReport tile_permutation_sim(size_t L, size_t d_l, const Permutation &alpha, bool strict = true);

}  // namespace hiermem

#endif
