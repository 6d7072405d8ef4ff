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

#ifndef HIERMEM_CODES_H
#define HIERMEM_CODES_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hiermem/graph.h"

namespace hiermem {

/// Dense GF(2) matrix, row-major, each row packed into 64-bit words.
class BinaryMatrix {
   public:
    BinaryMatrix() = default;
    BinaryMatrix(size_t rows, size_t cols);
    static BinaryMatrix from_rows(const std::vector<std::vector<uint8_t>> &rows);
    static BinaryMatrix identity(size_t n);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    size_t words_per_row() const {
        return words_;
    }
    bool get(size_t r, size_t c) const {
        return (bits_[r * words_ + c / 64] >> (c % 64)) & 1;
    }
    void set(size_t r, size_t c, bool value);
    uint64_t *row(size_t r) {
        return bits_.data() + r * words_;
    }
    const uint64_t *row(size_t r) const {
        return bits_.data() + r * words_;
    }
    std::vector<uint32_t> row_support(size_t r) const;
    size_t row_weight(size_t r) const;
    size_t col_weight(size_t c) const;
    bool is_zero() const;

    BinaryMatrix transpose() const;
    BinaryMatrix operator*(const BinaryMatrix &other) const;
    bool operator==(const BinaryMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    size_t words_ = 0;
    std::vector<uint64_t> bits_;
};

size_t rank_f2(const BinaryMatrix &m);

/// Row-compressed GF(2) matrix for check matrices too large to hold densely.
class SparseBinaryMatrix {
   public:
    SparseBinaryMatrix() = default;
    SparseBinaryMatrix(size_t cols, const std::vector<std::vector<uint32_t>> &row_supports);
    SparseBinaryMatrix(size_t rows, size_t cols, std::vector<size_t> offsets, std::vector<uint32_t> indices);
    static SparseBinaryMatrix from_dense(const BinaryMatrix &m);

    size_t rows() const {
        return offsets_.empty() ? 0 : offsets_.size() - 1;
    }
    size_t cols() const {
        return cols_;
    }
    size_t nonzeros() const {
        return indices_.size();
    }
    std::span<const uint32_t> row(size_t r) const {
        return {indices_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
    }
    std::vector<size_t> col_weights() const;
    size_t max_row_weight() const;
    BinaryMatrix to_dense() const;
    /// Column-major adjacency: for each column, the rows that contain it.
    std::vector<std::vector<uint32_t>> columns() const;
    bool operator==(const SparseBinaryMatrix &other) const = default;

   private:
    size_t cols_ = 0;
    std::vector<size_t> offsets_{0};
    std::vector<uint32_t> indices_;
};

/// True when every row of a has even overlap with every row of b.
bool rows_orthogonal(const SparseBinaryMatrix &a, const SparseBinaryMatrix &b);

struct CssCode {
    SparseBinaryMatrix hx;
    SparseBinaryMatrix hz;
    std::optional<std::vector<Coord>> qubit_coords;
    /// Set by constructors that know k from classical ranks, so large codes never need a quantum rank.
    std::optional<size_t> known_k;

    size_t n() const {
        return hx.cols();
    }
    /// Throws on mismatched widths or hx*hz^T != 0.
    void validate() const;
};

struct CodeParams {
    size_t n = 0;
    size_t k = 0;
    size_t delta_q = 0;
    size_t delta_g = 0;
    std::optional<size_t> d;
};

BinaryMatrix sample_regular_parity_check(size_t n, size_t col_w, size_t row_w, uint64_t seed, size_t max_tries = 1000,
                                         bool require_full_rank = false);
CssCode hypergraph_product(const BinaryMatrix &h1, const BinaryMatrix &h2);
CssCode rotated_surface_code(size_t d);
CodeParams code_params(const CssCode &c);
std::optional<size_t> distance_bruteforce(const CssCode &c, size_t w_max);

/// MacKay alist text: `n m`, max weights, column and row weights, then 1-based supports padded with 0.
std::string to_alist(const BinaryMatrix &m);
BinaryMatrix from_alist(const std::string &text);
/// Plain PBM (P1) bitmap, one matrix row per line.
std::string to_pbm(const BinaryMatrix &m);
BinaryMatrix from_pbm(const std::string &text);

}  // namespace hiermem

#endif
