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

#include "hiermem/codes.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <random>
#include <sstream>

#include "hiermem/error.h"

namespace hiermem {

BinaryMatrix::BinaryMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<uint8_t>> &rows) {
    size_t cols = rows.empty() ? 0 : rows[0].size();
    BinaryMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw Error("invalid-argument", "ragged rows");
        }
        for (size_t c = 0; c < cols; c++) {
            m.set(r, c, rows[r][c] & 1);
        }
    }
    return m;
}

BinaryMatrix BinaryMatrix::identity(size_t n) {
    BinaryMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i, true);
    }
    return m;
}

void BinaryMatrix::set(size_t r, size_t c, bool value) {
    uint64_t &w = bits_[r * words_ + c / 64];
    uint64_t mask = uint64_t{1} << (c % 64);
    w = value ? (w | mask) : (w & ~mask);
}

std::vector<uint32_t> BinaryMatrix::row_support(size_t r) const {
    std::vector<uint32_t> out;
    const uint64_t *p = row(r);
    for (size_t w = 0; w < words_; w++) {
        uint64_t bits = p[w];
        while (bits) {
            out.push_back((uint32_t)(w * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

size_t BinaryMatrix::row_weight(size_t r) const {
    size_t total = 0;
    const uint64_t *p = row(r);
    for (size_t w = 0; w < words_; w++) {
        total += std::popcount(p[w]);
    }
    return total;
}

size_t BinaryMatrix::col_weight(size_t c) const {
    size_t total = 0;
    for (size_t r = 0; r < rows_; r++) {
        total += get(r, c);
    }
    return total;
}

bool BinaryMatrix::is_zero() const {
    return std::all_of(bits_.begin(), bits_.end(), [](uint64_t w) {
        return w == 0;
    });
}

BinaryMatrix BinaryMatrix::transpose() const {
    BinaryMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (uint32_t c : row_support(r)) {
            t.set(c, r, true);
        }
    }
    return t;
}

BinaryMatrix BinaryMatrix::operator*(const BinaryMatrix &other) const {
    if (cols_ != other.rows_) {
        throw Error("invalid-argument", "matrix shapes do not compose");
    }
    BinaryMatrix out(rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        uint64_t *dst = out.row(r);
        for (uint32_t k : row_support(r)) {
            const uint64_t *src = other.row(k);
            for (size_t w = 0; w < out.words_; w++) {
                dst[w] ^= src[w];
            }
        }
    }
    return out;
}

size_t rank_f2(const BinaryMatrix &m) {
    BinaryMatrix a = m;
    size_t rank = 0;
    size_t words = a.words_per_row();
    for (size_t c = 0; c < a.cols() && rank < a.rows(); c++) {
        size_t w = c / 64;
        uint64_t mask = uint64_t{1} << (c % 64);
        size_t pivot = rank;
        while (pivot < a.rows() && !(a.row(pivot)[w] & mask)) {
            pivot++;
        }
        if (pivot == a.rows()) {
            continue;
        }
        if (pivot != rank) {
            std::swap_ranges(a.row(pivot), a.row(pivot) + words, a.row(rank));
        }
        const uint64_t *p = a.row(rank);
        for (size_t r = rank + 1; r < a.rows(); r++) {
            uint64_t *q = a.row(r);
            if (q[w] & mask) {
                for (size_t k = w; k < words; k++) {
                    q[k] ^= p[k];
                }
            }
        }
        rank++;
    }
    return rank;
}

SparseBinaryMatrix::SparseBinaryMatrix(size_t cols, const std::vector<std::vector<uint32_t>> &row_supports)
    : cols_(cols) {
    for (const auto &support : row_supports) {
        std::vector<uint32_t> sorted = support;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw Error("invalid-argument", "repeated column in a sparse row");
        }
        if (!sorted.empty() && sorted.back() >= cols) {
            throw Error("invalid-argument", "column index out of range");
        }
        indices_.insert(indices_.end(), sorted.begin(), sorted.end());
        offsets_.push_back(indices_.size());
    }
}

SparseBinaryMatrix::SparseBinaryMatrix(size_t rows, size_t cols, std::vector<size_t> offsets,
                                       std::vector<uint32_t> indices)
    : cols_(cols), offsets_(std::move(offsets)), indices_(std::move(indices)) {
    if (offsets_.size() != rows + 1 || offsets_.front() != 0 || offsets_.back() != indices_.size()) {
        throw Error("invalid-argument", "malformed row offsets");
    }
    for (size_t r = 0; r < rows; r++) {
        for (size_t i = offsets_[r]; i < offsets_[r + 1]; i++) {
            if (indices_[i] >= cols || (i > offsets_[r] && indices_[i] <= indices_[i - 1])) {
                throw Error("invalid-argument", "row indices must be sorted, unique and in range");
            }
        }
    }
}

SparseBinaryMatrix SparseBinaryMatrix::from_dense(const BinaryMatrix &m) {
    std::vector<std::vector<uint32_t>> rows(m.rows());
    for (size_t r = 0; r < m.rows(); r++) {
        rows[r] = m.row_support(r);
    }
    return SparseBinaryMatrix(m.cols(), rows);
}

std::vector<size_t> SparseBinaryMatrix::col_weights() const {
    std::vector<size_t> w(cols_, 0);
    for (uint32_t c : indices_) {
        w[c]++;
    }
    return w;
}

size_t SparseBinaryMatrix::max_row_weight() const {
    size_t best = 0;
    for (size_t r = 0; r < rows(); r++) {
        best = std::max(best, offsets_[r + 1] - offsets_[r]);
    }
    return best;
}

BinaryMatrix SparseBinaryMatrix::to_dense() const {
    BinaryMatrix m(rows(), cols_);
    for (size_t r = 0; r < rows(); r++) {
        for (uint32_t c : row(r)) {
            m.set(r, c, true);
        }
    }
    return m;
}

std::vector<std::vector<uint32_t>> SparseBinaryMatrix::columns() const {
    std::vector<std::vector<uint32_t>> out(cols_);
    for (size_t r = 0; r < rows(); r++) {
        for (uint32_t c : row(r)) {
            out[c].push_back((uint32_t)r);
        }
    }
    return out;
}

bool rows_orthogonal(const SparseBinaryMatrix &a, const SparseBinaryMatrix &b) {
    if (a.cols() != b.cols()) {
        return false;
    }
    auto b_cols = b.columns();
    std::vector<uint8_t> parity(b.rows(), 0);
    std::vector<uint32_t> touched;
    for (size_t r = 0; r < a.rows(); r++) {
        touched.clear();
        for (uint32_t c : a.row(r)) {
            for (uint32_t s : b_cols[c]) {
                if (parity[s] == 0) {
                    touched.push_back(s);
                }
                parity[s] ^= 2;
                parity[s] |= 1;
            }
        }
        bool ok = true;
        for (uint32_t s : touched) {
            ok = ok && (parity[s] & 2) == 0;
            parity[s] = 0;
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

void CssCode::validate() const {
    if (hx.cols() != hz.cols()) {
        throw Error("invalid-code", "hx and hz have different widths");
    }
    if (qubit_coords && qubit_coords->size() != hx.cols()) {
        throw Error("invalid-code", "coordinate count does not match qubit count");
    }
    if (!rows_orthogonal(hx, hz)) {
        throw Error("invalid-code", "hx * hz^T != 0");
    }
}

BinaryMatrix sample_regular_parity_check(size_t n, size_t col_w, size_t row_w, uint64_t seed, size_t max_tries,
                                         bool require_full_rank) {
    if (n == 0 || col_w == 0 || row_w == 0 || (n * col_w) % row_w != 0 || row_w > n) {
        throw Error("invalid-argument", "need n*col_w divisible by row_w and row_w <= n");
    }
    size_t m = n * col_w / row_w;
    if (col_w > m) {
        throw Error("invalid-argument", "column weight exceeds row count");
    }
    if (require_full_rank && col_w % 2 == 0) {
        throw Error("sampling-failure", "even column weight makes the rows sum to zero, so rank < m");
    }
    std::mt19937_64 rng(seed);
    std::vector<uint32_t> sockets(n * col_w);
    for (size_t i = 0; i < sockets.size(); i++) {
        sockets[i] = (uint32_t)(i / col_w);
    }
    auto collides = [&](size_t row, uint32_t col, size_t skip) {
        for (size_t i = row * row_w; i < (row + 1) * row_w; i++) {
            if (i != skip && sockets[i] == col) {
                return true;
            }
        }
        return false;
    };
    std::uniform_int_distribution<size_t> any_socket(0, sockets.size() - 1);
    for (size_t attempt = 0; attempt < max_tries; attempt++) {
        std::shuffle(sockets.begin(), sockets.end(), rng);
        // Collided sockets are moved by switches with random partners; a switch is only made when neither
        // row gains a repeat, so degrees stay exact.
        size_t budget = 1000 * sockets.size();
        bool clean = false;
        while (budget > 0) {
            std::vector<size_t> bad;
            for (size_t p = 0; p < sockets.size(); p++) {
                if (collides(p / row_w, sockets[p], p)) {
                    bad.push_back(p);
                }
            }
            if (bad.empty()) {
                clean = true;
                break;
            }
            for (size_t p : bad) {
                if (!collides(p / row_w, sockets[p], p)) {
                    continue;
                }
                for (; budget > 0; budget--) {
                    size_t q = any_socket(rng);
                    if (q / row_w == p / row_w) {
                        continue;
                    }
                    if (!collides(p / row_w, sockets[q], p) && !collides(q / row_w, sockets[p], q)) {
                        std::swap(sockets[p], sockets[q]);
                        break;
                    }
                }
            }
        }
        if (!clean) {
            continue;
        }
        BinaryMatrix h(m, n);
        for (size_t p = 0; p < sockets.size(); p++) {
            h.set(p / row_w, sockets[p], true);
        }
        if (require_full_rank && rank_f2(h) < m) {
            continue;
        }
        return h;
    }
    throw Error("sampling-failure", "no admissible matrix within max_tries");
}

CssCode hypergraph_product(const BinaryMatrix &h1, const BinaryMatrix &h2) {
    size_t m1 = h1.rows(), n1 = h1.cols(), m2 = h2.rows(), n2 = h2.cols();
    size_t left = n1 * n2;
    size_t n = left + m1 * m2;
    std::vector<std::vector<uint32_t>> h1_rows(m1), h1_cols(n1), h2_rows(m2), h2_cols(n2);
    for (size_t i = 0; i < m1; i++) {
        h1_rows[i] = h1.row_support(i);
        for (uint32_t a : h1_rows[i]) {
            h1_cols[a].push_back((uint32_t)i);
        }
    }
    for (size_t k = 0; k < m2; k++) {
        h2_rows[k] = h2.row_support(k);
        for (uint32_t b : h2_rows[k]) {
            h2_cols[b].push_back((uint32_t)k);
        }
    }

    // hx rows (i, j) for i < m1, j < n2; hz rows (a, k) for a < n1, k < m2.
    std::vector<size_t> x_off{0}, z_off{0};
    std::vector<uint32_t> x_idx, z_idx;
    for (size_t i = 0; i < m1; i++) {
        for (size_t j = 0; j < n2; j++) {
            for (uint32_t a : h1_rows[i]) {
                x_idx.push_back((uint32_t)(a * n2 + j));
            }
            for (uint32_t k : h2_cols[j]) {
                x_idx.push_back((uint32_t)(left + i * m2 + k));
            }
            x_off.push_back(x_idx.size());
        }
    }
    for (size_t a = 0; a < n1; a++) {
        for (size_t k = 0; k < m2; k++) {
            for (uint32_t b : h2_rows[k]) {
                z_idx.push_back((uint32_t)(a * n2 + b));
            }
            for (uint32_t i : h1_cols[a]) {
                z_idx.push_back((uint32_t)(left + i * m2 + k));
            }
            z_off.push_back(z_idx.size());
        }
    }
    CssCode code;
    code.hx = SparseBinaryMatrix(m1 * n2, n, std::move(x_off), std::move(x_idx));
    code.hz = SparseBinaryMatrix(n1 * m2, n, std::move(z_off), std::move(z_idx));
    size_t r1 = rank_f2(h1), r2 = rank_f2(h2);
    code.known_k = (n1 - r1) * (n2 - r2) + (m1 - r1) * (m2 - r2);
    code.validate();
    return code;
}

CssCode rotated_surface_code(size_t d) {
    if (d < 3 || d % 2 == 0) {
        throw Error("invalid-argument", "surface code distance must be odd and at least 3");
    }
    int64_t D = (int64_t)d;
    std::vector<std::vector<uint32_t>> x_rows, z_rows;
    for (int64_t y = -1; y < D; y++) {
        for (int64_t x = -1; x < D; x++) {
            bool is_x = ((x + y) % 2 + 2) % 2 == 0;
            bool vertical_edge = (y == -1 || y == D - 1) && x >= 0 && x <= D - 2;
            bool horizontal_edge = (x == -1 || x == D - 1) && y >= 0 && y <= D - 2;
            bool interior = x >= 0 && y >= 0 && x <= D - 2 && y <= D - 2;
            if (!(interior || (vertical_edge && is_x) || (horizontal_edge && !is_x))) {
                continue;
            }
            std::vector<uint32_t> support;
            for (int64_t dy = 0; dy <= 1; dy++) {
                for (int64_t dx = 0; dx <= 1; dx++) {
                    int64_t qx = x + dx, qy = y + dy;
                    if (qx >= 0 && qy >= 0 && qx < D && qy < D) {
                        support.push_back((uint32_t)(qy * D + qx));
                    }
                }
            }
            (is_x ? x_rows : z_rows).push_back(std::move(support));
        }
    }
    CssCode code;
    code.hx = SparseBinaryMatrix(d * d, x_rows);
    code.hz = SparseBinaryMatrix(d * d, z_rows);
    std::vector<Coord> coords;
    for (int64_t y = 0; y < D; y++) {
        for (int64_t x = 0; x < D; x++) {
            coords.push_back({x, y});
        }
    }
    code.qubit_coords = std::move(coords);
    code.validate();
    return code;
}

CodeParams code_params(const CssCode &c) {
    CodeParams p;
    p.n = c.n();
    auto wx = c.hx.col_weights();
    auto wz = c.hz.col_weights();
    for (size_t q = 0; q < p.n; q++) {
        p.delta_q = std::max(p.delta_q, wx[q] + wz[q]);
    }
    p.delta_g = std::max(c.hx.max_row_weight(), c.hz.max_row_weight());
    if (c.known_k) {
        p.k = *c.known_k;
    } else {
        if ((c.hx.rows() + c.hz.rows()) * p.n > (size_t{1} << 32)) {
            throw Error("instance-too-large", "quantum rank needs a dense copy; construct with a known k");
        }
        p.k = p.n - rank_f2(c.hx.to_dense()) - rank_f2(c.hz.to_dense());
    }
    return p;
}

namespace {

using Bits = std::vector<uint64_t>;

/// Row echelon basis of a row space, used to test membership by sequential reduction.
struct Echelon {
    std::vector<Bits> rows;
    std::vector<size_t> pivots;

    explicit Echelon(const BinaryMatrix &m) {
        BinaryMatrix a = m;
        size_t words = a.words_per_row();
        size_t rank = 0;
        for (size_t c = 0; c < a.cols() && rank < a.rows(); c++) {
            size_t pivot = rank;
            while (pivot < a.rows() && !a.get(pivot, c)) {
                pivot++;
            }
            if (pivot == a.rows()) {
                continue;
            }
            std::swap_ranges(a.row(pivot), a.row(pivot) + words, a.row(rank));
            for (size_t r = rank + 1; r < a.rows(); r++) {
                if (a.get(r, c)) {
                    for (size_t k = 0; k < words; k++) {
                        a.row(r)[k] ^= a.row(rank)[k];
                    }
                }
            }
            rows.emplace_back(a.row(rank), a.row(rank) + words);
            pivots.push_back(c);
            rank++;
        }
    }

    bool contains(Bits v) const {
        for (size_t i = 0; i < rows.size(); i++) {
            if ((v[pivots[i] / 64] >> (pivots[i] % 64)) & 1) {
                for (size_t k = 0; k < v.size(); k++) {
                    v[k] ^= rows[i][k];
                }
            }
        }
        return std::all_of(v.begin(), v.end(), [](uint64_t w) {
            return w == 0;
        });
    }
};

/// Smallest weight w <= w_max of a vector in ker(checks) outside rowspace(stabs).
std::optional<size_t> min_logical_weight(const BinaryMatrix &checks, const BinaryMatrix &stabs, size_t w_max) {
    size_t n = checks.cols();
    BinaryMatrix check_cols = checks.transpose();
    Echelon span(stabs);
    size_t words = (n + 63) / 64;
    size_t syn_words = check_cols.words_per_row();
    for (size_t w = 1; w <= std::min(w_max, n); w++) {
        std::vector<uint32_t> pick(w);
        for (size_t i = 0; i < w; i++) {
            pick[i] = (uint32_t)i;
        }
        while (true) {
            Bits syndrome(syn_words, 0);
            for (uint32_t q : pick) {
                for (size_t k = 0; k < syn_words; k++) {
                    syndrome[k] ^= check_cols.row(q)[k];
                }
            }
            bool commutes = std::all_of(syndrome.begin(), syndrome.end(), [](uint64_t x) {
                return x == 0;
            });
            if (commutes) {
                Bits v(words, 0);
                for (uint32_t q : pick) {
                    v[q / 64] |= uint64_t{1} << (q % 64);
                }
                if (!span.contains(v)) {
                    return w;
                }
            }
            size_t i = w;
            while (i > 0 && pick[i - 1] == n - w + i - 1) {
                i--;
            }
            if (i == 0) {
                break;
            }
            pick[i - 1]++;
            for (size_t j = i; j < w; j++) {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<size_t> distance_bruteforce(const CssCode &c, size_t w_max) {
    if (c.n() > 30 && w_max > 4) {
        throw Error("instance-too-large", "brute-force distance needs n <= 30 or w_max <= 4");
    }
    BinaryMatrix hx = c.hx.to_dense();
    BinaryMatrix hz = c.hz.to_dense();
    auto x_logical = min_logical_weight(hz, hx, w_max);
    auto z_logical = min_logical_weight(hx, hz, w_max);
    if (x_logical && z_logical) {
        return std::min(*x_logical, *z_logical);
    }
    return x_logical ? x_logical : z_logical;
}

std::string to_alist(const BinaryMatrix &m) {
    BinaryMatrix t = m.transpose();
    size_t max_col = 0, max_row = 0;
    for (size_t c = 0; c < m.cols(); c++) {
        max_col = std::max(max_col, t.row_weight(c));
    }
    for (size_t r = 0; r < m.rows(); r++) {
        max_row = std::max(max_row, m.row_weight(r));
    }
    std::ostringstream out;
    auto write_list = [&](const std::vector<size_t> &xs) {
        for (size_t i = 0; i < xs.size(); i++) {
            out << (i ? " " : "") << xs[i];
        }
        out << "\n";
    };
    out << m.cols() << " " << m.rows() << "\n" << max_col << " " << max_row << "\n";
    std::vector<size_t> weights;
    for (size_t c = 0; c < m.cols(); c++) {
        weights.push_back(t.row_weight(c));
    }
    write_list(weights);
    weights.clear();
    for (size_t r = 0; r < m.rows(); r++) {
        weights.push_back(m.row_weight(r));
    }
    write_list(weights);
    auto write_supports = [&](const BinaryMatrix &a, size_t width) {
        for (size_t r = 0; r < a.rows(); r++) {
            std::vector<size_t> entries;
            for (uint32_t c : a.row_support(r)) {
                entries.push_back(c + 1);
            }
            entries.resize(width, 0);
            write_list(entries);
        }
    };
    write_supports(t, max_col);
    write_supports(m, max_row);
    return out.str();
}

BinaryMatrix from_alist(const std::string &text) {
    std::istringstream in(text);
    auto next = [&]() {
        long long v;
        if (!(in >> v) || v < 0) {
            throw Error("parse-error", "alist: expected a non-negative integer");
        }
        return (size_t)v;
    };
    size_t n = next(), m = next();
    size_t max_col = next(), max_row = next();
    std::vector<size_t> col_w(n), row_w(m);
    for (auto &w : col_w) {
        w = next();
    }
    for (auto &w : row_w) {
        w = next();
    }
    BinaryMatrix h(m, n);
    for (size_t c = 0; c < n; c++) {
        size_t seen = 0;
        for (size_t i = 0; i < max_col; i++) {
            size_t r = next();
            if (r == 0) {
                continue;
            }
            if (r > m || h.get(r - 1, c)) {
                throw Error("parse-error", "alist: bad row index in column list");
            }
            h.set(r - 1, c, true);
            seen++;
        }
        if (seen != col_w[c]) {
            throw Error("parse-error", "alist: column weight mismatch");
        }
    }
    for (size_t r = 0; r < m; r++) {
        size_t seen = 0;
        for (size_t i = 0; i < max_row; i++) {
            size_t c = next();
            if (c == 0) {
                continue;
            }
            if (c > n || !h.get(r, c - 1)) {
                throw Error("parse-error", "alist: row list disagrees with column list");
            }
            seen++;
        }
        if (seen != row_w[r] || seen != h.row_weight(r)) {
            throw Error("parse-error", "alist: row weight mismatch");
        }
    }
    return h;
}

std::string to_pbm(const BinaryMatrix &m) {
    std::string out = "P1\n" + std::to_string(m.cols()) + " " + std::to_string(m.rows()) + "\n";
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out += c ? " " : "";
            out += m.get(r, c) ? '1' : '0';
        }
        out += "\n";
    }
    return out;
}

BinaryMatrix from_pbm(const std::string &text) {
    std::string clean;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        clean += line.substr(0, line.find('#')) + "\n";
    }
    std::istringstream in(clean);
    std::string magic;
    long long cols, rows;
    if (!(in >> magic >> cols >> rows) || magic != "P1" || cols < 0 || rows < 0) {
        throw Error("parse-error", "pbm: expected a P1 header");
    }
    BinaryMatrix m((size_t)rows, (size_t)cols);
    size_t i = 0;
    char ch;
    while (in.get(ch)) {
        if (ch == '0' || ch == '1') {
            if (i >= m.rows() * m.cols()) {
                throw Error("parse-error", "pbm: too many pixels");
            }
            m.set(i / m.cols(), i % m.cols(), ch == '1');
            i++;
        } else if (!std::isspace((unsigned char)ch)) {
            throw Error("parse-error", "pbm: unexpected character");
        }
    }
    if (i != m.rows() * m.cols()) {
        throw Error("parse-error", "pbm: too few pixels");
    }
    return m;
}

}  // namespace hiermem
