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

#include "hiermem/estimator.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hiermem/bilayer.h"
#include "hiermem/circuits.h"
#include "hiermem/error.h"

namespace hiermem {

OuterCode expander_58_code() {
    OuterCode c;
    c.n = 1116416;
    c.k = 112896;
    c.d = 119;
    c.delta_q = 16;
    c.delta_g = 13;
    c.checks = 560 * 896;
    return c;
}

std::vector<OuterCode> expander_48_family(size_t count) {
    std::vector<OuterCode> out;
    for (size_t m = 0; m < count; m++) {
        uint64_t nc = (uint64_t)512 << m;
        uint64_t mc = nc / 2;
        OuterCode c;
        c.n = nc * nc + mc * mc;
        c.k = (nc - mc) * (nc - mc);
        c.d = (uint64_t)32 << m;
        c.delta_q = 12;
        c.delta_g = 12;
        c.checks = mc * nc;
        out.push_back(c);
    }
    return out;
}

void EstimatorConfig::validate() const {
    auto unit = [](double v) { return v > 0 && v < 1; };
    if (!unit(surface_threshold) || !unit(ldpc_threshold)) {
        throw Error("invalid-config", "thresholds must lie in (0, 1)");
    }
    if (!(r_swap > 0) || !std::isfinite(r_swap)) {
        throw Error("invalid-config", "r_swap must be positive");
    }
    if (!(surface_prefactor > 0)) {
        throw Error("invalid-config", "surface_prefactor must be positive");
    }
    if (d_l == 0 || outer.n == 0 || outer.k == 0 || outer.d == 0 || outer.k > outer.n) {
        throw Error("invalid-config", "outer code needs 0 < k <= n and d >= 1, and d_l >= 1");
    }
    if (outer.delta_g < 2) {
        throw Error("invalid-config", "outer delta_g must be at least 2");
    }
    if (d_x && *d_x < d_l) {
        throw Error("invalid-config", "d_x must be at least d_l");
    }
    if (eta && !(*eta >= 1)) {
        throw Error("invalid-config", "eta must be at least 1");
    }
    if (L && *L == 0) {
        throw Error("invalid-config", "L must be positive");
    }
}

size_t EstimatorConfig::tiles_per_side() const {
    if (L) {
        return *L;
    }
    return bilayer_side(outer.n, outer.checks ? outer.checks : outer.n);
}

namespace {

void check_p(double p) {
    if (!(p > 0) || !std::isfinite(p)) {
        throw Error("invalid-p", "gate error rate must be positive");
    }
}

double log_p_surf(double p, size_t d, const EstimatorConfig &cfg) {
    double v = std::log(cfg.surface_prefactor) +
               (double)((d + 1) / 2) * (std::log(p) - std::log(cfg.surface_threshold));
    return std::min(v, 0.0);
}

// log(1 - (1 - q)^e) for q = exp(log_q).
double log_fail_over(double log_q, double e) {
    if (log_q >= 0) {
        return 0;
    }
    double q = std::exp(log_q);
    if (q == 0 || e * q < 1e-12) {
        return std::log(e) + log_q;
    }
    return std::log(-std::expm1(e * std::log1p(-q)));
}

double level1_exponent(const EstimatorConfig &cfg) {
    return cfg.r_swap * (double)t_route(cfg.d_l, cfg.tiles_per_side()) / (double)cfg.d_l + 1;
}

double log_p_level1_at(double p, size_t d, const EstimatorConfig &cfg) {
    return log_fail_over(log_p_surf(p, d, cfg), level1_exponent(cfg));
}

size_t biased_dx(double p, const EstimatorConfig &cfg) {
    if (cfg.d_x) {
        return *cfg.d_x;
    }
    if (!cfg.eta) {
        throw Error("invalid-config", "biased estimate needs d_x or eta");
    }
    return biased_tile_dims(cfg.d_l, *cfg.eta, p).first;
}

double log_wer_hier_plain(double p, const EstimatorConfig &cfg) {
    double e = (double)hook_exponent(cfg.outer.d, cfg.outer.delta_g);
    return e * (log_p_level1_at(p, cfg.d_l, cfg) - std::log(cfg.ldpc_threshold));
}

double log_wer_hier_biased(double p, const EstimatorConfig &cfg) {
    size_t dx = biased_dx(p, cfg);
    double thr = std::log(cfg.ldpc_threshold);
    double a = (double)((cfg.outer.d + 1) / 2) * (log_p_level1_at(p, cfg.d_l, cfg) - thr);
    double b = (double)hook_exponent(cfg.outer.d, cfg.outer.delta_g) * (log_p_level1_at(p, dx, cfg) - thr);
    double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

bool is_biased(const EstimatorConfig &cfg) {
    return cfg.d_x.has_value() || cfg.eta.has_value();
}

double log_wer_hier_any(double p, const EstimatorConfig &cfg) {
    return is_biased(cfg) ? log_wer_hier_biased(p, cfg) : log_wer_hier_plain(p, cfg);
}

double log_wer_basic(double p, uint64_t K, size_t d_M, uint64_t T, const EstimatorConfig &cfg) {
    return log_fail_over(log_p_surf(p, d_M, cfg), (double)K * (double)T / (double)d_M);
}

double clamp_exp(double log_v) {
    return log_v >= 0 ? 1.0 : std::exp(log_v);
}

uint64_t basic_qubits(uint64_t K, size_t d_M) {
    return K * (2 * (uint64_t)d_M * d_M - 1);
}

}  // namespace

double p_surf(double p, size_t d, const EstimatorConfig &cfg) {
    check_p(p);
    return clamp_exp(log_p_surf(p, d, cfg));
}

double p_level1(double p, const EstimatorConfig &cfg) {
    check_p(p);
    cfg.validate();
    return clamp_exp(log_p_level1_at(p, cfg.d_l, cfg));
}

size_t hook_exponent(uint64_t d, size_t delta_g) {
    if (delta_g < 2) {
        throw Error("invalid-argument", "delta_g must be at least 2");
    }
    uint64_t half = (d + 1) / 2;
    uint64_t w = delta_g / 2;
    return (size_t)((half + w - 1) / w);
}

double wer_hier_unclamped(double p, const EstimatorConfig &cfg) {
    check_p(p);
    cfg.validate();
    return std::exp(log_wer_hier_plain(p, cfg));
}

double wer_hier(double p, const EstimatorConfig &cfg) {
    check_p(p);
    cfg.validate();
    return clamp_exp(log_wer_hier_plain(p, cfg));
}

double wer_hier_biased_unclamped(double p, const EstimatorConfig &cfg) {
    check_p(p);
    cfg.validate();
    return std::exp(log_wer_hier_biased(p, cfg));
}

double wer_hier_biased(double p, const EstimatorConfig &cfg) {
    check_p(p);
    cfg.validate();
    return clamp_exp(log_wer_hier_biased(p, cfg));
}

uint64_t hier_cycle_rounds(const EstimatorConfig &cfg) {
    if (cfg.cycle_rounds) {
        return *cfg.cycle_rounds;
    }
    cfg.validate();
    uint64_t delta = std::max(cfg.outer.delta_q, cfg.outer.delta_g);
    double routed = cfg.r_swap * (double)t_route(cfg.d_l, cfg.tiles_per_side());
    uint64_t rounds = (uint64_t)std::llround(routed);
    return 2 * delta * (rounds + 1) + 4;
}

double wer_basic(double p, uint64_t K, size_t d_M, uint64_t T_rounds, const EstimatorConfig &cfg) {
    check_p(p);
    if (K == 0 || d_M == 0) {
        throw Error("invalid-argument", "K and d_M must be positive");
    }
    if (T_rounds == 0) {
        return 0;
    }
    return clamp_exp(log_wer_basic(p, K, d_M, T_rounds, cfg));
}

size_t match_surface_distance(uint64_t qubits_hier, uint64_t K) {
    if (K == 0) {
        throw Error("invalid-argument", "K must be positive");
    }
    size_t d = 1;
    while (basic_qubits(K, d) < qubits_hier) {
        d += 2;
    }
    return d;
}

uint64_t hierarchical_qubits(const EstimatorConfig &cfg) {
    cfg.validate();
    size_t L = cfg.tiles_per_side();
    if (!cfg.d_x) {
        return physical_qubit_count(L, cfg.d_l);
    }
    // Rectangular tiles: side of the square with the same rotated-code footprint.
    uint64_t target = 2 * (uint64_t)*cfg.d_x * cfg.d_l - 1;
    uint64_t ell = (uint64_t)std::sqrt((double)target);
    while (ell * ell < target) {
        ell++;
    }
    uint64_t e = ell + 1;
    return 2 * e * e * (uint64_t)(L + 1) * (L + 1);
}

std::optional<double> find_crossover(const EstimatorConfig &cfg, double p_lo, double p_hi) {
    check_p(p_lo);
    check_p(p_hi);
    if (!(p_lo < p_hi)) {
        throw Error("invalid-argument", "need p_lo < p_hi");
    }
    cfg.validate();
    size_t d_M = match_surface_distance(hierarchical_qubits(cfg), cfg.outer.k);
    uint64_t T = hier_cycle_rounds(cfg);
    auto g = [&](double lp) {
        double p = std::exp(lp);
        return log_wer_hier_any(p, cfg) - log_wer_basic(p, cfg.outer.k, d_M, T, cfg);
    };
    double lo = std::log(p_lo);
    double hi = std::log(p_hi);
    double g_lo = g(lo);
    double g_hi = g(hi);
    if (g_lo == 0) {
        return p_lo;
    }
    if (g_hi == 0) {
        return p_hi;
    }
    if (std::isnan(g_lo) || std::isnan(g_hi) || (g_lo < 0) == (g_hi < 0)) {
        return std::nullopt;
    }
    const double tol = std::log1p(1e-3);
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0) {
            return std::exp(mid);
        }
        if ((gm < 0) == (g_lo < 0)) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

ResourceRatio resource_ratio(double target_wer, double p, const std::vector<OuterCode> &family,
                             const EstimatorConfig &base, size_t d_l_max) {
    check_p(p);
    if (!(target_wer > 0)) {
        throw Error("invalid-argument", "target WER must be positive");
    }
    double log_target = std::log(target_wer);
    for (size_t m = 0; m < family.size(); m++) {
        EstimatorConfig cfg = base;
        cfg.outer = family[m];
        cfg.L.reset();
        for (size_t d_l = 3; d_l <= d_l_max; d_l += 2) {
            cfg.d_l = d_l;
            if (cfg.d_x && *cfg.d_x < d_l) {
                cfg.d_x = 2 * d_l + 1;
            }
            cfg.validate();
            if (std::min(log_wer_hier_any(p, cfg), 0.0) > log_target) {
                continue;
            }
            ResourceRatio r;
            r.member = m;
            r.d_l = d_l;
            r.qubits_hier = hierarchical_qubits(cfg);
            uint64_t T = hier_cycle_rounds(cfg);
            for (size_t d_M = 1; d_M <= 100001; d_M += 2) {
                if (std::min(log_wer_basic(p, cfg.outer.k, d_M, T, cfg), 0.0) <= log_target) {
                    r.d_M = d_M;
                    break;
                }
            }
            if (r.d_M == 0) {
                throw Error("no-member-meets-target", "the basic encoding cannot reach the target at this rate");
            }
            r.qubits_basic = basic_qubits(cfg.outer.k, r.d_M);
            r.ratio = (double)r.qubits_basic / (double)r.qubits_hier;
            return r;
        }
    }
    throw Error("no-member-meets-target", "no family member reaches the target WER");
}

std::vector<double> log_grid(double lo, double hi, size_t points) {
    check_p(lo);
    check_p(hi);
    std::vector<double> out;
    for (size_t i = 0; i < points; i++) {
        double t = points == 1 ? 0 : (double)i / (double)(points - 1);
        out.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
    }
    if (points > 0) {
        out.front() = lo;
        out.back() = hi;
    }
    return out;
}

std::vector<EstimateRow> sweep(const EstimatorConfig &cfg, const std::vector<double> &p_grid,
                               const std::vector<size_t> &d_ls, const std::vector<double> &r_swaps) {
    std::vector<size_t> ds = d_ls.empty() ? std::vector<size_t>{cfg.d_l} : d_ls;
    std::vector<double> rs = r_swaps.empty() ? std::vector<double>{cfg.r_swap} : r_swaps;
    std::vector<EstimateRow> rows;
    for (size_t d_l : ds) {
        for (double r : rs) {
            EstimatorConfig c = cfg;
            c.d_l = d_l;
            c.r_swap = r;
            c.validate();
            uint64_t qh = hierarchical_qubits(c);
            size_t d_M = match_surface_distance(qh, c.outer.k);
            uint64_t T = hier_cycle_rounds(c);
            for (double p : p_grid) {
                check_p(p);
                EstimateRow row;
                row.p = p;
                row.d_l = d_l;
                row.r_swap = r;
                row.wer_hier = clamp_exp(log_wer_hier_any(p, c));
                row.wer_basic = clamp_exp(log_wer_basic(p, c.outer.k, d_M, T, c));
                row.d_M = d_M;
                row.qubits_hier = qh;
                row.qubits_basic = basic_qubits(c.outer.k, d_M);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string sweep_to_csv(const std::vector<EstimateRow> &rows) {
    std::ostringstream out;
    out << "p,d_l,r_swap,wer_hier,wer_basic,d_M,qubits_hier,qubits_basic\n";
    for (const auto &r : rows) {
        out << format_double(r.p) << ',' << r.d_l << ',' << format_double(r.r_swap) << ','
            << format_double(r.wer_hier) << ',' << format_double(r.wer_basic) << ',' << r.d_M << ','
            << r.qubits_hier << ',' << r.qubits_basic << '\n';
    }
    return out.str();
}

std::string sweep_to_svg(const std::vector<EstimateRow> &rows) {
    const double W = 640, H = 480, M = 60;
    double p_min = std::numeric_limits<double>::infinity();
    double p_max = 0;
    double w_min = 1;
    for (const auto &r : rows) {
        p_min = std::min(p_min, r.p);
        p_max = std::max(p_max, r.p);
        for (double w : {r.wer_hier, r.wer_basic}) {
            if (w > 0) {
                w_min = std::min(w_min, w);
            }
        }
    }
    w_min = std::max(w_min, 1e-300);
    if (rows.empty() || p_max <= p_min) {
        p_min = 1e-4;
        p_max = 1e-2;
    }
    double lx0 = std::log10(p_min), lx1 = std::log10(p_max);
    double ly0 = std::floor(std::log10(w_min)), ly1 = 0;
    if (ly1 - ly0 < 1) {
        ly0 = ly1 - 1;
    }
    auto X = [&](double p) { return M + (std::log10(p) - lx0) / (lx1 - lx0) * (W - 2 * M); };
    auto Y = [&](double w) {
        double lw = w > 0 ? std::max(std::log10(w), ly0) : ly0;
        return H - M - (lw - ly0) / (ly1 - ly0) * (H - 2 * M);
    };
    const char *colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
    std::map<std::pair<size_t, double>, std::vector<const EstimateRow *>> series;
    for (const auto &r : rows) {
        series[{r.d_l, r.r_swap}].push_back(&r);
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">p (" << format_double(p_min)
        << " to " << format_double(p_max) << ")</text>\n";
    out << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2
        << ")\" text-anchor=\"middle\">WER (1e" << ly0 << " to 1)</text>\n";
    size_t idx = 0;
    for (const auto &[key, pts] : series) {
        const char *color = colors[idx++ % 6];
        for (int basic = 0; basic < 2; basic++) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\"" << (basic ? " stroke-dasharray=\"6,4\"" : "")
                << " points=\"";
            for (const EstimateRow *r : pts) {
                out << X(r->p) << ',' << Y(basic ? r->wer_basic : r->wer_hier) << ' ';
            }
            out << "\"/>\n";
        }
        out << "<text x=\"" << M + 8 << "\" y=\"" << M + 18 * idx << "\" fill=\"" << color << "\">d_l=" << key.first
            << " r_swap=" << format_double(key.second) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace hiermem
