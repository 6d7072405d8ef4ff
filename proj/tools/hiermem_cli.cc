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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hiermem/bilayer.h"
#include "hiermem/circuits.h"
#include "hiermem/codes.h"
#include "hiermem/error.h"
#include "hiermem/estimator.h"
#include "hiermem/pauli.h"
#include "hiermem/routing.h"
#include "hiermem/version.h"

using json = nlohmann::json;
using namespace hiermem;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

const char *kParamHelp = R"(Config: {"command": ..., "seed": int, "output": dir, "input": path, "params": {...}}
Unknown keys are rejected. --set key=value overrides a dot path such as params.L=8.

route           graph: path|complete|lattice|expander (lattice); n (path, complete, expander size);
                L, R (1), mode: unit|dense|sparse (unit) for lattice; degree (6), epsilon (0.5),
                strategy: greedy|tree (greedy) for expander; permutation: 1-based one-line (random).
                Writes route.txt and route.json.
codegen         family: hgp|surface (hgp); n, col_w, row_w, full_rank (false) for hgp; distance for
                surface; format: alist|pbm (alist); compute_distance (false), max_weight (4).
                Writes the parity-check matrices and code.json.
circuit         code keys as in codegen; mode: ideal|unit|dense|sparse (ideal); R (1);
                partner_limit. Writes circuit.txt and circuit.json.
simulate-tiles  L, d_l, permutation: 1-based over 2*L*L tiles (random, layer preserving).
                Writes tiles.json.
bounds          p (1e-3), delta (4), depth (12), constant; L, d_l, R (1) add bilayer depths.
                Writes bounds.json.
estimate        code: "58"|"48"|{n,k,d,delta_q,delta_g,checks} ("58"); member (0) for "48";
                d_l (number or list, 3); r_swap (number or list, 1); p_min (1e-4), p_max (1e-2),
                points (50); surface_threshold, ldpc_threshold, surface_prefactor, eta, d_x, L,
                cycle_rounds; svg (true). Writes one CSV (and SVG) per r_swap.
crossover       code keys as in estimate; d_l, r_swap lists; p_lo (1e-4), p_hi (1e-2).
                Writes crossover.csv.
verify          input: route.json or circuit.json from an earlier run. Exit 1 when the artifact
                fails verification.
)";

const std::set<std::string> kEstimatorKeys = {"code", "member", "d_l", "r_swap", "surface_threshold",
                                              "ldpc_threshold", "surface_prefactor", "eta", "d_x", "L",
                                              "cycle_rounds"};

std::set<std::string> with(std::set<std::string> base, std::initializer_list<std::string> extra) {
    base.insert(extra.begin(), extra.end());
    return base;
}

const std::map<std::string, std::set<std::string>> &param_keys() {
    static const std::set<std::string> code_keys = {"family", "n", "col_w", "row_w", "full_rank", "distance"};
    static const std::map<std::string, std::set<std::string>> keys = {
        {"route", {"graph", "n", "L", "R", "mode", "degree", "epsilon", "strategy", "permutation"}},
        {"codegen", with(code_keys, {"format", "compute_distance", "max_weight"})},
        {"circuit", with(code_keys, {"mode", "R", "partner_limit"})},
        {"simulate-tiles", {"L", "d_l", "permutation"}},
        {"bounds", {"p", "delta", "depth", "constant", "L", "d_l", "R"}},
        {"estimate", with(kEstimatorKeys, {"p_min", "p_max", "points", "svg"})},
        {"crossover", with(kEstimatorKeys, {"p_lo", "p_hi"})},
        {"verify", {}},
    };
    return keys;
}

struct RunConfig {
    std::string command;
    uint64_t seed = 0;
    std::string output = ".";
    std::string input;
    json params = json::object();
    json canonical;
};

// Typed, located access to the params block.
class Params {
   public:
    explicit Params(const json &j) : j_(j) {
    }

    bool has(const std::string &key) const {
        return j_.contains(key) && !j_.at(key).is_null();
    }

    uint64_t uint(const std::string &key, std::optional<uint64_t> fallback = std::nullopt) const {
        if (!has(key)) {
            return require(key, fallback);
        }
        const json &v = j_.at(key);
        if (!v.is_number_integer() || (v.is_number_integer() && v.get<int64_t>() < 0 && !v.is_number_unsigned())) {
            throw Error("validation-error", "/params/" + key + ": expected a nonnegative integer");
        }
        return v.get<uint64_t>();
    }

    double real(const std::string &key, std::optional<double> fallback = std::nullopt) const {
        if (!has(key)) {
            return require(key, fallback);
        }
        const json &v = j_.at(key);
        if (!v.is_number()) {
            throw Error("validation-error", "/params/" + key + ": expected a number");
        }
        return v.get<double>();
    }

    bool flag(const std::string &key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        if (!j_.at(key).is_boolean()) {
            throw Error("validation-error", "/params/" + key + ": expected a boolean");
        }
        return j_.at(key).get<bool>();
    }

    std::string text(const std::string &key, std::optional<std::string> fallback = std::nullopt) const {
        if (!has(key)) {
            return require(key, fallback);
        }
        if (!j_.at(key).is_string()) {
            throw Error("validation-error", "/params/" + key + ": expected a string");
        }
        return j_.at(key).get<std::string>();
    }

    std::vector<double> reals(const std::string &key, double fallback) const {
        if (!has(key)) {
            return {fallback};
        }
        const json &v = j_.at(key);
        std::vector<double> out;
        if (v.is_number()) {
            out.push_back(v.get<double>());
            return out;
        }
        if (!v.is_array()) {
            throw Error("validation-error", "/params/" + key + ": expected a number or a list of numbers");
        }
        for (size_t i = 0; i < v.size(); i++) {
            if (!v[i].is_number()) {
                throw Error("validation-error", "/params/" + key + "/" + std::to_string(i) + ": expected a number");
            }
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    std::vector<uint64_t> uints(const std::string &key, std::optional<uint64_t> fallback) const {
        if (!has(key)) {
            return {require(key, fallback)};
        }
        const json &v = j_.at(key);
        std::vector<uint64_t> out;
        if (v.is_number_unsigned()) {
            out.push_back(v.get<uint64_t>());
            return out;
        }
        if (!v.is_array()) {
            throw Error("validation-error", "/params/" + key + ": expected a nonnegative integer or a list");
        }
        for (size_t i = 0; i < v.size(); i++) {
            if (!v[i].is_number_unsigned()) {
                throw Error("validation-error",
                            "/params/" + key + "/" + std::to_string(i) + ": expected a nonnegative integer");
            }
            out.push_back(v[i].get<uint64_t>());
        }
        return out;
    }

    const json &raw(const std::string &key) const {
        return j_.at(key);
    }

   private:
    template <typename T>
    T require(const std::string &key, const std::optional<T> &fallback) const {
        if (!fallback) {
            throw Error("validation-error", "/params/" + key + ": required");
        }
        return *fallback;
    }

    const json &j_;
};

void set_dot_path(json &root, const std::string &assignment) {
    size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw Error("validation-error", "--set expects key=value, got `" + assignment + "`");
    }
    std::string path = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) {
        parsed = value;
    }
    json *node = &root;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) {
        parts.push_back(part);
    }
    for (size_t i = 0; i + 1 < parts.size(); i++) {
        if (!node->contains(parts[i])) {
            (*node)[parts[i]] = json::object();
        }
        node = &(*node)[parts[i]];
        if (!node->is_object()) {
            throw Error("validation-error", "--set path `" + path + "` crosses a non-object value");
        }
    }
    (*node)[parts.back()] = parsed;
}

RunConfig parse_config(const json &j) {
    if (!j.is_object()) {
        throw Error("validation-error", "/: config must be a JSON object");
    }
    static const std::set<std::string> top = {"command", "seed", "output", "input", "params"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!top.count(it.key())) {
            throw Error("validation-error", "/" + it.key() + ": unknown key");
        }
    }
    RunConfig cfg;
    if (!j.contains("command") || !j["command"].is_string()) {
        throw Error("validation-error", "/command: required string");
    }
    cfg.command = j["command"].get<std::string>();
    auto keys = param_keys().find(cfg.command);
    if (keys == param_keys().end()) {
        throw Error("validation-error", "/command: unknown command `" + cfg.command + "`");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            throw Error("validation-error", "/seed: expected a nonnegative 64-bit integer");
        }
        cfg.seed = j["seed"].get<uint64_t>();
    }
    for (const char *key : {"output", "input"}) {
        if (j.contains(key)) {
            if (!j[key].is_string()) {
                throw Error("validation-error", std::string("/") + key + ": expected a string");
            }
            (std::string(key) == "output" ? cfg.output : cfg.input) = j[key].get<std::string>();
        }
    }
    if (j.contains("params")) {
        if (!j["params"].is_object()) {
            throw Error("validation-error", "/params: expected an object");
        }
        cfg.params = j["params"];
    }
    for (auto it = cfg.params.begin(); it != cfg.params.end(); ++it) {
        if (!keys->second.count(it.key())) {
            throw Error("validation-error", "/params/" + it.key() + ": unknown key for `" + cfg.command + "`");
        }
    }
    if (cfg.command == "verify" && cfg.input.empty()) {
        throw Error("validation-error", "/input: required for verify");
    }
    // The output directory does not change artifact content, so it stays out of the hash.
    cfg.canonical = j;
    cfg.canonical.erase("output");
    return cfg;
}

struct Artifact {
    std::string name;
    std::string content;
};

struct Provenance {
    std::string hash;
    uint64_t seed = 0;

    std::string line() const {
        return std::string("hiermem ") + kVersion + " config=" + hash + " seed=" + std::to_string(seed);
    }
    json as_json() const {
        return json{{"tool", "hiermem"}, {"version", kVersion}, {"config_hash", hash}, {"seed", seed}};
    }
};

class Runner {
   public:
    Runner(const RunConfig &cfg) : cfg_(cfg), p_(cfg.params) {
        prov_.hash = hex64(fnv1a64(cfg.canonical.dump()));
        prov_.seed = cfg.seed;
    }

    int run() {
        const std::string &c = cfg_.command;
        int status = 0;
        if (c == "route") {
            status = route();
        } else if (c == "codegen") {
            status = codegen();
        } else if (c == "circuit") {
            status = circuit();
        } else if (c == "simulate-tiles") {
            status = simulate_tiles();
        } else if (c == "bounds") {
            status = bounds();
        } else if (c == "estimate") {
            status = estimate();
        } else if (c == "crossover") {
            status = crossover();
        } else {
            status = verify();
        }
        write_all();
        return status;
    }

   private:
    void emit_text(const std::string &name, const std::string &body) {
        artifacts_.push_back({name, "# " + prov_.line() + "\n" + body});
    }

    void emit_json(const std::string &name, json body) {
        body["provenance"] = prov_.as_json();
        artifacts_.push_back({name, body.dump(2) + "\n"});
    }

    void emit_svg(const std::string &name, const std::string &svg) {
        artifacts_.push_back({name, "<!-- " + prov_.line() + " -->\n" + svg});
    }

    void write_all() {
        if (artifacts_.empty()) {
            return;
        }
        std::filesystem::create_directories(cfg_.output);
        for (const auto &a : artifacts_) {
            std::ofstream out(std::filesystem::path(cfg_.output) / a.name, std::ios::binary);
            out << a.content;
            if (!out) {
                throw Error("io-error", "cannot write " + a.name);
            }
        }
    }

    Permutation permutation_param(size_t size) {
        if (!p_.has("permutation")) {
            std::mt19937_64 rng(cfg_.seed);
            return Permutation::random(size, rng);
        }
        std::vector<uint32_t> one_based;
        const json &v = p_.raw("permutation");
        if (!v.is_array()) {
            throw Error("validation-error", "/params/permutation: expected a list");
        }
        for (const auto &x : v) {
            if (!x.is_number_unsigned()) {
                throw Error("validation-error", "/params/permutation: expected positive integers");
            }
            one_based.push_back(x.get<uint32_t>());
        }
        Permutation alpha = Permutation::from_one_based(one_based);
        if (alpha.size() != size) {
            throw Error("size-mismatch", "permutation has " + std::to_string(alpha.size()) + " entries, expected " +
                                             std::to_string(size));
        }
        return alpha;
    }

    static json one_based(const Permutation &alpha) {
        json out = json::array();
        for (size_t i = 0; i < alpha.size(); i++) {
            out.push_back(alpha[i] + 1);
        }
        return out;
    }

    static Graph route_graph(const Params &p, uint64_t seed) {
        std::string kind = p.text("graph", "lattice");
        if (kind == "path") {
            return make_path(p.uint("n"));
        }
        if (kind == "complete") {
            return make_complete(p.uint("n"));
        }
        if (kind == "lattice") {
            LatticeMode mode = parse_lattice_mode(p.text("mode", "unit"));
            return make_nn2(p.uint("L"), mode == LatticeMode::unit ? 1.0 : (double)p.uint("R", 1));
        }
        if (kind == "expander") {
            return sample_expander(p.uint("n"), p.uint("degree", 6), p.real("epsilon", 0.5), seed).first;
        }
        throw Error("validation-error", "/params/graph: unknown graph `" + kind + "`");
    }

    static ExpanderStrategy strategy(const Params &p) {
        std::string s = p.text("strategy", "greedy");
        if (s == "greedy") {
            return ExpanderStrategy::greedy;
        }
        if (s == "tree") {
            return ExpanderStrategy::tree;
        }
        throw Error("validation-error", "/params/strategy: expected greedy or tree");
    }

    int route() {
        std::string kind = p_.text("graph", "lattice");
        Graph g = route_graph(p_, cfg_.seed);
        Permutation alpha = permutation_param(g.vertex_count());
        RoutingSchedule s;
        if (kind == "path") {
            s = route_path(alpha, p_.uint("n"));
        } else if (kind == "complete") {
            s = route_complete(alpha, p_.uint("n"));
        } else if (kind == "lattice") {
            s = route_lattice(alpha, p_.uint("L"), p_.uint("R", 1), parse_lattice_mode(p_.text("mode", "unit")),
                              cfg_.seed);
        } else {
            s = route_expander(alpha, g, strategy(p_), cfg_.seed);
        }
        RoutingVerdict v = verify_routing(alpha, s);
        if (!v.ok) {
            throw Error("verification-failure", v.diagnostic);
        }
        emit_text("route.txt", s.to_text());
        emit_json("route.json", json{{"kind", "route"},
                                     {"params", cfg_.params},
                                     {"seed", cfg_.seed},
                                     {"permutation", one_based(alpha)},
                                     {"graph_hash", s.graph->content_hash()},
                                     {"depth", s.depth()},
                                     {"schedule", "route.txt"}});
        std::cout << "depth " << s.depth() << "\n";
        return 0;
    }

    CssCode build_code(BinaryMatrix *classical) {
        std::string family = p_.text("family", "hgp");
        if (family == "surface") {
            return rotated_surface_code(p_.uint("distance"));
        }
        if (family != "hgp") {
            throw Error("validation-error", "/params/family: expected hgp or surface");
        }
        BinaryMatrix h = sample_regular_parity_check(p_.uint("n"), p_.uint("col_w"), p_.uint("row_w"), cfg_.seed,
                                                     1000, p_.flag("full_rank", false));
        if (classical != nullptr) {
            *classical = h;
        }
        return hypergraph_product(h, h);
    }

    int codegen() {
        BinaryMatrix h;
        CssCode code = build_code(&h);
        std::string format = p_.text("format", "alist");
        if (format != "alist" && format != "pbm") {
            throw Error("validation-error", "/params/format: expected alist or pbm");
        }
        auto encode = [&](const BinaryMatrix &m) { return format == "alist" ? to_alist(m) : to_pbm(m); };
        CodeParams cp = code_params(code);
        json summary{{"kind", "code"}, {"n", cp.n}, {"k", cp.k}, {"delta_q", cp.delta_q}, {"delta_g", cp.delta_g}};
        if (p_.text("family", "hgp") == "hgp") {
            emit_text("H." + format, encode(h));
            summary["classical"] = json{{"rows", h.rows()}, {"cols", h.cols()}, {"rank", rank_f2(h)}};
        } else {
            emit_text("hx." + format, encode(code.hx.to_dense()));
            emit_text("hz." + format, encode(code.hz.to_dense()));
        }
        if (p_.flag("compute_distance", false)) {
            auto d = distance_bruteforce(code, p_.uint("max_weight", 4));
            summary["d"] = d ? json(*d) : json(nullptr);
        }
        emit_json("code.json", summary);
        std::cout << "n " << cp.n << " k " << cp.k << "\n";
        return 0;
    }

    int circuit() {
        CssCode code = build_code(nullptr);
        std::string mode = p_.text("mode", "ideal");
        size_t R = p_.uint("R", 1);
        Circuit circ = mode == "ideal" ? build_ideal_sec(code)
                                       : build_local_sec(code, R, parse_lattice_mode(mode), cfg_.seed);
        size_t limit = p_.has("partner_limit") ? p_.uint("partner_limit") : SIZE_MAX;
        ScheduleReport rep = verify_schedule(circ, (double)R, limit);
        emit_text("circuit.txt", circ.to_text());
        emit_json("circuit.json", json{{"kind", "circuit"},
                                       {"params", cfg_.params},
                                       {"seed", cfg_.seed},
                                       {"width", circ.width},
                                       {"depth", circ.depth()},
                                       {"locations", circ.location_count()},
                                       {"ok", rep.ok},
                                       {"geometry_checked", rep.geometry_checked},
                                       {"max_partners", rep.max_partners},
                                       {"diagnostics", rep.diagnostics},
                                       {"circuit", "circuit.txt"}});
        std::cout << "width " << circ.width << " depth " << circ.depth() << "\n";
        return rep.ok ? 0 : kExitDomain;
    }

    int simulate_tiles() {
        size_t L = p_.uint("L");
        size_t d_l = p_.uint("d_l");
        Permutation alpha;
        if (p_.has("permutation")) {
            alpha = permutation_param(2 * L * L);
        } else {
            std::mt19937_64 rng(cfg_.seed);
            Permutation b = Permutation::random(L * L, rng);
            Permutation t = Permutation::random(L * L, rng);
            std::vector<uint32_t> m(2 * L * L);
            for (size_t i = 0; i < L * L; i++) {
                m[i] = b[i];
                m[L * L + i] = (uint32_t)(L * L) + t[i];
            }
            alpha = Permutation(m);
        }
        TileSimReport rep = tile_permutation_sim(L, d_l, alpha, false);
        json body = json::parse(rep.to_json());
        body["kind"] = "tiles";
        body["permutation"] = one_based(alpha);
        emit_json("tiles.json", body);
        std::cout << "depth " << rep.depth << " logical_swap_depth " << rep.logical_swap_depth << " ok "
                  << (rep.ok() ? "true" : "false") << "\n";
        return rep.ok() ? 0 : kExitDomain;
    }

    int bounds() {
        double p = p_.real("p", 1e-3);
        size_t delta = p_.uint("delta", 4);
        size_t depth = p_.uint("depth", 12);
        std::optional<double> constant;
        if (p_.has("constant")) {
            constant = p_.real("constant");
        }
        DecayRate d1 = depth1_rate(p);
        json body{{"kind", "bounds"},
                  {"p", p},
                  {"delta", delta},
                  {"depth", depth},
                  {"depth1_rate", d1.p},
                  {"map_rate", map_rate(d1, delta).p},
                  {"pround_bound", pround_bound(delta, depth, p, constant).p}};
        if (p_.has("L") && p_.has("d_l")) {
            size_t L = p_.uint("L");
            size_t d_l = p_.uint("d_l");
            size_t R = p_.uint("R", 1);
            auto prim = swap_primitive_depths(d_l);
            body["t_route"] = t_route(d_l, L);
            body["logical_route_depth"] = logical_route_depth(L, d_l, R);
            body["physical_qubits"] = physical_qubit_count(L, d_l);
            body["swap_primitive"] = json{{"staggered", prim.staggered}, {"walk", prim.walk}, {"full", prim.full_swap}};
        }
        emit_json("bounds.json", body);
        std::cout << "pround_bound " << format_double(body["pround_bound"].get<double>()) << "\n";
        return 0;
    }

    EstimatorConfig estimator_config() {
        EstimatorConfig c;
        if (!p_.has("code")) {
            c.outer = expander_58_code();
        } else if (p_.raw("code").is_string()) {
            std::string name = p_.text("code");
            if (name == "58") {
                c.outer = expander_58_code();
            } else if (name == "48") {
                size_t m = p_.uint("member", 0);
                c.outer = expander_48_family(m + 1).back();
            } else {
                throw Error("validation-error", "/params/code: expected \"58\", \"48\" or an object");
            }
        } else if (p_.raw("code").is_object()) {
            const json &o = p_.raw("code");
            static const std::set<std::string> keys = {"n", "k", "d", "delta_q", "delta_g", "checks"};
            for (auto it = o.begin(); it != o.end(); ++it) {
                if (!keys.count(it.key())) {
                    throw Error("validation-error", "/params/code/" + it.key() + ": unknown key");
                }
                if (!it.value().is_number_unsigned()) {
                    throw Error("validation-error", "/params/code/" + it.key() + ": expected a nonnegative integer");
                }
            }
            Params cp(o);
            c.outer.n = cp.uint("n");
            c.outer.k = cp.uint("k");
            c.outer.d = cp.uint("d");
            c.outer.delta_q = cp.uint("delta_q");
            c.outer.delta_g = cp.uint("delta_g");
            c.outer.checks = cp.uint("checks", 0);
        } else {
            throw Error("validation-error", "/params/code: expected a string or an object");
        }
        c.surface_threshold = p_.real("surface_threshold", c.surface_threshold);
        c.ldpc_threshold = p_.real("ldpc_threshold", c.ldpc_threshold);
        c.surface_prefactor = p_.real("surface_prefactor", c.surface_prefactor);
        if (p_.has("eta")) {
            c.eta = p_.real("eta");
        }
        if (p_.has("d_x")) {
            c.d_x = p_.uint("d_x");
        }
        if (p_.has("L")) {
            c.L = p_.uint("L");
        }
        if (p_.has("cycle_rounds")) {
            c.cycle_rounds = p_.uint("cycle_rounds");
        }
        return c;
    }

    std::vector<size_t> d_ls() {
        std::vector<size_t> out;
        for (uint64_t d : p_.uints("d_l", 3)) {
            out.push_back((size_t)d);
        }
        return out;
    }

    int estimate() {
        EstimatorConfig c = estimator_config();
        auto grid = log_grid(p_.real("p_min", 1e-4), p_.real("p_max", 1e-2), p_.uint("points", 50));
        std::vector<size_t> ds = d_ls();
        for (double r : p_.reals("r_swap", 1.0)) {
            auto rows = sweep(c, grid, ds, {r});
            std::string stem = "estimate_r" + format_double(r);
            emit_text(stem + ".csv", sweep_to_csv(rows));
            if (p_.flag("svg", true)) {
                emit_svg(stem + ".svg", sweep_to_svg(rows));
            }
            std::cout << stem << ".csv " << rows.size() << " rows\n";
        }
        return 0;
    }

    int crossover() {
        EstimatorConfig c = estimator_config();
        double lo = p_.real("p_lo", 1e-4);
        double hi = p_.real("p_hi", 1e-2);
        std::ostringstream csv;
        csv << "d_l,r_swap,p_star\n";
        for (size_t d : d_ls()) {
            for (double r : p_.reals("r_swap", 1.0)) {
                EstimatorConfig x = c;
                x.d_l = d;
                x.r_swap = r;
                auto ps = find_crossover(x, lo, hi);
                csv << d << ',' << format_double(r) << ',' << (ps ? format_double(*ps) : "") << '\n';
            }
        }
        emit_text("crossover.csv", csv.str());
        std::cout << csv.str();
        return 0;
    }

    static std::string read_file(const std::filesystem::path &path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw Error("io-error", "cannot read " + path.string());
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::string strip_comments(const std::string &text) {
        std::istringstream in(text);
        std::ostringstream out;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line[0] == '#') {
                continue;
            }
            out << line << '\n';
        }
        return out.str();
    }

    int verify() {
        std::filesystem::path path(cfg_.input);
        json art = json::parse(read_file(path), nullptr, false);
        if (art.is_discarded() || !art.is_object() || !art.contains("kind")) {
            throw Error("parse-error", "input is not a route.json or circuit.json artifact");
        }
        std::string kind = art["kind"].get<std::string>();
        std::filesystem::path dir = path.parent_path();
        if (kind == "route") {
            Params stored(art["params"]);
            uint64_t seed = art["seed"].get<uint64_t>();
            Graph g = route_graph(stored, seed);
            std::string hash;
            RoutingSchedule s =
                RoutingSchedule::from_text(strip_comments(read_file(dir / art["schedule"].get<std::string>())), &hash);
            if (hash != g.content_hash()) {
                std::cout << "FAIL graph hash mismatch\n";
                return kExitDomain;
            }
            s.graph = std::make_shared<const Graph>(g);
            std::vector<uint32_t> one;
            for (const auto &x : art["permutation"]) {
                one.push_back(x.get<uint32_t>());
            }
            RoutingVerdict v = verify_routing(Permutation::from_one_based(one), s);
            if (!v.ok) {
                std::cout << "FAIL " << v.diagnostic << "\n";
                return kExitDomain;
            }
            std::cout << "ok depth " << s.depth() << "\n";
            return 0;
        }
        if (kind == "circuit") {
            Params stored(art["params"]);
            Circuit circ = Circuit::from_text(strip_comments(read_file(dir / art["circuit"].get<std::string>())));
            size_t limit = stored.has("partner_limit") ? stored.uint("partner_limit") : SIZE_MAX;
            ScheduleReport rep = verify_schedule(circ, (double)stored.uint("R", 1), limit);
            if (!rep.ok) {
                std::cout << "FAIL " << (rep.diagnostics.empty() ? "" : rep.diagnostics.front()) << "\n";
                return kExitDomain;
            }
            std::cout << "ok depth " << circ.depth() << "\n";
            return 0;
        }
        throw Error("parse-error", "unknown artifact kind `" + kind + "`");
    }

    const RunConfig &cfg_;
    Params p_;
    Provenance prov_;
    std::vector<Artifact> artifacts_;
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"hiermem: routing, codes, circuits and failure-rate estimates for hierarchical memories"};
    app.set_version_flag("--version", std::string(kVersion));
    std::string command;
    std::string config_path;
    std::string output;
    std::vector<std::string> sets;
    app.add_option("command", command, "Subcommand; overrides the config's command");
    app.add_option("-c,--config", config_path, "JSON config file");
    app.add_option("-o,--output", output, "Output directory; overrides the config's output");
    app.add_option("--set", sets, "Override a config value: dot.path=value (JSON or string)")->allow_extra_args(false);
    app.footer(kParamHelp);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    RunConfig cfg;
    try {
        json j = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path, std::ios::binary);
            if (!in) {
                throw Error("parse-error", "cannot read config " + config_path);
            }
            j = json::parse(in, nullptr, false);
            if (j.is_discarded()) {
                throw Error("parse-error", config_path + " is not valid JSON");
            }
        }
        if (!command.empty()) {
            j["command"] = command;
        }
        if (!output.empty()) {
            j["output"] = output;
        }
        for (const auto &s : sets) {
            set_dot_path(j, s);
        }
        cfg = parse_config(j);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        return Runner(cfg).run();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == "validation-error" ? kExitUsage : kExitDomain;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}
