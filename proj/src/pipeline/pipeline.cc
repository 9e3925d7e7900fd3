// Copyright 2026 The ftqs Authors
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

#include "ftqs/pipeline/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "ftqs/common/parallel.h"
#include "ftqs/common/rng.h"
#include "ftqs/msd/distill.h"
#include "ftqs/routing/routing.h"
#include "ftqs/surface_code/surface_code.h"
#include "json.hpp"

namespace ftqs {

using nlohmann::json;

namespace {

const char *arch_name(Architecture a) {
    return a == Architecture::k4D ? "4d" : "3d";
}

const char *mode_name(PipelineMode m) {
    return m == PipelineMode::kExactSmall ? "exact_small" : "error_model";
}

const char *decode_model_name(DecodeFailureModel m) {
    return m == DecodeFailureModel::kIndependent ? "independent" : "union_bound";
}

bool valid_protocol(const std::string &name) {
    if (name == "none") {
        return true;
    }
    try {
        MsdProtocolSpec::builtin(name);
        return true;
    } catch (const std::exception &) {
        return false;
    }
}

}  // namespace

void PipelineConfig::validate() const {
    auto prob = [](double p, const char *what, double hi = 1.0) {
        if (!(p >= 0.0 && p < hi)) {
            throw std::invalid_argument(std::string(what) + " must lie in [0, " + std::to_string(hi) + ")");
        }
    };
    if (n < 1 || k < 2) {
        throw std::invalid_argument("pipeline needs n >= 1 and k >= 2");
    }
    if (distance < 1 || distance % 2 == 0) {
        throw std::invalid_argument("distance must be odd and positive");
    }
    if (mode == PipelineMode::kExactSmall && distance != 1 && distance != 3) {
        throw std::invalid_argument("exact_small supports distance 1 or 3");
    }
    prob(p_phys, "p_phys", 0.5);
    prob(eps_T, "eps_T", 0.5);
    prob(eps_Y, "eps_Y", 0.5);
    if (p_f) {
        prob(*p_f, "p_f");
    }
    if (eps_out) {
        prob(*eps_out, "eps_out");
    }
    if (!valid_protocol(t_protocol) || !valid_protocol(y_protocol)) {
        throw std::invalid_argument("unknown distillation protocol");
    }
    if (t_candidates < 0 || y_candidates < 0) {
        throw std::invalid_argument("candidate counts must be non-negative");
    }
    if (threads < 1) {
        throw std::invalid_argument("threads must be at least 1");
    }
    if (cap < 1 || cap > int(kDefaultStatevectorCap)) {
        throw std::invalid_argument("cap must lie in [1, " + std::to_string(kDefaultStatevectorCap) + "]");
    }
}

PipelineConfig PipelineConfig::from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("pipeline config: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("pipeline config must be a JSON object");
    }
    static const std::set<std::string> keys = {
        "n",     "k",       "gadget",     "arch",         "mode",         "distance",     "p_phys",
        "eps_T", "eps_Y",   "t_protocol", "y_protocol",   "t_candidates", "y_candidates", "p_f",
        "eps_out", "decode_model", "calib_trials", "seed", "threads", "cap"};
    for (const auto &[key, _] : j.items()) {
        if (!keys.count(key)) {
            throw std::invalid_argument("pipeline config: unknown key '" + key + "'");
        }
    }
    PipelineConfig c;
    try {
        c.n = j.value("n", c.n);
        c.k = j.value("k", c.k);
        c.gadget = j.value("gadget", c.gadget);
        std::string arch = j.value("arch", std::string(arch_name(c.arch)));
        if (arch != "4d" && arch != "3d") {
            throw std::invalid_argument("arch must be 4d or 3d");
        }
        c.arch = arch == "4d" ? Architecture::k4D : Architecture::k3D;
        std::string mode = j.value("mode", std::string(mode_name(c.mode)));
        if (mode != "exact_small" && mode != "error_model") {
            throw std::invalid_argument("mode must be exact_small or error_model");
        }
        c.mode = mode == "exact_small" ? PipelineMode::kExactSmall : PipelineMode::kErrorModel;
        c.distance = j.value("distance", c.distance);
        c.p_phys = j.value("p_phys", c.p_phys);
        c.eps_T = j.value("eps_T", c.eps_T);
        c.eps_Y = j.value("eps_Y", c.eps_Y);
        c.t_protocol = j.value("t_protocol", c.t_protocol);
        c.y_protocol = j.value("y_protocol", c.y_protocol);
        c.t_candidates = j.value("t_candidates", c.t_candidates);
        c.y_candidates = j.value("y_candidates", c.y_candidates);
        if (j.contains("p_f") && !j["p_f"].is_null()) {
            c.p_f = j["p_f"].get<double>();
        }
        if (j.contains("eps_out") && !j["eps_out"].is_null()) {
            c.eps_out = j["eps_out"].get<double>();
        }
        std::string dm = j.value("decode_model", std::string(decode_model_name(c.decode_model)));
        if (dm != "independent" && dm != "union_bound") {
            throw std::invalid_argument("decode_model must be independent or union_bound");
        }
        c.decode_model = dm == "independent" ? DecodeFailureModel::kIndependent : DecodeFailureModel::kUnionBound;
        c.calib_trials = j.value("calib_trials", c.calib_trials);
        c.seed = j.value("seed", c.seed);
        c.threads = j.value("threads", c.threads);
        c.cap = j.value("cap", c.cap);
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("pipeline config: ") + e.what());
    }
    c.validate();
    return c;
}

std::string PipelineConfig::to_json_text() const {
    json j;
    j["n"] = n;
    j["k"] = k;
    j["gadget"] = gadget;
    j["arch"] = arch_name(arch);
    j["mode"] = mode_name(mode);
    j["distance"] = distance;
    j["p_phys"] = p_phys;
    j["eps_T"] = eps_T;
    j["eps_Y"] = eps_Y;
    j["t_protocol"] = t_protocol;
    j["y_protocol"] = y_protocol;
    j["t_candidates"] = t_candidates;
    j["y_candidates"] = y_candidates;
    j["p_f"] = p_f ? json(*p_f) : json(nullptr);
    j["eps_out"] = eps_out ? json(*eps_out) : json(nullptr);
    j["decode_model"] = decode_model_name(decode_model);
    j["calib_trials"] = calib_trials;
    j["seed"] = seed;
    j["threads"] = threads;
    j["cap"] = cap;
    return j.dump(2);
}

GraphSpec pipeline_graph(const PipelineConfig &config) {
    GadgetSpec gadget;
    bool prime = config.arch == Architecture::k3D;
    if (config.gadget == "gb") {
        gadget = GadgetSpec::default_gb();
    } else if (config.gadget == "gb_prime") {
        gadget = GadgetSpec::default_gb();
        prime = true;
    } else {
        gadget = GadgetSpec::from_json_file(config.gadget);
    }
    GraphSpec spec = build_brickwork_graph(config.n, config.k, gadget);
    return prime ? substitute_gbprime(spec) : spec;
}

MsdShortfall::MsdShortfall(const std::string &stage_, int needed_, int successes_, int candidates_)
    : std::runtime_error(stage_ + " distillation: " + std::to_string(successes_) + " of " +
                         std::to_string(candidates_) + " candidates accepted, " + std::to_string(needed_) +
                         " needed"),
      stage(stage_),
      needed(needed_),
      successes(successes_),
      candidates(candidates_) {
}

std::string RunRecord::to_json_text() const {
    json j;
    j["s"] = bits_to_string(s, num_s);
    j["x"] = bits_to_string(x, num_x);
    j["raw_s"] = bits_to_string(raw_s, num_s);
    j["raw_x"] = bits_to_string(raw_x, num_x);
    j["t"] = {{"candidates", t_candidates}, {"successes", t_successes}, {"needed", t_needed}};
    j["y"] = {{"candidates", y_candidates}, {"successes", y_successes}, {"needed", y_needed}};
    j["routing_plans"] = routing_plans;
    j["routing_verified"] = routing_verified;
    j["feedback_layers"] = feedback_layers;
    j["seconds"] = seconds;
    return j.dump(2);
}

namespace {

// Pauli letters as (x, z) bit pairs; products drop the phase.
uint8_t pauli_bits(char c) {
    switch (c) {
        case 'X':
            return 1;
        case 'Z':
            return 2;
        case 'Y':
            return 3;
        default:
            return 0;
    }
}

char pauli_char(uint8_t b) {
    static const char kChars[4] = {'I', 'X', 'Z', 'Y'};
    return kChars[b & 3];
}

char compose(char a, char b) {
    return pauli_char(pauli_bits(a) ^ pauli_bits(b));
}

char sample_raw_error(double eps, Rng &rng) {
    double u = uniform01(rng);
    if (u >= eps) {
        return 'I';
    }
    static const char kChars[3] = {'X', 'Y', 'Z'};
    return kChars[std::min(2, int(u / eps * 3.0))];
}

struct StageResult {
    std::vector<char> outputs;
    int candidates = 0;
    int successes = 0;
};

// One distillation round followed by routing of the first m accepted copies.
// The candidates' success flags are the classical data fed back into the
// routing pattern.
StageResult distill_and_route(const std::string &stage, const std::string &protocol, double eps, int m,
                              int candidates_cfg, Rng &rng, RunRecord &rec) {
    StageResult res;
    if (m == 0) {
        return res;
    }
    if (protocol == "none") {
        res.candidates = res.successes = m;
        for (int i = 0; i < m; i++) {
            res.outputs.push_back(sample_raw_error(eps, rng));
        }
        return res;
    }
    DistillationModel model(MsdProtocolSpec::builtin(protocol));
    const int p = candidates_cfg > 0 ? candidates_cfg : 2 * m + 2;
    if (p < m) {
        throw std::invalid_argument(stage + " candidates fewer than the states needed");
    }
    std::vector<char> cls(static_cast<size_t>(p));
    std::vector<bool> flags(static_cast<size_t>(p));
    for (int c = 0; c < p; c++) {
        cls[size_t(c)] = model.logical_class(model.sample(eps, rng));
        flags[size_t(c)] = cls[size_t(c)] != '\0';
        res.successes += flags[size_t(c)] ? 1 : 0;
    }
    res.candidates = p;
    if (res.successes < m) {
        throw MsdShortfall(stage, m, res.successes, p);
    }
    rec.feedback_layers++;
    RoutingPlan plan = plan_routes(p, m, flags);
    std::string flag_text;
    for (bool f : flags) {
        flag_text += f ? '1' : '0';
    }
    rec.routing_plans.push_back(stage + ":p=" + std::to_string(p) + ";m=" + std::to_string(m) + ";flags=" + flag_text);
    // The routed state is the source state up to the recorded correction;
    // the tableau run confirms that on this plan with stabilizer stand-ins.
    std::vector<std::string> probe(size_t(p), "+X");
    for (int i = 0; i < m; i++) {
        probe[size_t(plan.sources[size_t(i)])] = i % 2 ? "+Y" : "-Z";
    }
    RoutingResult routed = simulate_routing(plan, probe, rng);
    rec.routing_verified = rec.routing_verified && routed.all_matched();
    for (int i = 0; i < m; i++) {
        res.outputs.push_back(cls[size_t(plan.sources[size_t(i)])]);
    }
    return res;
}

StateVector noisy_graph_state(const GraphSpec &spec, const std::vector<char> &errors, size_t cap) {
    const size_t nv = spec.num_vertices();
    const double r = 1.0 / std::sqrt(2.0);
    StateVector sv = StateVector::product(std::vector<Qubit1>(nv, Qubit1{r, r}), cap);
    for (size_t v = 0; v < nv; v++) {
        const auto role = spec.vertices[v].role;
        if (role == MeasurementRole::XY_PI4 || role == MeasurementRole::XY_PI2) {
            sv.apply_rz(v, role_angle(role));
        }
        char e = errors.empty() ? 'I' : errors[v];
        if (e != 'I') {
            sv.apply_pauli(PauliString::single(nv, v, e));
        }
    }
    for (const auto &[a, b] : spec.edges) {
        sv.apply_cz(size_t(a), size_t(b));
    }
    for (size_t v = 0; v < nv; v++) {
        if (spec.vertices[v].role != MeasurementRole::OUTPUT_Z || spec.output_hadamard) {
            sv.apply_h(v);
        }
    }
    return sv;
}

const SurfaceCodePatch &patch_d3() {
    static const SurfaceCodePatch patch = build_patch(3);
    return patch;
}

}  // namespace

RunRecord run_exact_small(const PipelineConfig &config, uint64_t run_index) {
    config.validate();
    auto t0 = std::chrono::steady_clock::now();
    GraphSpec spec = pipeline_graph(config);
    const int nv = int(spec.num_vertices());
    if (nv > config.cap) {
        throw std::length_error("graph has " + std::to_string(nv) + " vertices, cap is " + std::to_string(config.cap));
    }
    Rng rng = make_rng(config.seed, run_index);
    RunRecord rec;
    rec.num_s = int(spec.num_measured());
    rec.num_x = nv - rec.num_s;

    std::vector<int> t_vertices, y_vertices;
    for (int v = 0; v < nv; v++) {
        if (spec.vertices[size_t(v)].role == MeasurementRole::XY_PI4) {
            t_vertices.push_back(v);
        } else if (spec.vertices[size_t(v)].role == MeasurementRole::XY_PI2) {
            y_vertices.push_back(v);
        }
    }
    std::vector<char> errors(size_t(nv), 'I');

    // 3D: Y states are distilled and routed first. Each T injection consumes
    // one for its conditional S correction; graph pi/2 vertices take the rest.
    std::vector<char> y_states;
    if (config.arch == Architecture::k3D) {
        rec.y_needed = int(t_vertices.size() + y_vertices.size());
        StageResult ys =
            distill_and_route("Y", config.y_protocol, config.eps_Y, rec.y_needed, config.y_candidates, rng, rec);
        rec.y_candidates = ys.candidates;
        rec.y_successes = ys.successes;
        y_states = ys.outputs;
    }

    rec.t_needed = int(t_vertices.size());
    StageResult ts = distill_and_route("T", config.t_protocol, config.eps_T, rec.t_needed, config.t_candidates, rng, rec);
    rec.t_candidates = ts.candidates;
    rec.t_successes = ts.successes;
    for (size_t i = 0; i < t_vertices.size(); i++) {
        char e = ts.outputs[i];
        if (config.arch == Architecture::k3D) {
            // The injection byproduct asks for S half the time. A |+i> resource
            // hit by X or Z becomes |-i>, which applies S^dagger = Z S instead.
            bool needs_s = (rng() & 1) != 0;
            char y = y_states[i];
            if (needs_s && (y == 'X' || y == 'Z')) {
                e = compose(e, 'Z');
            }
        }
        errors[size_t(t_vertices[i])] = e;
    }
    if (config.arch == Architecture::k3D) {
        for (size_t i = 0; i < y_vertices.size(); i++) {
            errors[size_t(y_vertices[i])] = y_states[t_vertices.size() + i];
        }
    }

    StateVector sv = noisy_graph_state(spec, errors, size_t(config.cap));
    OutcomeSampler sampler(sv, rec.num_s);
    const uint64_t logical = sampler.sample_index(rng);

    // Readout of every logical bit through the code.
    uint64_t decoded = 0, raw = 0;
    for (int j = 0; j < nv; j++) {
        uint8_t b = (logical >> j) & 1;
        uint8_t dec = b, rw = b;
        if (config.distance == 1) {
            uint8_t f = uniform01(rng) < config.p_phys ? 1 : 0;
            dec ^= f;
            rw ^= f;
        } else {
            const SurfaceCodePatch &patch = patch_d3();
            std::vector<uint8_t> flips(size_t(patch.num_qubits()), 0);
            for (auto &f : flips) {
                f = uniform01(rng) < config.p_phys ? 1 : 0;
            }
            dec ^= z_readout_decode(patch, flips);
            uint8_t par = 0;
            for (size_t q = 0; q < flips.size(); q++) {
                par ^= flips[q] & patch.logical_z.zs[q];
            }
            rw ^= par;
        }
        decoded |= uint64_t(dec) << j;
        raw |= uint64_t(rw) << j;
    }
    const uint64_t smask = (uint64_t(1) << rec.num_s) - 1;
    rec.s = decoded & smask;
    rec.x = decoded >> rec.num_s;
    rec.raw_s = raw & smask;
    rec.raw_x = raw >> rec.num_s;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

double sampling_envelope(size_t outcomes, uint64_t shots) {
    if (shots == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return 4.0 * std::sqrt(double(outcomes) / double(shots));
}

ExactSmallBatch run_exact_small_batch(const PipelineConfig &config, uint64_t shots) {
    config.validate();
    GraphSpec spec = pipeline_graph(config);
    if (int(spec.num_vertices()) > config.cap) {
        throw std::length_error("graph has " + std::to_string(spec.num_vertices()) + " vertices, cap is " +
                                std::to_string(config.cap));
    }
    std::vector<RunRecord> recs(shots);
    std::vector<uint8_t> ok(shots, 0);
    parallel_for(size_t(shots), config.threads, [&](size_t i) {
        try {
            recs[i] = run_exact_small(config, i);
            ok[i] = 1;
        } catch (const MsdShortfall &) {
        }
    });
    ExactSmallBatch out;
    out.exact = exact_distribution(spec, size_t(config.cap));
    std::vector<uint64_t> dec, raw;
    for (uint64_t i = 0; i < shots; i++) {
        if (!ok[i]) {
            out.aborted++;
            continue;
        }
        const RunRecord &r = recs[i];
        dec.push_back(OutcomeDistribution::index(r.s, r.x, r.num_s));
        raw.push_back(OutcomeDistribution::index(r.raw_s, r.raw_x, r.num_s));
        out.records.push_back(r);
    }
    const int ns = out.exact.num_s, nx = out.exact.num_x;
    out.success_rate = shots ? double(dec.size()) / double(shots) : 0.0;
    if (!dec.empty()) {
        out.decoded = OutcomeDistribution::empirical(ns, nx, dec);
        out.raw = OutcomeDistribution::empirical(ns, nx, raw);
        out.l1_decoded = l1_distance(out.decoded, out.exact);
        out.l1_raw = l1_distance(out.raw, out.exact);
    }
    out.envelope = sampling_envelope(out.exact.size(), dec.size());
    return out;
}

OutcomeDistribution dephased_distribution(const GraphSpec &spec, double eps, size_t cap) {
    spec.validate();
    std::vector<size_t> tv;
    for (size_t v = 0; v < spec.num_vertices(); v++) {
        if (spec.vertices[v].role == MeasurementRole::XY_PI4) {
            tv.push_back(v);
        }
    }
    if (tv.size() > 16) {
        throw std::length_error("too many T vertices for the dephasing oracle");
    }
    OutcomeDistribution d;
    d.num_s = int(spec.num_measured());
    d.num_x = int(spec.num_outputs());
    d.probs.assign(size_t(1) << spec.num_vertices(), 0.0);
    for (uint64_t mask = 0; mask < (uint64_t(1) << tv.size()); mask++) {
        int w = __builtin_popcountll(mask);
        double weight = std::pow(eps, w) * std::pow(1.0 - eps, double(tv.size()) - w);
        if (weight == 0.0) {
            continue;
        }
        std::vector<char> errors(spec.num_vertices(), 'I');
        for (size_t i = 0; i < tv.size(); i++) {
            if (mask >> i & 1) {
                errors[tv[i]] = 'Z';
            }
        }
        StateVector sv = noisy_graph_state(spec, errors, cap);
        for (size_t i = 0; i < d.probs.size(); i++) {
            d.probs[i] += weight * std::norm(sv.amplitudes()[i]);
        }
    }
    return d;
}

ErrorModelResult run_error_model(const PipelineConfig &config, uint64_t shots) {
    config.validate();
    if (shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    GraphSpec spec = pipeline_graph(config);
    ErrorModelResult res;
    if (config.p_f) {
        res.p_f = *config.p_f;
    } else if (config.p_phys > 0.0 && config.distance >= 3) {
        res.p_f = logical_error_rate(config.distance, config.p_phys, config.calib_trials,
                                     derive_seed(config.seed, ~uint64_t(0)), config.threads)
                      .p_l;
    } else {
        throw std::invalid_argument("p_f not calibrated: give p_f, or p_phys with distance >= 3");
    }
    if (config.eps_out) {
        res.eps_out = *config.eps_out;
    } else if (config.eps_T > 0.0 && config.t_protocol != "none") {
        res.eps_out = simulate_distillation(MsdProtocolSpec::builtin(config.t_protocol), config.eps_T, 100000,
                                            derive_seed(config.seed, ~uint64_t(1)))
                          .infidelity;
    } else {
        res.eps_out = config.eps_T;
    }

    res.exact = exact_distribution(spec, size_t(config.cap));
    OutcomeSampler sampler(spec, size_t(config.cap));
    const int nv = int(spec.num_vertices());
    res.num_logical = nv;
    std::vector<int> tv;
    for (int v = 0; v < nv; v++) {
        if (spec.vertices[size_t(v)].role == MeasurementRole::XY_PI4) {
            tv.push_back(v);
        }
    }
    res.num_T = int(tv.size());

    res.samples.assign(shots, 0);
    const double p_f = res.p_f, eps = res.eps_out;
    const bool independent = config.decode_model == DecodeFailureModel::kIndependent;
    parallel_for(size_t(shots), config.threads, [&](size_t i) {
        Rng rng = make_rng(config.seed, i);
        uint64_t idx = sampler.sample_index(rng);
        // A Z error on a T vertex turns into an X before its Z-basis readout.
        for (int v : tv) {
            if (uniform01(rng) < eps) {
                idx ^= uint64_t(1) << v;
            }
        }
        if (independent) {
            for (int v = 0; v < nv; v++) {
                if (uniform01(rng) < p_f) {
                    idx ^= uint64_t(1) << v;
                }
            }
        } else if (uniform01(rng) < std::min(1.0, nv * p_f)) {
            idx ^= uint64_t(1) << std::uniform_int_distribution<int>(0, nv - 1)(rng);
        }
        res.samples[i] = idx;
    });
    res.empirical = OutcomeDistribution::empirical(res.exact.num_s, res.exact.num_x, res.samples);
    res.l1 = l1_distance(res.empirical, res.exact);
    res.envelope = sampling_envelope(res.exact.size(), shots);
    double l = p_f > 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    double c = p_f > 0.0 ? -std::log(p_f) : 1.0;
    res.bound = appendix_b_l1_chain(double(config.n), l, c, eps, double(res.num_T), double(nv));
    if (!independent) {
        res.bound.decode = std::min(2.0, 2.0 * nv * p_f);
        res.bound.total = res.bound.decode + res.bound.fidelity;
    }
    return res;
}

int interaction_audit(const std::vector<RunRecord> &records) {
    if (records.empty()) {
        return -1;
    }
    int f = records.front().feedback_layers;
    for (const auto &r : records) {
        if (r.feedback_layers != f) {
            return -1;
        }
    }
    return f;
}

std::vector<int> edge_colouring(int num_vertices, const std::vector<std::pair<int, int>> &edges) {
    // Misra-Gries: colours 0..max_degree.
    const int nv = num_vertices;
    std::vector<int> degree(size_t(nv), 0);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= nv || b >= nv || a == b) {
            throw std::invalid_argument("bad edge in colouring input");
        }
        degree[size_t(a)]++;
        degree[size_t(b)]++;
    }
    const int ncol = (nv ? *std::max_element(degree.begin(), degree.end()) : 0) + 1;
    // at[v][c] = neighbour joined to v by colour c, or -1.
    std::vector<std::vector<int>> at(size_t(nv), std::vector<int>(size_t(ncol), -1));
    std::vector<std::vector<int>> nbrs(static_cast<size_t>(nv));
    for (auto [a, b] : edges) {
        nbrs[size_t(a)].push_back(b);
        nbrs[size_t(b)].push_back(a);
    }
    auto colour_of = [&](int u, int v) {
        for (int c = 0; c < ncol; c++) {
            if (at[size_t(u)][size_t(c)] == v) {
                return c;
            }
        }
        return -1;
    };
    auto is_free = [&](int v, int c) { return at[size_t(v)][size_t(c)] < 0; };
    auto free_colour = [&](int v) {
        for (int c = 0; c < ncol; c++) {
            if (is_free(v, c)) {
                return c;
            }
        }
        throw std::logic_error("no free colour");
    };
    auto set_colour = [&](int u, int v, int c) {
        at[size_t(u)][size_t(c)] = v;
        at[size_t(v)][size_t(c)] = u;
    };
    auto clear_colour = [&](int u, int v, int c) {
        at[size_t(u)][size_t(c)] = -1;
        at[size_t(v)][size_t(c)] = -1;
    };

    for (auto [u, v] : edges) {
        // Maximal fan of u starting at v.
        std::vector<int> fan{v};
        std::vector<char> in_fan(size_t(nv), 0);
        in_fan[size_t(v)] = 1;
        for (bool grew = true; grew;) {
            grew = false;
            for (int w : nbrs[size_t(u)]) {
                if (in_fan[size_t(w)]) {
                    continue;
                }
                int cw = colour_of(u, w);
                if (cw >= 0 && is_free(fan.back(), cw)) {
                    fan.push_back(w);
                    in_fan[size_t(w)] = 1;
                    grew = true;
                    break;
                }
            }
        }
        const int c = free_colour(u);
        const int d = free_colour(fan.back());
        // Invert the cd path through u (it starts with a d edge since c is free at u).
        if (c != d) {
            std::vector<std::pair<int, int>> path;
            int cur = u, want = d;
            while (at[size_t(cur)][size_t(want)] >= 0) {
                int nxt = at[size_t(cur)][size_t(want)];
                path.emplace_back(cur, nxt);
                cur = nxt;
                want = want == d ? c : d;
            }
            std::vector<int> old;
            for (auto [a, b] : path) {
                old.push_back(colour_of(a, b));
            }
            for (size_t i = 0; i < path.size(); i++) {
                clear_colour(path[i].first, path[i].second, old[i]);
            }
            for (size_t i = 0; i < path.size(); i++) {
                set_colour(path[i].first, path[i].second, old[i] == c ? d : c);
            }
        }
        // First fan prefix ending at a vertex where d is free.
        size_t wi = 0;
        for (size_t i = 0; i < fan.size(); i++) {
            if (i > 0) {
                int ci = colour_of(u, fan[i]);
                if (ci < 0 || !is_free(fan[i - 1], ci)) {
                    break;
                }
            }
            if (is_free(fan[i], d)) {
                wi = i;
                break;
            }
        }
        // Rotate the prefix and colour the last edge d.
        for (size_t i = 0; i < wi; i++) {
            int cn = colour_of(u, fan[i + 1]);
            clear_colour(u, fan[i + 1], cn);
            set_colour(u, fan[i], cn);
        }
        set_colour(u, fan[wi], d);
    }
    std::vector<int> out;
    out.reserve(edges.size());
    for (auto [a, b] : edges) {
        out.push_back(colour_of(a, b));
    }
    return out;
}

bool is_proper_edge_colouring(int num_vertices, const std::vector<std::pair<int, int>> &edges,
                              const std::vector<int> &colour) {
    if (colour.size() != edges.size()) {
        return false;
    }
    std::set<std::pair<int, int>> used;
    for (size_t i = 0; i < edges.size(); i++) {
        auto [a, b] = edges[i];
        if (colour[i] < 0 || a < 0 || b < 0 || a >= num_vertices || b >= num_vertices) {
            return false;
        }
        if (!used.insert({a, colour[i]}).second || !used.insert({b, colour[i]}).second) {
            return false;
        }
    }
    return true;
}

std::string DepthAudit::to_json_text() const {
    json j;
    j["stages"] = json::array();
    for (const auto &[name, layers] : stages) {
        j["stages"].push_back({{"stage", name}, {"layers", layers}});
    }
    j["total"] = total;
    j["graph_colours_used"] = graph_colours_used;
    j["graph_cz_slots"] = graph_cz_slots;
    j["colouring_valid"] = colouring_valid;
    return j.dump(2);
}

DepthAudit quantum_depth_audit(const PipelineConfig &config) {
    config.validate();
    DepthAudit audit;
    GraphSpec spec = pipeline_graph(config);
    // The CZ schedule is a fixed template sized by a bulk instance of the
    // same gadget family; the actual graph must fit inside it.
    PipelineConfig bulk = config;
    bulk.n = 4;
    bulk.k = 8;
    GraphSpec ref = pipeline_graph(bulk);
    auto max_degree = [](const GraphSpec &g) {
        int m = 0;
        for (const auto &a : g.adjacency()) {
            m = std::max(m, int(a.size()));
        }
        return m;
    };
    audit.graph_cz_slots = max_degree(ref) + 1;
    std::vector<int> colours = edge_colouring(int(spec.num_vertices()), spec.edges);
    std::set<int> distinct(colours.begin(), colours.end());
    audit.graph_colours_used = int(distinct.size());
    audit.colouring_valid = is_proper_edge_colouring(int(spec.num_vertices()), spec.edges, colours) &&
                            audit.graph_colours_used <= audit.graph_cz_slots && max_degree(spec) <= max_degree(ref);

    auto add = [&](const std::string &name, int layers) {
        audit.stages.emplace_back(name, layers);
        audit.total += layers;
    };
    auto msd_stages = [&](const std::string &tag, const std::string &protocol) {
        if (protocol == "none") {
            return;
        }
        add(tag + "_msd_prepare", 1);
        add(tag + "_msd_transversal", 1);
        add(tag + "_msd_measure", 1);
        // Grid CZs in four geometric slots (row/column by parity) plus one
        // for the source links.
        add(tag + "_routing_prepare", 1);
        add(tag + "_routing_cz", 5);
        add(tag + "_routing_measure", 1);
    };
    if (config.distance > 1) {
        // One stabilizer round to prepare the logical zero: reset, four CZ
        // slots, ancilla readout.
        add("code_round", 6);
    }
    if (config.arch == Architecture::k3D) {
        msd_stages("y", config.y_protocol);
    }
    msd_stages("t", config.t_protocol);
    add("graph_prepare", 1);
    add("graph_rotation", 1);
    add("graph_cz", audit.graph_cz_slots);
    add("graph_hadamard", 1);
    add("graph_measure", 1);
    return audit;
}

}  // namespace ftqs
