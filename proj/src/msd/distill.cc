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

#include "ftqs/msd/distill.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ftqs/common/parallel.h"
#include "ftqs/common/stats.h"
#include "json.hpp"

namespace ftqs {

using nlohmann::json;

namespace {

ErrorPattern pack(const PauliString &p) {
    ErrorPattern e;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        e.x |= uint64_t(p.xs[q] & 1) << q;
        e.z |= uint64_t(p.zs[q] & 1) << q;
    }
    return e;
}

bool anticommutes(const ErrorPattern &a, const ErrorPattern &b) {
    return __builtin_popcountll((a.x & b.z) ^ (a.z & b.x)) & 1;
}

PauliString pauli_on(int n, const std::vector<int> &qubits, char which) {
    PauliString p(static_cast<size_t>(n));
    for (int q : qubits) {
        p.set(size_t(q), which);
    }
    return p;
}

// Qubit i carries the label i + 1 written in binary.
std::vector<int> with_bits(int n, unsigned mask) {
    std::vector<int> out;
    for (int i = 0; i < n; i++) {
        if ((unsigned(i + 1) & mask) == mask) {
            out.push_back(i);
        }
    }
    return out;
}

constexpr uint64_t kSampleChunk = 65536;

}  // namespace

void MsdProtocolSpec::validate() const {
    auto fail = [&](const std::string &m) { throw std::invalid_argument("protocol '" + name + "': " + m); };
    if (num_qubits < 1 || num_qubits > 64) {
        fail("qubit count must lie in [1, 64]");
    }
    if (magic != 'T' && magic != 'Y') {
        fail("magic must be 'T' or 'Y'");
    }
    if (d < 2 || !(C > 0.0) || !(gamma > 0.0) || inputs_per_round < 1 || outputs_per_round < 1) {
        fail("need d >= 2, C > 0, gamma > 0 and positive input/output counts");
    }
    auto width_ok = [&](const PauliString &p) { return p.num_qubits() == size_t(num_qubits); };
    if (!width_ok(logical_x) || !width_ok(logical_z)) {
        fail("logical operator width mismatch");
    }
    if (logical_x.commutes(logical_z)) {
        fail("logical X and Z must anticommute");
    }
    for (size_t i = 0; i < checks.size(); i++) {
        if (!width_ok(checks[i]) || !checks[i].is_hermitian()) {
            fail("check " + std::to_string(i) + " has the wrong width or phase");
        }
        if (!checks[i].commutes(logical_x) || !checks[i].commutes(logical_z)) {
            fail("check " + std::to_string(i) + " does not commute with the logicals");
        }
        for (size_t j = i + 1; j < checks.size(); j++) {
            if (!checks[i].commutes(checks[j])) {
                fail("checks " + std::to_string(i) + " and " + std::to_string(j) + " anticommute");
            }
        }
    }
}

std::vector<double> MsdProtocolSpec::ideal_bloch_squared() const {
    if (magic == 'T') {
        return {0.5, 0.5, 0.0};
    }
    return {0.0, 1.0, 0.0};
}

MsdProtocolSpec MsdProtocolSpec::reed_muller_15() {
    MsdProtocolSpec s;
    s.name = "reed_muller_15";
    s.magic = 'T';
    s.num_qubits = 15;
    for (unsigned j = 0; j < 4; j++) {
        s.checks.push_back(pauli_on(15, with_bits(15, 1u << j), 'X'));
    }
    for (unsigned j = 0; j < 4; j++) {
        s.checks.push_back(pauli_on(15, with_bits(15, 1u << j), 'Z'));
    }
    for (unsigned j = 0; j < 4; j++) {
        for (unsigned k = j + 1; k < 4; k++) {
            s.checks.push_back(pauli_on(15, with_bits(15, (1u << j) | (1u << k)), 'Z'));
        }
    }
    std::vector<int> all(15);
    std::iota(all.begin(), all.end(), 0);
    s.logical_x = pauli_on(15, all, 'X');
    s.logical_z = pauli_on(15, all, 'Z');
    s.d = 3;
    s.C = 35.0;
    s.gamma = std::log(15.0) / std::log(3.0);
    s.inputs_per_round = 15;
    s.outputs_per_round = 1;
    s.validate();
    return s;
}

MsdProtocolSpec MsdProtocolSpec::steane_7() {
    MsdProtocolSpec s;
    s.name = "steane_7";
    s.magic = 'Y';
    s.num_qubits = 7;
    for (char which : {'X', 'Z'}) {
        for (unsigned j = 0; j < 3; j++) {
            s.checks.push_back(pauli_on(7, with_bits(7, 1u << j), which));
        }
    }
    std::vector<int> all(7);
    std::iota(all.begin(), all.end(), 0);
    s.logical_x = pauli_on(7, all, 'X');
    s.logical_z = pauli_on(7, all, 'Z');
    s.d = 3;
    s.C = 7.0;
    s.gamma = std::log(7.0) / std::log(3.0);
    s.inputs_per_round = 7;
    s.outputs_per_round = 1;
    s.validate();
    return s;
}

MsdProtocolSpec MsdProtocolSpec::builtin(std::string_view name) {
    if (name == "reed_muller_15" || name == "15to1") {
        return reed_muller_15();
    }
    if (name == "steane_7" || name == "7to1") {
        return steane_7();
    }
    throw std::invalid_argument("unknown built-in protocol '" + std::string(name) + "'");
}

MsdProtocolSpec MsdProtocolSpec::from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("protocol JSON: ") + e.what());
    }
    static const std::set<std::string> kKeys = {"name",  "magic", "checks",           "logical_x",        "logical_z",
                                                "d",     "gamma", "C",                "inputs_per_round", "outputs_per_round"};
    for (const auto &[key, _] : j.items()) {
        if (!kKeys.count(key)) {
            throw std::invalid_argument("protocol JSON: unknown key '" + key + "'");
        }
    }
    MsdProtocolSpec s;
    try {
        s.name = j.value("name", std::string("protocol"));
        std::string magic = j.at("magic").get<std::string>();
        if (magic.size() != 1) {
            throw std::invalid_argument("protocol JSON: magic must be \"T\" or \"Y\"");
        }
        s.magic = magic[0];
        for (const auto &c : j.at("checks")) {
            s.checks.push_back(PauliString::from_text(c.get<std::string>()));
        }
        s.logical_x = PauliString::from_text(j.at("logical_x").get<std::string>());
        s.logical_z = PauliString::from_text(j.at("logical_z").get<std::string>());
        s.num_qubits = int(s.logical_x.num_qubits());
        s.d = j.value("d", 3);
        s.gamma = j.value("gamma", 1.0);
        s.C = j.value("C", 1.0);
        s.inputs_per_round = j.value("inputs_per_round", s.num_qubits);
        s.outputs_per_round = j.value("outputs_per_round", 1);
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("protocol JSON: ") + e.what());
    }
    s.validate();
    return s;
}

MsdProtocolSpec MsdProtocolSpec::from_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read protocol file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string MsdProtocolSpec::to_json_text() const {
    json j;
    j["name"] = name;
    j["magic"] = std::string(1, magic);
    j["checks"] = json::array();
    for (const auto &c : checks) {
        j["checks"].push_back(c.str());
    }
    j["logical_x"] = logical_x.str();
    j["logical_z"] = logical_z.str();
    j["d"] = d;
    j["gamma"] = gamma;
    j["C"] = C;
    j["inputs_per_round"] = inputs_per_round;
    j["outputs_per_round"] = outputs_per_round;
    return j.dump(2);
}

DistillationModel::DistillationModel(const MsdProtocolSpec &spec) : spec_(spec) {
    spec_.validate();
    for (const auto &c : spec_.checks) {
        checks_.push_back(pack(c));
    }
    lx_ = pack(spec_.logical_x);
    lz_ = pack(spec_.logical_z);
    bloch2_ = spec_.ideal_bloch_squared();
}

PatternOutcome DistillationModel::classify(const ErrorPattern &e) const {
    for (const auto &c : checks_) {
        if (anticommutes(e, c)) {
            return {false, 0.0};
        }
    }
    // Syndrome-free errors act as stabilizer times logical; the logical part
    // is read off from commutation with the logical pair.
    bool has_x = anticommutes(e, lz_);
    bool has_z = anticommutes(e, lx_);
    double infid = 0.0;
    if (has_x && has_z) {
        infid = 1.0 - bloch2_[1];
    } else if (has_x) {
        infid = 1.0 - bloch2_[0];
    } else if (has_z) {
        infid = 1.0 - bloch2_[2];
    }
    return {true, infid};
}

char DistillationModel::logical_class(const ErrorPattern &e) const {
    for (const auto &c : checks_) {
        if (anticommutes(e, c)) {
            return '\0';
        }
    }
    bool has_x = anticommutes(e, lz_);
    bool has_z = anticommutes(e, lx_);
    return has_x ? (has_z ? 'Y' : 'X') : (has_z ? 'Z' : 'I');
}

ErrorPattern DistillationModel::sample(double eps, Rng &rng) const {
    ErrorPattern e;
    for (int q = 0; q < spec_.num_qubits; q++) {
        double u = uniform01(rng);
        if (u < eps) {
            int which = std::min(2, int(u / eps * 3.0));
            uint64_t bit = uint64_t(1) << q;
            if (which != 1) {
                e.x |= bit;  // X or Y
            }
            if (which != 0) {
                e.z |= bit;  // Y or Z
            }
        }
    }
    return e;
}

ErrorPattern DistillationModel::sample_weight(int w, Rng &rng) const {
    std::vector<int> idx(size_t(spec_.num_qubits));
    std::iota(idx.begin(), idx.end(), 0);
    ErrorPattern e;
    for (int i = 0; i < w; i++) {
        std::uniform_int_distribution<int> pick(i, spec_.num_qubits - 1);
        std::swap(idx[size_t(i)], idx[size_t(pick(rng))]);
        int which = std::uniform_int_distribution<int>(0, 2)(rng);
        uint64_t bit = uint64_t(1) << idx[size_t(i)];
        if (which != 1) {
            e.x |= bit;
        }
        if (which != 0) {
            e.z |= bit;
        }
    }
    return e;
}

namespace {

struct StratumTotals {
    double accept = 0.0;      // mean acceptance within the stratum
    double weighted = 0.0;    // mean acceptance * infidelity
    double var_weighted = 0.0;  // variance of the mean above
};

StratumTotals enumerate_stratum(const DistillationModel &model, int w) {
    const int n = model.num_qubits();
    uint64_t count = 0;
    double acc = 0.0, wsum = 0.0;
    std::vector<int> support;
    // Gosper's hack over w-subsets of n bits.
    uint64_t set = w == 0 ? 0 : (w == 64 ? ~uint64_t(0) : (uint64_t(1) << w) - 1);
    const uint64_t limit = n == 64 ? 0 : uint64_t(1) << n;
    while (true) {
        support.clear();
        for (int q = 0; q < n; q++) {
            if ((set >> q) & 1) {
                support.push_back(q);
            }
        }
        uint64_t assignments = 1;
        for (int i = 0; i < w; i++) {
            assignments *= 3;
        }
        for (uint64_t a = 0; a < assignments; a++) {
            ErrorPattern e;
            uint64_t code = a;
            for (int q : support) {
                int which = int(code % 3);
                code /= 3;
                if (which != 1) {
                    e.x |= uint64_t(1) << q;
                }
                if (which != 0) {
                    e.z |= uint64_t(1) << q;
                }
            }
            PatternOutcome o = model.classify(e);
            count++;
            if (o.accepted) {
                acc += 1.0;
                wsum += o.infidelity;
            }
        }
        if (w == 0) {
            break;
        }
        uint64_t c = set & (~set + 1);
        uint64_t r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
        if (limit != 0 && set >= limit) {
            break;
        }
        if (r == 0) {
            break;
        }
    }
    return {acc / double(count), wsum / double(count), 0.0};
}

}  // namespace

DistillResult simulate_distillation(const MsdProtocolSpec &protocol, double eps, uint64_t shots, uint64_t seed,
                                    const DistillOptions &opts) {
    if (!(eps >= 0.0 && eps < 0.5)) {
        throw std::invalid_argument("input infidelity must lie in [0, 0.5)");
    }
    if (shots < 1) {
        throw std::invalid_argument("need at least one shot");
    }
    DistillationModel model(protocol);
    const int n = model.num_qubits();
    DistillResult res;
    res.eps = eps;
    res.shots = shots;
    res.method = opts.method;

    if (opts.method == DistillMethod::kPlain) {
        const uint64_t chunks = (shots + kSampleChunk - 1) / kSampleChunk;
        std::vector<double> acc(chunks, 0.0), sum(chunks, 0.0), sumsq(chunks, 0.0);
        parallel_for(size_t(chunks), opts.threads, [&](size_t c) {
            Rng rng = make_rng(seed, c);
            uint64_t end = std::min(shots, (c + 1) * kSampleChunk);
            for (uint64_t s = c * kSampleChunk; s < end; s++) {
                PatternOutcome o = model.classify(model.sample(eps, rng));
                if (o.accepted) {
                    acc[c] += 1.0;
                    sum[c] += o.infidelity;
                    sumsq[c] += o.infidelity * o.infidelity;
                }
            }
        });
        double a = std::accumulate(acc.begin(), acc.end(), 0.0);
        double s = std::accumulate(sum.begin(), sum.end(), 0.0);
        double s2 = std::accumulate(sumsq.begin(), sumsq.end(), 0.0);
        res.accept_rate = a / double(shots);
        if (a > 0) {
            res.infidelity = s / a;
            double var = std::max(0.0, s2 / a - res.infidelity * res.infidelity);
            res.ci = 1.959963984540054 * std::sqrt(var / a);
        }
        return res;
    }

    // Stratify by error weight: Pr(weight = w) is exact, and each stratum's
    // conditional acceptance and infidelity are enumerated or sampled.
    std::vector<double> pw(size_t(n + 1), 0.0);
    for (int w = 0; w <= n; w++) {
        if (eps == 0.0) {
            pw[size_t(w)] = w == 0 ? 1.0 : 0.0;
        } else {
            pw[size_t(w)] = std::exp(log_choose(n, w) + w * std::log(eps) + (n - w) * std::log1p(-eps));
        }
    }
    std::vector<StratumTotals> strata(size_t(n + 1));
    strata[0] = {1.0, 0.0, 0.0};
    std::vector<int> sampled;
    for (int w = 1; w <= n; w++) {
        if (pw[size_t(w)] < 1e-16) {
            continue;
        }
        double count = std::exp(log_choose(n, w)) * std::pow(3.0, w);
        if (count <= double(opts.exhaustive_cap)) {
            strata[size_t(w)] = enumerate_stratum(model, w);
        } else {
            sampled.push_back(w);
        }
    }
    if (!sampled.empty()) {
        const uint64_t per = std::max<uint64_t>(1, shots / sampled.size());
        const uint64_t chunks_per = (per + kSampleChunk - 1) / kSampleChunk;
        struct Job {
            int w;
            uint64_t chunk;
        };
        std::vector<Job> jobs;
        for (int w : sampled) {
            for (uint64_t c = 0; c < chunks_per; c++) {
                jobs.push_back({w, c});
            }
        }
        std::vector<double> acc(jobs.size(), 0.0), sum(jobs.size(), 0.0), sumsq(jobs.size(), 0.0);
        parallel_for(jobs.size(), opts.threads, [&](size_t j) {
            const Job &job = jobs[j];
            Rng rng = make_rng(derive_seed(seed, uint64_t(job.w)), job.chunk);
            uint64_t end = std::min(per, (job.chunk + 1) * kSampleChunk);
            for (uint64_t s = job.chunk * kSampleChunk; s < end; s++) {
                PatternOutcome o = model.classify(model.sample_weight(job.w, rng));
                if (o.accepted) {
                    acc[j] += 1.0;
                    sum[j] += o.infidelity;
                    sumsq[j] += o.infidelity * o.infidelity;
                }
            }
        });
        for (int w : sampled) {
            double a = 0, s = 0, s2 = 0;
            for (size_t j = 0; j < jobs.size(); j++) {
                if (jobs[j].w == w) {
                    a += acc[j];
                    s += sum[j];
                    s2 += sumsq[j];
                }
            }
            double mean = s / double(per);
            double var = std::max(0.0, s2 / double(per) - mean * mean);
            strata[size_t(w)] = {a / double(per), mean, var / double(per)};
        }
    }
    double accept = 0.0, num = 0.0, num_var = 0.0;
    for (int w = 0; w <= n; w++) {
        accept += pw[size_t(w)] * strata[size_t(w)].accept;
        num += pw[size_t(w)] * strata[size_t(w)].weighted;
        num_var += pw[size_t(w)] * pw[size_t(w)] * strata[size_t(w)].var_weighted;
    }
    res.accept_rate = accept;
    if (accept > 0.0) {
        res.infidelity = num / accept;
        res.ci = 1.959963984540054 * std::sqrt(num_var) / accept;
    }
    return res;
}

std::string distill_sweep_csv(const std::vector<DistillResult> &rows) {
    std::ostringstream os;
    os.precision(10);
    os << "eps,shots,accept_rate,infidelity,ci\n";
    for (const auto &r : rows) {
        os << r.eps << ',' << r.shots << ',' << r.accept_rate << ',' << r.infidelity << ',' << r.ci << '\n';
    }
    return os.str();
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("slope fit needs at least two paired points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(x.size());
    for (size_t i = 0; i < x.size(); i++) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw std::invalid_argument("slope fit needs positive values");
        }
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-15) {
        throw std::invalid_argument("slope fit needs distinct x values");
    }
    return (m * sxy - sx * sy) / denom;
}

}  // namespace ftqs
