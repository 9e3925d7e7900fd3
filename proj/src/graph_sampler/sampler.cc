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

#include "ftqs/graph_sampler/sampler.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ftqs/common/parallel.h"

namespace ftqs {

namespace {

constexpr size_t kShotChunk = 4096;

}  // namespace

StateVector graph_statevector(const GraphSpec &spec, size_t cap) {
    spec.validate();
    const size_t nv = spec.num_vertices();
    const double r = 1.0 / std::sqrt(2.0);
    StateVector sv = StateVector::product(std::vector<Qubit1>(nv, Qubit1{r, r}), cap);
    for (const auto &[a, b] : spec.edges) {
        sv.apply_cz(size_t(a), size_t(b));
    }
    for (size_t v = 0; v < nv; v++) {
        const auto role = spec.vertices[v].role;
        if (role == MeasurementRole::XY_PI4 || role == MeasurementRole::XY_PI2) {
            sv.apply_rz(v, role_angle(role));
        }
        if (role != MeasurementRole::OUTPUT_Z || spec.output_hadamard) {
            sv.apply_h(v);
        }
    }
    return sv;
}

double OutcomeDistribution::total() const {
    double s = 0.0;
    for (double p : probs) {
        s += p;
    }
    return s;
}

void OutcomeDistribution::validate(double tol) const {
    if (probs.size() != (size_t(1) << (num_s + num_x))) {
        throw std::domain_error("distribution table is incomplete");
    }
    for (double p : probs) {
        if (p < 0.0) {
            throw std::domain_error("negative probability");
        }
    }
    if (std::abs(total() - 1.0) > tol) {
        throw std::domain_error("probabilities sum to " + std::to_string(total()));
    }
}

std::string bits_to_string(uint64_t value, int width) {
    std::string out(size_t(width), '0');
    for (int j = 0; j < width; j++) {
        if ((value >> j) & 1) {
            out[size_t(j)] = '1';
        }
    }
    return out;
}

std::string OutcomeDistribution::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "s,x,probability\n";
    const uint64_t smask = (uint64_t(1) << num_s) - 1;
    for (uint64_t i = 0; i < probs.size(); i++) {
        os << bits_to_string(i & smask, num_s) << ',' << bits_to_string(i >> num_s, num_x) << ',' << probs[i]
           << '\n';
    }
    return os.str();
}

OutcomeDistribution OutcomeDistribution::uniform(int num_s, int num_x) {
    size_t size = size_t(1) << (num_s + num_x);
    return {num_s, num_x, std::vector<double>(size, 1.0 / double(size))};
}

OutcomeDistribution OutcomeDistribution::point_mass(int num_s, int num_x, uint64_t index) {
    OutcomeDistribution d{num_s, num_x, std::vector<double>(size_t(1) << (num_s + num_x), 0.0)};
    d.probs.at(index) = 1.0;
    return d;
}

OutcomeDistribution OutcomeDistribution::empirical(int num_s, int num_x, const std::vector<uint64_t> &samples) {
    OutcomeDistribution d{num_s, num_x, std::vector<double>(size_t(1) << (num_s + num_x), 0.0)};
    if (samples.empty()) {
        return d;
    }
    const double w = 1.0 / double(samples.size());
    for (uint64_t s : samples) {
        d.probs.at(s) += w;
    }
    return d;
}

OutcomeDistribution exact_distribution(const GraphSpec &spec, size_t cap) {
    StateVector sv = graph_statevector(spec, cap);
    OutcomeDistribution d;
    d.num_s = int(spec.num_measured());
    d.num_x = int(spec.num_outputs());
    d.probs.reserve(sv.amplitudes().size());
    for (const auto &a : sv.amplitudes()) {
        d.probs.push_back(std::norm(a));
    }
    return d;
}

OutcomeSampler::OutcomeSampler(const GraphSpec &spec, size_t cap)
    : num_s_(int(spec.num_measured())), num_x_(int(spec.num_outputs())), levels_(int(spec.num_vertices())) {
    build(graph_statevector(spec, cap));
}

OutcomeSampler::OutcomeSampler(const StateVector &state, int num_s)
    : num_s_(num_s), num_x_(int(state.num_qubits()) - num_s), levels_(int(state.num_qubits())) {
    if (num_s < 0 || num_s > levels_) {
        throw std::invalid_argument("measured-qubit count out of range");
    }
    build(state);
}

void OutcomeSampler::build(const StateVector &sv) {
    const size_t leaves = size_t(1) << levels_;
    tree_.assign(2 * leaves, 0.0);
    for (size_t i = 0; i < leaves; i++) {
        tree_[leaves + i] = std::norm(sv.amplitudes()[i]);
    }
    for (size_t i = leaves - 1; i >= 1; i--) {
        tree_[i] = tree_[2 * i] + tree_[2 * i + 1];
    }
}

uint64_t OutcomeSampler::sample_index(Rng &rng) const {
    size_t node = 1;
    for (int level = 0; level < levels_; level++) {
        double left = tree_[2 * node];
        double mass = tree_[node];
        double u = uniform01(rng) * mass;
        node = 2 * node + (u >= left && tree_[2 * node + 1] > 0.0 ? 1 : 0);
    }
    return uint64_t(node - (size_t(1) << levels_));
}

std::pair<uint64_t, uint64_t> OutcomeSampler::sample(Rng &rng) const {
    uint64_t i = sample_index(rng);
    return {i & ((uint64_t(1) << num_s_) - 1), i >> num_s_};
}

std::vector<uint64_t> OutcomeSampler::sample_batch(size_t shots, uint64_t seed, int threads) const {
    std::vector<uint64_t> out(shots);
    const size_t chunks = (shots + kShotChunk - 1) / kShotChunk;
    parallel_for(chunks, threads, [&](size_t c) {
        Rng rng = make_rng(seed, c);
        size_t end = std::min(shots, (c + 1) * kShotChunk);
        for (size_t i = c * kShotChunk; i < end; i++) {
            out[i] = sample_index(rng);
        }
    });
    return out;
}

std::pair<uint64_t, uint64_t> sample_outcome(const GraphSpec &spec, Rng &rng) {
    return OutcomeSampler(spec).sample(rng);
}

double uniform_s_marginal_check(const OutcomeDistribution &dist) {
    const size_t ns = size_t(1) << dist.num_s;
    const size_t nx = size_t(1) << dist.num_x;
    const double target = 1.0 / double(ns);
    double worst = 0.0;
    for (uint64_t s = 0; s < ns; s++) {
        double m = 0.0;
        for (uint64_t x = 0; x < nx; x++) {
            m += dist.prob(s, x);
        }
        worst = std::max(worst, std::abs(m - target));
    }
    return worst;
}

double uniform_s_marginal_check(const GraphSpec &spec) {
    return uniform_s_marginal_check(exact_distribution(spec));
}

double anticoncentration_stats(const OutcomeDistribution &dist, double alpha) {
    if (dist.probs.empty()) {
        return 0.0;
    }
    const double threshold = alpha / double(dist.size());
    size_t hits = 0;
    for (double p : dist.probs) {
        // Relative slack absorbs rounding at exact ties (uniform tables).
        hits += p >= threshold * (1.0 - 1e-12);
    }
    return double(hits) / double(dist.size());
}

double l1_distance(const OutcomeDistribution &d1, const OutcomeDistribution &d2) {
    if (d1.num_s != d2.num_s || d1.num_x != d2.num_x || d1.size() != d2.size()) {
        throw std::invalid_argument("distributions live on different outcome spaces");
    }
    double s = 0.0;
    for (size_t i = 0; i < d1.size(); i++) {
        s += std::abs(d1.probs[i] - d2.probs[i]);
    }
    return s;
}

}  // namespace ftqs
