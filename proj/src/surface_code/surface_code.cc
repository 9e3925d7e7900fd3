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

#include "ftqs/surface_code/surface_code.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ftqs/common/parallel.h"
#include "ftqs/common/stats.h"
#include "ftqs/surface_code/blossom.h"

namespace ftqs {

namespace {

constexpr uint64_t kTrialChunk = 4096;

}  // namespace

PauliString SurfaceCodePatch::check_pauli(size_t i) const {
    PauliString p(static_cast<size_t>(num_qubits()));
    for (int q : checks.at(i).qubits) {
        p.set(size_t(q), checks[i].is_x ? 'X' : 'Z');
    }
    return p;
}

void SurfaceCodePatch::verify() const {
    std::vector<PauliString> ps;
    for (size_t i = 0; i < checks.size(); i++) {
        ps.push_back(check_pauli(i));
    }
    for (size_t i = 0; i < ps.size(); i++) {
        for (size_t j = i + 1; j < ps.size(); j++) {
            if (!ps[i].commutes(ps[j])) {
                throw std::logic_error("checks " + std::to_string(i) + " and " + std::to_string(j) + " anticommute");
            }
        }
        if (!ps[i].commutes(logical_z) || !ps[i].commutes(logical_x)) {
            throw std::logic_error("check " + std::to_string(i) + " anticommutes with a logical operator");
        }
    }
    if (logical_z.commutes(logical_x)) {
        throw std::logic_error("logical operators commute");
    }
}

std::vector<int> SurfaceCodePatch::path_qubits(int a, int b) const {
    std::vector<int> out;
    int cur = b;
    while (cur != a) {
        int q = parent_qubit[size_t(a)][size_t(cur)];
        if (q < 0) {
            throw std::logic_error("decoding graph is disconnected");
        }
        out.push_back(q);
        auto [u, v] = qubit_edge[size_t(q)];
        cur = (u == cur) ? v : u;
    }
    return out;
}

SurfaceCodePatch build_patch(int d) {
    if (d < 1 || d % 2 == 0) {
        throw std::invalid_argument("surface-code distance must be odd and positive, got " + std::to_string(d));
    }
    SurfaceCodePatch patch;
    patch.distance = d;
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            patch.coords.emplace_back(r, c);
        }
    }
    // Plaquette at corner (i, j) touches data rows i-1..i, columns j-1..j.
    for (int i = 0; i <= d; i++) {
        for (int j = 0; j <= d; j++) {
            bool is_x = (i + j) % 2 == 1;
            bool top_bottom = i == 0 || i == d;
            bool left_right = j == 0 || j == d;
            if (top_bottom && left_right) {
                continue;
            }
            if (top_bottom && !is_x) {
                continue;
            }
            if (left_right && is_x) {
                continue;
            }
            SurfaceCodePatch::Check chk{is_x, {}};
            for (int r = i - 1; r <= i; r++) {
                for (int c = j - 1; c <= j; c++) {
                    if (r >= 0 && r < d && c >= 0 && c < d) {
                        chk.qubits.push_back(r * d + c);
                    }
                }
            }
            patch.checks.push_back(std::move(chk));
        }
    }
    const size_t nq = size_t(d) * size_t(d);
    patch.logical_z = PauliString(nq);
    patch.logical_x = PauliString(nq);
    for (int c = 0; c < d; c++) {
        patch.logical_z.set(size_t(c), 'Z');
    }
    for (int r = 0; r < d; r++) {
        patch.logical_x.set(size_t(r * d), 'X');
    }

    for (size_t i = 0; i < patch.checks.size(); i++) {
        if (!patch.checks[i].is_x) {
            patch.z_checks.push_back(int(i));
        }
    }
    const int nodes = patch.num_z_checks() + 1;
    const int boundary = patch.boundary_node();
    std::vector<std::vector<int>> touching(nq);
    for (int zi = 0; zi < patch.num_z_checks(); zi++) {
        for (int q : patch.checks[size_t(patch.z_checks[size_t(zi)])].qubits) {
            touching[size_t(q)].push_back(zi);
        }
    }
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(nodes));  // (neighbour, qubit)
    for (size_t q = 0; q < nq; q++) {
        const auto &t = touching[q];
        int u = t.size() > 0 ? t[0] : boundary;
        int v = t.size() > 1 ? t[1] : boundary;
        patch.qubit_edge.emplace_back(u, v);
        if (u != v) {
            adj[size_t(u)].emplace_back(v, int(q));
            adj[size_t(v)].emplace_back(u, int(q));
        }
    }
    patch.dist.assign(size_t(nodes), std::vector<int>(size_t(nodes), -1));
    patch.parent_qubit.assign(size_t(nodes), std::vector<int>(size_t(nodes), -1));
    for (int a = 0; a < nodes; a++) {
        auto &dist = patch.dist[size_t(a)];
        auto &parent = patch.parent_qubit[size_t(a)];
        std::deque<int> queue = {a};
        dist[size_t(a)] = 0;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            // The boundary is a sink: paths may end there but never pass through.
            if (x == boundary && x != a) {
                continue;
            }
            for (auto [y, q] : adj[size_t(x)]) {
                if (dist[size_t(y)] < 0) {
                    dist[size_t(y)] = dist[size_t(x)] + 1;
                    parent[size_t(y)] = q;
                    queue.push_back(y);
                }
            }
        }
    }
    patch.verify();
    return patch;
}

std::vector<int> z_syndrome(const SurfaceCodePatch &patch, const std::vector<uint8_t> &outcomes) {
    if (outcomes.size() != size_t(patch.num_qubits())) {
        throw std::invalid_argument("expected " + std::to_string(patch.num_qubits()) + " outcomes, got " +
                                    std::to_string(outcomes.size()));
    }
    std::vector<int> defects;
    for (int zi = 0; zi < patch.num_z_checks(); zi++) {
        uint8_t parity = 0;
        for (int q : patch.checks[size_t(patch.z_checks[size_t(zi)])].qubits) {
            parity ^= outcomes[size_t(q)] & 1;
        }
        if (parity) {
            defects.push_back(zi);
        }
    }
    return defects;
}

Matching mwpm(const std::vector<int> &defects, const SurfaceCodePatch &patch) {
    Matching m;
    const int nd = int(defects.size());
    const int b = patch.boundary_node();
    auto dpair = [&](int i, int j) { return int64_t(patch.dist[size_t(defects[size_t(i)])][size_t(defects[size_t(j)])]); };
    auto dbound = [&](int i) { return int64_t(patch.dist[size_t(defects[size_t(i)])][size_t(b)]); };
    if (nd == 0) {
        return m;
    }
    if (nd == 1) {
        m.pairs.emplace_back(defects[0], -1);
        m.weight = dbound(0);
        return m;
    }
    // Nodes [0, nd) are defects, [nd, 2nd) their boundary copies.
    std::vector<std::pair<int, int>> raw;
    std::vector<int64_t> cost;
    for (int i = 0; i < nd; i++) {
        raw.emplace_back(i, nd + i);
        cost.push_back(dbound(i));
        for (int j = i + 1; j < nd; j++) {
            int64_t w = dpair(i, j);
            if (w <= dbound(i) + dbound(j)) {
                raw.emplace_back(i, j);
                cost.push_back(w);
            }
            raw.emplace_back(nd + i, nd + j);
            cost.push_back(0);
        }
    }
    int64_t top = *std::max_element(cost.begin(), cost.end()) + 1;
    std::vector<WeightedEdge> edges;
    for (size_t e = 0; e < raw.size(); e++) {
        edges.push_back({raw[e].first, raw[e].second, top - cost[e]});
    }
    auto mate = max_weight_matching(2 * nd, edges, true);
    for (int i = 0; i < nd; i++) {
        int j = mate[size_t(i)];
        if (j < 0) {
            throw std::logic_error("matching is not perfect");
        }
        if (j >= nd) {
            m.pairs.emplace_back(defects[size_t(i)], -1);
            m.weight += dbound(i);
        } else if (j > i) {
            m.pairs.emplace_back(defects[size_t(i)], defects[size_t(j)]);
            m.weight += dpair(i, j);
        }
    }
    return m;
}

int64_t brute_force_matching_weight(const std::vector<int> &defects, const SurfaceCodePatch &patch) {
    const int nd = int(defects.size());
    const int b = patch.boundary_node();
    std::vector<uint8_t> used(size_t(nd), 0);
    std::function<int64_t(int)> best = [&](int i) -> int64_t {
        while (i < nd && used[size_t(i)]) {
            i++;
        }
        if (i == nd) {
            return 0;
        }
        used[size_t(i)] = 1;
        int64_t out = patch.dist[size_t(defects[size_t(i)])][size_t(b)] + best(i + 1);
        for (int j = i + 1; j < nd; j++) {
            if (!used[size_t(j)]) {
                used[size_t(j)] = 1;
                out = std::min(out, patch.dist[size_t(defects[size_t(i)])][size_t(defects[size_t(j)])] + best(i + 1));
                used[size_t(j)] = 0;
            }
        }
        used[size_t(i)] = 0;
        return out;
    };
    return best(0);
}

uint8_t z_readout_decode(const SurfaceCodePatch &patch, const std::vector<uint8_t> &outcomes) {
    auto defects = z_syndrome(patch, outcomes);
    std::vector<uint8_t> corrected = outcomes;
    for (auto [a, b] : mwpm(defects, patch).pairs) {
        int target = b < 0 ? patch.boundary_node() : b;
        for (int q : patch.path_qubits(a, target)) {
            corrected[size_t(q)] ^= 1;
        }
    }
    uint8_t bit = 0;
    for (size_t q = 0; q < corrected.size(); q++) {
        if (patch.logical_z.get(q) != 'I') {
            bit ^= corrected[q] & 1;
        }
    }
    return bit;
}

RateEstimate logical_error_rate(int distance, double p, uint64_t trials, uint64_t seed, int threads) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("flip rate " + std::to_string(p) + " outside [0, 1)");
    }
    if (trials < 1) {
        throw std::invalid_argument("need at least one trial");
    }
    const SurfaceCodePatch patch = build_patch(distance);
    std::vector<int> x_checks;
    for (size_t i = 0; i < patch.checks.size(); i++) {
        if (patch.checks[i].is_x) {
            x_checks.push_back(int(i));
        }
    }
    const uint64_t chunks = (trials + kTrialChunk - 1) / kTrialChunk;
    std::vector<uint64_t> failures(chunks, 0);
    parallel_for(size_t(chunks), threads, [&](size_t c) {
        Rng rng = make_rng(seed, c);
        std::bernoulli_distribution coin(0.5);
        std::vector<uint8_t> outcomes(size_t(patch.num_qubits()));
        uint64_t end = std::min(trials, (c + 1) * kTrialChunk);
        for (uint64_t t = c * kTrialChunk; t < end; t++) {
            std::fill(outcomes.begin(), outcomes.end(), 0);
            // A random |0> codeword: product of X checks applied to |0...0>.
            for (int xi : x_checks) {
                if (coin(rng)) {
                    for (int q : patch.checks[size_t(xi)].qubits) {
                        outcomes[size_t(q)] ^= 1;
                    }
                }
            }
            for (auto &o : outcomes) {
                if (uniform01(rng) < p) {
                    o ^= 1;
                }
            }
            failures[c] += z_readout_decode(patch, outcomes);
        }
    });
    RateEstimate est;
    est.distance = distance;
    est.l = patch.num_qubits();
    est.p = p;
    est.trials = trials;
    for (uint64_t f : failures) {
        est.failures += f;
    }
    est.p_l = double(est.failures) / double(trials);
    std::tie(est.ci_low, est.ci_high) = wilson_interval(est.failures, trials);
    return est;
}

double fit_pf_exponent(const std::vector<std::pair<int, double>> &rates) {
    if (rates.size() < 2) {
        throw std::invalid_argument("exponent fit needs at least two points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(rates.size());
    for (auto [d, pl] : rates) {
        if (!(pl > 0.0)) {
            throw std::invalid_argument("exponent fit needs positive rates");
        }
        double x = std::sqrt(double(d) * double(d));
        double y = -std::log(pl);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) {
        throw std::invalid_argument("exponent fit needs at least two distinct distances");
    }
    return (m * sxy - sx * sy) / denom;
}

std::string rate_sweep_csv(const std::vector<RateEstimate> &rows) {
    std::ostringstream os;
    os.precision(10);
    os << "distance,l,p,trials,p_L,ci_low,ci_high\n";
    for (const auto &r : rows) {
        os << r.distance << ',' << r.l << ',' << r.p << ',' << r.trials << ',' << r.p_l << ',' << r.ci_low << ','
           << r.ci_high << '\n';
    }
    return os.str();
}

}  // namespace ftqs
