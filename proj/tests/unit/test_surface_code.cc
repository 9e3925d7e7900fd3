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

#include <algorithm>
#include <functional>

#include "dense_oracle.h"
#include "doctest.h"
#include "ftqs/common/rng.h"
#include "ftqs/surface_code/blossom.h"
#include "ftqs/surface_code/surface_code.h"

using namespace ftqs;

namespace {

// Exhaustive maximum-weight matching: best total over every set of
// disjoint edges (optionally restricted to maximum cardinality).
std::pair<int, int64_t> brute_matching(int nv, const std::vector<WeightedEdge> &edges, bool max_card) {
    int best_card = -1;
    int64_t best_w = 0;
    std::vector<bool> used(size_t(nv), false);
    std::function<void(size_t, int, int64_t)> rec = [&](size_t i, int card, int64_t w) {
        if (i == edges.size()) {
            bool better = max_card ? (card > best_card || (card == best_card && w > best_w))
                                   : (w > best_w || best_card < 0);
            if (better) {
                best_card = card;
                best_w = w;
            }
            return;
        }
        rec(i + 1, card, w);
        const auto &e = edges[i];
        if (!used[size_t(e.u)] && !used[size_t(e.v)]) {
            used[size_t(e.u)] = used[size_t(e.v)] = true;
            rec(i + 1, card + 1, w + e.weight);
            used[size_t(e.u)] = used[size_t(e.v)] = false;
        }
    };
    rec(0, 0, 0);
    return {best_card, best_w};
}

// Minimum pairing cost of defects where any defect may pair with the
// boundary instead, using the patch distance table.
int64_t brute_defect_cost(const std::vector<int> &defects, const SurfaceCodePatch &patch) {
    const int b = patch.boundary_node();
    std::function<int64_t(std::vector<int>)> rec = [&](std::vector<int> left) -> int64_t {
        if (left.empty()) {
            return 0;
        }
        int a = left.back();
        left.pop_back();
        int64_t best = patch.dist[size_t(a)][size_t(b)] + rec(left);
        for (size_t j = 0; j < left.size(); j++) {
            std::vector<int> rest = left;
            int c = rest[j];
            rest.erase(rest.begin() + long(j));
            best = std::min(best, int64_t(patch.dist[size_t(a)][size_t(c)]) + rec(rest));
        }
        return best;
    };
    return rec(defects);
}

}  // namespace

TEST_CASE("patch invariants") {
    for (int d : {1, 3, 5, 7}) {
        SurfaceCodePatch p = build_patch(d);
        CHECK(p.num_qubits() == d * d);
        CHECK_NOTHROW(p.verify());
        CHECK(p.checks.size() == size_t(d * d - 1));
        for (size_t i = 0; i < p.checks.size(); i++) {
            CHECK(p.check_pauli(i).commutes(p.logical_z));
            CHECK(p.check_pauli(i).commutes(p.logical_x));
            for (size_t j = 0; j < i; j++) {
                CHECK(p.check_pauli(i).commutes(p.check_pauli(j)));
            }
        }
        CHECK_FALSE(p.logical_z.commutes(p.logical_x));
        CHECK(p.logical_z.weight() == size_t(d));
    }
    CHECK_THROWS_AS(build_patch(4), std::invalid_argument);
}

TEST_CASE("blossom matches exhaustive search on random graphs") {
    Rng rng(31);
    for (int t = 0; t < 300; t++) {
        int nv = 2 + int(rng() % 7);
        std::vector<WeightedEdge> edges;
        for (int u = 0; u < nv; u++) {
            for (int v = u + 1; v < nv; v++) {
                if (rng() % 3 != 0) {
                    edges.push_back({u, v, int64_t(rng() % 20) - (t % 2 ? 5 : 0)});
                }
            }
        }
        if (edges.size() > 14) {
            edges.resize(14);
        }
        for (bool mc : {false, true}) {
            auto mate = max_weight_matching(nv, edges, mc);
            int card = 0;
            int64_t w = 0;
            for (const auto &e : edges) {
                if (mate[size_t(e.u)] == e.v) {
                    CHECK(mate[size_t(e.v)] == e.u);
                    card++;
                    w += e.weight;
                }
            }
            auto [bc, bw] = brute_matching(nv, edges, mc);
            if (mc) {
                CHECK(card == bc);
            }
            // Without max_cardinality the empty matching (weight 0) is always allowed.
            CHECK(w == (mc ? bw : std::max<int64_t>(bw, 0)));
        }
    }
}

TEST_CASE("mwpm is optimal on random defect sets") {
    Rng rng(32);
    for (int d : {3, 5}) {
        SurfaceCodePatch p = build_patch(d);
        for (int t = 0; t < 60; t++) {
            std::vector<int> defects;
            for (int c = 0; c < p.num_z_checks(); c++) {
                if (rng() % 4 == 0 && defects.size() < 7) {
                    defects.push_back(c);
                }
            }
            Matching m = mwpm(defects, p);
            CHECK(m.weight == brute_defect_cost(defects, p));
            CHECK(m.weight == brute_force_matching_weight(defects, p));
        }
    }
}

TEST_CASE("decoder corrects every error below half the distance") {
    for (int d : {3, 5}) {
        SurfaceCodePatch p = build_patch(d);
        const int nq = p.num_qubits();
        std::vector<uint8_t> flips(size_t(nq), 0);
        CHECK(z_readout_decode(p, flips) == 0);
        for (int a = 0; a < nq; a++) {
            flips.assign(size_t(nq), 0);
            flips[size_t(a)] = 1;
            CHECK(z_readout_decode(p, flips) == 0);
            if (d == 5) {
                for (int b = a + 1; b < nq; b++) {
                    flips[size_t(b)] = 1;
                    CHECK(z_readout_decode(p, flips) == 0);
                    flips[size_t(b)] = 0;
                }
            }
        }
        // Bit flips along the X logical leave no syndrome and flip the readout.
        flips.assign(size_t(nq), 0);
        for (size_t q : p.logical_x.support()) {
            flips[q] = 1;
        }
        CHECK(z_syndrome(p, flips).empty());
        CHECK(z_readout_decode(p, flips) == 1);
    }
}

TEST_CASE("distance-1 failure rate is the flip rate") {
    RateEstimate r = logical_error_rate(1, 0.1, 200000, 7, 2);
    CHECK(r.ci_low <= 0.1);
    CHECK(r.ci_high >= 0.1);
}

TEST_CASE("distance-3 Monte Carlo agrees with exhaustive enumeration") {
    SurfaceCodePatch p = build_patch(3);
    const double rate = 0.08;
    double exact = 0.0;
    for (uint32_t mask = 0; mask < (1u << 9); mask++) {
        std::vector<uint8_t> flips(9);
        int w = 0;
        for (int q = 0; q < 9; q++) {
            flips[size_t(q)] = (mask >> q) & 1;
            w += flips[size_t(q)];
        }
        if (z_readout_decode(p, flips)) {
            exact += std::pow(rate, w) * std::pow(1.0 - rate, 9 - w);
        }
    }
    RateEstimate r = logical_error_rate(3, rate, 400000, 8, 4);
    CHECK(exact > 0.0);
    // Five standard errors.
    CHECK(std::abs(r.p_l - exact) < 5.0 * std::sqrt(exact * (1 - exact) / 400000.0));
    CHECK(logical_error_rate(3, rate, 20000, 8, 1).failures == logical_error_rate(3, rate, 20000, 8, 3).failures);
}

TEST_CASE("exponent fit recovers a synthetic decay") {
    std::vector<std::pair<int, double>> pts;
    for (int d : {3, 5, 7, 9}) {
        pts.emplace_back(d, 0.3 * std::exp(-0.8 * d));
    }
    CHECK(fit_pf_exponent(pts) == doctest::Approx(0.8));
    CHECK(rate_sweep_csv({}).rfind("distance,l,p,trials", 0) == 0);
}
