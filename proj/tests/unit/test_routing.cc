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

#include <set>
#include <tuple>

#include "dense_oracle.h"
#include "doctest.h"
#include "ftqs/common/rng.h"
#include "ftqs/routing/routing.h"

using namespace ftqs;

namespace {

std::vector<bool> flags_from(const std::string &s) {
    std::vector<bool> f;
    for (char c : s) {
        f.push_back(c == '1');
    }
    return f;
}

void apply1(oracle::Vec &v, size_t q, const oracle::M2 &m) {
    const size_t bit = size_t(1) << q;
    for (size_t i = 0; i < v.size(); i++) {
        if (!(i & bit)) {
            oracle::C a = v[i], b = v[i | bit];
            v[i] = m[0] * a + m[1] * b;
            v[i | bit] = m[2] * a + m[3] * b;
        }
    }
}

oracle::M2 random_qubit_prep(Rng &rng) {
    // U = Rz(phi) Ry(theta), applied to |0>.
    double th = M_PI * uniform01(rng), ph = 2 * M_PI * uniform01(rng);
    oracle::C a = std::cos(th / 2), b = std::polar(std::sin(th / 2), ph);
    return {a, -std::conj(b), b, std::conj(a)};
}

}  // namespace

TEST_CASE("planner output is valid for every flag pattern") {
    int plans = 0;
    for (int p = 1; p <= 6; p++) {
        for (uint32_t mask = 0; mask < (1u << p); mask++) {
            std::vector<bool> flags;
            int set = 0;
            for (int r = 0; r < p; r++) {
                flags.push_back((mask >> r) & 1);
                set += (mask >> r) & 1;
            }
            for (int m = 0; m <= set; m++) {
                RoutingPlan plan = plan_routes(p, m, flags);
                std::string why;
                CHECK_MESSAGE(verify_plan(plan, &why), why);
                CHECK(verify_disjoint(plan));
                // First m flagged candidates, in order.
                std::vector<int> want;
                for (int r = 0; r < p && int(want.size()) < m; r++) {
                    if (flags[size_t(r)]) {
                        want.push_back(r);
                    }
                }
                CHECK(plan.sources == want);
                plans++;
            }
        }
    }
    CHECK(plans > 400);
    CHECK_THROWS_AS(plan_routes(3, 2, flags_from("100")), std::invalid_argument);
    CHECK_THROWS_AS(plan_routes(3, 1, flags_from("10")), std::invalid_argument);
}

TEST_CASE("measurement pattern marks paths, outputs and sources") {
    RoutingPlan plan = plan_routes(7, 2, flags_from("0100100"));
    auto pat = measurement_pattern(plan);
    CHECK(pat.size() == size_t(plan.grid.num_grid()));
    CHECK(std::count(pat.begin(), pat.end(), 'O') == 2);
    size_t on_paths = 0;
    for (const auto &path : plan.paths) {
        on_paths += path.size();
    }
    CHECK(size_t(std::count(pat.begin(), pat.end(), 'X')) == on_paths - 2);
    auto src = source_pattern(plan);
    CHECK(std::string(src.begin(), src.end()) == "ZXZZXZZ");
    std::string text = plan.to_text();
    CHECK(text.find("path 0") != std::string::npos);
    CHECK(text.find("path 1") != std::string::npos);
}

TEST_CASE("stabilizer routing returns the inputs on random branches") {
    Rng rng(51);
    for (auto [p, m, flags] : {std::tuple{1, 1, "1"}, std::tuple{4, 2, "1010"}, std::tuple{7, 2, "0100100"},
                               std::tuple{5, 3, "11101"}}) {
        RoutingPlan plan = plan_routes(p, m, flags_from(flags));
        for (int b = 0; b < 200; b++) {
            std::vector<std::string> inputs;
            for (int i = 0; i < m; i++) {
                inputs.push_back(std::string(rng() % 2 ? "+" : "-") + "XYZ"[rng() % 3]);
            }
            RoutingResult r = simulate_routing(plan, inputs, rng);
            CHECK(r.all_matched());
        }
    }
}

TEST_CASE("stabilizer routing detects an injected fault") {
    RoutingPlan plan = plan_routes(1, 1, flags_from("1"));
    RoutingOptions opts;
    PauliString err(static_cast<size_t>(plan.grid.num_qubits()));
    err.set(size_t(plan.grid.source_qubit(0)), 'X');
    opts.input_error = err;
    Rng rng(52);
    RoutingResult r = simulate_routing(plan, {"+Z"}, rng, opts);
    CHECK_FALSE(r.all_matched());
}

TEST_CASE("byproduct corrections restore arbitrary states in every branch") {
    // Independent dense model: prepare, entangle, measure each qubit in its
    // pattern basis on every branch, then apply the library's correction.
    Rng rng(53);
    for (auto [p, flags] : {std::pair{1, "1"}, std::pair{2, "01"}, std::pair{2, "11"}}) {
        RoutingPlan plan = plan_routes(p, 1, flags_from(flags));
        const RoutingGrid &g = plan.grid;
        const size_t nq = size_t(g.num_qubits());
        REQUIRE(nq <= 10);
        auto pat = measurement_pattern(plan);
        auto src = source_pattern(plan);
        std::vector<oracle::M2> preps;
        oracle::Vec v(size_t(1) << nq, 0.0);
        v[0] = 1.0;
        for (size_t q = 0; q < nq; q++) {
            if (q < size_t(g.num_grid())) {
                apply1(v, q, oracle::h2());
            } else {
                preps.push_back(random_qubit_prep(rng));
                apply1(v, q, preps.back());
            }
        }
        for (auto [a, b] : g.edges()) {
            for (size_t i = 0; i < v.size(); i++) {
                if ((i >> a) & (i >> b) & 1) {
                    v[i] = -v[i];
                }
            }
        }
        const size_t target = size_t(g.index(g.target(0)));
        for (size_t q = 0; q < nq; q++) {
            char basis = q < size_t(g.num_grid()) ? pat[q] : src[q - size_t(g.num_grid())];
            if (basis == 'X') {
                apply1(v, q, oracle::h2());
            }
        }
        const oracle::M2 &prep = preps[size_t(plan.sources[0])];
        int branches = 0;
        for (size_t out = 0; out < (size_t(1) << nq); out++) {
            if ((out >> target) & 1) {
                continue;
            }
            oracle::C a0 = v[out], a1 = v[out | (size_t(1) << target)];
            double w = std::norm(a0) + std::norm(a1);
            if (w < 1e-14) {
                continue;
            }
            std::vector<uint8_t> outcomes(nq);
            for (size_t q = 0; q < nq; q++) {
                outcomes[q] = uint8_t((out >> q) & 1);
            }
            PauliString corr = byproduct_corrections(plan, outcomes)[0];
            oracle::M2 c = oracle::pauli2(corr.get(0));
            oracle::C b0 = c[0] * a0 + c[1] * a1, b1 = c[2] * a0 + c[3] * a1;
            // Input state is prep |0> = (prep[0], prep[2]).
            double fid = std::norm(std::conj(prep[0]) * b0 + std::conj(prep[2]) * b1) / w;
            CHECK(fid == doctest::Approx(1.0).epsilon(1e-9));
            branches++;
        }
        CHECK(branches > 0);
    }
}

TEST_CASE("library dense routing agrees for two routes") {
    Rng rng(54);
    RoutingPlan plan = plan_routes(2, 2, flags_from("11"));
    std::vector<Qubit1> inputs;
    for (int r = 0; r < 2; r++) {
        oracle::M2 u = random_qubit_prep(rng);
        inputs.push_back({u[0], u[2]});
    }
    for (int b = 0; b < 10; b++) {
        DenseRoutingResult r = simulate_routing_dense(plan, inputs, rng);
        for (double f : r.fidelity) {
            CHECK(f == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("qubit budget is enforced") {
    std::vector<bool> flags(40, true);
    RoutingPlan plan = plan_routes(40, 20, flags);
    RoutingOptions opts;
    opts.max_qubits = 100;
    Rng rng(55);
    CHECK_THROWS_AS(simulate_routing(plan, std::vector<std::string>(20, "+Z"), rng, opts), std::length_error);
    CHECK(stabilizer_qubit("+X")[0].real() == doctest::Approx(std::sqrt(0.5)));
}
