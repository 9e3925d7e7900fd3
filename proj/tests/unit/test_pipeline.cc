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

#include "doctest.h"
#include "ftqs/common/rng.h"
#include "ftqs/pipeline/pipeline.h"

using namespace ftqs;

TEST_CASE("config JSON round trip and validation") {
    PipelineConfig c;
    c.n = 2;
    c.k = 3;
    c.arch = Architecture::k3D;
    c.p_f = 0.01;
    PipelineConfig back = PipelineConfig::from_json_text(c.to_json_text());
    CHECK(back.to_json_text() == c.to_json_text());
    CHECK_THROWS_AS(PipelineConfig::from_json_text("{\"n\": 1, \"bogus\": 2}"), std::invalid_argument);
    CHECK_THROWS_AS(PipelineConfig::from_json_text("{\"n\": 0}"), std::invalid_argument);
    CHECK_THROWS_AS(PipelineConfig::from_json_text("{\"distance\": 2}"), std::invalid_argument);
    CHECK_THROWS_AS(PipelineConfig::from_json_text("{\"p_phys\": 1.5}"), std::invalid_argument);
}

TEST_CASE("edge colouring is proper and uses at most max degree + 1 colours") {
    Rng rng(71);
    for (int t = 0; t < 200; t++) {
        int nv = 2 + int(rng() % 12);
        std::vector<std::pair<int, int>> edges;
        std::vector<int> deg(size_t(nv), 0);
        for (int a = 0; a < nv; a++) {
            for (int b = a + 1; b < nv; b++) {
                if (rng() % 3 == 0) {
                    edges.emplace_back(a, b);
                    deg[size_t(a)]++;
                    deg[size_t(b)]++;
                }
            }
        }
        auto colour = edge_colouring(nv, edges);
        CHECK(is_proper_edge_colouring(nv, edges, colour));
        int maxdeg = *std::max_element(deg.begin(), deg.end());
        for (int c : colour) {
            CHECK(c <= maxdeg);
        }
    }
    CHECK_FALSE(is_proper_edge_colouring(3, {{0, 1}, {1, 2}}, {0, 0}));
}

TEST_CASE("dephasing oracle equals outcome flips on T vertices") {
    PipelineConfig c;
    c.n = 1;
    c.k = 3;
    GraphSpec g = pipeline_graph(c);
    OutcomeDistribution d = exact_distribution(g);
    const double eps = 0.17;
    std::vector<size_t> tv;
    for (size_t v = 0; v < g.num_vertices(); v++) {
        if (g.vertices[v].role == MeasurementRole::XY_PI4) {
            tv.push_back(v);
        }
    }
    REQUIRE(!tv.empty());
    // A Z before the H readout flips that vertex's bit.
    std::vector<double> want(d.size(), 0.0);
    for (uint64_t mask = 0; mask < (uint64_t(1) << tv.size()); mask++) {
        uint64_t flip = 0;
        int w = 0;
        for (size_t i = 0; i < tv.size(); i++) {
            if ((mask >> i) & 1) {
                flip |= uint64_t(1) << tv[i];
                w++;
            }
        }
        double weight = std::pow(eps, w) * std::pow(1 - eps, double(tv.size()) - w);
        for (size_t b = 0; b < d.size(); b++) {
            want[b ^ flip] += weight * d.probs[b];
        }
    }
    OutcomeDistribution got = dephased_distribution(g, eps);
    for (size_t b = 0; b < d.size(); b++) {
        CHECK(got.probs[b] == doctest::Approx(want[b]).epsilon(1e-10));
    }
    CHECK(l1_distance(dephased_distribution(g, 0.0), d) < 1e-12);
}

TEST_CASE("single runs are reproducible and audited") {
    PipelineConfig c;
    c.n = 1;
    c.k = 3;
    c.seed = 9;
    RunRecord a = run_exact_small(c, 4), b = run_exact_small(c, 4);
    CHECK(a.s == b.s);
    CHECK(a.x == b.x);
    CHECK(a.feedback_layers == 1);
    CHECK(a.routing_verified);
    CHECK(a.t_successes >= a.t_needed);
    c.arch = Architecture::k3D;
    CHECK(run_exact_small(c, 0).feedback_layers == 2);
    c.arch = Architecture::k4D;
    c.t_protocol = "none";
    CHECK(run_exact_small(c, 0).feedback_layers == 0);
}

TEST_CASE("distillation shortfall aborts a run") {
    PipelineConfig c;
    c.n = 1;
    c.k = 3;
    c.eps_T = 0.3;
    c.t_candidates = 0;
    int aborted = 0;
    for (uint64_t i = 0; i < 30; i++) {
        try {
            run_exact_small(c, i);
        } catch (const MsdShortfall &e) {
            CHECK(e.successes < e.needed);
            aborted++;
        }
    }
    CHECK(aborted > 0);
}

TEST_CASE("noiseless batch reproduces the exact table") {
    PipelineConfig c;
    c.n = 1;
    c.k = 3;
    ExactSmallBatch b = run_exact_small_batch(c, 6000);
    CHECK(b.aborted == 0);
    CHECK(b.l1_decoded < b.envelope);
    CHECK(b.l1_decoded == doctest::Approx(b.l1_raw));
    CHECK(interaction_audit(b.records) == 1);
}

TEST_CASE("error model stays under its bound") {
    PipelineConfig c;
    c.n = 1;
    c.k = 3;
    c.mode = PipelineMode::kErrorModel;
    c.p_f = 0.02;
    c.eps_out = 0.0;
    ErrorModelResult r = run_error_model(c, 20000);
    CHECK(r.l1 <= r.bound.total + r.envelope);
    c.p_f.reset();
    CHECK_THROWS_AS(run_error_model(c, 100), std::invalid_argument);
}

TEST_CASE("depth audit is independent of problem size") {
    int base = -1;
    for (int n = 1; n <= 3; n++) {
        for (int k = 2; k <= 4; k++) {
            PipelineConfig c;
            c.n = n;
            c.k = k;
            DepthAudit a = quantum_depth_audit(c);
            CHECK(a.colouring_valid);
            CHECK(a.graph_colours_used <= a.graph_cz_slots);
            if (base < 0) {
                base = a.total;
            }
            CHECK(a.total == base);
        }
    }
    CHECK(sampling_envelope(16, 1600) == doctest::Approx(0.4));
    CHECK(interaction_audit({}) == -1);
}
