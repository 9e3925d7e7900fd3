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

#include <cmath>

#include "dense_oracle.h"
#include "doctest.h"
#include "ftqs/common/rng.h"
#include "ftqs/msd/distill.h"
#include "ftqs/msd/zmsd.h"

using namespace ftqs;

namespace {

PauliString to_pauli(const ErrorPattern &e, int n) {
    PauliString p(static_cast<size_t>(n));
    for (int q = 0; q < n; q++) {
        bool x = (e.x >> q) & 1, z = (e.z >> q) & 1;
        p.set(size_t(q), x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I');
    }
    return p;
}

// Classification from commutation relations alone: accepted iff the error
// commutes with every check; the residual logical is read off from which
// logical operators it anticommutes with.
char reference_class(const MsdProtocolSpec &spec, const PauliString &e) {
    for (const auto &c : spec.checks) {
        if (!c.commutes(e)) {
            return '\0';
        }
    }
    bool flips_z = !spec.logical_z.commutes(e);  // X component
    bool flips_x = !spec.logical_x.commutes(e);  // Z component
    return flips_z && flips_x ? 'Y' : flips_z ? 'X' : flips_x ? 'Z' : 'I';
}

}  // namespace

TEST_CASE("builtin protocols are consistent") {
    for (const char *name : {"reed_muller_15", "steane_7", "15to1", "7to1"}) {
        MsdProtocolSpec s = MsdProtocolSpec::builtin(name);
        CHECK_NOTHROW(s.validate());
        MsdProtocolSpec back = MsdProtocolSpec::from_json_text(s.to_json_text());
        CHECK(back.to_json_text() == s.to_json_text());
    }
    CHECK(MsdProtocolSpec::reed_muller_15().num_qubits == 15);
    CHECK(MsdProtocolSpec::steane_7().magic == 'Y');
    CHECK_THROWS(MsdProtocolSpec::builtin("nope"));
}

TEST_CASE("pattern classification agrees with commutation relations") {
    Rng rng(41);
    for (const auto &spec : {MsdProtocolSpec::reed_muller_15(), MsdProtocolSpec::steane_7()}) {
        DistillationModel model(spec);
        for (int t = 0; t < 4000; t++) {
            ErrorPattern e = model.sample_weight(1 + int(rng() % 5), rng);
            char want = reference_class(spec, to_pauli(e, spec.num_qubits));
            CHECK(model.logical_class(e) == want);
            CHECK(model.classify(e).accepted == (want != '\0'));
        }
    }
}

TEST_CASE("low-weight errors never pass undetected with a logical fault") {
    for (const auto &spec : {MsdProtocolSpec::reed_muller_15(), MsdProtocolSpec::steane_7()}) {
        DistillationModel model(spec);
        const int n = spec.num_qubits;
        for (int a = 0; a < n; a++) {
            for (int b = a; b < n; b++) {
                for (int pa = 1; pa < 4; pa++) {
                    for (int pb = 1; pb < 4; pb++) {
                        ErrorPattern e;
                        auto put = [&](int q, int p) {
                            e.x ^= uint64_t(p & 1) << q;
                            e.z ^= uint64_t(p >> 1) << q;
                        };
                        put(a, pa);
                        if (b != a) {
                            put(b, pb);
                        }
                        char c = model.logical_class(e);
                        CHECK((c == '\0' || c == 'I'));
                    }
                }
            }
        }
    }
}

TEST_CASE("stratified and plain estimators agree") {
    MsdProtocolSpec rm = MsdProtocolSpec::reed_muller_15();
    DistillOptions strat, plain;
    plain.method = DistillMethod::kPlain;
    DistillResult a = simulate_distillation(rm, 0.06, 400000, 3, strat);
    DistillResult b = simulate_distillation(rm, 0.06, 400000, 4, plain);
    CHECK(std::abs(a.infidelity - b.infidelity) < 3.0 * (a.ci + b.ci) + 1e-12);
    CHECK(std::abs(a.accept_rate - b.accept_rate) < 0.01);
    CHECK_THROWS_AS(simulate_distillation(rm, 0.6, 10, 1), std::invalid_argument);
}

TEST_CASE("accept rate at small eps follows the undetected-error count") {
    // Every single-qubit error is detected, so 1 - accept = 15 eps + O(eps^2).
    MsdProtocolSpec rm = MsdProtocolSpec::reed_muller_15();
    DistillResult r = simulate_distillation(rm, 1e-3, 200000, 5);
    CHECK((1.0 - r.accept_rate) == doctest::Approx(15e-3).epsilon(0.05));
}

TEST_CASE("output infidelity falls at least cubically") {
    MsdProtocolSpec rm = MsdProtocolSpec::reed_muller_15();
    std::vector<double> xs = {0.002, 0.004, 0.008}, ys;
    for (size_t i = 0; i < xs.size(); i++) {
        ys.push_back(simulate_distillation(rm, xs[i], 200000, 10 + i).infidelity);
    }
    double slope = loglog_slope(xs, ys);
    CHECK(slope > 2.7);
    CHECK(slope < 3.3);
}

TEST_CASE("suppression recursion and closed form") {
    for (int z = 0; z <= 4; z++) {
        double r = epsilon_recursion(0.01, 3, z, 35.0);
        double c = epsilon_closed_form(0.01, 3, z, 35.0);
        CHECK(r == doctest::Approx(c).epsilon(1e-9));
        CHECK(log_epsilon_out(0.01, 3, z, 35.0) == doctest::Approx(std::log(r)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(epsilon_recursion(0.5, 3, 1, 35.0), std::domain_error);
}

TEST_CASE("plan picks the smallest sufficient layer count") {
    ZMsdOptions o;
    o.C = 35.0;
    ZMsdPlan p = plan_zmsd(0.01, 1e-12, 3, 16.0, o);
    CHECK(p.eps_out <= 1e-12);
    CHECK(epsilon_recursion(0.01, 3, p.z - 1, 35.0) > 1e-12);
    CHECK(p.copies_per_layer.size() == size_t(p.z));
    CHECK(p.target_successes == 256);
    CHECK(binomial_lower_tail(p.M, p.p_single, p.target_successes) <= o.fail_budget);
    CHECK_THROWS_AS(plan_zmsd(0.01, 0.02, 3, 16.0, o), std::invalid_argument);
}

TEST_CASE("binomial tail against direct summation") {
    for (uint64_t M : {10ull, 37ull, 200ull}) {
        for (double p : {0.1, 0.5, 0.9}) {
            for (uint64_t t : {1ull, 5ull, 9ull}) {
                double want = 0.0;
                for (uint64_t j = 0; j < t && j <= M; j++) {
                    want += oracle::binomial_pmf(int(M), int(j), p);
                }
                CHECK(binomial_lower_tail(M, p, t) == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("copies search is minimal") {
    CopiesResult c = copies_for_target(0.3, 20, 1e-6);
    CHECK(c.exact_tail <= 1e-6);
    CHECK(binomial_lower_tail(c.M - 1, 0.3, 20) > 1e-6);
    if (c.analytic_applicable) {
        CHECK(std::log(c.exact_tail) <= c.log_analytic_bound + 1e-9);
    }
    CHECK_THROWS_AS(copies_for_target(0.0, 5, 1e-6), std::invalid_argument);
}

TEST_CASE("noisy-input count and Y-state requirements") {
    CHECK(n_noisy_inputs(1e-10, 1.0) == uint64_t(std::ceil(std::log(1e10))));
    YStateRequirements y = y_state_requirements(1024.0, 1e-6);
    CHECK(y.n_y == uint64_t(std::ceil(std::pow(std::log(1e6), 1.77))));
    CHECK(y.corrected_p_zmsd == doctest::Approx(std::pow(1 - 1e-6, 10.0) / 1024.0));
    CHECK(success_probability_bound(3.0) == doctest::Approx(0.125));
}
