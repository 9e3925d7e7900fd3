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
#include <stdexcept>

#include "doctest.h"
#include "ftqs/bounds_estimator/bounds.h"
#include "ftqs/bounds_estimator/formula.h"
#include "ftqs/common/rng.h"

using namespace ftqs;

TEST_CASE("formula evaluator") {
    FormulaVars v = {{"n", 8.0}, {"r", 2.0}};
    CHECK(eval_formula("1 + 2*3", v) == 7.0);
    CHECK(eval_formula("2^3^2", v) == 512.0);
    CHECK(eval_formula("-2^2", v) == -4.0);
    CHECK(eval_formula("(1 + 2)*3", v) == 9.0);
    CHECK(eval_formula("ceil(r*ln(n)^2)", v) == std::ceil(2.0 * std::pow(std::log(8.0), 2)));
    CHECK(eval_formula("log2(n) + max(1, 3) - min(4, 2)", v) == 4.0);
    CHECK(eval_formula("1.5e3", v) == 1500.0);
    CHECK_THROWS(eval_formula("1 +", v));
    CHECK_THROWS(eval_formula("unknown_var", v));
    CHECK_THROWS(eval_formula("nofunc(1)", v));
}

TEST_CASE("block size and degree check") {
    CHECK(choose_l(std::exp(1.0), 1.0, 1.0).l == 1);
    ChooseLResult big = choose_l(1024, 1024, 4);
    CHECK(big.l == (long long)std::ceil(4 * std::pow(std::log(1024.0), 2)));
    CHECK(big.degree_ok == (big.lhs_log > big.rhs_log));
    CHECK_FALSE(choose_l(1024, 1024, 0.01).degree_ok);
    CHECK(choose_l(1e6, 1e6, 20).degree_ok);
    CHECK_THROWS_AS(choose_l(1.5, 1, 1), std::invalid_argument);
}

TEST_CASE("decode bound examples and Bernoulli direction") {
    CHECK(decode_l1_bound(100, 0.0).exact == 0.0);
    L1Bound one = decode_l1_bound(1, 0.01);
    CHECK(one.exact == doctest::Approx(0.02));
    CHECK(one.linearized == doctest::Approx(0.02));
    ChooseLResult l = choose_l(64, 64, 1);
    L1Bound b = appendix_a_l1_bound(64, 64, double(l.l), 1.0);
    CHECK(b.exact < b.linearized);
    Rng rng(61);
    for (int t = 0; t < 2000; t++) {
        double count = 1 + double(rng() % 100000);
        double q = std::pow(10.0, -8.0 * uniform01(rng));
        L1Bound r = decode_l1_bound(count, q);
        CHECK(r.exact <= r.linearized * (1 + 1e-12));
        CHECK(r.exact <= 2.0);
    }
}

TEST_CASE("two-term chain") {
    L1Chain zero = appendix_b_l1_chain(10, INFINITY, 1.0, 0.0, 100, 1000);
    CHECK(zero.total == 0.0);
    L1Chain one = appendix_b_l1_chain(10, INFINITY, 1.0, 1e-4, 1, 1);
    CHECK(one.fidelity == doctest::Approx(2 * std::sqrt(1 - std::pow(1 - 1e-4, 2))));
    CHECK(one.fidelity == doctest::Approx(2 * std::sqrt(2e-4)).epsilon(1e-3));
    // n = 100, eps_out = n^-4, num_T = n^2: 2 sqrt(2 n^2 n^-4) = 2 sqrt(2) / n.
    L1Chain c = appendix_b_l1_chain(100, 100, 1.0, 1e-8, 1e4, 1e4);
    CHECK(c.fidelity == doctest::Approx(2 * std::sqrt(2.0) / 100).epsilon(1e-3));
    CHECK(c.total == doctest::Approx(c.decode + c.fidelity));
    Rng rng(62);
    for (int t = 0; t < 1000; t++) {
        double eps = std::pow(10.0, -10 * uniform01(rng));
        L1Chain r = appendix_b_l1_chain(50, 10 + 100 * uniform01(rng), 1.0, eps, 1 + double(rng() % 1000),
                                        1 + double(rng() % 1000));
        CHECK(r.total <= r.total_linearized * (1 + 1e-12));
    }
    CHECK_THROWS_AS(appendix_b_l1_chain(10, 10, 1, 1.0, 1, 1), std::invalid_argument);
}

TEST_CASE("walk failure bound") {
    CHECK(saw_failure_bound(0.0, 5, 1000).exact == 0.0);
    SawBound s = saw_failure_bound(0.0075, 10, 1.0);
    CHECK(s.ratio == doctest::Approx(std::sqrt(0.75)));
    SawBound s2 = saw_failure_bound(0.0075, 12, 1.0);
    CHECK(s2.exact / s.exact == doctest::Approx(0.75));
    // Direct partial sum against the closed form.
    double direct = 0.0;
    for (int L = 10; L <= 30; L++) {
        direct += 6 * std::pow(5.0, L - 1) * std::pow(4 * 0.0075, L / 2.0);
    }
    CHECK(saw_failure_bound(0.0075, 10, 1.0, 30).exact == doctest::Approx(direct).epsilon(1e-12));
    Rng rng(63);
    for (int t = 0; t < 1000; t++) {
        double q = 0.0099 * uniform01(rng);
        long long lm = 1 + (long long)(rng() % 200);
        SawBound b = saw_failure_bound(q, lm, 1 + 1e6 * uniform01(rng), rng() % 2 ? 0 : lm + (long long)(rng() % 50));
        CHECK(b.exact <= b.coarse * b.range_factor * (1 + 1e-12));
        CHECK(b.exact <= b.tail * (1 + 1e-12));
    }
    CHECK_THROWS_AS(saw_failure_bound(0.01, 5, 1), std::domain_error);
}

TEST_CASE("walk length target keeps the failure below 1/n") {
    LmResult e = lm_for_target(std::exp(1.0), 0.0);
    CHECK(e.alpha == doctest::Approx(16.6667).epsilon(1e-4));
    CHECK(e.L_m == 17);
    for (double n : {1e2, 1e3, 1e4}) {
        LmResult lm = lm_for_target(n, 3.0);
        CHECK(saw_failure_bound(0.0075, lm.L_m, n * n * n).exact <= 1.0 / n);
    }
}

TEST_CASE("threshold back-solve") {
    CHECK(threshold_backsolve(0.5, 0, ThresholdMode::kPowerLaw).p == doctest::Approx(0.0625));
    double a = threshold_backsolve(0.0075, 6, ThresholdMode::kFourTimesPowerLaw).ln_p;
    CHECK(a == doctest::Approx(16384 * std::log(0.001875)));
    CHECK(a == doctest::Approx(-1.03e5).epsilon(0.01));
    double b = threshold_backsolve(0.01, 6, ThresholdMode::kPowerLaw).ln_p;
    CHECK(b == doctest::Approx(-7.5e4).epsilon(0.01));
    CHECK(parse_threshold_mode("power_law") == ThresholdMode::kPowerLaw);
    CHECK_THROWS(parse_threshold_mode("cubic"));
    CHECK_THROWS_AS(threshold_backsolve(1.5, 6, ThresholdMode::kPowerLaw), std::invalid_argument);
}

TEST_CASE("overhead reports replay and scale") {
    ScalingParams p;
    p.n = 2;
    ResourceReport r4 = overhead_4d(p);
    CHECK(r4.reevaluate().empty());
    CHECK(r4.value("C2") == 8.0);
    double lo = 1e300, hi = 0;
    for (double n = 8; n <= 1024; n *= 2) {
        p.n = n;
        ResourceReport r = overhead_4d(p);
        CHECK(r.reevaluate().empty());
        lo = std::min(lo, r.value("scaling_ratio"));
        hi = std::max(hi, r.value("scaling_ratio"));
    }
    CHECK(hi / lo < 2.0);

    ScalingParams zero;
    zero.n = 64;
    for (const auto &name : overhead_constant_names(false)) {
        zero.constants[name] = 0.0;
    }
    CHECK(overhead_4d(zero).value("physical_total") == 0.0);

    ScalingParams q;
    q.n = 256;
    CHECK(overhead_3d(q).value("per_logical") == 36864.0);
    double prev = 0.0;
    for (double n = 4; n <= 4096; n *= 2) {
        q.n = n;
        ResourceReport r = overhead_3d(q);
        CHECK(r.reevaluate().empty());
        CHECK(r.value("CRp_fraction") > prev);
        prev = r.value("CRp_fraction");
    }
    CHECK(overhead_4d(p).to_json_text().find("\"formula\"") != std::string::npos);
}

TEST_CASE("monotonicity of bounds") {
    double prev = 3.0;
    for (double l = 1; l <= 400; l += 7) {
        double b = appendix_a_l1_bound(32, 32, l, 1.0).exact;
        CHECK(b <= prev);
        prev = b;
    }
    prev = INFINITY;
    for (long long lm = 1; lm < 100; lm++) {
        double b = saw_failure_bound(0.005, lm, 1000).exact;
        CHECK(b < prev);
        prev = b;
    }
}
