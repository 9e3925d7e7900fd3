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

#include "ftqs/msd/zmsd.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ftqs/common/stats.h"
#include "json.hpp"

namespace ftqs {

namespace {

void check_regime(double eps, int d, double C) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::domain_error("input infidelity must lie in (0, 1)");
    }
    if (d < 2) {
        throw std::domain_error("block parameter d must be at least 2");
    }
    if (!(C > 0.0)) {
        throw std::domain_error("suppression constant C must be positive");
    }
    if (std::log(C) + d * std::log(eps) >= 0.0) {
        throw std::domain_error("C * eps^d >= 1: outside the suppression regime");
    }
}

// Relative slack for log-domain comparisons against a target.
constexpr double kLogTol = 1e-12;

}  // namespace

double epsilon_recursion(double eps, int d, int z, double C) {
    check_regime(eps, d, C);
    if (z < 0) {
        throw std::domain_error("layer count must be non-negative");
    }
    double e = eps;
    for (int i = 0; i < z; i++) {
        e = C * std::pow(e, d);
    }
    return e;
}

double log_epsilon_out(double eps, int d, int z, double C, SuppressionLaw law) {
    check_regime(eps, d, C);
    if (z < 0) {
        throw std::domain_error("layer count must be non-negative");
    }
    if (law == SuppressionLaw::kLeadingOrder) {
        if (z == 0) {
            return std::log(eps);
        }
        return std::pow(double(d), z - 1) * std::log(C) + std::pow(double(d), z) * std::log(eps);
    }
    double le = std::log(eps);
    for (int i = 0; i < z; i++) {
        le = std::log(C) + d * le;
    }
    return le;
}

double epsilon_closed_form(double eps, int d, int z, double C) {
    check_regime(eps, d, C);
    double dz = std::pow(double(d), z);
    return std::exp((dz - 1.0) / (d - 1.0) * std::log(C) + dz * std::log(eps));
}

double calibrated_epsilon(double gamma, double beta, double C, int d) {
    return std::exp(-gamma * beta * std::log(2.0)) / std::pow(C, 1.0 / d);
}

double success_probability_bound(double n_nmsd) {
    return std::exp2(-n_nmsd);
}

double success_probability_bound(const ZMsdPlan &plan) {
    return success_probability_bound(plan.n_nmsd);
}

ZMsdPlan plan_zmsd(double eps, double target_eps_out, int d, double n, const ZMsdOptions &opts) {
    check_regime(eps, d, opts.C);
    if (!(target_eps_out > 0.0) || target_eps_out >= eps) {
        throw std::invalid_argument("target output infidelity must lie in (0, eps)");
    }
    if (!(n >= 1.0)) {
        throw std::invalid_argument("problem size n must be at least 1");
    }
    const double log_target = std::log(target_eps_out);
    ZMsdPlan plan;
    plan.d = d;
    plan.eps_in = eps;
    int z = 1;
    for (;; z++) {
        if (z > opts.z_cap) {
            throw std::runtime_error("target unreachable within " + std::to_string(opts.z_cap) + " layers");
        }
        double le = log_epsilon_out(eps, d, z, opts.C, opts.law);
        if (le <= log_target + kLogTol * std::abs(log_target)) {
            plan.log_eps_out = le;
            break;
        }
    }
    plan.z = z;
    double N = std::pow(double(d), z - 1);
    if (N > 9.0e18) {
        throw std::runtime_error("layer-1 copy count overflows");
    }
    plan.N = uint64_t(std::llround(N));
    for (uint64_t c = plan.N;; c /= uint64_t(d)) {
        plan.copies_per_layer.push_back(c);
        if (c == 1) {
            break;
        }
    }
    const double ld = std::log(double(d));
    plan.n_c = (opts.c_compile * d * d * ld) * (opts.c_clifford * d * d) * (opts.c_nn * d);
    plan.n_T = d * plan.n_c;
    plan.n_nmsd = opts.nmsd_constant * std::pow(double(d), z);
    for (uint64_t c : plan.copies_per_layer) {
        plan.qubits_per_instance += double(c) * plan.n_T;
    }
    plan.eps_out = std::exp(plan.log_eps_out);
    plan.p_single = success_probability_bound(plan.n_nmsd);
    plan.target_successes = opts.target_successes ? opts.target_successes : uint64_t(std::ceil(n * n));
    if (plan.p_single >= 1e-12) {
        plan.M = copies_for_target(plan.p_single, plan.target_successes, opts.fail_budget).M;
    }
    return plan;
}

std::string ZMsdPlan::to_json_text() const {
    nlohmann::json j;
    j["d"] = d;
    j["z"] = z;
    j["N"] = N;
    j["copies_per_layer"] = copies_per_layer;
    j["n_c"] = n_c;
    j["n_T"] = n_T;
    j["n_NMSD"] = n_nmsd;
    j["qubits_per_instance"] = qubits_per_instance;
    j["eps_in"] = eps_in;
    j["eps_out"] = eps_out;
    j["log_eps_out"] = log_eps_out;
    j["p_single"] = p_single;
    j["target_successes"] = target_successes;
    j["M"] = M;
    j["formulas"] = {{"N", "d^(z-1)"},
                     {"n_c", "(c_compile d^2 ln d)(c_clifford d^2)(c_nn d)"},
                     {"n_T", "d n_c"},
                     {"n_NMSD", "nmsd_constant d^z"},
                     {"p_single", "2^(-n_NMSD)"}};
    return j.dump(2);
}

double binomial_lower_tail(uint64_t M, double p, uint64_t target) {
    if (target == 0) {
        return 0.0;
    }
    if (target > M) {
        return 1.0;
    }
    if (p >= 1.0) {
        return 0.0;
    }
    if (p <= 0.0) {
        return 1.0;
    }
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    double s = 0.0;
    for (uint64_t j = 0; j < target; j++) {
        s += std::exp(log_choose(double(M), double(j)) + double(j) * lp + double(M - j) * lq);
    }
    return std::min(1.0, s);
}

CopiesResult copies_for_target(double p_single, uint64_t target, double fail_budget) {
    if (!(p_single > 0.0 && p_single <= 1.0)) {
        throw std::invalid_argument("per-instance success probability must lie in (0, 1]");
    }
    if (target < 1) {
        throw std::invalid_argument("target must be at least 1");
    }
    CopiesResult r;
    if (p_single == 1.0) {
        r.M = target;
        r.exact_tail = 0.0;
    } else {
        auto ok = [&](uint64_t M) { return binomial_lower_tail(M, p_single, target) <= fail_budget; };
        uint64_t lo = target - 1;  // fails
        uint64_t hi = target;
        while (!ok(hi)) {
            lo = hi;
            if (hi > (uint64_t(1) << 62)) {
                throw std::runtime_error("copy count overflows");
            }
            hi *= 2;
        }
        while (hi - lo > 1) {
            uint64_t mid = lo + (hi - lo) / 2;
            (ok(mid) ? hi : lo) = mid;
        }
        r.M = hi;
        r.exact_tail = binomial_lower_tail(r.M, p_single, target);
    }
    r.log_analytic_bound = std::log(double(target)) + log_choose(double(r.M), double(target)) +
                           double(r.M) * std::log1p(-std::min(p_single, 1.0 - 1e-300));
    r.analytic_applicable = p_single <= 0.5 && r.M >= 2 * target;
    return r;
}

uint64_t n_noisy_inputs(double target_eps_out, double gamma) {
    if (!(target_eps_out > 0.0 && target_eps_out < 1.0)) {
        throw std::invalid_argument("target must lie in (0, 1)");
    }
    double v = std::pow(-std::log(target_eps_out), gamma);
    // Absorb rounding so exact integers (e.g. target = 1/e) are not bumped.
    return uint64_t(std::ceil(v - 1e-9 * std::max(1.0, v)));
}

YStateRequirements y_state_requirements(double n, double target_eps_prime, double gamma_y) {
    YStateRequirements r;
    r.n_y = n_noisy_inputs(target_eps_prime, gamma_y);
    r.p_s = std::exp2(-double(r.n_y));
    double log2n = std::log2(n);
    r.corrected_p_zmsd = std::exp(-std::log(n) + log2n * std::log1p(-target_eps_prime));
    r.n_large_enough = double(r.n_y) < log2n;
    return r;
}

}  // namespace ftqs
