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

#ifndef FTQS_MSD_ZMSD_H
#define FTQS_MSD_ZMSD_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ftqs {

/// Per-layer suppression rule. kExactRecursion iterates eps <- C eps^d;
/// kLeadingOrder uses C^{d^{z-1}} eps^{d^z} directly.
enum class SuppressionLaw { kExactRecursion, kLeadingOrder };

/// Iterates eps <- C * eps^d exactly z times. Throws std::domain_error
/// unless 0 < eps < 1, C > 0, d >= 2 and C * eps^d < 1.
double epsilon_recursion(double eps, int d, int z, double C);
/// Natural log of the z-layer output, computed without underflow.
double log_epsilon_out(double eps, int d, int z, double C, SuppressionLaw law = SuppressionLaw::kExactRecursion);
/// C^{(d^z - 1)/(d - 1)} * eps^{d^z}.
double epsilon_closed_form(double eps, int d, int z, double C);

struct ZMsdOptions {
    double C = 1.0;
    SuppressionLaw law = SuppressionLaw::kExactRecursion;
    /// n_NMSD = nmsd_constant * d^z.
    double nmsd_constant = 1.0;
    /// Factors of n_c = (c_compile d^2 ln d) (c_clifford d^2) (c_nn d).
    double c_compile = 1.0;
    double c_clifford = 1.0;
    double c_nn = 1.0;
    /// Successful instances needed; 0 means n^2.
    uint64_t target_successes = 0;
    double fail_budget = 1e-9;
    int z_cap = 64;
};

struct ZMsdPlan {
    int d = 0;
    int z = 0;
    uint64_t N = 0;
    std::vector<uint64_t> copies_per_layer;
    double n_c = 0.0;
    double n_T = 0.0;
    double n_nmsd = 0.0;
    /// Physical-qubit count of one instance: sum over layers of copies * n_T.
    double qubits_per_instance = 0.0;
    double eps_in = 0.0;
    double eps_out = 0.0;
    double log_eps_out = 0.0;
    double p_single = 0.0;
    uint64_t target_successes = 0;
    /// Parallel instances; 0 when p_single is too small to plan for.
    uint64_t M = 0;
    std::string to_json_text() const;
};

/// Smallest z whose output meets target_eps_out. Throws std::domain_error
/// outside the suppression regime, std::invalid_argument if
/// target_eps_out >= eps, std::runtime_error if z would exceed z_cap.
ZMsdPlan plan_zmsd(double eps, double target_eps_out, int d, double n, const ZMsdOptions &opts = {});

/// Input infidelity 2^{-gamma beta} / C^{1/d} at which n_NMSD = log2 n
/// under the leading-order law with n_NMSD = gamma d^z.
double calibrated_epsilon(double gamma, double beta, double C, int d);

/// 2^{-n_NMSD}.
double success_probability_bound(double n_nmsd);
double success_probability_bound(const ZMsdPlan &plan);

struct CopiesResult {
    uint64_t M = 0;
    /// Pr(Binomial(M, p) < target), summed term by term.
    double exact_tail = 0.0;
    /// ln of target * C(M, target) * (1 - p)^M. The chain is valid when
    /// p <= 1/2 and M >= 2 target.
    double log_analytic_bound = 0.0;
    bool analytic_applicable = false;
};

/// Pr(Binomial(M, p) < target).
double binomial_lower_tail(uint64_t M, double p, uint64_t target);

/// Smallest M with Pr(successes < target) <= fail_budget. Throws
/// std::invalid_argument if p_single is not in (0, 1] or target is 0.
CopiesResult copies_for_target(double p_single, uint64_t target, double fail_budget);

/// ceil(ln(1/target)^gamma).
uint64_t n_noisy_inputs(double target_eps_out, double gamma);

struct YStateRequirements {
    uint64_t n_y = 0;
    double p_s = 0.0;
    /// (1/n) (1 - eps')^{log2 n}.
    double corrected_p_zmsd = 0.0;
    /// N_Y < log2 n.
    bool n_large_enough = false;
};

YStateRequirements y_state_requirements(double n, double target_eps_prime, double gamma_y = 1.77);

}  // namespace ftqs

#endif
