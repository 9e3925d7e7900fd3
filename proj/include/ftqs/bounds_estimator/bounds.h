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

#ifndef FTQS_BOUNDS_ESTIMATOR_BOUNDS_H
#define FTQS_BOUNDS_ESTIMATOR_BOUNDS_H

#include <string>
#include <string_view>
#include <vector>

#include "ftqs/bounds_estimator/formula.h"

namespace ftqs {

/// Problem-size parameters and the O(1) factors the asymptotic formulas
/// hide. Every unnamed constant defaults to 1. "ln" is the natural log.
struct ScalingParams {
    double n = 2.0;
    double k = 2.0;
    /// Block-size constant: l = ceil(r ln(n)^2).
    double r = 1.0;
    /// Minimal walk length constant: L_m = ceil(alpha ln n).
    double alpha = 1.0;
    double d_total = 6.0;
    double C = 1.0;
    double d = 3.0;
    double z = 1.0;
    double gamma = 1.0;
    double lambda = 1.0;
    /// Named O(1) factors used by the overhead reports; missing names are 1.
    FormulaVars constants;

    double constant(std::string_view name) const;
};

/// Constant names read by overhead_4d / overhead_3d.
std::vector<std::string> overhead_constant_names(bool three_d);

struct ChooseLResult {
    long long l = 0;
    /// sqrt(l) > (1 + delta) ln(k n), i.e. e^{sqrt l} > (k n)^{1 + delta}.
    bool degree_ok = false;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
};

/// l = ceil(r ln(n)^2) plus the numeric degree check. Throws
/// std::invalid_argument for n < 2 or non-positive r, k.
ChooseLResult choose_l(double n, double k, double r, double delta = 0.1);

/// 2 (1 - (1 - q)^count) and its linearization 2 count q.
struct L1Bound {
    double exact = 0.0;
    double linearized = 0.0;
};

L1Bound decode_l1_bound(double count, double q);
/// q = e^{-c sqrt(l)}, count = k n.
L1Bound appendix_a_l1_bound(double n, double k, double l, double c);

struct L1Chain {
    double decode = 0.0;
    double fidelity = 0.0;
    double total = 0.0;
    /// First-order upper bounds: 2 count q and 2 sqrt(2 num_T eps).
    double decode_linearized = 0.0;
    double fidelity_linearized = 0.0;
    double total_linearized = 0.0;
};

/// decode = 2 (1 - (1 - e^{-c sqrt l})^{num_logical}),
/// fidelity = 2 sqrt(1 - (1 - eps_out)^{2 num_T}). Throws
/// std::invalid_argument unless 0 <= eps_out < 1.
L1Chain appendix_b_l1_chain(double n, double l, double c, double eps_out, double num_T, double num_logical);

struct SawBound {
    /// sqrt(100 q).
    double ratio = 0.0;
    /// num_sites * sum_{L = L_m}^{L_max} 6 5^{L-1} (4q)^{L/2}.
    double exact = 0.0;
    /// Same sum continued to infinity.
    double tail = 0.0;
    /// num_sites (6/5) (100 q)^{L_m / 2}: the leading term alone.
    double coarse = 0.0;
    /// 1 / (1 - ratio); exact <= coarse * range_factor.
    double range_factor = 0.0;
};

/// L_max = 0 means an unbounded sum. Throws std::domain_error when
/// 100 q >= 1 and std::invalid_argument for L_m < 1 or q < 0.
SawBound saw_failure_bound(double q, long long L_m, double num_sites, long long L_max = 0);

enum class ThresholdMode { kPowerLaw, kFourTimesPowerLaw };

struct ThresholdResult {
    double p = 0.0;
    double ln_p = 0.0;
    /// ln(0.01) 4^{d+1}: the crude estimate with a positive exponent of 4.
    double ln_p_crude = 0.0;
    /// ln(0.01) 4^{-d-1}: the same estimate with the exponent's sign flipped.
    double ln_p_crude_inverted = 0.0;
};

/// p = q^{4^{d+1}} or (q / 4)^{4^{d+1}}. Throws std::invalid_argument unless
/// 0 < q < 1 and d_total >= 0.
ThresholdResult threshold_backsolve(double q_target, double d_total, ThresholdMode mode);
ThresholdMode parse_threshold_mode(std::string_view name);

struct LmResult {
    double alpha = 0.0;
    long long L_m = 0;
};

/// alpha = (poly_degree + 1) / 0.06, L_m = ceil(alpha ln n).
LmResult lm_for_target(double n, double poly_degree);

struct ReportEntry {
    std::string name;
    std::string formula;
    double value = 0.0;
};

/// Overhead ledger. Each entry's formula is evaluated with the variables
/// (parameters, constants and every earlier entry by name), so re-running
/// eval_formula on the printed strings reproduces the values exactly.
struct ResourceReport {
    std::string mode;
    FormulaVars params;
    FormulaVars constants;
    std::vector<ReportEntry> entries;
    /// Names of the logical-block entries summed into total_logical.
    std::vector<std::string> blocks;

    double value(std::string_view name) const;
    /// Replays every formula; returns the first mismatching entry name, or
    /// an empty string when all values reproduce bit for bit.
    std::string reevaluate() const;
    std::string to_json_text() const;
};

/// 4D ledger: C1 inputs 2 c_in n^3 ln(n)^2, C_R ancillas c_anc n^5 ln n,
/// C2 outputs 2 c_out n^2, l = ceil(r ln(n)^2), per logical l + c_zero l^{3/2}.
ResourceReport overhead_4d(const ScalingParams &params);
/// 3D ledger with lambda = c_lambda ceil(log2 n) and 72 lambda^3 physical
/// qubits per logical qubit.
ResourceReport overhead_3d(const ScalingParams &params);

}  // namespace ftqs

#endif
