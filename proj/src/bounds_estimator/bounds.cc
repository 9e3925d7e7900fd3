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

#include "ftqs/bounds_estimator/bounds.h"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "json.hpp"

namespace ftqs {

namespace {

// ceil() that does not bump values sitting on an integer up to rounding.
long long ceil_tol(double v) {
    return (long long)std::ceil(v - 1e-9 * std::max(1.0, std::abs(v)));
}

}  // namespace

double ScalingParams::constant(std::string_view name) const {
    auto it = constants.find(name);
    return it == constants.end() ? 1.0 : it->second;
}

std::vector<std::string> overhead_constant_names(bool three_d) {
    if (three_d) {
        return {"c_lambda", "c1p", "c_mid", "c_rp", "c_cells"};
    }
    return {"c_in", "c_anc", "c_out", "c_zero"};
}

ChooseLResult choose_l(double n, double k, double r, double delta) {
    if (!(n >= 2.0)) {
        throw std::invalid_argument("choose_l needs n >= 2");
    }
    if (!(r > 0.0) || !(k > 0.0)) {
        throw std::invalid_argument("choose_l needs positive r and k");
    }
    ChooseLResult res;
    double ln = std::log(n);
    res.l = std::max(1LL, ceil_tol(r * ln * ln));
    res.lhs_log = std::sqrt(double(res.l));
    res.rhs_log = (1.0 + delta) * std::log(k * n);
    res.degree_ok = res.lhs_log > res.rhs_log;
    return res;
}

L1Bound decode_l1_bound(double count, double q) {
    if (!(q >= 0.0 && q <= 1.0) || !(count >= 0.0)) {
        throw std::invalid_argument("need 0 <= q <= 1 and count >= 0");
    }
    L1Bound b;
    // 1 - (1 - q)^count without cancellation.
    b.exact = q >= 1.0 ? (count > 0 ? 2.0 : 0.0) : -2.0 * std::expm1(count * std::log1p(-q));
    b.linearized = 2.0 * count * q;
    return b;
}

L1Bound appendix_a_l1_bound(double n, double k, double l, double c) {
    if (!(c > 0.0)) {
        throw std::invalid_argument("decay constant must be positive");
    }
    return decode_l1_bound(k * n, std::exp(-c * std::sqrt(l)));
}

L1Chain appendix_b_l1_chain(double n, double l, double c, double eps_out, double num_T, double num_logical) {
    (void)n;
    if (!(eps_out >= 0.0 && eps_out < 1.0)) {
        throw std::invalid_argument("eps_out must lie in [0, 1)");
    }
    L1Chain ch;
    L1Bound dec = decode_l1_bound(num_logical, std::isinf(l) ? 0.0 : std::exp(-c * std::sqrt(l)));
    ch.decode = dec.exact;
    ch.decode_linearized = dec.linearized;
    double one_minus_f2 = -std::expm1(2.0 * num_T * std::log1p(-eps_out));
    ch.fidelity = 2.0 * std::sqrt(std::max(0.0, one_minus_f2));
    ch.fidelity_linearized = 2.0 * std::sqrt(2.0 * num_T * eps_out);
    ch.total = ch.decode + ch.fidelity;
    ch.total_linearized = ch.decode_linearized + ch.fidelity_linearized;
    return ch;
}

SawBound saw_failure_bound(double q, long long L_m, double num_sites, long long L_max) {
    if (!(q >= 0.0)) {
        throw std::invalid_argument("noise rate must be non-negative");
    }
    if (L_m < 1) {
        throw std::invalid_argument("L_m must be at least 1");
    }
    if (L_max != 0 && L_max < L_m) {
        throw std::invalid_argument("L_max must be 0 (unbounded) or at least L_m");
    }
    if (100.0 * q >= 1.0) {
        throw std::domain_error("walk sum diverges: 100 q >= 1");
    }
    SawBound b;
    b.ratio = std::sqrt(100.0 * q);
    b.range_factor = 1.0 / (1.0 - b.ratio);
    // 6 5^{L-1} (4q)^{L/2} = (6/5) ratio^L.
    double lead = 1.2 * std::pow(b.ratio, double(L_m));
    b.coarse = num_sites * lead;
    b.tail = b.coarse * b.range_factor;
    if (L_max == 0) {
        b.exact = b.tail;
    } else {
        double terms = double(L_max - L_m + 1);
        b.exact = b.tail * -std::expm1(terms * std::log(b.ratio));
        if (b.ratio == 0.0) {
            b.exact = 0.0;
        }
    }
    return b;
}

ThresholdMode parse_threshold_mode(std::string_view name) {
    if (name == "power_law") {
        return ThresholdMode::kPowerLaw;
    }
    if (name == "four_times_power_law" || name == "four_times") {
        return ThresholdMode::kFourTimesPowerLaw;
    }
    throw std::invalid_argument("unknown threshold mode '" + std::string(name) + "'");
}

ThresholdResult threshold_backsolve(double q_target, double d_total, ThresholdMode mode) {
    if (!(q_target > 0.0 && q_target < 1.0)) {
        throw std::invalid_argument("q_target must lie in (0, 1)");
    }
    if (!(d_total >= 0.0)) {
        throw std::invalid_argument("depth must be non-negative");
    }
    ThresholdResult t;
    double power = std::pow(4.0, d_total + 1.0);
    double base = mode == ThresholdMode::kPowerLaw ? q_target : q_target / 4.0;
    t.ln_p = power * std::log(base);
    t.p = std::exp(t.ln_p);
    t.ln_p_crude = std::log(0.01) * power;
    t.ln_p_crude_inverted = std::log(0.01) / power;
    return t;
}

LmResult lm_for_target(double n, double poly_degree) {
    if (!(poly_degree >= 0.0)) {
        throw std::invalid_argument("polynomial degree must be non-negative");
    }
    if (!(n > 1.0)) {
        throw std::invalid_argument("n must exceed 1");
    }
    LmResult r;
    r.alpha = (poly_degree + 1.0) / 0.06;
    r.L_m = std::max(1LL, ceil_tol(r.alpha * std::log(n)));
    return r;
}

double ResourceReport::value(std::string_view name) const {
    for (const auto &e : entries) {
        if (e.name == name) {
            return e.value;
        }
    }
    throw std::out_of_range("no report entry '" + std::string(name) + "'");
}

namespace {

FormulaVars base_vars(const ResourceReport &rep) {
    FormulaVars v = rep.params;
    for (const auto &[k, x] : rep.constants) {
        v[k] = x;
    }
    return v;
}

void add_entry(ResourceReport &rep, FormulaVars &vars, std::string name, std::string formula) {
    double value = eval_formula(formula, vars);
    vars[name] = value;
    rep.entries.push_back({std::move(name), std::move(formula), value});
}

bool same_bits(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

std::string ResourceReport::reevaluate() const {
    FormulaVars vars = base_vars(*this);
    for (const auto &e : entries) {
        double v = eval_formula(e.formula, vars);
        if (!same_bits(v, e.value)) {
            return e.name;
        }
        vars[e.name] = v;
    }
    return {};
}

std::string ResourceReport::to_json_text() const {
    nlohmann::json j;
    j["mode"] = mode;
    j["log_base"] = "ln is natural log; log2 is base 2";
    j["params"] = nlohmann::json::object();
    for (const auto &[k, v] : params) {
        j["params"][k] = v;
    }
    j["constants"] = nlohmann::json::object();
    for (const auto &[k, v] : constants) {
        j["constants"][k] = v;
    }
    j["blocks"] = blocks;
    j["entries"] = nlohmann::json::array();
    for (const auto &e : entries) {
        j["entries"].push_back({{"name", e.name}, {"formula", e.formula}, {"value", e.value}});
    }
    return j.dump(2);
}

ResourceReport overhead_4d(const ScalingParams &params) {
    if (!(params.n >= 2.0)) {
        throw std::invalid_argument("overhead needs n >= 2");
    }
    ResourceReport rep;
    rep.mode = "4d";
    rep.params = {{"n", params.n}, {"r", params.r}};
    for (const auto &c : overhead_constant_names(false)) {
        rep.constants[c] = params.constant(c);
    }
    FormulaVars v = base_vars(rep);
    add_entry(rep, v, "l", "max(1, ceil(r*ln(n)^2))");
    add_entry(rep, v, "C1", "2*c_in*n^3*ln(n)^2");
    add_entry(rep, v, "CR", "c_anc*n^5*ln(n)");
    add_entry(rep, v, "C2", "2*c_out*n^2");
    add_entry(rep, v, "total_logical", "C1 + CR + C2");
    add_entry(rep, v, "per_logical", "l + c_zero*l^(3/2)");
    add_entry(rep, v, "physical_C1", "C1*per_logical");
    add_entry(rep, v, "physical_CR", "CR*per_logical");
    add_entry(rep, v, "physical_C2", "C2*per_logical");
    add_entry(rep, v, "physical_total", "physical_C1 + physical_CR + physical_C2");
    add_entry(rep, v, "scaling_ratio", "physical_total/(n^5*ln(n)^4)");
    rep.blocks = {"C1", "CR", "C2"};
    return rep;
}

ResourceReport overhead_3d(const ScalingParams &params) {
    if (!(params.n >= 2.0)) {
        throw std::invalid_argument("overhead needs n >= 2");
    }
    ResourceReport rep;
    rep.mode = "3d";
    rep.params = {{"n", params.n}};
    for (const auto &c : overhead_constant_names(true)) {
        rep.constants[c] = params.constant(c);
    }
    FormulaVars v = base_vars(rep);
    add_entry(rep, v, "lambda", "c_lambda*ceil(log2(n))");
    add_entry(rep, v, "per_logical", "4*18*lambda^3");
    add_entry(rep, v, "C1p", "c1p*n^6*ln(n)^3");
    add_entry(rep, v, "C_mid", "c_mid*n^9*ln(n)^3");
    add_entry(rep, v, "CRp", "c_rp*n^11*ln(n)^5");
    add_entry(rep, v, "total_logical", "C1p + C_mid + CRp");
    add_entry(rep, v, "physical_C1p", "c_cells*C1p*per_logical");
    add_entry(rep, v, "physical_C_mid", "c_cells*C_mid*per_logical");
    add_entry(rep, v, "physical_CRp", "c_cells*CRp*per_logical");
    add_entry(rep, v, "physical_total", "physical_C1p + physical_C_mid + physical_CRp");
    add_entry(rep, v, "CRp_fraction", "CRp/total_logical");
    rep.blocks = {"C1p", "C_mid", "CRp"};
    return rep;
}

}  // namespace ftqs
