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

#include "ftqs/routing/routing.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ftqs/pauli_core/tableau.h"

namespace ftqs {

RoutingGrid::RoutingGrid(int p_, int m_) : p(p_), m(m_) {
    if (m < 0 || p < m) {
        throw std::invalid_argument("routing needs 0 <= m <= p");
    }
    rows = p > 0 ? 2 * p - 1 : 0;
    cols = 2 * m;
}

std::vector<std::pair<int, int>> RoutingGrid::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) {
            if (c + 1 < cols) {
                e.emplace_back(index({r, c}), index({r, c + 1}));
            }
            if (r + 1 < rows) {
                e.emplace_back(index({r, c}), index({r + 1, c}));
            }
        }
    }
    if (cols > 0) {
        for (int r = 0; r < p; r++) {
            e.emplace_back(index(entry(r)), source_qubit(r));
        }
    }
    return e;
}

namespace {

bool adjacent(GridCoord a, GridCoord b) {
    return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

}  // namespace

RoutingPlan plan_routes(int p, int m, const std::vector<bool> &success_flags) {
    if (m < 0 || p < m) {
        throw std::invalid_argument("routing needs 0 <= m <= p");
    }
    if (int(success_flags.size()) != p) {
        throw std::invalid_argument("expected one success flag per candidate");
    }
    RoutingPlan plan;
    plan.grid = RoutingGrid(p, m);
    for (int r = 0; r < p && int(plan.sources.size()) < m; r++) {
        if (success_flags[r]) {
            plan.sources.push_back(r);
        }
    }
    if (int(plan.sources.size()) < m) {
        throw std::invalid_argument("fewer than m successful candidates");
    }
    // Route i: along row 2 r_i to column 2i, up to row 2i, then right to the
    // exit. Sources are taken in order so r_i >= i and the legs never meet.
    for (int i = 0; i < m; i++) {
        const int r = plan.sources[i];
        std::vector<GridCoord> path;
        for (int c = 0; c <= 2 * i; c++) {
            path.push_back({2 * r, c});
        }
        for (int row = 2 * r - 1; row >= 2 * i; row--) {
            path.push_back({row, 2 * i});
        }
        for (int c = 2 * i + 1; c < plan.grid.cols; c++) {
            path.push_back({2 * i, c});
        }
        plan.paths.push_back(std::move(path));
    }
    return plan;
}

bool verify_disjoint(const RoutingPlan &plan) {
    const RoutingGrid &g = plan.grid;
    std::vector<char> used(size_t(std::max(0, g.num_grid())), 0);
    for (const auto &path : plan.paths) {
        if (path.empty()) {
            return false;
        }
        for (size_t k = 0; k < path.size(); k++) {
            if (!g.contains(path[k])) {
                return false;
            }
            char &u = used[size_t(g.index(path[k]))];
            if (u) {
                return false;
            }
            u = 1;
            if (k > 0 && !adjacent(path[k - 1], path[k])) {
                return false;
            }
        }
    }
    return true;
}

bool verify_plan(const RoutingPlan &plan, std::string *why) {
    auto fail = [&](const std::string &msg) {
        if (why) {
            *why = msg;
        }
        return false;
    };
    const RoutingGrid &g = plan.grid;
    if (g.cols != 2 * g.m || g.m < 0 || g.p < g.m || g.rows != (g.p > 0 ? 2 * g.p - 1 : 0)) {
        return fail("grid shape inconsistent with p and m");
    }
    if (int(plan.paths.size()) != g.m || int(plan.sources.size()) != g.m) {
        return fail("expected exactly m routes");
    }
    if (!verify_disjoint(plan)) {
        return fail("routes overlap or are not grid-connected");
    }
    std::vector<int> owner(size_t(g.num_grid()), -1);
    std::vector<int> pos(size_t(g.num_grid()), -1);
    std::vector<char> seen_source(size_t(g.p), 0);
    for (int i = 0; i < g.m; i++) {
        int r = plan.sources[size_t(i)];
        if (r < 0 || r >= g.p || seen_source[size_t(r)]) {
            return fail("sources must be distinct candidates");
        }
        seen_source[size_t(r)] = 1;
        const auto &path = plan.paths[size_t(i)];
        if (!(path.front() == g.entry(r)) || !(path.back() == g.target(i))) {
            return fail("route " + std::to_string(i) + " has wrong endpoints");
        }
        for (size_t k = 0; k < path.size(); k++) {
            owner[size_t(g.index(path[k]))] = i;
            pos[size_t(g.index(path[k]))] = int(k);
        }
    }
    for (auto [a, b] : g.edges()) {
        if (a >= g.num_grid() || b >= g.num_grid()) {
            continue;
        }
        int oa = owner[size_t(a)], ob = owner[size_t(b)];
        if (oa < 0 || ob < 0) {
            continue;
        }
        if (oa != ob) {
            return fail("routes " + std::to_string(oa) + " and " + std::to_string(ob) + " touch");
        }
        if (std::abs(pos[size_t(a)] - pos[size_t(b)]) != 1) {
            return fail("route " + std::to_string(oa) + " has a chord");
        }
    }
    // An unrouted source hanging off a route is harmless (it is Z-measured),
    // but a routed source must not touch another route.
    return true;
}

std::vector<char> measurement_pattern(const RoutingPlan &plan) {
    const RoutingGrid &g = plan.grid;
    std::vector<char> pat(size_t(g.num_grid()), 'Z');
    for (const auto &path : plan.paths) {
        for (size_t k = 0; k < path.size(); k++) {
            pat[size_t(g.index(path[k]))] = k + 1 == path.size() ? 'O' : 'X';
        }
    }
    return pat;
}

std::vector<char> source_pattern(const RoutingPlan &plan) {
    std::vector<char> pat(size_t(plan.grid.p), 'Z');
    for (int r : plan.sources) {
        pat[size_t(r)] = 'X';
    }
    return pat;
}

std::string RoutingPlan::to_text() const {
    std::ostringstream os;
    os << "routing p=" << grid.p << " m=" << grid.m << " rows=" << grid.rows << " cols=" << grid.cols << "\n";
    for (size_t i = 0; i < paths.size(); i++) {
        os << "path " << i << " source=" << sources[i] << ":";
        for (const auto &v : paths[i]) {
            os << " (" << v.row << "," << v.col << ")";
        }
        os << "\n";
    }
    auto pat = measurement_pattern(*this);
    os << "pattern\n";
    for (int r = 0; r < grid.rows; r++) {
        os << std::string(pat.begin() + r * grid.cols, pat.begin() + (r + 1) * grid.cols) << "\n";
    }
    auto src = source_pattern(*this);
    os << "sources " << std::string(src.begin(), src.end()) << "\n";
    return os.str();
}

std::vector<PauliString> byproduct_corrections(const RoutingPlan &plan, const std::vector<uint8_t> &outcomes) {
    const RoutingGrid &g = plan.grid;
    if (int(outcomes.size()) != g.num_qubits()) {
        throw std::invalid_argument("expected one outcome per qubit");
    }
    auto pat = measurement_pattern(plan);
    auto src = source_pattern(plan);
    auto removed = [&](int q) {
        return q < g.num_grid() ? pat[size_t(q)] == 'Z' : src[size_t(q - g.num_grid())] == 'Z';
    };
    // Parity of Z-measured outcomes in each qubit's neighbourhood.
    std::vector<uint8_t> zpar(size_t(g.num_qubits()), 0);
    for (auto [a, b] : g.edges()) {
        if (removed(a)) {
            zpar[size_t(b)] ^= outcomes[size_t(a)] & 1;
        }
        if (removed(b)) {
            zpar[size_t(a)] ^= outcomes[size_t(b)] & 1;
        }
    }
    std::vector<PauliString> out;
    for (size_t i = 0; i < plan.paths.size(); i++) {
        std::vector<int> chain{g.source_qubit(plan.sources[i])};
        for (const auto &v : plan.paths[i]) {
            chain.push_back(g.index(v));
        }
        // Frame on the current carrier as (x, z). A teleport step with X
        // outcome s maps F -> X^s H (Z^zpar F) H.
        uint8_t fx = 0, fz = 0;
        for (size_t k = 0; k + 1 < chain.size(); k++) {
            fz ^= zpar[size_t(chain[k])];
            std::swap(fx, fz);
            fx ^= outcomes[size_t(chain[k])] & 1;
        }
        fz ^= zpar[size_t(chain.back())];
        // Chain length is even on this layout, so the accumulated Hadamards
        // cancel and the frame is the whole correction.
        PauliString c(static_cast<size_t>(1));
        c.xs[0] = fx;
        c.zs[0] = fz;
        out.push_back(c);
    }
    return out;
}

namespace {

struct SignedPauli {
    bool negative = false;
    char axis = 'Z';
};

SignedPauli parse_single(const std::string &text) {
    SignedPauli s;
    std::string t = text;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        s.negative = t[0] == '-';
        t = t.substr(1);
    }
    if (t.size() != 1 || (t[0] != 'X' && t[0] != 'Y' && t[0] != 'Z')) {
        throw std::invalid_argument("expected a single-qubit stabilizer like +Z or -X, got '" + text + "'");
    }
    s.axis = t[0];
    return s;
}

std::vector<std::string> expand_inputs(const RoutingPlan &plan, const std::vector<std::string> &inputs) {
    const RoutingGrid &g = plan.grid;
    if (int(inputs.size()) == g.p) {
        return inputs;
    }
    if (int(inputs.size()) == g.m) {
        std::vector<std::string> all(size_t(g.p), "+X");
        for (int i = 0; i < g.m; i++) {
            all[size_t(plan.sources[size_t(i)])] = inputs[size_t(i)];
        }
        return all;
    }
    throw std::invalid_argument("expected one input state per candidate or per route");
}

int tableau_prepare(StabilizerState &st, size_t q, const SignedPauli &s) {
    if (s.axis == 'X') {
        st.apply(Gate{GateKind::H, q});
    } else if (s.axis == 'Y') {
        st.apply(Gate{GateKind::H, q});
        st.apply(Gate{GateKind::S, q});
    }
    if (s.negative) {
        st.apply(Gate{s.axis == 'Z' ? GateKind::X : GateKind::Z, q});
    }
    return 0;
}

}  // namespace

Qubit1 stabilizer_qubit(const std::string &text) {
    SignedPauli s = parse_single(text);
    const double h = 1.0 / std::sqrt(2.0);
    const double sign = s.negative ? -1.0 : 1.0;
    switch (s.axis) {
        case 'X':
            return {h, sign * h};
        case 'Y':
            return {h, cplx(0.0, sign * h)};
        default:
            return s.negative ? Qubit1{0.0, 1.0} : Qubit1{1.0, 0.0};
    }
}

bool RoutingResult::all_matched() const {
    for (bool b : matched) {
        if (!b) {
            return false;
        }
    }
    return true;
}

RoutingResult simulate_routing(const RoutingPlan &plan, const std::vector<std::string> &inputs, Rng &rng,
                               const RoutingOptions &opts) {
    std::string why;
    if (!verify_plan(plan, &why)) {
        throw std::invalid_argument("invalid routing plan: " + why);
    }
    const RoutingGrid &g = plan.grid;
    const int n = g.num_qubits();
    if (n > opts.max_qubits) {
        throw std::length_error("routing needs " + std::to_string(n) + " qubits, budget is " +
                                std::to_string(opts.max_qubits));
    }
    if (opts.forced && int(opts.forced->size()) != n) {
        throw std::invalid_argument("forced outcomes must cover every qubit");
    }
    std::vector<std::string> in = expand_inputs(plan, inputs);
    std::vector<SignedPauli> parsed;
    for (const auto &t : in) {
        parsed.push_back(parse_single(t));
    }

    const size_t N = size_t(n);
    StabilizerState st(N);
    for (int q = 0; q < g.num_grid(); q++) {
        st.apply(Gate{GateKind::H, size_t(q)});
    }
    for (int r = 0; r < g.p; r++) {
        tableau_prepare(st, size_t(g.source_qubit(r)), parsed[size_t(r)]);
    }
    if (opts.input_error) {
        if (opts.input_error->num_qubits() != N) {
            throw std::invalid_argument("input error must act on every qubit");
        }
        st.apply_pauli(*opts.input_error);
    }
    for (auto [a, b] : g.edges()) {
        st.apply(Gate{GateKind::CZ, size_t(a), size_t(b)});
    }

    auto pat = measurement_pattern(plan);
    auto src = source_pattern(plan);
    RoutingResult res;
    res.outcomes.assign(N, 0);
    auto basis = [&](int q) { return q < g.num_grid() ? pat[size_t(q)] : src[size_t(q - g.num_grid())]; };
    for (int q = 0; q < n; q++) {
        char b = basis(q);
        if (b == 'O') {
            continue;
        }
        std::optional<bool> forced;
        if (opts.forced) {
            forced = (*opts.forced)[size_t(q)] != 0;
        }
        res.outcomes[size_t(q)] = st.measure(PauliString::single(N, size_t(q), b), rng, forced);
    }

    res.corrections = byproduct_corrections(plan, res.outcomes);
    for (int i = 0; i < g.m; i++) {
        const size_t t = size_t(g.index(g.target(i)));
        PauliString fix(N);
        fix.xs[t] = res.corrections[size_t(i)].xs[0];
        fix.zs[t] = res.corrections[size_t(i)].zs[0];
        st.apply_pauli(fix);
        std::string out = "mixed";
        for (char axis : {'X', 'Y', 'Z'}) {
            int v = st.peek(PauliString::single(N, t, axis));
            if (v != 0) {
                out = std::string(v > 0 ? "+" : "-") + axis;
                break;
            }
        }
        const SignedPauli &want = parsed[size_t(plan.sources[size_t(i)])];
        std::string expect = std::string(want.negative ? "-" : "+") + want.axis;
        res.outputs.push_back(out);
        res.matched.push_back(out == expect);
    }
    return res;
}

DenseRoutingResult simulate_routing_dense(const RoutingPlan &plan, const std::vector<Qubit1> &inputs, Rng &rng,
                                          const std::optional<std::vector<uint8_t>> &forced, int max_qubits) {
    std::string why;
    if (!verify_plan(plan, &why)) {
        throw std::invalid_argument("invalid routing plan: " + why);
    }
    const RoutingGrid &g = plan.grid;
    const int n = g.num_qubits();
    if (n > max_qubits) {
        throw std::length_error("dense routing needs " + std::to_string(n) + " qubits, limit is " +
                                std::to_string(max_qubits));
    }
    if (int(inputs.size()) != g.p) {
        throw std::invalid_argument("expected one input state per candidate");
    }
    if (forced && int(forced->size()) != n) {
        throw std::invalid_argument("forced outcomes must cover every qubit");
    }
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Qubit1> init(size_t(n), Qubit1{h, h});
    for (int r = 0; r < g.p; r++) {
        init[size_t(g.source_qubit(r))] = inputs[size_t(r)];
    }
    StateVector sv = StateVector::product(init, size_t(std::max(n, 1)));
    sv.normalize();
    for (auto [a, b] : g.edges()) {
        sv.apply_cz(size_t(a), size_t(b));
    }
    auto pat = measurement_pattern(plan);
    auto src = source_pattern(plan);
    DenseRoutingResult res;
    res.outcomes.assign(size_t(n), 0);
    for (int q = 0; q < n; q++) {
        char b = q < g.num_grid() ? pat[size_t(q)] : src[size_t(q - g.num_grid())];
        if (b == 'O') {
            continue;
        }
        if (b == 'X') {
            sv.apply_h(size_t(q));
        }
        std::optional<bool> f;
        if (forced) {
            f = (*forced)[size_t(q)] != 0;
        }
        res.outcomes[size_t(q)] = sv.measure(size_t(q), rng, f);
    }
    auto corr = byproduct_corrections(plan, res.outcomes);
    for (int i = 0; i < g.m; i++) {
        const size_t t = size_t(g.index(g.target(i)));
        PauliString fix(static_cast<size_t>(n));
        fix.xs[t] = corr[size_t(i)].xs[0];
        fix.zs[t] = corr[size_t(i)].zs[0];
        sv.apply_pauli(fix);
        // Compare Bloch vectors; the input is pure so F = (1 + r_in . r_out) / 2.
        const Qubit1 &psi = inputs[size_t(plan.sources[size_t(i)])];
        double nrm = std::norm(psi[0]) + std::norm(psi[1]);
        cplx off = std::conj(psi[0]) * psi[1];
        double rin[3] = {2.0 * off.real() / nrm, 2.0 * off.imag() / nrm,
                         (std::norm(psi[0]) - std::norm(psi[1])) / nrm};
        double dot = 0.0;
        const char axes[3] = {'X', 'Y', 'Z'};
        for (int a = 0; a < 3; a++) {
            dot += rin[a] * sv.expectation(PauliString::single(size_t(n), t, axes[a])).real();
        }
        res.fidelity.push_back(0.5 * (1.0 + dot));
    }
    return res;
}

}  // namespace ftqs
