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

#ifndef FTQS_ROUTING_ROUTING_H
#define FTQS_ROUTING_ROUTING_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ftqs/common/rng.h"
#include "ftqs/graph_sampler/statevector.h"
#include "ftqs/pauli_core/pauli_string.h"

namespace ftqs {

struct GridCoord {
    int row = 0;
    int col = 0;
    bool operator==(const GridCoord &o) const {
        return row == o.row && col == o.col;
    }
};

/// Grid graph state for routing m of p candidates. Candidate r is an
/// external source qubit attached by one edge to grid vertex (2r, 0); the
/// blank odd rows keep distinct routes from touching. Exit i is (2i, 2m-1).
///
/// Qubit numbering: grid vertex (r, c) is r * cols + c, source r is
/// num_grid() + r.
struct RoutingGrid {
    int p = 0;
    int m = 0;
    int rows = 0;
    int cols = 0;

    RoutingGrid() = default;
    RoutingGrid(int p, int m);

    int num_grid() const {
        return rows * cols;
    }
    int num_qubits() const {
        return num_grid() + p;
    }
    int index(GridCoord v) const {
        return v.row * cols + v.col;
    }
    int source_qubit(int r) const {
        return num_grid() + r;
    }
    bool contains(GridCoord v) const {
        return v.row >= 0 && v.row < rows && v.col >= 0 && v.col < cols;
    }
    GridCoord entry(int r) const {
        return {2 * r, 0};
    }
    GridCoord target(int i) const {
        return {2 * i, cols - 1};
    }
    /// Graph edges over qubit indices, grid edges first, then source links.
    std::vector<std::pair<int, int>> edges() const;
};

struct RoutingPlan {
    RoutingGrid grid;
    /// Candidate index feeding each route.
    std::vector<int> sources;
    /// Route i as grid vertices from entry(sources[i]) to target(i). The
    /// source qubit itself precedes the first element.
    std::vector<std::vector<GridCoord>> paths;

    /// Plan export: header, one line per path, then the row-major X/Z/O map
    /// and a source line.
    std::string to_text() const;
};

/// Routes the first m flagged candidates to the m exits. Throws
/// std::invalid_argument if m < 0, m > p, flags.size() != p or fewer than m
/// flags are set.
RoutingPlan plan_routes(int p, int m, const std::vector<bool> &success_flags);

/// True iff paths share no vertex and consecutive vertices are grid
/// neighbours.
bool verify_disjoint(const RoutingPlan &plan);

/// Stricter check used before simulation: disjoint, induced (no grid edge
/// joins two different routes or two non-consecutive vertices of one
/// route), correct endpoints, distinct sources.
bool verify_plan(const RoutingPlan &plan, std::string *why = nullptr);

/// Row-major map over grid vertices: 'X' teleport, 'Z' remove, 'O' output.
std::vector<char> measurement_pattern(const RoutingPlan &plan);
/// Per-candidate source basis: 'X' for routed sources, 'Z' otherwise.
std::vector<char> source_pattern(const RoutingPlan &plan);

/// Pauli correction (as a one-qubit PauliString, phase dropped) to apply at
/// each target given all measurement outcomes, indexed by qubit. Depends
/// only on the outcomes and the plan geometry.
std::vector<PauliString> byproduct_corrections(const RoutingPlan &plan, const std::vector<uint8_t> &outcomes);

struct RoutingOptions {
    /// Qubit budget for the stabilizer simulator.
    int max_qubits = 4096;
    /// Outcomes indexed by qubit; random branches take these values.
    std::optional<std::vector<uint8_t>> forced;
    /// Pauli applied to all qubits (grid + sources) right after the sources
    /// are prepared and before any entangling gate.
    std::optional<PauliString> input_error;
};

struct RoutingResult {
    /// Outcome bit per qubit; targets hold 0.
    std::vector<uint8_t> outcomes;
    std::vector<PauliString> corrections;
    /// Corrected target states as signed Pauli text ("+Z", "-X", ...), or
    /// "mixed" if the target is entangled.
    std::vector<std::string> outputs;
    /// outputs[i] equals the state fed into route i.
    std::vector<bool> matched;
    bool all_matched() const;
};

/// Stabilizer simulation. `inputs` gives one single-qubit stabilizer
/// ("+X", "-Z", "+Y", ...) per candidate, or one per route, in which case
/// unrouted candidates get "+X". Throws std::invalid_argument on an invalid
/// plan or bad input text, std::length_error above the qubit budget.
RoutingResult simulate_routing(const RoutingPlan &plan, const std::vector<std::string> &inputs, Rng &rng,
                               const RoutingOptions &opts = {});

struct DenseRoutingResult {
    std::vector<uint8_t> outcomes;
    /// |<psi_in|rho_out|psi_in>| per route after correction.
    std::vector<double> fidelity;
};

/// Dense cross-check accepting arbitrary source states (one per candidate).
/// Throws std::length_error above `max_qubits`.
DenseRoutingResult simulate_routing_dense(const RoutingPlan &plan, const std::vector<Qubit1> &inputs, Rng &rng,
                                          const std::optional<std::vector<uint8_t>> &forced = std::nullopt,
                                          int max_qubits = 20);

/// One-qubit state with the given stabilizer text.
Qubit1 stabilizer_qubit(const std::string &text);

}  // namespace ftqs

#endif
