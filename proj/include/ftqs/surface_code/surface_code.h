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

#ifndef FTQS_SURFACE_CODE_SURFACE_CODE_H
#define FTQS_SURFACE_CODE_SURFACE_CODE_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ftqs/common/rng.h"
#include "ftqs/pauli_core/pauli_string.h"

namespace ftqs {

/// Rotated planar patch. Data qubit (r, c) has index r * d + c. Z-type
/// checks sit on the left and right boundaries, X-type checks on the top and
/// bottom. logical_z is Z along row 0, logical_x is X along column 0.
struct SurfaceCodePatch {
    struct Check {
        bool is_x;
        std::vector<int> qubits;
    };

    int distance = 1;
    std::vector<std::pair<int, int>> coords;
    std::vector<Check> checks;
    PauliString logical_z;
    PauliString logical_x;

    // Decoding graph for Z-readout: one node per Z check plus a boundary node
    // (index num_z_checks()); each data qubit is an edge.
    std::vector<int> z_checks;                    // indices into `checks`
    std::vector<std::pair<int, int>> qubit_edge;  // per data qubit, node pair
    std::vector<std::vector<int>> dist;           // all-pairs hop counts
    std::vector<std::vector<int>> parent_qubit;   // last data qubit on the BFS path a -> b

    int num_qubits() const {
        return int(coords.size());
    }
    int num_z_checks() const {
        return int(z_checks.size());
    }
    int boundary_node() const {
        return num_z_checks();
    }
    PauliString check_pauli(size_t i) const;
    /// Throws std::logic_error if a commutation invariant fails.
    void verify() const;
    /// Data qubits of a shortest decoding-graph path between two nodes.
    std::vector<int> path_qubits(int a, int b) const;
};

/// Throws std::invalid_argument unless distance is odd and positive.
SurfaceCodePatch build_patch(int distance);

/// Indices into patch.z_checks whose parity is odd for these outcomes.
std::vector<int> z_syndrome(const SurfaceCodePatch &patch, const std::vector<uint8_t> &outcomes);

struct Matching {
    /// (defect, defect) pairs or (defect, -1) for a boundary match. Defects
    /// are indices into patch.z_checks.
    std::vector<std::pair<int, int>> pairs;
    int64_t weight = 0;
};

/// Minimum-weight perfect matching of defects, each optionally matched to
/// the boundary. Ties resolve deterministically.
Matching mwpm(const std::vector<int> &defects, const SurfaceCodePatch &patch);

/// Brute-force optimum weight over all matchings (exponential; test oracle
/// and small-case fallback).
int64_t brute_force_matching_weight(const std::vector<int> &defects, const SurfaceCodePatch &patch);

/// Decoded logical Z bit. Throws std::invalid_argument on a length mismatch.
uint8_t z_readout_decode(const SurfaceCodePatch &patch, const std::vector<uint8_t> &outcomes);

struct RateEstimate {
    int distance = 0;
    int l = 0;
    double p = 0.0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    double p_l = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Monte Carlo readout-failure rate under i.i.d. bit flips at rate p.
/// Trials run in fixed chunks with derived seeds, so `threads` does not
/// change the result.
RateEstimate logical_error_rate(int distance, double p, uint64_t trials, uint64_t seed, int threads = 1);

/// Least-squares c in p_L ~ A exp(-c sqrt(l)) from (distance, p_L) points.
double fit_pf_exponent(const std::vector<std::pair<int, double>> &rates);

/// "distance,l,p,trials,p_L,ci_low,ci_high".
std::string rate_sweep_csv(const std::vector<RateEstimate> &rows);

}  // namespace ftqs

#endif
