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

#ifndef FTQS_PAULI_CORE_NOISE_H
#define FTQS_PAULI_CORE_NOISE_H

#include <vector>

#include "ftqs/common/rng.h"
#include "ftqs/pauli_core/clifford.h"
#include "ftqs/pauli_core/pauli_string.h"

namespace ftqs {

/// Per-stage error rates for a circuit: preparation, one per layer, readout.
struct NoiseSpec {
    double p_prep = 0.0;
    std::vector<double> p_layer;
    double p_out = 0.0;

    /// Throws std::invalid_argument if a rate is outside [0, 1) or, when
    /// `depth` is non-negative, if p_layer.size() != depth.
    void validate(long long depth = -1) const;
    static NoiseSpec uniform(double p, size_t depth);
};

/// Each qubit independently gets X, Y or Z (uniformly) with probability p.
PauliString sample_local_stochastic(size_t num_qubits, double p, Rng &rng);

/// Samples [E_prep, E_1, ..., E_d, E_out] for push_noise_to_end.
std::vector<PauliString> sample_stage_errors(const CliffordCircuit &circuit, const NoiseSpec &noise, Rng &rng);

}  // namespace ftqs

#endif
