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

#include "ftqs/pauli_core/noise.h"

#include <stdexcept>
#include <string>

namespace ftqs {

namespace {

void check_rate(double p, const char *what) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument(std::string(what) + " rate " + std::to_string(p) + " outside [0, 1)");
    }
}

}  // namespace

void NoiseSpec::validate(long long depth) const {
    check_rate(p_prep, "p_prep");
    check_rate(p_out, "p_out");
    for (double p : p_layer) {
        check_rate(p, "p_layer");
    }
    if (depth >= 0 && p_layer.size() != size_t(depth)) {
        throw std::invalid_argument("p_layer has " + std::to_string(p_layer.size()) + " entries for a depth-" +
                                    std::to_string(depth) + " circuit");
    }
}

NoiseSpec NoiseSpec::uniform(double p, size_t depth) {
    NoiseSpec spec;
    spec.p_prep = p;
    spec.p_layer.assign(depth, p);
    spec.p_out = p;
    spec.validate(static_cast<long long>(depth));
    return spec;
}

PauliString sample_local_stochastic(size_t num_qubits, double p, Rng &rng) {
    check_rate(p, "noise");
    PauliString out(num_qubits);
    if (p == 0.0) {
        return out;
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    static constexpr char kPaulis[3] = {'X', 'Y', 'Z'};
    for (size_t q = 0; q < num_qubits; q++) {
        double u = unif(rng);
        if (u < p) {
            int which = int(u / p * 3.0);
            out.set(q, kPaulis[which > 2 ? 2 : which]);
        }
    }
    return out;
}

std::vector<PauliString> sample_stage_errors(const CliffordCircuit &circuit, const NoiseSpec &noise, Rng &rng) {
    noise.validate(static_cast<long long>(circuit.depth()));
    std::vector<PauliString> out;
    out.reserve(circuit.depth() + 2);
    out.push_back(sample_local_stochastic(circuit.num_qubits(), noise.p_prep, rng));
    for (double p : noise.p_layer) {
        out.push_back(sample_local_stochastic(circuit.num_qubits(), p, rng));
    }
    out.push_back(sample_local_stochastic(circuit.num_qubits(), noise.p_out, rng));
    return out;
}

}  // namespace ftqs
