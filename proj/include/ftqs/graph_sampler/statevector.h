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

#ifndef FTQS_GRAPH_SAMPLER_STATEVECTOR_H
#define FTQS_GRAPH_SAMPLER_STATEVECTOR_H

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "ftqs/common/rng.h"
#include "ftqs/pauli_core/clifford.h"
#include "ftqs/pauli_core/pauli_string.h"

namespace ftqs {

using cplx = std::complex<double>;
using Qubit1 = std::array<cplx, 2>;
using Matrix2 = std::array<cplx, 4>;  // row-major

/// Default qubit cap for dense simulation.
constexpr size_t kDefaultStatevectorCap = 24;

/// Dense n-qubit state. Basis index bit q is the value of qubit q.
class StateVector {
   public:
    /// |0...0>. Throws std::length_error above `cap` qubits.
    explicit StateVector(size_t num_qubits, size_t cap = kDefaultStatevectorCap);
    /// Tensor product of single-qubit states (qubit 0 first). Not renormalized.
    static StateVector product(const std::vector<Qubit1> &qubits, size_t cap = kDefaultStatevectorCap);

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<cplx> &amplitudes() const {
        return amp_;
    }
    std::vector<cplx> &amplitudes() {
        return amp_;
    }

    void apply_1q(size_t q, const Matrix2 &m);
    void apply_h(size_t q);
    void apply_s(size_t q);
    /// diag(1, e^{i phi}).
    void apply_phase(size_t q, double phi);
    /// Z(theta) = exp(-i theta Z / 2).
    void apply_rz(size_t q, double theta);
    void apply_cz(size_t a, size_t b);
    void apply_cnot(size_t control, size_t target);
    void apply_swap(size_t a, size_t b);
    void apply(const Gate &gate);
    void apply(const CliffordCircuit &circuit);
    void apply_pauli(const PauliString &pauli);

    double norm2() const;
    void normalize();
    double prob_one(size_t q) const;
    /// Projects qubit q onto |bit>, returns the probability of that branch
    /// and renormalizes (unless the branch has zero weight).
    double project(size_t q, bool bit);
    /// Z-basis measurement with collapse. `forced` selects the branch.
    bool measure(size_t q, Rng &rng, std::optional<bool> forced = std::nullopt);
    cplx expectation(const PauliString &pauli) const;
    cplx inner(const StateVector &other) const;

   private:
    size_t n_;
    std::vector<cplx> amp_;
};

}  // namespace ftqs

#endif
