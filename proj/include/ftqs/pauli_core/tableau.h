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

#ifndef FTQS_PAULI_CORE_TABLEAU_H
#define FTQS_PAULI_CORE_TABLEAU_H

#include <optional>
#include <utility>
#include <vector>

#include "ftqs/common/rng.h"
#include "ftqs/pauli_core/clifford.h"
#include "ftqs/pauli_core/pauli_string.h"

namespace ftqs {

/// Stabilizer state held as n destabilizer rows and n stabilizer rows.
class StabilizerState {
   public:
    /// |0...0>.
    explicit StabilizerState(size_t num_qubits = 0);

    size_t num_qubits() const {
        return n_;
    }
    const std::vector<PauliString> &destabilizers() const {
        return destab_;
    }
    const std::vector<PauliString> &stabilizers() const {
        return stab_;
    }

    void apply(const Gate &gate);
    void apply(const CliffordLayer &layer);
    void apply(const CliffordCircuit &circuit);
    /// Applies a Pauli operator to the state (flips signs of anticommuting rows).
    void apply_pauli(const PauliString &pauli);

    /// +1 or -1 when `observable` (Hermitian) has a definite value, 0 otherwise.
    /// Does not change the state.
    int peek(const PauliString &observable) const;

    /// Measures the Hermitian Pauli `observable`. Returns b where the result is
    /// the (-1)^b eigenvalue. Random outcomes come from `rng` unless `forced`
    /// is given, in which case a random branch takes the forced value (a
    /// deterministic branch ignores it).
    bool measure(const PauliString &observable, Rng &rng, std::optional<bool> forced = std::nullopt);
    /// Returns true iff the last measure() call had a random outcome.
    bool last_was_random() const {
        return last_random_;
    }

    /// True iff every stabilizer generator of `other` has value +1 here.
    bool same_state(const StabilizerState &other) const;

   private:
    void check_width(const PauliString &p) const;

    size_t n_;
    std::vector<PauliString> destab_;
    std::vector<PauliString> stab_;
    bool last_random_ = false;
};

/// Functional form: returns (outcome, collapsed copy).
std::pair<bool, StabilizerState> measure_pauli(const StabilizerState &state, const PauliString &observable, Rng &rng);

/// Functional form of the layer update.
StabilizerState apply_clifford(const StabilizerState &state, const CliffordLayer &layer);

}  // namespace ftqs

#endif
