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

#include "ftqs/pauli_core/tableau.h"

#include <stdexcept>
#include <string>

namespace ftqs {

StabilizerState::StabilizerState(size_t num_qubits) : n_(num_qubits) {
    destab_.reserve(n_);
    stab_.reserve(n_);
    for (size_t q = 0; q < n_; q++) {
        destab_.push_back(PauliString::single(n_, q, 'X'));
        stab_.push_back(PauliString::single(n_, q, 'Z'));
    }
}

void StabilizerState::check_width(const PauliString &p) const {
    if (p.num_qubits() != n_) {
        throw std::invalid_argument("observable width " + std::to_string(p.num_qubits()) + " != state width " +
                                    std::to_string(n_));
    }
}

void StabilizerState::apply(const Gate &gate) {
    for (auto &row : destab_) {
        row = conjugate_pauli(gate, row);
    }
    for (auto &row : stab_) {
        row = conjugate_pauli(gate, row);
    }
}

void StabilizerState::apply(const CliffordLayer &layer) {
    if (layer.num_qubits() != n_) {
        throw std::invalid_argument("layer width " + std::to_string(layer.num_qubits()) + " != state width " +
                                    std::to_string(n_));
    }
    for (const auto &g : layer.gates()) {
        apply(g);
    }
}

void StabilizerState::apply(const CliffordCircuit &circuit) {
    for (const auto &layer : circuit.layers()) {
        apply(layer);
    }
}

void StabilizerState::apply_pauli(const PauliString &pauli) {
    check_width(pauli);
    for (auto &row : destab_) {
        if (!row.commutes(pauli)) {
            row.log_i ^= 2;
        }
    }
    for (auto &row : stab_) {
        if (!row.commutes(pauli)) {
            row.log_i ^= 2;
        }
    }
}

int StabilizerState::peek(const PauliString &observable) const {
    check_width(observable);
    if (!observable.is_hermitian()) {
        throw std::invalid_argument("observable " + observable.str() + " is not Hermitian");
    }
    for (const auto &s : stab_) {
        if (!s.commutes(observable)) {
            return 0;
        }
    }
    PauliString product(n_);
    for (size_t i = 0; i < n_; i++) {
        if (!destab_[i].commutes(observable)) {
            product *= stab_[i];
        }
    }
    if (product == observable) {
        return +1;
    }
    PauliString negated = observable;
    negated.log_i ^= 2;
    if (product == negated) {
        return -1;
    }
    throw std::logic_error("inconsistent tableau while evaluating " + observable.str());
}

bool StabilizerState::measure(const PauliString &observable, Rng &rng, std::optional<bool> forced) {
    check_width(observable);
    if (!observable.is_hermitian()) {
        throw std::invalid_argument("observable " + observable.str() + " is not Hermitian");
    }
    size_t pivot = n_;
    for (size_t i = 0; i < n_; i++) {
        if (!stab_[i].commutes(observable)) {
            pivot = i;
            break;
        }
    }
    if (pivot == n_) {
        last_random_ = false;
        return peek(observable) < 0;
    }
    last_random_ = true;
    const PauliString old = stab_[pivot];
    for (size_t i = 0; i < n_; i++) {
        if (!destab_[i].commutes(observable)) {
            destab_[i] *= old;
        }
        if (i != pivot && !stab_[i].commutes(observable)) {
            stab_[i] *= old;
        }
    }
    bool outcome = forced.has_value() ? *forced : bool(rng() & 1);
    destab_[pivot] = old;
    stab_[pivot] = observable;
    if (outcome) {
        stab_[pivot].log_i ^= 2;
    }
    return outcome;
}

bool StabilizerState::same_state(const StabilizerState &other) const {
    if (other.n_ != n_) {
        return false;
    }
    for (const auto &s : other.stab_) {
        if (peek(s) != +1) {
            return false;
        }
    }
    return true;
}

std::pair<bool, StabilizerState> measure_pauli(const StabilizerState &state, const PauliString &observable, Rng &rng) {
    StabilizerState copy = state;
    bool b = copy.measure(observable, rng);
    return {b, std::move(copy)};
}

StabilizerState apply_clifford(const StabilizerState &state, const CliffordLayer &layer) {
    StabilizerState copy = state;
    copy.apply(layer);
    return copy;
}

}  // namespace ftqs
