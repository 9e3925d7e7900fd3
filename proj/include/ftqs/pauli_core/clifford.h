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

#ifndef FTQS_PAULI_CORE_CLIFFORD_H
#define FTQS_PAULI_CORE_CLIFFORD_H

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ftqs/pauli_core/pauli_string.h"

namespace ftqs {

enum class GateKind { H, S, X, Y, Z, CZ, CNOT, SWAP };

struct Gate {
    GateKind kind;
    size_t q0;
    size_t q1 = 0;

    bool is_two_qubit() const {
        return kind == GateKind::CZ || kind == GateKind::CNOT || kind == GateKind::SWAP;
    }
    std::string str() const;
    bool operator==(const Gate &other) const;
};

const char *gate_name(GateKind kind);
/// Inverse of gate_name. Throws std::invalid_argument for unknown names.
GateKind parse_gate_kind(std::string_view name);

/// One depth-one layer: every qubit is touched by at most one gate.
class CliffordLayer {
   public:
    explicit CliffordLayer(size_t num_qubits = 0) : num_qubits_(num_qubits) {
    }

    /// Throws if a site is out of range or already used in this layer.
    void add(Gate gate);
    bool uses(size_t qubit) const;

    size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    bool empty() const {
        return gates_.empty();
    }

   private:
    size_t num_qubits_;
    std::vector<Gate> gates_;
    std::vector<uint8_t> used_;
};

class CliffordCircuit {
   public:
    explicit CliffordCircuit(size_t num_qubits = 0) : num_qubits_(num_qubits) {
    }

    void append(CliffordLayer layer);
    /// Places `gate` in the earliest layer after the last layer touching its
    /// qubits, appending layers as needed.
    void append_gate_asap(Gate gate);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t depth() const {
        return layers_.size();
    }
    const std::vector<CliffordLayer> &layers() const {
        return layers_;
    }

    /// Inverse circuit. S is inverted as S followed by Z in a separate layer.
    CliffordCircuit inverse() const;

    /// Line format: "QUBITS n" then one layer per line with gates separated
    /// by ';', e.g. "H 0; CZ 1 2". A line holding only '.' is an empty layer.
    std::string to_text() const;
    static CliffordCircuit from_text(std::string_view text);

   private:
    size_t num_qubits_;
    std::vector<CliffordLayer> layers_;
};

/// Returns U P U^dagger for the gate U.
PauliString conjugate_pauli(const Gate &gate, const PauliString &pauli);
PauliString conjugate_pauli(const CliffordLayer &layer, const PauliString &pauli);
/// Conjugation by the whole circuit U = U_d ... U_1.
PauliString conjugate_pauli(const CliffordCircuit &circuit, const PauliString &pauli);

/// Given stage errors [E_prep, E_1, ..., E_d, E_out], returns E with
///   E U = E_out E_d U_d ... E_1 U_1 E_prep
/// as operators, phase included.
PauliString push_noise_to_end(const CliffordCircuit &circuit, const std::vector<PauliString> &stage_errors);

/// Forward lightcone of `input_support` through every layer of the circuit.
std::set<size_t> lightcone_support_bound(const CliffordCircuit &circuit, const std::set<size_t> &input_support);

}  // namespace ftqs

#endif
