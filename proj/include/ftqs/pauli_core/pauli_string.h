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

#ifndef FTQS_PAULI_CORE_PAULI_STRING_H
#define FTQS_PAULI_CORE_PAULI_STRING_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ftqs {

/// An n-qubit Pauli operator i^log_i * P_0 (x) ... (x) P_{n-1}.
///
/// Each factor is stored as an (x, z) bit pair with (1, 1) meaning Y
/// itself (not XZ), so a phase of +1 or -1 means the operator is Hermitian.
struct PauliString {
    std::vector<uint8_t> xs;
    std::vector<uint8_t> zs;
    uint8_t log_i = 0;

    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses "-XIZ", "+iY", "ZZ". Throws std::invalid_argument.
    static PauliString from_text(std::string_view text);
    /// Single non-identity factor `pauli` ('X', 'Y' or 'Z') on `qubit`.
    static PauliString single(size_t num_qubits, size_t qubit, char pauli);

    size_t num_qubits() const {
        return xs.size();
    }
    char get(size_t q) const;
    void set(size_t q, char pauli);

    std::string str() const;
    size_t weight() const;
    std::vector<size_t> support() const;
    bool is_identity() const;
    bool is_hermitian() const {
        return (log_i & 1) == 0;
    }
    /// +1 or -1 for Hermitian strings.
    int sign() const {
        return log_i == 0 ? +1 : -1;
    }

    bool commutes(const PauliString &other) const;

    /// Operator product (this on the left).
    PauliString operator*(const PauliString &rhs) const;
    PauliString &operator*=(const PauliString &rhs);
    PauliString inverse() const;

    bool operator==(const PauliString &other) const;
    bool operator!=(const PauliString &other) const {
        return !(*this == other);
    }
    /// Equality of the x/z content, ignoring the phase.
    bool equal_up_to_phase(const PauliString &other) const;
};

/// Exponent e with sigma(a) * sigma(b) = i^e * sigma(a xor b), where a and b
/// are 2-bit codes x + 2z.
uint8_t pauli_product_phase(uint8_t a, uint8_t b);

}  // namespace ftqs

#endif
