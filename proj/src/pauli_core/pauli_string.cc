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

#include "ftqs/pauli_core/pauli_string.h"

#include <stdexcept>

namespace ftqs {

namespace {

// Rows: left factor, columns: right factor. Codes I=0, X=1, Z=2, Y=3.
constexpr uint8_t kProductPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 3, 1},
    {0, 1, 0, 3},
    {0, 3, 1, 0},
};

}  // namespace

uint8_t pauli_product_phase(uint8_t a, uint8_t b) {
    return kProductPhase[a & 3][b & 3];
}

PauliString::PauliString(size_t num_qubits) : xs(num_qubits, 0), zs(num_qubits, 0), log_i(0) {
}

PauliString PauliString::from_text(std::string_view text) {
    size_t pos = 0;
    uint8_t phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase = text[pos] == '-' ? 2 : 0;
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase = (phase + 1) & 3;
        pos++;
    }
    PauliString result(text.size() - pos);
    result.log_i = phase;
    for (size_t q = 0; pos < text.size(); pos++, q++) {
        char c = text[pos];
        if (c == '_') {
            c = 'I';
        }
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("invalid Pauli character '" + std::string(1, c) + "' in \"" +
                                        std::string(text) + "\"");
        }
        result.set(q, c);
    }
    return result;
}

PauliString PauliString::single(size_t num_qubits, size_t qubit, char pauli) {
    PauliString result(num_qubits);
    result.set(qubit, pauli);
    return result;
}

char PauliString::get(size_t q) const {
    static constexpr char kNames[4] = {'I', 'X', 'Z', 'Y'};
    return kNames[xs.at(q) | (zs.at(q) << 1)];
}

void PauliString::set(size_t q, char pauli) {
    if (q >= xs.size()) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(xs.size()) +
                                "-qubit Pauli string");
    }
    switch (pauli) {
        case 'I':
            xs[q] = 0;
            zs[q] = 0;
            break;
        case 'X':
            xs[q] = 1;
            zs[q] = 0;
            break;
        case 'Y':
            xs[q] = 1;
            zs[q] = 1;
            break;
        case 'Z':
            xs[q] = 0;
            zs[q] = 1;
            break;
        default:
            throw std::invalid_argument("invalid Pauli character");
    }
}

std::string PauliString::str() const {
    static constexpr const char *kPhases[4] = {"+", "+i", "-", "-i"};
    std::string out = kPhases[log_i & 3];
    for (size_t q = 0; q < xs.size(); q++) {
        out.push_back(get(q));
    }
    return out;
}

size_t PauliString::weight() const {
    size_t w = 0;
    for (size_t q = 0; q < xs.size(); q++) {
        w += (xs[q] | zs[q]);
    }
    return w;
}

std::vector<size_t> PauliString::support() const {
    std::vector<size_t> out;
    for (size_t q = 0; q < xs.size(); q++) {
        if (xs[q] | zs[q]) {
            out.push_back(q);
        }
    }
    return out;
}

bool PauliString::is_identity() const {
    return weight() == 0;
}

bool PauliString::commutes(const PauliString &other) const {
    if (other.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli width mismatch");
    }
    unsigned anti = 0;
    for (size_t q = 0; q < xs.size(); q++) {
        anti ^= (xs[q] & other.zs[q]) ^ (zs[q] & other.xs[q]);
    }
    return anti == 0;
}

PauliString PauliString::operator*(const PauliString &rhs) const {
    PauliString out = *this;
    out *= rhs;
    return out;
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    if (rhs.num_qubits() != num_qubits()) {
        throw std::invalid_argument("Pauli width mismatch");
    }
    unsigned phase = log_i + rhs.log_i;
    for (size_t q = 0; q < xs.size(); q++) {
        uint8_t a = xs[q] | (zs[q] << 1);
        uint8_t b = rhs.xs[q] | (rhs.zs[q] << 1);
        phase += kProductPhase[a][b];
        xs[q] ^= rhs.xs[q];
        zs[q] ^= rhs.zs[q];
    }
    log_i = phase & 3;
    return *this;
}

PauliString PauliString::inverse() const {
    PauliString out = *this;
    out.log_i = (4 - log_i) & 3;
    return out;
}

bool PauliString::operator==(const PauliString &other) const {
    return log_i == other.log_i && xs == other.xs && zs == other.zs;
}

bool PauliString::equal_up_to_phase(const PauliString &other) const {
    return xs == other.xs && zs == other.zs;
}

}  // namespace ftqs
