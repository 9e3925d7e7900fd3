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

#include "ftqs/pauli_core/clifford.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ftqs {

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::SWAP:
            return "SWAP";
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view name) {
    static const std::pair<const char *, GateKind> kTable[] = {
        {"H", GateKind::H},   {"S", GateKind::S},   {"X", GateKind::X},       {"Y", GateKind::Y},
        {"Z", GateKind::Z},   {"CZ", GateKind::CZ}, {"CNOT", GateKind::CNOT}, {"CX", GateKind::CNOT},
        {"SWAP", GateKind::SWAP},
    };
    for (const auto &[n, k] : kTable) {
        if (name == n) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

std::string Gate::str() const {
    std::string out = gate_name(kind);
    out += " " + std::to_string(q0);
    if (is_two_qubit()) {
        out += " " + std::to_string(q1);
    }
    return out;
}

bool Gate::operator==(const Gate &other) const {
    return kind == other.kind && q0 == other.q0 && (!is_two_qubit() || q1 == other.q1);
}

void CliffordLayer::add(Gate gate) {
    if (used_.size() != num_qubits_) {
        used_.assign(num_qubits_, 0);
        for (const auto &g : gates_) {
            used_[g.q0] = 1;
            if (g.is_two_qubit()) {
                used_[g.q1] = 1;
            }
        }
    }
    if (gate.q0 >= num_qubits_ || (gate.is_two_qubit() && gate.q1 >= num_qubits_)) {
        throw std::out_of_range("gate " + gate.str() + " out of range for " + std::to_string(num_qubits_) + " qubits");
    }
    if (gate.is_two_qubit() && gate.q0 == gate.q1) {
        throw std::invalid_argument("gate " + gate.str() + " targets the same qubit twice");
    }
    if (used_[gate.q0] || (gate.is_two_qubit() && used_[gate.q1])) {
        throw std::invalid_argument("gate " + gate.str() + " reuses a qubit within one layer");
    }
    used_[gate.q0] = 1;
    if (gate.is_two_qubit()) {
        used_[gate.q1] = 1;
    }
    gates_.push_back(gate);
}

bool CliffordLayer::uses(size_t qubit) const {
    for (const auto &g : gates_) {
        if (g.q0 == qubit || (g.is_two_qubit() && g.q1 == qubit)) {
            return true;
        }
    }
    return false;
}

void CliffordCircuit::append(CliffordLayer layer) {
    if (layer.num_qubits() != num_qubits_) {
        throw std::invalid_argument("layer width " + std::to_string(layer.num_qubits()) + " != circuit width " +
                                    std::to_string(num_qubits_));
    }
    layers_.push_back(std::move(layer));
}

void CliffordCircuit::append_gate_asap(Gate gate) {
    size_t slot = layers_.size();
    while (slot > 0) {
        const auto &prev = layers_[slot - 1];
        if (prev.uses(gate.q0) || (gate.is_two_qubit() && prev.uses(gate.q1))) {
            break;
        }
        slot--;
    }
    if (slot == layers_.size()) {
        layers_.emplace_back(num_qubits_);
    }
    layers_[slot].add(gate);
}

CliffordCircuit CliffordCircuit::inverse() const {
    CliffordCircuit out(num_qubits_);
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
        CliffordLayer main(num_qubits_);
        CliffordLayer fix(num_qubits_);
        for (const auto &g : it->gates()) {
            main.add(g);
            if (g.kind == GateKind::S) {
                fix.add(Gate{GateKind::Z, g.q0});
            }
        }
        out.append(std::move(main));
        if (!fix.empty()) {
            out.append(std::move(fix));
        }
    }
    return out;
}

std::string CliffordCircuit::to_text() const {
    std::ostringstream out;
    out << "QUBITS " << num_qubits_ << "\n";
    for (const auto &layer : layers_) {
        if (layer.empty()) {
            out << ".\n";
            continue;
        }
        for (size_t i = 0; i < layer.gates().size(); i++) {
            if (i) {
                out << "; ";
            }
            out << layer.gates()[i].str();
        }
        out << "\n";
    }
    return out.str();
}

CliffordCircuit CliffordCircuit::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    bool have_header = false;
    CliffordCircuit circuit;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            continue;
        }
        line = line.substr(first);
        if (!have_header) {
            std::istringstream hs(line);
            std::string word;
            long long n = -1;
            hs >> word >> n;
            if (word != "QUBITS" || n < 0) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'QUBITS <n>' header");
            }
            circuit = CliffordCircuit(size_t(n));
            have_header = true;
            continue;
        }
        CliffordLayer layer(circuit.num_qubits());
        if (line.rfind('.', 0) == 0) {
            circuit.append(std::move(layer));
            continue;
        }
        std::istringstream ls(line);
        std::string item;
        while (std::getline(ls, item, ';')) {
            std::istringstream gs(item);
            std::string name;
            if (!(gs >> name)) {
                continue;
            }
            Gate gate{parse_gate_kind(name), 0, 0};
            long long a = -1, b = -1;
            if (!(gs >> a) || a < 0) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": bad qubit index in '" + item + "'");
            }
            gate.q0 = size_t(a);
            if (gate.is_two_qubit()) {
                if (!(gs >> b) || b < 0) {
                    throw std::invalid_argument("line " + std::to_string(line_no) + ": gate needs two qubits");
                }
                gate.q1 = size_t(b);
            }
            layer.add(gate);
        }
        circuit.append(std::move(layer));
    }
    if (!have_header) {
        throw std::invalid_argument("missing 'QUBITS <n>' header");
    }
    return circuit;
}

namespace {

// Images of X_q and Z_q under the gate, as full-width strings.
void gate_images(const Gate &g, size_t q, size_t n, PauliString &img_x, PauliString &img_z) {
    img_x = PauliString(n);
    img_z = PauliString(n);
    switch (g.kind) {
        case GateKind::H:
            img_x.set(q, 'Z');
            img_z.set(q, 'X');
            return;
        case GateKind::S:
            img_x.set(q, 'Y');
            img_z.set(q, 'Z');
            return;
        case GateKind::X:
            img_x.set(q, 'X');
            img_z.set(q, 'Z');
            img_z.log_i = 2;
            return;
        case GateKind::Y:
            img_x.set(q, 'X');
            img_x.log_i = 2;
            img_z.set(q, 'Z');
            img_z.log_i = 2;
            return;
        case GateKind::Z:
            img_x.set(q, 'X');
            img_x.log_i = 2;
            img_z.set(q, 'Z');
            return;
        case GateKind::CZ: {
            size_t other = q == g.q0 ? g.q1 : g.q0;
            img_x.set(q, 'X');
            img_x.set(other, 'Z');
            img_z.set(q, 'Z');
            return;
        }
        case GateKind::CNOT:
            if (q == g.q0) {
                img_x.set(g.q0, 'X');
                img_x.set(g.q1, 'X');
                img_z.set(g.q0, 'Z');
            } else {
                img_x.set(g.q1, 'X');
                img_z.set(g.q0, 'Z');
                img_z.set(g.q1, 'Z');
            }
            return;
        case GateKind::SWAP: {
            size_t other = q == g.q0 ? g.q1 : g.q0;
            img_x.set(other, 'X');
            img_z.set(other, 'Z');
            return;
        }
    }
}

}  // namespace

PauliString conjugate_pauli(const Gate &gate, const PauliString &pauli) {
    size_t n = pauli.num_qubits();
    if (gate.q0 >= n || (gate.is_two_qubit() && gate.q1 >= n)) {
        throw std::out_of_range("gate " + gate.str() + " out of range for " + std::to_string(n) + "-qubit Pauli");
    }
    size_t sites[2] = {gate.q0, gate.q1};
    size_t num_sites = gate.is_two_qubit() ? 2 : 1;

    // P = i^phase * rest * prod_q i^{x z} X_q^x Z_q^z, and U fixes `rest`.
    PauliString out = pauli;
    unsigned extra = 0;
    for (size_t s = 0; s < num_sites; s++) {
        out.xs[sites[s]] = 0;
        out.zs[sites[s]] = 0;
    }
    PauliString img_x, img_z;
    for (size_t s = 0; s < num_sites; s++) {
        size_t q = sites[s];
        uint8_t x = pauli.xs[q];
        uint8_t z = pauli.zs[q];
        if (!(x | z)) {
            continue;
        }
        gate_images(gate, q, n, img_x, img_z);
        extra += x & z;
        if (x) {
            out *= img_x;
        }
        if (z) {
            out *= img_z;
        }
    }
    out.log_i = (out.log_i + extra) & 3;
    return out;
}

PauliString conjugate_pauli(const CliffordLayer &layer, const PauliString &pauli) {
    PauliString out = pauli;
    for (const auto &g : layer.gates()) {
        out = conjugate_pauli(g, out);
    }
    return out;
}

PauliString conjugate_pauli(const CliffordCircuit &circuit, const PauliString &pauli) {
    PauliString out = pauli;
    for (const auto &layer : circuit.layers()) {
        out = conjugate_pauli(layer, out);
    }
    return out;
}

PauliString push_noise_to_end(const CliffordCircuit &circuit, const std::vector<PauliString> &stage_errors) {
    if (stage_errors.size() != circuit.depth() + 2) {
        throw std::invalid_argument("expected " + std::to_string(circuit.depth() + 2) + " stage errors, got " +
                                    std::to_string(stage_errors.size()));
    }
    for (const auto &e : stage_errors) {
        if (e.num_qubits() != circuit.num_qubits()) {
            throw std::invalid_argument("stage error width " + std::to_string(e.num_qubits()) +
                                        " != circuit width " + std::to_string(circuit.num_qubits()));
        }
    }
    PauliString acc = stage_errors.front();
    for (size_t i = 0; i < circuit.depth(); i++) {
        acc = stage_errors[i + 1] * conjugate_pauli(circuit.layers()[i], acc);
    }
    return stage_errors.back() * acc;
}

std::set<size_t> lightcone_support_bound(const CliffordCircuit &circuit, const std::set<size_t> &input_support) {
    std::vector<uint8_t> in(circuit.num_qubits(), 0);
    for (size_t q : input_support) {
        if (q >= circuit.num_qubits()) {
            throw std::out_of_range("support index " + std::to_string(q) + " out of range");
        }
        in[q] = 1;
    }
    for (const auto &layer : circuit.layers()) {
        for (const auto &g : layer.gates()) {
            if (g.is_two_qubit() && (in[g.q0] || in[g.q1])) {
                in[g.q0] = 1;
                in[g.q1] = 1;
            }
        }
    }
    std::set<size_t> out;
    for (size_t q = 0; q < in.size(); q++) {
        if (in[q]) {
            out.insert(q);
        }
    }
    return out;
}

}  // namespace ftqs
