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

#include "ftqs/graph_sampler/statevector.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ftqs {

namespace {

void check_cap(size_t n, size_t cap) {
    if (n > cap) {
        throw std::length_error("statevector of " + std::to_string(n) + " qubits exceeds the cap of " +
                                std::to_string(cap));
    }
}

}  // namespace

StateVector::StateVector(size_t num_qubits, size_t cap) : n_(num_qubits) {
    check_cap(num_qubits, cap);
    amp_.assign(size_t(1) << n_, cplx(0.0, 0.0));
    amp_[0] = 1.0;
}

StateVector StateVector::product(const std::vector<Qubit1> &qubits, size_t cap) {
    StateVector sv(qubits.size(), cap);
    size_t dim = sv.amp_.size();
    for (size_t i = 0; i < dim; i++) {
        cplx a = 1.0;
        for (size_t q = 0; q < qubits.size(); q++) {
            a *= qubits[q][(i >> q) & 1];
        }
        sv.amp_[i] = a;
    }
    return sv;
}

void StateVector::apply_1q(size_t q, const Matrix2 &m) {
    size_t bit = size_t(1) << q;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (i & bit) {
            continue;
        }
        cplx a0 = amp_[i];
        cplx a1 = amp_[i | bit];
        amp_[i] = m[0] * a0 + m[1] * a1;
        amp_[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void StateVector::apply_h(size_t q) {
    const double r = 1.0 / std::sqrt(2.0);
    size_t bit = size_t(1) << q;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (i & bit) {
            continue;
        }
        cplx a0 = amp_[i];
        cplx a1 = amp_[i | bit];
        amp_[i] = (a0 + a1) * r;
        amp_[i | bit] = (a0 - a1) * r;
    }
}

void StateVector::apply_s(size_t q) {
    apply_phase(q, M_PI / 2.0);
}

void StateVector::apply_phase(size_t q, double phi) {
    cplx f = std::polar(1.0, phi);
    size_t bit = size_t(1) << q;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (i & bit) {
            amp_[i] *= f;
        }
    }
}

void StateVector::apply_rz(size_t q, double theta) {
    cplx f0 = std::polar(1.0, -theta / 2.0);
    cplx f1 = std::polar(1.0, theta / 2.0);
    size_t bit = size_t(1) << q;
    for (size_t i = 0; i < amp_.size(); i++) {
        amp_[i] *= (i & bit) ? f1 : f0;
    }
}

void StateVector::apply_cz(size_t a, size_t b) {
    size_t mask = (size_t(1) << a) | (size_t(1) << b);
    for (size_t i = 0; i < amp_.size(); i++) {
        if ((i & mask) == mask) {
            amp_[i] = -amp_[i];
        }
    }
}

void StateVector::apply_cnot(size_t control, size_t target) {
    size_t cb = size_t(1) << control;
    size_t tb = size_t(1) << target;
    for (size_t i = 0; i < amp_.size(); i++) {
        if ((i & cb) && !(i & tb)) {
            std::swap(amp_[i], amp_[i | tb]);
        }
    }
}

void StateVector::apply_swap(size_t a, size_t b) {
    size_t ab = size_t(1) << a;
    size_t bb = size_t(1) << b;
    for (size_t i = 0; i < amp_.size(); i++) {
        if ((i & ab) && !(i & bb)) {
            std::swap(amp_[i], amp_[(i ^ ab) | bb]);
        }
    }
}

void StateVector::apply(const Gate &gate) {
    switch (gate.kind) {
        case GateKind::H:
            apply_h(gate.q0);
            break;
        case GateKind::S:
            apply_s(gate.q0);
            break;
        case GateKind::X:
            apply_1q(gate.q0, {0.0, 1.0, 1.0, 0.0});
            break;
        case GateKind::Y:
            apply_1q(gate.q0, {0.0, cplx(0, -1), cplx(0, 1), 0.0});
            break;
        case GateKind::Z:
            apply_phase(gate.q0, M_PI);
            break;
        case GateKind::CZ:
            apply_cz(gate.q0, gate.q1);
            break;
        case GateKind::CNOT:
            apply_cnot(gate.q0, gate.q1);
            break;
        case GateKind::SWAP:
            apply_swap(gate.q0, gate.q1);
            break;
    }
}

void StateVector::apply(const CliffordCircuit &circuit) {
    for (const auto &layer : circuit.layers()) {
        for (const auto &g : layer.gates()) {
            apply(g);
        }
    }
}

void StateVector::apply_pauli(const PauliString &pauli) {
    if (pauli.num_qubits() != n_) {
        throw std::invalid_argument("Pauli width mismatch");
    }
    size_t xmask = 0, zmask = 0, ymask = 0;
    for (size_t q = 0; q < n_; q++) {
        xmask |= size_t(pauli.xs[q]) << q;
        zmask |= size_t(pauli.zs[q]) << q;
        ymask |= size_t(pauli.xs[q] & pauli.zs[q]) << q;
    }
    // Y = i X Z, so each Y factor contributes an extra i.
    unsigned base = pauli.log_i + unsigned(__builtin_popcountll(ymask));
    static const cplx kI[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    std::vector<cplx> out(amp_.size());
    for (size_t i = 0; i < amp_.size(); i++) {
        unsigned sign = unsigned(__builtin_popcountll(i & zmask)) & 1;
        out[i ^ xmask] = kI[(base + 2 * sign) & 3] * amp_[i];
    }
    amp_.swap(out);
}

double StateVector::norm2() const {
    double s = 0.0;
    for (const auto &a : amp_) {
        s += std::norm(a);
    }
    return s;
}

void StateVector::normalize() {
    double s = std::sqrt(norm2());
    if (s == 0.0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    for (auto &a : amp_) {
        a /= s;
    }
}

double StateVector::prob_one(size_t q) const {
    size_t bit = size_t(1) << q;
    double p = 0.0;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (i & bit) {
            p += std::norm(amp_[i]);
        }
    }
    return p / norm2();
}

double StateVector::project(size_t q, bool b) {
    size_t bit = size_t(1) << q;
    double total = norm2();
    double kept = 0.0;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (bool(i & bit) != b) {
            amp_[i] = 0.0;
        } else {
            kept += std::norm(amp_[i]);
        }
    }
    if (kept > 0.0) {
        normalize();
    }
    return kept / total;
}

bool StateVector::measure(size_t q, Rng &rng, std::optional<bool> forced) {
    double p1 = prob_one(q);
    bool outcome;
    if (forced.has_value()) {
        outcome = *forced;
        if ((outcome && p1 < 1e-12) || (!outcome && p1 > 1.0 - 1e-12)) {
            outcome = !outcome;
        }
    } else {
        outcome = uniform01(rng) < p1;
    }
    project(q, outcome);
    return outcome;
}

cplx StateVector::expectation(const PauliString &pauli) const {
    StateVector copy = *this;
    copy.apply_pauli(pauli);
    return inner(copy) / norm2();
}

cplx StateVector::inner(const StateVector &other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("state width mismatch");
    }
    cplx s = 0.0;
    for (size_t i = 0; i < amp_.size(); i++) {
        s += std::conj(amp_[i]) * other.amp_[i];
    }
    return s;
}

}  // namespace ftqs
