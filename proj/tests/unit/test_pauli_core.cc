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

#include <random>

#include "dense_oracle.h"
#include "doctest.h"
#include "ftqs/common/rng.h"
#include "ftqs/pauli_core/clifford.h"
#include "ftqs/pauli_core/noise.h"
#include "ftqs/pauli_core/pauli_string.h"
#include "ftqs/pauli_core/tableau.h"

using namespace ftqs;

namespace {

PauliString random_pauli(size_t n, Rng &rng, bool hermitian = false) {
    PauliString p(n);
    for (size_t q = 0; q < n; q++) {
        p.set(q, "IXYZ"[rng() % 4]);
    }
    p.log_i = uint8_t(hermitian ? 2 * (rng() % 2) : rng() % 4);
    return p;
}

oracle::Mat gate_matrix(size_t n, const Gate &g) {
    switch (g.kind) {
        case GateKind::H:
            return oracle::single(n, g.q0, oracle::h2());
        case GateKind::S:
            return oracle::single(n, g.q0, oracle::s2());
        case GateKind::X:
            return oracle::single(n, g.q0, oracle::pauli2('X'));
        case GateKind::Y:
            return oracle::single(n, g.q0, oracle::pauli2('Y'));
        case GateKind::Z:
            return oracle::single(n, g.q0, oracle::pauli2('Z'));
        case GateKind::CZ:
            return oracle::cz(n, g.q0, g.q1);
        case GateKind::CNOT:
            return oracle::cnot(n, g.q0, g.q1);
        case GateKind::SWAP:
            return oracle::swap(n, g.q0, g.q1);
    }
    throw std::logic_error("gate");
}

Gate random_gate(size_t n, Rng &rng) {
    const GateKind kinds[] = {GateKind::H, GateKind::S,  GateKind::X,    GateKind::Y,
                              GateKind::Z, GateKind::CZ, GateKind::CNOT, GateKind::SWAP};
    Gate g{kinds[rng() % 8], size_t(rng() % n)};
    if (g.is_two_qubit()) {
        do {
            g.q1 = size_t(rng() % n);
        } while (g.q1 == g.q0);
    }
    return g;
}

CliffordCircuit random_circuit(size_t n, size_t gates, Rng &rng) {
    CliffordCircuit c(n);
    for (size_t i = 0; i < gates; i++) {
        c.append_gate_asap(random_gate(n, rng));
    }
    return c;
}

oracle::Mat circuit_matrix(const CliffordCircuit &c) {
    oracle::Mat u = oracle::identity(c.num_qubits());
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer.gates()) {
            u = oracle::mul(gate_matrix(c.num_qubits(), g), u);
        }
    }
    return u;
}

}  // namespace

TEST_CASE("text round trip and parsing") {
    PauliString p = PauliString::from_text("-iXYZI");
    CHECK(p.str() == "-iXYZI");
    CHECK(p.weight() == 3);
    CHECK(p.support() == std::vector<size_t>{0, 1, 2});
    CHECK(PauliString::from_text("ZZ").str() == "+ZZ");
    CHECK_THROWS_AS(PauliString::from_text("XQ"), std::invalid_argument);
    CHECK(PauliString::single(3, 1, 'Y').str() == "+IYI");
}

TEST_CASE("products and commutation match dense matrices") {
    Rng rng(11);
    for (int t = 0; t < 300; t++) {
        size_t n = 1 + rng() % 3;
        PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
        oracle::Mat ma = oracle::pauli(a.str()), mb = oracle::pauli(b.str());
        CHECK(oracle::max_diff(oracle::pauli((a * b).str()), oracle::mul(ma, mb)) < 1e-12);
        bool dense_commute = oracle::max_diff(oracle::mul(ma, mb), oracle::mul(mb, ma)) < 1e-12;
        CHECK(a.commutes(b) == dense_commute);
        CHECK(oracle::max_diff(oracle::pauli((a * a.inverse()).str()), oracle::identity(n)) < 1e-12);
    }
}

TEST_CASE("single-gate conjugation matches U P U^dagger") {
    Rng rng(12);
    for (int t = 0; t < 400; t++) {
        size_t n = 2 + rng() % 2;
        Gate g = random_gate(n, rng);
        PauliString p = random_pauli(n, rng, true);
        oracle::Mat u = gate_matrix(n, g);
        oracle::Mat want = oracle::mul(oracle::mul(u, oracle::pauli(p.str())), oracle::dagger(u));
        CHECK_MESSAGE(oracle::max_diff(oracle::pauli(conjugate_pauli(g, p).str()), want) < 1e-12,
                      g.str() << " on " << p.str());
    }
}

TEST_CASE("circuit conjugation and inverse") {
    Rng rng(13);
    for (int t = 0; t < 50; t++) {
        const size_t n = 3;
        CliffordCircuit c = random_circuit(n, 12, rng);
        PauliString p = random_pauli(n, rng, true);
        oracle::Mat u = circuit_matrix(c);
        oracle::Mat want = oracle::mul(oracle::mul(u, oracle::pauli(p.str())), oracle::dagger(u));
        CHECK(oracle::max_diff(oracle::pauli(conjugate_pauli(c, p).str()), want) < 1e-10);
        oracle::Mat ui = circuit_matrix(c.inverse());
        oracle::Mat prod = oracle::mul(ui, u);
        // Inverse up to a global phase.
        oracle::C phase = prod.at(0, 0);
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
        for (auto &v : prod.a) {
            v /= phase;
        }
        CHECK(oracle::max_diff(prod, oracle::identity(n)) < 1e-10);
    }
}

TEST_CASE("layers reject reused qubits and bad indices") {
    CliffordLayer layer(3);
    layer.add({GateKind::CZ, 0, 1});
    CHECK(layer.uses(1));
    CHECK_THROWS(layer.add({GateKind::H, 1}));
    CHECK_THROWS(layer.add({GateKind::H, 3}));
    CliffordCircuit c(3);
    c.append_gate_asap({GateKind::H, 0});
    c.append_gate_asap({GateKind::H, 1});
    c.append_gate_asap({GateKind::CZ, 0, 1});
    CHECK(c.depth() == 2);
}

TEST_CASE("circuit text round trip") {
    Rng rng(14);
    CliffordCircuit c = random_circuit(4, 15, rng);
    CliffordCircuit back = CliffordCircuit::from_text(c.to_text());
    CHECK(back.to_text() == c.to_text());
    CHECK(back.depth() == c.depth());
    CHECK_THROWS(CliffordCircuit::from_text("QUBITS 2\nFOO 0\n"));
}

TEST_CASE("pushing stage errors to the end matches dense products") {
    Rng rng(15);
    for (int t = 0; t < 40; t++) {
        const size_t n = 3;
        CliffordCircuit c = random_circuit(n, 8, rng);
        std::vector<PauliString> stages;
        for (size_t i = 0; i < c.depth() + 2; i++) {
            stages.push_back(random_pauli(n, rng, true));
        }
        // E_out E_d U_d ... E_1 U_1 E_prep
        oracle::Mat noisy = oracle::pauli(stages[0].str());
        for (size_t l = 0; l < c.depth(); l++) {
            for (const auto &g : c.layers()[l].gates()) {
                noisy = oracle::mul(gate_matrix(n, g), noisy);
            }
            noisy = oracle::mul(oracle::pauli(stages[l + 1].str()), noisy);
        }
        noisy = oracle::mul(oracle::pauli(stages.back().str()), noisy);
        PauliString e = push_noise_to_end(c, stages);
        oracle::Mat got = oracle::mul(oracle::pauli(e.str()), circuit_matrix(c));
        CHECK(oracle::max_diff(got, noisy) < 1e-10);
    }
}

TEST_CASE("lightcone bound contains the support of conjugated errors") {
    Rng rng(16);
    for (int t = 0; t < 100; t++) {
        const size_t n = 5;
        CliffordCircuit c = random_circuit(n, 10, rng);
        size_t q = rng() % n;
        auto cone = lightcone_support_bound(c, {q});
        for (char letter : {'X', 'Z'}) {
            PauliString out = conjugate_pauli(c, PauliString::single(n, q, letter));
            for (size_t s : out.support()) {
                CHECK(cone.count(s) == 1);
            }
        }
    }
}

TEST_CASE("stabilizer tableau agrees with dense expectation values") {
    Rng rng(17);
    for (int t = 0; t < 40; t++) {
        const size_t n = 3;
        CliffordCircuit c = random_circuit(n, 14, rng);
        StabilizerState st(n);
        st.apply(c);
        oracle::Vec v(size_t(1) << n, 0.0);
        v[0] = 1.0;
        v = oracle::apply(circuit_matrix(c), v);
        for (int k = 0; k < 20; k++) {
            PauliString p = random_pauli(n, rng, true);
            double e = oracle::expectation(oracle::pauli(p.str()), v).real();
            int peek = st.peek(p);
            if (std::abs(e) < 1e-9) {
                CHECK(peek == 0);
            } else {
                CHECK(peek == (e > 0 ? 1 : -1));
            }
        }
    }
}

TEST_CASE("measurement collapses consistently") {
    Rng rng(18);
    StabilizerState st(2);
    st.apply(Gate{GateKind::H, 0});
    st.apply(Gate{GateKind::CNOT, 0, 1});
    PauliString z0 = PauliString::from_text("ZI"), z1 = PauliString::from_text("IZ");
    bool b0 = st.measure(z0, rng, true);
    CHECK(st.last_was_random());
    CHECK(b0 == true);
    bool b1 = st.measure(z1, rng);
    CHECK_FALSE(st.last_was_random());
    CHECK(b1 == true);
    CHECK(st.peek(PauliString::from_text("ZZ")) == 1);
}

TEST_CASE("local stochastic sampling rate") {
    Rng rng(19);
    const size_t n = 50;
    const double p = 0.2;
    size_t hits = 0, trials = 400;
    for (size_t t = 0; t < trials; t++) {
        hits += sample_local_stochastic(n, p, rng).weight();
    }
    double rate = double(hits) / double(n * trials);
    // Binomial standard deviation about 0.0028.
    CHECK(std::abs(rate - p) < 0.015);
    NoiseSpec spec = NoiseSpec::uniform(0.01, 3);
    CHECK_NOTHROW(spec.validate(3));
    CHECK_THROWS(spec.validate(2));
    NoiseSpec bad;
    bad.p_out = 1.0;
    CHECK_THROWS(bad.validate());
}
