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

// Dense reference linear algebra for the unit tests. Written from the
// textbook definitions only; nothing here calls into the library.

#ifndef FTQS_TESTS_DENSE_ORACLE_H
#define FTQS_TESTS_DENSE_ORACLE_H

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using M2 = std::array<C, 4>;  // row-major

// Operators on n qubits; qubit q is bit q of the basis index.
struct Mat {
    size_t n = 0;
    size_t dim = 1;
    std::vector<C> a;
    explicit Mat(size_t qubits = 0) : n(qubits), dim(size_t(1) << qubits), a(dim * dim, 0.0) {
    }
    C &at(size_t r, size_t c) {
        return a[r * dim + c];
    }
    C at(size_t r, size_t c) const {
        return a[r * dim + c];
    }
};

inline Mat identity(size_t n) {
    Mat m(n);
    for (size_t i = 0; i < m.dim; i++) {
        m.at(i, i) = 1.0;
    }
    return m;
}

inline Mat mul(const Mat &x, const Mat &y) {
    Mat m(x.n);
    for (size_t r = 0; r < m.dim; r++) {
        for (size_t k = 0; k < m.dim; k++) {
            C v = x.at(r, k);
            if (v == 0.0) {
                continue;
            }
            for (size_t c = 0; c < m.dim; c++) {
                m.at(r, c) += v * y.at(k, c);
            }
        }
    }
    return m;
}

inline Mat dagger(const Mat &x) {
    Mat m(x.n);
    for (size_t r = 0; r < m.dim; r++) {
        for (size_t c = 0; c < m.dim; c++) {
            m.at(r, c) = std::conj(x.at(c, r));
        }
    }
    return m;
}

inline double max_diff(const Mat &x, const Mat &y) {
    double d = 0.0;
    for (size_t i = 0; i < x.a.size(); i++) {
        d = std::max(d, std::abs(x.a[i] - y.a[i]));
    }
    return d;
}

// Tensor product of single-qubit factors, factor q acting on qubit q.
inline Mat product(const std::vector<M2> &f) {
    Mat m(f.size());
    for (size_t r = 0; r < m.dim; r++) {
        for (size_t c = 0; c < m.dim; c++) {
            C v = 1.0;
            for (size_t q = 0; q < f.size() && v != 0.0; q++) {
                v *= f[q][((r >> q) & 1) * 2 + ((c >> q) & 1)];
            }
            m.at(r, c) = v;
        }
    }
    return m;
}

inline M2 pauli2(char p) {
    const C i(0.0, 1.0);
    switch (p) {
        case 'I':
            return {1.0, 0.0, 0.0, 1.0};
        case 'X':
            return {0.0, 1.0, 1.0, 0.0};
        case 'Y':
            return {0.0, -i, i, 0.0};
        case 'Z':
            return {1.0, 0.0, 0.0, -1.0};
    }
    throw std::invalid_argument("bad Pauli letter");
}

// "+XIZ", "-iY", "ZZ".
inline Mat pauli(const std::string &text) {
    size_t pos = 0;
    C phase = 1.0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        phase = text[pos] == '-' ? -1.0 : 1.0;
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        phase *= C(0.0, 1.0);
        pos++;
    }
    std::vector<M2> f;
    for (; pos < text.size(); pos++) {
        f.push_back(pauli2(text[pos]));
    }
    Mat m = product(f);
    for (auto &v : m.a) {
        v *= phase;
    }
    return m;
}

inline M2 h2() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, r, r, -r};
}
inline M2 s2() {
    return {1.0, 0.0, 0.0, C(0.0, 1.0)};
}
// exp(-i theta Z / 2).
inline M2 rz2(double theta) {
    return {std::polar(1.0, -theta / 2.0), 0.0, 0.0, std::polar(1.0, theta / 2.0)};
}

inline Mat single(size_t n, size_t q, const M2 &g) {
    std::vector<M2> f(n, pauli2('I'));
    f[q] = g;
    return product(f);
}

// Permutation-with-phase gates on basis states.
inline Mat cz(size_t n, size_t a, size_t b) {
    Mat m = identity(n);
    for (size_t i = 0; i < m.dim; i++) {
        if (((i >> a) & 1) && ((i >> b) & 1)) {
            m.at(i, i) = -1.0;
        }
    }
    return m;
}
inline Mat cnot(size_t n, size_t control, size_t target) {
    Mat m(n);
    for (size_t i = 0; i < m.dim; i++) {
        size_t j = ((i >> control) & 1) ? i ^ (size_t(1) << target) : i;
        m.at(j, i) = 1.0;
    }
    return m;
}
inline Mat swap(size_t n, size_t a, size_t b) {
    Mat m(n);
    for (size_t i = 0; i < m.dim; i++) {
        size_t ba = (i >> a) & 1, bb = (i >> b) & 1;
        size_t j = i & ~((size_t(1) << a) | (size_t(1) << b));
        j |= (bb << a) | (ba << b);
        m.at(j, i) = 1.0;
    }
    return m;
}

using Vec = std::vector<C>;

inline Vec apply(const Mat &m, const Vec &v) {
    Vec out(m.dim, 0.0);
    for (size_t r = 0; r < m.dim; r++) {
        for (size_t c = 0; c < m.dim; c++) {
            out[r] += m.at(r, c) * v[c];
        }
    }
    return out;
}

inline C expectation(const Mat &m, const Vec &v) {
    Vec mv = apply(m, v);
    C t = 0.0;
    for (size_t i = 0; i < v.size(); i++) {
        t += std::conj(v[i]) * mv[i];
    }
    return t;
}

// Graph-state outcome table by explicit summation: psi(z) = 2^{-V/2}
// (-1)^{sum_edges z_a z_b}; vertex v is then read out after the one-qubit
// unitary u[v]. Returns |<b| (prod u) |psi>|^2 for every b.
inline std::vector<double> graph_outcomes(size_t nv, const std::vector<std::pair<int, int>> &edges,
                                          const std::vector<M2> &u) {
    const size_t dim = size_t(1) << nv;
    std::vector<C> psi(dim);
    for (size_t z = 0; z < dim; z++) {
        int parity = 0;
        for (auto [a, b] : edges) {
            parity ^= int((z >> a) & (z >> b) & 1);
        }
        psi[z] = (parity ? -1.0 : 1.0) / std::sqrt(double(dim));
    }
    std::vector<double> out(dim);
    for (size_t b = 0; b < dim; b++) {
        C amp = 0.0;
        for (size_t z = 0; z < dim; z++) {
            C w = psi[z];
            for (size_t v = 0; v < nv && w != 0.0; v++) {
                w *= u[v][((b >> v) & 1) * 2 + ((z >> v) & 1)];
            }
            amp += w;
        }
        out[b] = std::norm(amp);
    }
    return out;
}

inline double binomial_pmf(int n, int k, double p) {
    double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(lc + k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace oracle

#endif
