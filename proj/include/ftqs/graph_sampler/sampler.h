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

#ifndef FTQS_GRAPH_SAMPLER_SAMPLER_H
#define FTQS_GRAPH_SAMPLER_SAMPLER_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ftqs/common/rng.h"
#include "ftqs/graph_sampler/graph.h"
#include "ftqs/graph_sampler/statevector.h"

namespace ftqs {

/// Rotated graph state: CZ on every edge of |+>^V, then Z(pi/4) on pi/4
/// vertices, Z(pi/2) on pi/2 vertices, then H on measured vertices (and on
/// outputs when spec.output_hadamard). Qubit i is vertex i.
StateVector graph_statevector(const GraphSpec &spec, size_t cap = kDefaultStatevectorCap);

/// Probability table over (s, x). Entry index is s | (x << num_s), with bit
/// j of s being measured vertex j and bit j of x being output row j.
struct OutcomeDistribution {
    int num_s = 0;
    int num_x = 0;
    std::vector<double> probs;

    size_t size() const {
        return probs.size();
    }
    static uint64_t index(uint64_t s, uint64_t x, int num_s) {
        return s | (x << num_s);
    }
    double prob(uint64_t s, uint64_t x) const {
        return probs[index(s, x, num_s)];
    }
    double total() const;
    /// Throws std::domain_error on negative entries or a sum off 1 by > tol.
    void validate(double tol = 1e-9) const;
    /// "s,x,probability" with s and x as bit strings (vertex 0 first).
    std::string to_csv() const;

    static OutcomeDistribution uniform(int num_s, int num_x);
    static OutcomeDistribution point_mass(int num_s, int num_x, uint64_t index);
    /// Normalized histogram of sampled indices.
    static OutcomeDistribution empirical(int num_s, int num_x, const std::vector<uint64_t> &samples);
};

/// Bit string of the low `width` bits, bit 0 first.
std::string bits_to_string(uint64_t value, int width);

OutcomeDistribution exact_distribution(const GraphSpec &spec, size_t cap = kDefaultStatevectorCap);

/// Draws outcomes by sequential conditional sampling: a binary tree of
/// partial sums over |amplitude|^2 fixes the highest vertex first, then each
/// lower vertex conditioned on the ones already drawn.
class OutcomeSampler {
   public:
    explicit OutcomeSampler(const GraphSpec &spec, size_t cap = kDefaultStatevectorCap);
    /// Samples computational-basis outcomes of an arbitrary state whose
    /// first num_s qubits are the measured vertices.
    OutcomeSampler(const StateVector &state, int num_s);

    int num_s() const {
        return num_s_;
    }
    int num_x() const {
        return num_x_;
    }
    /// Packed index s | (x << num_s).
    uint64_t sample_index(Rng &rng) const;
    std::pair<uint64_t, uint64_t> sample(Rng &rng) const;
    /// Shots split in fixed chunks, each with its own derived seed, so the
    /// result does not depend on `threads`.
    std::vector<uint64_t> sample_batch(size_t shots, uint64_t seed, int threads = 1) const;

   private:
    void build(const StateVector &sv);

    int num_s_;
    int num_x_;
    int levels_;
    // tree_[1] is the total, children of node i are 2i and 2i+1, leaves
    // start at 1 << levels_.
    std::vector<double> tree_;
};

/// One-off draw; builds the sampler each call.
std::pair<uint64_t, uint64_t> sample_outcome(const GraphSpec &spec, Rng &rng);

/// max over s of |sum_x D(s, x) - 2^{-#s}|.
double uniform_s_marginal_check(const OutcomeDistribution &dist);
double uniform_s_marginal_check(const GraphSpec &spec);

/// Fraction of outcomes with D >= alpha / #outcomes.
double anticoncentration_stats(const OutcomeDistribution &dist, double alpha);

/// Sum of |d1 - d2|. Throws std::invalid_argument on mismatched spaces.
double l1_distance(const OutcomeDistribution &d1, const OutcomeDistribution &d2);

}  // namespace ftqs

#endif
