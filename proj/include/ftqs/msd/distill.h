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

#ifndef FTQS_MSD_DISTILL_H
#define FTQS_MSD_DISTILL_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ftqs/common/rng.h"
#include "ftqs/pauli_core/pauli_string.h"

namespace ftqs {

/// A small distillation circuit: a stabilizer code prepared in |+L>, a
/// transversal magic gate (T for magic 'T', S for magic 'Y') whose every
/// physical application carries an independent noisy-input Pauli error, then
/// measurement of all checks with post-selection on the all-zero syndrome.
/// The parametric fields (d, gamma, C) feed the planning layer.
struct MsdProtocolSpec {
    std::string name;
    char magic = 'T';
    int num_qubits = 0;
    std::vector<PauliString> checks;
    PauliString logical_x;
    PauliString logical_z;
    int d = 3;
    double gamma = 1.0;
    double C = 1.0;
    int inputs_per_round = 0;
    int outputs_per_round = 1;

    /// Throws std::invalid_argument on inconsistent specs (non-commuting
    /// checks, logicals that fail to anticommute, more than 64 qubits).
    void validate() const;
    /// Squared Bloch components (x, y, z) of the ideal output state.
    std::vector<double> ideal_bloch_squared() const;

    static MsdProtocolSpec from_json_text(std::string_view text);
    static MsdProtocolSpec from_json_file(const std::string &path);
    std::string to_json_text() const;

    /// 15-qubit punctured Reed-Muller code with transversal T.
    static MsdProtocolSpec reed_muller_15();
    /// 7-qubit Steane code with transversal S.
    static MsdProtocolSpec steane_7();
    /// Looks up "reed_muller_15" / "steane_7" (aliases "15to1", "7to1").
    static MsdProtocolSpec builtin(std::string_view name);
};

/// Bit-packed Pauli error pattern, bit q for qubit q.
struct ErrorPattern {
    uint64_t x = 0;
    uint64_t z = 0;
};

struct PatternOutcome {
    bool accepted = false;
    /// Output infidelity; meaningful only when accepted.
    double infidelity = 0.0;
};

/// Precomputed check masks for fast classification.
class DistillationModel {
   public:
    explicit DistillationModel(const MsdProtocolSpec &spec);
    const MsdProtocolSpec &spec() const {
        return spec_;
    }
    int num_qubits() const {
        return spec_.num_qubits;
    }
    PatternOutcome classify(const ErrorPattern &e) const;
    /// Residual logical Pauli ('I', 'X', 'Y' or 'Z') of an accepted pattern,
    /// or '\0' when the syndrome is non-zero.
    char logical_class(const ErrorPattern &e) const;
    /// Each qubit independently gets X, Y or Z with probability eps/3 each.
    ErrorPattern sample(double eps, Rng &rng) const;
    /// Uniform pattern with exactly w non-identity factors.
    ErrorPattern sample_weight(int w, Rng &rng) const;

   private:
    MsdProtocolSpec spec_;
    std::vector<ErrorPattern> checks_;
    ErrorPattern lx_, lz_;
    std::vector<double> bloch2_;
};

enum class DistillMethod { kStratified, kPlain };

struct DistillResult {
    double eps = 0.0;
    uint64_t shots = 0;
    double accept_rate = 0.0;
    double infidelity = 0.0;
    /// Half-width of a 95% interval on the infidelity.
    double ci = 0.0;
    DistillMethod method = DistillMethod::kStratified;
};

struct DistillOptions {
    DistillMethod method = DistillMethod::kStratified;
    /// Stratified mode enumerates a weight stratum exactly when it holds at
    /// most this many patterns.
    uint64_t exhaustive_cap = 200000;
    int threads = 1;
};

/// Throws std::invalid_argument unless 0 <= eps < 0.5 and shots >= 1.
DistillResult simulate_distillation(const MsdProtocolSpec &protocol, double eps, uint64_t shots, uint64_t seed,
                                    const DistillOptions &opts = {});

/// "eps,shots,accept_rate,infidelity,ci".
std::string distill_sweep_csv(const std::vector<DistillResult> &rows);

/// Least-squares slope of ln y against ln x. Throws on fewer than two
/// points or non-positive values.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

}  // namespace ftqs

#endif
