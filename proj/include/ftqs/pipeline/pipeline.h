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

#ifndef FTQS_PIPELINE_PIPELINE_H
#define FTQS_PIPELINE_PIPELINE_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftqs/bounds_estimator/bounds.h"
#include "ftqs/graph_sampler/graph.h"
#include "ftqs/graph_sampler/sampler.h"

namespace ftqs {

enum class PipelineMode { kExactSmall, kErrorModel };
/// k4D: T distillation, one routing step. k3D: Y distillation and routing,
/// then T distillation and routing, on the substituted gadget.
enum class Architecture { k4D, k3D };
/// kIndependent flips each logical bit with probability p_f. kUnionBound
/// flips one uniformly chosen bit with probability min(1, #logical p_f).
enum class DecodeFailureModel { kIndependent, kUnionBound };

struct PipelineConfig {
    int n = 1;
    int k = 2;
    /// "gb", "gb_prime" or a path to a gadget JSON file.
    std::string gadget = "gb";
    Architecture arch = Architecture::k4D;
    PipelineMode mode = PipelineMode::kExactSmall;
    /// Readout code distance for exact_small: 1 (bare) or 3 (surface code).
    int distance = 1;
    /// Physical readout flip rate for exact_small.
    double p_phys = 0.0;
    /// Noisy-input infidelities fed to distillation (exact_small).
    double eps_T = 0.0;
    double eps_Y = 0.0;
    /// "reed_muller_15", "steane_7" or "none".
    std::string t_protocol = "reed_muller_15";
    std::string y_protocol = "steane_7";
    /// Distillation candidates per routing step; 0 picks 2 m + 2.
    int t_candidates = 0;
    int y_candidates = 0;
    /// error_model: decode-failure rate per logical qubit. When absent it is
    /// calibrated from (distance, p_phys) with calib_trials Monte Carlo runs.
    std::optional<double> p_f;
    /// error_model: distilled T infidelity (Z-dephased magic state).
    std::optional<double> eps_out;
    DecodeFailureModel decode_model = DecodeFailureModel::kIndependent;
    uint64_t calib_trials = 20000;
    uint64_t seed = 1;
    int threads = 1;
    /// Graph-state qubit cap for dense simulation.
    int cap = 20;

    /// Throws std::invalid_argument on bad values.
    void validate() const;
    /// Unknown keys throw std::invalid_argument.
    static PipelineConfig from_json_text(std::string_view text);
    std::string to_json_text() const;
};

/// Graph spec for the configured gadget and architecture.
GraphSpec pipeline_graph(const PipelineConfig &config);

/// Thrown by run_exact_small when a distillation round yields too few
/// accepted copies.
class MsdShortfall : public std::runtime_error {
   public:
    MsdShortfall(const std::string &stage, int needed, int successes, int candidates);
    std::string stage;
    int needed;
    int successes;
    int candidates;
};

struct RunRecord {
    int num_s = 0;
    int num_x = 0;
    /// Decoded logical outcomes.
    uint64_t s = 0;
    uint64_t x = 0;
    /// The same outcomes read without decoding (logical operator parity).
    uint64_t raw_s = 0;
    uint64_t raw_x = 0;
    int t_candidates = 0;
    int t_successes = 0;
    int t_needed = 0;
    int y_candidates = 0;
    int y_successes = 0;
    int y_needed = 0;
    /// "p=..;m=..;flags=..." per routing step.
    std::vector<std::string> routing_plans;
    /// Every routing step passed the stabilizer identity check.
    bool routing_verified = true;
    /// Quantum-classical feedback layers this run used.
    int feedback_layers = 0;
    double seconds = 0.0;

    std::string to_json_text() const;
};

/// One end-to-end run. Throws MsdShortfall, std::length_error above the
/// cap, std::invalid_argument on a bad config.
RunRecord run_exact_small(const PipelineConfig &config, uint64_t run_index = 0);

struct ExactSmallBatch {
    std::vector<RunRecord> records;
    uint64_t aborted = 0;
    /// Over completed runs (conditional on distillation success).
    OutcomeDistribution decoded;
    OutcomeDistribution raw;
    OutcomeDistribution exact;
    double l1_decoded = 0.0;
    double l1_raw = 0.0;
    double envelope = 0.0;
    /// Completed fraction (unconditional success rate).
    double success_rate = 0.0;
};

/// Runs `shots` independent exact_small runs (run i uses derive_seed(seed, i)).
ExactSmallBatch run_exact_small_batch(const PipelineConfig &config, uint64_t shots);

struct ErrorModelResult {
    OutcomeDistribution exact;
    OutcomeDistribution empirical;
    std::vector<uint64_t> samples;
    double p_f = 0.0;
    double eps_out = 0.0;
    int num_logical = 0;
    int num_T = 0;
    double l1 = 0.0;
    /// 4 sqrt(#outcomes / shots).
    double envelope = 0.0;
    /// Analytic l1 bounds for this p_f, eps_out.
    L1Chain bound;
};

/// Throws std::invalid_argument if p_f is absent and p_phys cannot
/// calibrate it (distance 1 with p_phys = 0 is treated as p_f = 0 only when
/// p_f is explicitly given).
ErrorModelResult run_error_model(const PipelineConfig &config, uint64_t shots);

/// Exact distribution with each T vertex independently Z-dephased with
/// probability eps (dense oracle for the error model).
OutcomeDistribution dephased_distribution(const GraphSpec &spec, double eps, size_t cap = kDefaultStatevectorCap);

/// 4 sqrt(outcomes / shots).
double sampling_envelope(size_t outcomes, uint64_t shots);

/// Feedback-layer count shared by all records, or -1 if they disagree or
/// the stream is empty.
int interaction_audit(const std::vector<RunRecord> &records);

struct DepthAudit {
    std::vector<std::pair<std::string, int>> stages;
    int total = 0;
    /// Colours used by the graph-state CZ colouring and the fixed slot count.
    int graph_colours_used = 0;
    int graph_cz_slots = 0;
    bool colouring_valid = false;
    std::string to_json_text() const;
};

DepthAudit quantum_depth_audit(const PipelineConfig &config);

/// Proper edge colouring with at most max_degree + 1 colours.
std::vector<int> edge_colouring(int num_vertices, const std::vector<std::pair<int, int>> &edges);
bool is_proper_edge_colouring(int num_vertices, const std::vector<std::pair<int, int>> &edges,
                              const std::vector<int> &colour);

}  // namespace ftqs

#endif
