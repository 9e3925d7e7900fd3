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

// Python module _ftqs: thin wrappers over the C++ core. Structured results
// come back as dicts or JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ftqs/bounds_estimator/bounds.h"
#include "ftqs/bounds_estimator/formula.h"
#include "ftqs/graph_sampler/sampler.h"
#include "ftqs/msd/distill.h"
#include "ftqs/msd/zmsd.h"
#include "ftqs/pipeline/pipeline.h"
#include "ftqs/routing/routing.h"
#include "ftqs/surface_code/surface_code.h"

namespace py = pybind11;
using namespace ftqs;

namespace {

GraphSpec graph_for(int n, int k, const std::string &gadget, bool output_hadamard) {
    PipelineConfig c;
    c.n = n;
    c.k = k;
    c.gadget = gadget;
    GraphSpec s = pipeline_graph(c);
    s.output_hadamard = output_hadamard;
    return s;
}

py::dict dist_dict(const OutcomeDistribution &d) {
    py::dict out;
    out["num_s"] = d.num_s;
    out["num_x"] = d.num_x;
    out["probs"] = d.probs;
    return out;
}

}  // namespace

PYBIND11_MODULE(_ftqs, m) {
    m.doc() = "ftqs core bindings";

    py::register_exception<MsdShortfall>(m, "MsdShortfall", PyExc_RuntimeError);

    m.def(
        "exact_distribution",
        [](int n, int k, const std::string &gadget, bool output_hadamard, size_t cap) {
            return dist_dict(exact_distribution(graph_for(n, k, gadget, output_hadamard), cap));
        },
        py::arg("n"), py::arg("k"), py::arg("gadget") = "gb", py::arg("output_hadamard") = true,
        py::arg("cap") = kDefaultStatevectorCap, "Exact outcome distribution; probs[s | x << num_s].");

    m.def(
        "sample",
        [](int n, int k, size_t shots, uint64_t seed, const std::string &gadget, int threads) {
            OutcomeSampler sampler(graph_for(n, k, gadget, true));
            return sampler.sample_batch(shots, seed, threads);
        },
        py::arg("n"), py::arg("k"), py::arg("shots"), py::arg("seed") = 1, py::arg("gadget") = "gb",
        py::arg("threads") = 1, "Packed outcome indices s | x << num_s.");

    m.def(
        "l1_distance",
        [](const std::vector<double> &a, const std::vector<double> &b) {
            if (a.size() != b.size()) {
                throw std::invalid_argument("l1_distance: length mismatch");
            }
            double t = 0.0;
            for (size_t i = 0; i < a.size(); i++) {
                t += std::abs(a[i] - b[i]);
            }
            return t;
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "logical_error_rate",
        [](int distance, double p, uint64_t trials, uint64_t seed, int threads) {
            RateEstimate r = logical_error_rate(distance, p, trials, seed, threads);
            py::dict out;
            out["distance"] = r.distance;
            out["p"] = r.p;
            out["trials"] = r.trials;
            out["failures"] = r.failures;
            out["p_l"] = r.p_l;
            out["ci_low"] = r.ci_low;
            out["ci_high"] = r.ci_high;
            return out;
        },
        py::arg("distance"), py::arg("p"), py::arg("trials"), py::arg("seed") = 1, py::arg("threads") = 1);

    m.def("fit_pf_exponent", &fit_pf_exponent, py::arg("points"));

    m.def(
        "simulate_distillation",
        [](const std::string &protocol, double eps, uint64_t shots, uint64_t seed) {
            DistillResult r = simulate_distillation(MsdProtocolSpec::builtin(protocol), eps, shots, seed);
            py::dict out;
            out["eps"] = r.eps;
            out["accept_rate"] = r.accept_rate;
            out["infidelity"] = r.infidelity;
            out["ci"] = r.ci;
            return out;
        },
        py::arg("protocol"), py::arg("eps"), py::arg("shots"), py::arg("seed") = 1);

    m.def(
        "plan_zmsd_json",
        [](double eps, double target, int d, double n) { return plan_zmsd(eps, target, d, n).to_json_text(); },
        py::arg("eps"), py::arg("target"), py::arg("d"), py::arg("n"));

    m.def(
        "plan_routes_text",
        [](int p, int mm, const std::vector<bool> &flags) {
            RoutingPlan plan = plan_routes(p, mm, flags);
            return py::make_tuple(plan.to_text(), verify_plan(plan));
        },
        py::arg("p"), py::arg("m"), py::arg("flags"), "(plan text, verified)");

    m.def(
        "overhead_report_json",
        [](const std::string &mode, double n, double r, const std::map<std::string, double> &constants) {
            ScalingParams sp;
            sp.n = n;
            sp.k = n;
            sp.r = r;
            for (const auto &[name, v] : constants) {
                sp.constants[name] = v;
            }
            if (mode != "4d" && mode != "3d") {
                throw std::invalid_argument("mode must be 4d or 3d");
            }
            ResourceReport rep = mode == "4d" ? overhead_4d(sp) : overhead_3d(sp);
            return py::make_tuple(rep.to_json_text(), rep.reevaluate());
        },
        py::arg("mode"), py::arg("n"), py::arg("r") = 1.0, py::arg("constants") = std::map<std::string, double>{},
        "(report JSON, first mismatching entry on re-evaluation or '')");

    m.def(
        "eval_formula",
        [](const std::string &expr, const std::map<std::string, double> &vars) {
            FormulaVars v(vars.begin(), vars.end());
            return eval_formula(expr, v);
        },
        py::arg("expr"), py::arg("vars") = std::map<std::string, double>{});

    m.def(
        "run_pipeline",
        [](const std::string &config_json, uint64_t shots) {
            PipelineConfig c = PipelineConfig::from_json_text(config_json);
            py::dict out;
            if (c.mode == PipelineMode::kExactSmall) {
                ExactSmallBatch b;
                {
                    py::gil_scoped_release release;
                    b = run_exact_small_batch(c, shots);
                }
                out["exact"] = dist_dict(b.exact);
                out["decoded"] = dist_dict(b.decoded);
                out["l1_decoded"] = b.l1_decoded;
                out["l1_raw"] = b.l1_raw;
                out["envelope"] = b.envelope;
                out["completed"] = b.records.size();
                out["aborted"] = b.aborted;
                out["feedback_layers"] = interaction_audit(b.records);
            } else {
                ErrorModelResult r;
                {
                    py::gil_scoped_release release;
                    r = run_error_model(c, shots);
                }
                out["exact"] = dist_dict(r.exact);
                out["empirical"] = dist_dict(r.empirical);
                out["l1"] = r.l1;
                out["envelope"] = r.envelope;
                out["bound"] = r.bound.total;
            }
            return out;
        },
        py::arg("config_json"), py::arg("shots"));
}
