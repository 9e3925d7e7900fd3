# Copyright 2026 The ftqs Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import ftqs


def test_exact_distribution_is_normalized():
    d = ftqs.exact_distribution(1, 3)
    probs = np.array(d["probs"])
    assert probs.size == 2 ** (d["num_s"] + d["num_x"])
    assert probs.sum() == pytest.approx(1.0)
    # Uniform marginal over measured outcomes.
    table = probs.reshape(2 ** d["num_x"], 2 ** d["num_s"])
    assert np.allclose(table.sum(axis=0), 2.0 ** -d["num_s"])


def test_sampling_matches_table():
    d = ftqs.exact_distribution(1, 2)
    shots = 40000
    samples = np.array(ftqs.sample(1, 2, shots, seed=3))
    emp = np.bincount(samples, minlength=len(d["probs"])) / shots
    l1 = ftqs.l1_distance(list(emp), d["probs"])
    assert l1 < 4 * math.sqrt(len(d["probs"]) / shots)
    assert ftqs.sample(1, 2, 100, seed=5, threads=1) == ftqs.sample(1, 2, 100, seed=5, threads=3)


def test_decoder_rate():
    trials = 50000
    r = ftqs.logical_error_rate(1, 0.2, trials, seed=2)
    assert abs(r["p_l"] - 0.2) < 5 * math.sqrt(0.2 * 0.8 / trials)


def test_distillation_and_plan():
    r = ftqs.simulate_distillation("reed_muller_15", 0.01, 20000)
    assert 0.0 < r["accept_rate"] < 1.0
    plan = ftqs.plan_zmsd(0.01, 1e-12, 3, 16.0)
    assert plan["eps_out"] <= 1e-12


def test_routing_plan():
    text, ok = ftqs.plan_routes_text(7, 2, [c == "1" for c in "0100100"])
    assert ok
    assert "path 1" in text


def test_reports_replay():
    rep = ftqs.overhead_report("3d", 256)
    entries = {e["name"]: e for e in rep["entries"]}
    assert entries["per_logical"]["value"] == 36864.0
    assert ftqs.eval_formula("2^3 + ln(x)", {"x": 1.0}) == 8.0


def test_pipeline_noiseless():
    cfg = json.dumps({"n": 1, "k": 3, "seed": 2})
    out = ftqs.run_pipeline(cfg, 2000)
    assert out["aborted"] == 0
    assert out["l1_decoded"] < out["envelope"]
    assert out["feedback_layers"] == 1


def test_pipeline_rejects_unknown_keys():
    with pytest.raises(ValueError):
        ftqs.run_pipeline(json.dumps({"n": 1, "colour": "red"}), 10)
