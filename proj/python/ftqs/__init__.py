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

"""Python access to the ftqs sampling, decoding, distillation and routing core."""

import json as _json

from ._ftqs import (
    MsdShortfall,
    eval_formula,
    exact_distribution,
    fit_pf_exponent,
    l1_distance,
    logical_error_rate,
    overhead_report_json,
    plan_routes_text,
    plan_zmsd_json,
    run_pipeline,
    sample,
    simulate_distillation,
)

__all__ = [
    "MsdShortfall",
    "eval_formula",
    "exact_distribution",
    "fit_pf_exponent",
    "l1_distance",
    "logical_error_rate",
    "overhead_report",
    "plan_routes_text",
    "plan_zmsd",
    "run_pipeline",
    "sample",
    "simulate_distillation",
]


def plan_zmsd(eps, target, d, n):
    """Distillation plan as a dict."""
    return _json.loads(plan_zmsd_json(eps, target, d, n))


def overhead_report(mode, n, r=1.0, constants=None):
    """Overhead report dict; raises if re-evaluating any formula disagrees."""
    text, mismatch = overhead_report_json(mode, n, r, constants or {})
    if mismatch:
        raise RuntimeError(f"report entry {mismatch!r} does not re-evaluate")
    return _json.loads(text)
