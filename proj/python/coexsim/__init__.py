"""Python bindings for the coexsim discrete-event simulator."""

import json

from ._core import (
    LbtError,
    ScenarioError,
    SplitMix64,
    TraceError,
    audit_trace,
    build_preamble,
    builtin_scenarios,
    countdown_draws,
    jain_index,
    lbt_window_start,
    replay_golden,
)
from ._core import run_scenario as _run_scenario


def run_scenario(scenario, seed=None, horizon_ns=None):
    """Run a scenario; the summary is returned as a dict."""
    out = _run_scenario(scenario, seed, horizon_ns)
    out["summary"] = json.loads(out["summary"])
    return out


__all__ = [
    "LbtError",
    "ScenarioError",
    "SplitMix64",
    "TraceError",
    "audit_trace",
    "build_preamble",
    "builtin_scenarios",
    "countdown_draws",
    "jain_index",
    "lbt_window_start",
    "replay_golden",
    "run_scenario",
]
