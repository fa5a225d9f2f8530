import os

import pytest

import coexsim

GOLDEN = os.environ.get("COEXSIM_GOLDEN_DIR", os.path.join(os.path.dirname(__file__), "..", "golden"))


def test_builtins_listed():
    names = coexsim.builtin_scenarios()
    for n in ("fig2", "fig5b", "fig5c", "fig6", "edge", "mixed", "nav", "fairness"):
        assert n in names


def test_fig5b_duty_cycle():
    out = coexsim.run_scenario("fig5b")
    m = out["summary"]["metrics"]
    assert m["channel_busy_fraction"] == pytest.approx(0.95)
    assert out["summary"]["compliance"]["pass"]
    assert out["trace"].startswith("0,")


def test_runs_are_deterministic_and_seeded():
    a = coexsim.run_scenario("mixed", seed=5, horizon_ns=50_000_000)
    b = coexsim.run_scenario("mixed", seed=5, horizon_ns=50_000_000)
    c = coexsim.run_scenario("mixed", seed=6, horizon_ns=50_000_000)
    assert a["trace"] == b["trace"]
    assert a["trace"] != c["trace"]


def test_canonical_layout():
    p = coexsim.build_preamble(500_000)
    assert p["cts_end"] == 544_000
    assert p["data_start"] == 1_000_000
    assert p["end"] == 10_000_000
    assert p["data_slots"] == 18


def test_lbt_window():
    assert coexsim.lbt_window_start(0) == 475_000
    assert coexsim.lbt_window_start(4, frame_start_ns=10_000_000) == 14_475_000


def test_jain():
    assert coexsim.jain_index([1.0, 1.0]) == pytest.approx(1.0)
    assert coexsim.jain_index([1.0, 0.0, 0.0, 0.0]) == pytest.approx(0.25)
    assert coexsim.jain_index([]) is None


def test_splitmix_reference():
    assert coexsim.SplitMix64(0).next() == 0xE220A8397B1DCDAF
    draws = coexsim.countdown_draws(7, 3, 32, 1000)
    assert all(0 <= d < 32 for d in draws)


def test_audit_and_errors():
    rep = coexsim.audit_trace(coexsim.run_scenario("edge")["trace"])
    assert rep["pass"]
    with pytest.raises(coexsim.TraceError):
        coexsim.audit_trace("1,0,a,\nbad\n")
    with pytest.raises(coexsim.ScenarioError):
        coexsim.run_scenario("no-such-scenario")


def test_golden_replay():
    assert coexsim.replay_golden("fig6", GOLDEN)["pass"]
