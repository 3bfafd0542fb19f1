"""Smoke tests for the python bindings: exact values, bounds, determinism."""

import json
import math

import pytest

import framelet

HALF_TILES = json.dumps(
    {
        "system": {
            "kind": "translate-family",
            "rule": "periodic-tiling",
            "lambda": "1/2",
            "period": "1/2",
            "bases": [[{"lo": 0, "hi": "1/2", "a0_re": 2}]],
        },
        "analyses": [{"kind": "bounds"}],
    }
)

SHANNON = json.dumps(
    {
        "system": {
            "kind": "translate-family",
            "rule": "periodic-tiling",
            "lambda": 1,
            "period": 1,
            "bases": [[{"lo": 0, "hi": 1, "a0_re": 1}]],
        },
        "analyses": [{"kind": "bounds"}],
    }
)

RAMP = [
    (0.0, 1.0, 1.0, 0.0, 1.0, 0.0),  # 1 + g on (0, 1]
    (1.0, 2.0, 0.0, 0.0, 1.0, 0.0),  # g on (1, 2]
]


def test_norm_squared_exact():
    assert framelet.norm_squared(RAMP) == pytest.approx(14.0 / 3.0, abs=1e-12)


def test_eval_spectrum_phase():
    val = framelet.eval_spectrum(RAMP, 0.25, 1.0)
    expected = 2.0 * complex(math.cos(-0.5 * math.pi), math.sin(-0.5 * math.pi))
    assert val == pytest.approx(expected, abs=1e-12)


def test_bounds_half_tiles_tight():
    b = framelet.bounds_from_config_text(HALF_TILES)
    assert b["alpha"] == pytest.approx(2.0, abs=1e-12)
    assert b["beta"] == pytest.approx(2.0, abs=1e-12)
    assert b["is_tight"]
    assert not b["is_parseval"]


def test_bounds_shannon_parseval():
    b = framelet.bounds_from_config_text(SHANNON)
    assert b["is_parseval"]


def test_run_config_text_deterministic():
    first = framelet.run_config_text(HALF_TILES)
    second = framelet.run_config_text(HALF_TILES)
    assert first == second
    report = json.loads(first)
    assert report["schemaVersion"] == 1
    assert report["bounds"]["alpha"]["value"] == pytest.approx(2.0)
    assert report["bounds"]["alpha"]["provenance"] == "analytic"


def test_error_carries_code():
    with pytest.raises(ValueError, match="config-parse"):
        framelet.run_config_text("{}")
