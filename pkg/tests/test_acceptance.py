"""
Full-scale acceptance runs (deselected by default, run with -m slow)
"""

import pytest

from influence_tracker.harness import run_experiment
from influence_tracker.metrics import read_metrics
from influence_tracker.models import ExperimentConfig, SyntheticSpec

pytestmark = pytest.mark.slow

# broadcast network: 50 broadcasters with 9 followers each
SYNTHETIC = SyntheticSpec(nodes=500, edges_per_step=20, steps=5000, audience=9, seed=0)


def _run(tmp_path, algorithm, max_lifetime, name):
    config = ExperimentConfig(
        algorithm=algorithm,
        k=10,
        epsilon=0.2,
        lifetime="geom:0.001",
        max_lifetime=max_lifetime,
        synthetic=SYNTHETIC,
        out_path=tmp_path / f"{name}.csv",
        record_wall_clock=False,
    )
    return config, run_experiment(config)


def test_hist_approx_against_lazy_greedy(tmp_path):
    """Test a third of greedy's oracle calls at 90% of its value"""
    config, hist = _run(tmp_path, "hist-approx", 1000, "hist")
    _, lazy = _run(tmp_path, "lazy-greedy", 1000, "lazy")

    assert len(read_metrics(config.out_path)) == 5000 + 1
    assert hist.mean_oracle_calls <= lazy.mean_oracle_calls / 3
    assert hist.total_oracle_calls <= lazy.total_oracle_calls / 3
    assert hist.mean_value / lazy.mean_value >= 0.90


def test_hist_approx_against_basic_reduction(tmp_path):
    _, hist = _run(tmp_path, "hist-approx", 200, "hist")
    _, ring = _run(tmp_path, "basic-reduction", 200, "ring")

    assert hist.mean_value / ring.mean_value >= 0.95
    assert hist.mean_oracle_calls / ring.mean_oracle_calls <= 0.5


def test_full_scale_replay_is_identical(tmp_path):
    first, _ = _run(tmp_path, "hist-approx", 1000, "first")
    second, _ = _run(tmp_path, "hist-approx", 1000, "second")
    assert first.out_path.read_bytes() == second.out_path.read_bytes()
