import json
import math

import numpy as np
import pytest

from midi_index import power as P
from midi_index.baselines import spearman


class TestCutoff:
    @pytest.mark.parametrize("reps, rank", [(500, 475), (20, 19), (100, 95), (21, 20)])
    def test_index(self, reps, rank):
        assert P.cutoff_index(reps) == rank

    def test_order_statistic(self):
        v = np.arange(500.0)[::-1]
        assert P.quantile_cutoff(v) == 474.0

    def test_all_equal(self):
        assert P.quantile_cutoff(np.full(20, 0.3)) == 0.3

    def test_min_reps(self):
        with pytest.raises(ValueError):
            P.null_cutoff("midi", reps=10)


def test_noiseless_line_full_power():
    cut = P.null_cutoff("midi", 40, 500, seed=1)
    assert cut < 1.0
    assert P.power_at_level("midi", "line", 0.0, 30, 500, cut, seed=2) == 1.0


def test_null_calibration():
    reps = 500
    cut = P.null_cutoff("midi", reps, 200, seed=10)
    p = P.power_at_level("midi", "uniform_2d", 0.0, reps, 200, cut, seed=11)
    assert abs(p - 0.05) <= 3 * math.sqrt(0.05 * 0.95 / reps)


def test_ties_do_not_reject():
    # every noiseless line replicate scores exactly the cutoff
    v = P.measure_function("pearson")
    from midi_index.datagen import generate

    s = generate("line", 300, 0)
    cut = v(s.xs, s.ys)
    assert P.power_at_level("pearson", "line", 0.0, 20, 300, cut, seed=0) == 0.0


def test_curve_structure_and_determinism():
    a = P.power_curve("midi", "step", reps=20, n_points=200, seed=3)
    b = P.power_curve("midi", "step", reps=20, n_points=200, seed=3)
    assert len(a.levels) == 30
    assert a.levels == b.levels and a.cutoff == b.cutoff
    assert all(0.0 <= p <= 1.0 for p in a.powers)
    assert a.sigmas[0] == pytest.approx(0.5) and a.sigmas[-1] == pytest.approx(15.0)
    d = json.loads(a.to_json())
    assert len(d["levels"]) == 30 and d["measure"] == "midi" and d["noise_scale"] == 5.0


def test_parallel_matches_serial():
    a = P.power_curve("dcor", "circle", reps=20, n_points=100, seed=4, jobs=1)
    b = P.power_curve("dcor", "circle", reps=20, n_points=100, seed=4, jobs=3)
    assert a.levels == b.levels and a.cutoff == b.cutoff


@pytest.mark.parametrize("measure", P.MEASURES)
def test_power_decreases_with_noise(measure):
    c = P.power_curve(measure, "line", reps=100, n_points=200, seed=5)
    assert spearman(c.sigmas, c.powers) <= 0


def test_unknown_measure():
    with pytest.raises(ValueError):
        P.measure_function("mic")
