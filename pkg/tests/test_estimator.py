import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from midi_index import estimator as E
from midi_index.datagen import generate

# mpmath, 30 digits
TEN_POW_03_TIMES_01 = 0.199526231496887960135245539674
ENTROPY_1_3 = 0.562335144618808350288030315224
MI_2_1_0_1 = 0.215761554338835695579414254495
FOUR_POINT_LENGTH = 0.382899451665678335599542315593
FOUR_POINT_HX = 1.03972077083991796412584818219


class TestScale:
    def test_affine(self):
        assert E.scale_to_unit([2, 4, 6]).tolist() == [0.0, 0.5, 1.0]

    def test_unit_identity(self):
        assert E.scale_to_unit([0, 1]).tolist() == [0.0, 1.0]

    def test_constant(self):
        with pytest.raises(E.DegenerateAxis):
            E.scale_to_unit([5, 5, 5])


class TestMaximalSpacing:
    @pytest.mark.parametrize(
        "values, expected",
        [
            ([0, 0.2, 0.9, 1.0], 0.7),
            ([0, 0.25, 0.5, 0.75, 1], 0.25),
            ([0, 1], 1.0),
        ],
    )
    def test_examples(self, backend, values, expected):
        assert E.maximal_spacing(np.array(values)) == pytest.approx(expected, abs=1e-15)

    def test_all_equal(self, backend):
        with pytest.raises(E.DegenerateAxis):
            E.maximal_spacing(np.zeros(4))

    def test_duplicates_never_win(self, backend):
        assert E.maximal_spacing(np.array([0, 0, 0, 0.4, 0.4, 1.0])) == pytest.approx(0.6)


class TestPartitions:
    def test_fixed_width_n1000(self):
        p = E.fixed_width_partition(1000, 0.1, 0.1)
        assert p.bin_length == pytest.approx(TEN_POW_03_TIMES_01, rel=1e-14)
        assert p.bin_count == 6

    def test_fixed_width_small_c_limit(self):
        p = E.fixed_width_partition(4, 1e-15, 0.3)
        assert p.bin_length == pytest.approx(0.3, rel=1e-12)

    def test_fixed_width_clamped(self):
        p = E.fixed_width_partition(100, 0.5, 0.2)
        assert p.bin_length == 1.0
        assert p.bin_count == 1

    @pytest.mark.parametrize("n, bins", [(1000, 3), (10000, 4), (50, 2), (2, 2), (999, 2), (10**6, 6)])
    def test_fixed_count(self, n, bins):
        assert E.fixed_count_partition(n).bin_count == bins

    def test_bad_c(self):
        with pytest.raises(ValueError):
            E.fixed_width_partition(10, 1.0, 0.5)
        with pytest.raises(ValueError):
            E.EstimatorConfig(c=0.0)


class TestAssignBins:
    def test_two_equal_bins(self, backend):
        spec = E.PartitionSpec("y", "fixed_count", 2)
        assert E.assign_bins([0, 0.5, 1.0], spec).tolist() == [0, 1, 1]

    def test_left_closed_boundary(self, backend):
        spec = E.PartitionSpec("x", "fixed_width", 6, TEN_POW_03_TIMES_01)
        assert E.assign_bins([TEN_POW_03_TIMES_01], spec).tolist() == [1]

    def test_single_bin(self, backend):
        spec = E.PartitionSpec("x", "fixed_width", 1, 1.0)
        assert E.assign_bins([0, 0.3, 1.0], spec).tolist() == [0, 0, 0]

    def test_one_goes_to_last_cell_on_exact_multiple(self, backend):
        spec = E.PartitionSpec("x", "fixed_width", 4, 0.25)
        assert E.assign_bins([0.0, 0.25, 0.999, 1.0], spec).tolist() == [0, 1, 3, 3]


class TestJointHistogram:
    def test_counts_and_marginals(self, backend):
        h = E.build_joint_histogram([0, 0, 1], [0, 1, 1], 2, 2)
        assert h.counts.tolist() == [[1, 1], [0, 1]]
        assert h.row_marginals.tolist() == [2, 1]
        assert h.col_marginals.tolist() == [1, 2]
        assert h.n == 3

    def test_empty_cells_stay_zero(self, backend):
        h = E.build_joint_histogram([0], [0], 3, 3)
        assert h.counts.sum() == 1
        assert (h.counts == 0).sum() == 8

    def test_diagonal(self, backend):
        h = E.build_joint_histogram([0, 1, 2], [0, 1, 2], 3, 3)
        assert h.counts.tolist() == np.eye(3, dtype=int).tolist()


class TestPluginEstimates:
    def test_entropy_uniform_two(self):
        assert E.entropy_hat([2, 2], 4) == pytest.approx(math.log(2), abs=1e-15)

    def test_entropy_single_cell(self):
        assert E.entropy_hat([4], 4) == 0.0

    def test_entropy_1_3(self):
        assert E.entropy_hat([1, 3], 4) == pytest.approx(ENTROPY_1_3, abs=1e-15)

    def test_entropy_ignores_zeros(self):
        assert E.entropy_hat([2, 0, 2], 4) == pytest.approx(math.log(2), abs=1e-15)

    def test_mi_perfect(self):
        assert E.mutual_information_hat(E.JointHistogram(np.array([[2, 0], [0, 2]]))) == pytest.approx(math.log(2))

    def test_mi_independent(self):
        assert E.mutual_information_hat(E.JointHistogram(np.array([[1, 1], [1, 1]]))) == 0.0

    def test_mi_brute_force_value(self):
        h = E.JointHistogram(np.array([[2, 1], [0, 1]]))
        assert E.mutual_information_hat(h) == pytest.approx(MI_2_1_0_1, abs=1e-15)


def _hist_strategy():
    return arrays(np.int64, st.tuples(st.integers(1, 6), st.integers(1, 6)), elements=st.integers(0, 50)).filter(
        lambda a: a.sum() > 0
    )


@given(_hist_strategy())
def test_mi_symmetric_under_transpose(counts):
    h = E.JointHistogram(counts)
    assert E.mutual_information_hat(h) == pytest.approx(E.mutual_information_hat(h.transpose()), abs=1e-12)


@given(_hist_strategy())
def test_plugin_identity(counts):
    h = E.JointHistogram(counts)
    n = h.n
    hxy = E.entropy_hat(counts.ravel(), n)
    expected = E.entropy_hat(h.row_marginals, n) + E.entropy_hat(h.col_marginals, n) - hxy
    assert E.mutual_information_hat(h) == pytest.approx(max(expected, 0.0), abs=1e-10)


@given(st.lists(st.integers(1, 40), min_size=2, max_size=6))
def test_perfect_bijection_gives_one(sizes):
    counts = np.diag(sizes)
    h = E.JointHistogram(counts)
    mi = E.mutual_information_hat(h)
    hmin = min(E.entropy_hat(h.row_marginals), E.entropy_hat(h.col_marginals))
    assert mi / hmin == pytest.approx(1.0, abs=1e-12)


class TestDirectional:
    def test_four_point_hand_enumeration(self, backend):
        x = [0.0, 1 / 3, 2 / 3, 1.0]
        d = E.midi_directional(x, x, E.EstimatorConfig(0.1))
        assert d.spacing_partition.bin_length == pytest.approx(FOUR_POINT_LENGTH, rel=1e-14)
        assert d.histogram.row_marginals.tolist() == [2, 1, 1]
        assert d.histogram.col_marginals.tolist() == [2, 2]
        assert d.h_spacing == pytest.approx(FOUR_POINT_HX, abs=1e-14)
        assert d.h_count == pytest.approx(math.log(2), abs=1e-15)
        assert d.mi_hat == pytest.approx(math.log(2), abs=1e-15)
        assert d.value == pytest.approx(1.0, abs=1e-14)
        assert not d.degenerate

    def test_single_y_cell_is_degenerate(self):
        # two points -> bin length clamps to 1 -> one x cell -> zero entropy
        d = E.midi_directional([0.0, 1.0], [0.0, 1.0])
        assert d.value == 0.0
        assert d.degenerate

    def test_bounded_by_one(self):
        rng = np.random.default_rng(4)
        x, y = rng.random(300), rng.random(300)
        d = E.midi_directional(x, y)
        assert 0.0 <= d.mi_hat <= min(d.h_spacing, d.h_count) + 1e-12


class TestMidi:
    def test_report_is_max_of_passes(self):
        s = generate("parabola", 2000, 3)
        r = E.midi(s.xs, s.ys)
        assert r.midi == max(r.midi_x, r.midi_y)
        assert r.midi_x == r.x_pass.value
        assert r.midi_y == r.y_pass.value

    def test_report_entropies_follow_variables(self):
        s = generate("half_parabola", 500, 1)
        r = E.midi(s.xs, s.ys)
        best = r.y_pass if r.midi_y > r.midi_x else r.x_pass
        assert r.mi_hat == best.mi_hat
        if best is r.x_pass:
            assert (r.hx_hat, r.hy_hat) == (best.h_spacing, best.h_count)
        else:
            assert (r.hx_hat, r.hy_hat) == (best.h_count, best.h_spacing)

    def test_deterministic(self):
        s = generate("sinusoidal", 1000, 9)
        assert E.midi(s.xs, s.ys).as_dict() == E.midi(s.xs, s.ys).as_dict()

    def test_constant_axis(self):
        with pytest.raises(E.DegenerateAxis):
            E.midi([1.0, 1.0, 1.0], [0.0, 1.0, 2.0])

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            E.midi([1.0, np.nan], [0.0, 1.0])
        with pytest.raises(ValueError):
            E.midi([1.0, 2.0, 3.0], [0.0, 1.0])
        with pytest.raises(ValueError):
            E.midi([1.0], [0.0])

    def test_negative_mi_beyond_rounding_raises(self, monkeypatch):
        monkeypatch.setattr(E.np, "log", lambda a: -np.abs(np.asarray(a, dtype=float)) - 1.0)
        with pytest.raises(E.InconsistentEstimate):
            E.mutual_information_hat(E.JointHistogram(np.array([[1, 1], [1, 1]])))


def test_oracle_equivalence_small(backend):
    rng = np.random.default_rng(123)
    for _ in range(40):
        n = int(rng.integers(4, 65))
        x, y = rng.normal(size=n), rng.random(n) ** 2
        d = E.midi_directional(x, y)
        mi, hx, hy, ix, iy = oracles.directional(list(x), list(y))
        assert d.mi_hat == pytest.approx(mi, abs=1e-12)
        assert d.h_spacing == pytest.approx(hx, abs=1e-12)
        assert d.h_count == pytest.approx(hy, abs=1e-12)


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.integers(2, 200), elements=finite), st.data())
def test_range_property(xs, data):
    ys = data.draw(arrays(np.float64, xs.size, elements=finite))
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        return
    r = E.midi(xs, ys)
    assert -1e-12 <= r.midi <= 1 + 1e-9
    assert r.mi_hat >= 0.0 and r.hx_hat >= 0.0 and r.hy_hat >= 0.0


@settings(max_examples=40, deadline=None)
@given(st.integers(10, 400), st.integers(0, 2**32 - 1), st.floats(0.1, 50), st.floats(-100, 100))
def test_affine_invariance(n, seed, a, b):
    rng = np.random.default_rng(seed)
    x, y = rng.random(n), rng.random(n) + rng.random(n) * 0.1
    ix0, iy0, _, _ = E.bin_assignments(x, y)
    ix1, iy1, _, _ = E.bin_assignments(a * x + b, y)
    assert np.array_equal(ix0, ix1) and np.array_equal(iy0, iy1)
    assert E.midi(x, y).as_dict() == E.midi(a * x + b, y).as_dict()


def test_order_reversal_keeps_value():
    s = generate("parabola", 3000, 2)
    r0 = E.midi(s.xs, s.ys).midi
    r1 = E.midi(-2.0 * s.xs + 5.0, s.ys).midi
    assert r1 == pytest.approx(r0, abs=0.02)
