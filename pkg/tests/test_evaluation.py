import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlseg.evaluation import best_f_over_cuts, f_measure, match_boundaries, sweep_cuts
from nlseg.features import FeatureSequence
from nlseg.pipeline import PipelineConfig, SyntheticSpec, generate_piecewise, run_pipeline
from nlseg.segtree import Segmentation, build_tree, cut_tree
from oracles import exhaustive_max_matching

K = 100


def seg(*b, K=K):
    return Segmentation(tuple(b), K)


boundary_sets = st.lists(st.integers(1, 59), max_size=8, unique=True).map(lambda b: seg(*sorted(b), K=60))


class TestMatching:
    def test_identical(self):
        s = seg(5, 20, 40)
        assert match_boundaries(s, s, 5) == [(5, 5), (20, 20), (40, 40)]

    def test_tie_prefers_earlier_prediction(self):
        assert match_boundaries(seg(10, 12), seg(11), 5) == [(10, 11)]

    def test_partial(self):
        assert match_boundaries(seg(10, 50), seg(13, 80), 5) == [(10, 13)]

    def test_tolerance_inclusive(self):
        assert match_boundaries(seg(10), seg(15), 5) == [(10, 15)]
        assert match_boundaries(seg(10), seg(16), 5) == []

    def test_beats_greedy_by_distance(self):
        # greedy on distance would take (4, 5) and strand 6
        assert match_boundaries(seg(4, 6), seg(2, 5), 3) == [(4, 2), (6, 5)]

    def test_prefers_closer_pairs(self):
        assert match_boundaries(seg(1, 4), seg(5), 5) == [(4, 5)]

    def test_mismatched_length(self):
        with pytest.raises(ValueError):
            match_boundaries(seg(3), seg(3, K=50))

    @given(boundary_sets, boundary_sets, st.integers(0, 6))
    @settings(max_examples=200, deadline=None)
    def test_maximum_cardinality(self, p, g, tol):
        pairs = match_boundaries(p, g, tol)
        assert len(pairs) == exhaustive_max_matching(p.boundaries, g.boundaries, tol)
        assert len({a for a, _ in pairs}) == len(pairs) == len({b for _, b in pairs})
        assert all(abs(a - b) <= tol for a, b in pairs)


class TestFMeasure:
    def test_half(self):
        r = f_measure(seg(10, 50), seg(13, 80), 5)
        assert (r.precision, r.recall, r.f_measure) == (0.5, 0.5, 0.5)

    def test_no_predictions(self):
        r = f_measure(seg(), seg(30), 5)
        assert (r.precision, r.recall, r.f_measure) == (0.0, 0.0, 0.0)

    def test_perfect(self):
        assert f_measure(seg(7, 30), seg(7, 30), 5).f_measure == 1.0

    def test_both_empty(self):
        assert f_measure(seg(), seg(), 5).f_measure == 0.0

    @given(boundary_sets, boundary_sets, st.integers(0, 6))
    @settings(max_examples=100, deadline=None)
    def test_swap_and_harmonic_mean(self, p, g, tol):
        a, b = f_measure(p, g, tol), f_measure(g, p, tol)
        assert (a.precision, a.recall) == (b.recall, b.precision)
        assert a.f_measure == pytest.approx(b.f_measure, abs=1e-15)
        for r in (a, b):
            assert 0 <= r.precision <= 1 and 0 <= r.recall <= 1
            expected = 0.0 if r.precision + r.recall == 0 else 2 * r.precision * r.recall / (r.precision + r.recall)
            assert r.f_measure == expected


class TestBestOverCuts:
    def test_aligned_tree(self):
        x = np.repeat([0.0, 10.0, 3.0], [10, 10, 10])
        tree = build_tree(FeatureSequence(x))
        report = best_f_over_cuts(tree, seg(10, 20, K=30), 0, 10)
        assert report.f_measure == 1.0 and report.n_segments == 3

    def test_single_segment(self, rng):
        tree = build_tree(FeatureSequence(rng.normal(size=(30, 2))))
        report = best_f_over_cuts(tree, seg(10, K=30), 5, 1)
        assert report.f_measure == 0.0 and report.n_segments == 1

    def test_equals_exhaustive_sweep(self):
        seq, truth = generate_piecewise(SyntheticSpec(K=300, n_events=8, seed=3))
        tree = run_pipeline(seq, PipelineConfig(mode="nonlocal")).tree
        best = best_f_over_cuts(tree, truth, 5, 40)
        scores = [f_measure(cut_tree(tree, n), truth, 5).f_measure for n in range(1, 41)]
        assert best.f_measure == max(scores)
        assert best.n_segments == 1 + scores.index(max(scores))

    def test_nondecreasing_in_max_segments(self, rng):
        seq, truth = generate_piecewise(SyntheticSpec(K=150, n_events=5, seed=9))
        tree = run_pipeline(seq, PipelineConfig(mode="local")).tree
        values = [best_f_over_cuts(tree, truth, 5, m).f_measure for m in range(1, 30)]
        assert values == sorted(values)

    def test_default_sweep_length(self, rng):
        tree = build_tree(FeatureSequence(rng.normal(size=(100, 2))))
        assert len(sweep_cuts(tree, seg(10, 50))) == 24
