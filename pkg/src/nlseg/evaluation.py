"""Boundary precision, recall and F-measure with a frame tolerance."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from nlseg.segtree import MergeTree, Segmentation, cut_tree

DEFAULT_TOLERANCE = 5


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f_measure: float
    matches: Tuple[Tuple[int, int], ...]
    n_segments: int
    tolerance: int

    def as_record(self, sequence_id: str, mode: str) -> dict:
        return {
            "sequence_id": sequence_id,
            "mode": mode,
            "n_segments": self.n_segments,
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
        }


def _check_same_length(predicted: Segmentation, truth: Segmentation):
    if predicted.K != truth.K:
        raise ValueError(f"segmentations cover different lengths: {predicted.K} vs {truth.K}")


def match_boundaries(predicted: Segmentation, truth: Segmentation, tolerance: int = DEFAULT_TOLERANCE) -> List[Tuple[int, int]]:
    """One-to-one matching of boundaries that differ by at most ``tolerance``.

    The matching has maximum cardinality. Among maximum matchings the total
    offset ``sum |p - g|`` is minimised, and remaining ties prefer earlier
    predicted boundaries.

    Returns
    -------
    list of (predicted, truth) pairs, sorted by predicted index.
    """
    _check_same_length(predicted, truth)
    if tolerance < 0:
        raise ValueError(f"tolerance must be nonnegative, got {tolerance}")
    p = np.asarray(predicted.boundaries, dtype=np.int64)
    g = np.asarray(truth.boundaries, dtype=np.int64)
    if p.size == 0 or g.size == 0:
        return []

    offset = np.abs(p[:, None] - g[None, :])
    feasible = offset <= tolerance
    if not feasible.any():
        return []
    # Integer costs ordered lexicographically: an extra matched pair
    # outweighs any offset total, which outweighs any predicted-rank total.
    n = len(p)
    rank_weight = n * (n + 1)
    pair_cost = offset * rank_weight + np.arange(n)[:, None]
    infeasible_cost = (tolerance * rank_weight + n) * (min(n, len(g)) + 1) + 1
    cost = np.where(feasible, pair_cost, infeasible_cost)
    rows, cols = linear_sum_assignment(cost)
    pairs = [(int(p[r]), int(g[c])) for r, c in zip(rows, cols) if feasible[r, c]]
    return sorted(pairs)


def _harmonic(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def f_measure(predicted: Segmentation, truth: Segmentation, tolerance: int = DEFAULT_TOLERANCE) -> EvalReport:
    matches = match_boundaries(predicted, truth, tolerance)
    n_pred, n_true = len(predicted.boundaries), len(truth.boundaries)
    precision = len(matches) / n_pred if n_pred else 0.0
    recall = len(matches) / n_true if n_true else 0.0
    return EvalReport(
        precision=precision,
        recall=recall,
        f_measure=_harmonic(precision, recall),
        matches=tuple(matches),
        n_segments=predicted.n_segments,
        tolerance=tolerance,
    )


def default_max_segments(K: int, truth: Segmentation) -> int:
    return min(K, 2 * len(truth.boundaries) + 20)


def sweep_cuts(tree: MergeTree, truth: Segmentation, tolerance: int = DEFAULT_TOLERANCE, max_segments: Optional[int] = None) -> List[EvalReport]:
    """Reports for every cut from 1 to ``max_segments`` segments."""
    if max_segments is None:
        max_segments = default_max_segments(tree.K, truth)
    return [f_measure(cut_tree(tree, n), truth, tolerance) for n in range(1, max_segments + 1)]


def best_f_over_cuts(tree: MergeTree, truth: Segmentation, tolerance: int = DEFAULT_TOLERANCE, max_segments: Optional[int] = None) -> EvalReport:
    """Best-scoring cut of the tree, choosing the segment count per sequence.

    Ties in F-measure go to the smallest number of segments.
    """
    reports = sweep_cuts(tree, truth, tolerance, max_segments)
    best = reports[0]
    for report in reports[1:]:
        if report.f_measure > best.f_measure:
            best = report
    return best
