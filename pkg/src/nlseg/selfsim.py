"""Temporal nonlocal self-similarity.

Every frame is described by how similar its temporal neighbourhood (the
``2M`` surrounding frames, centre excluded) is to the neighbourhood of every
other frame. Patch distances go through an exponential kernel whose
bandwidth is calibrated so that the median kernel value over distinct frame
couples is 1/2. Each row of the kernel is normalised to a probability
distribution, and these rows become the new per-frame features.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

from nlseg.features import FeatureSequence, _as_array

Bandwidth = Union[float, str]


@dataclass(frozen=True)
class NonlocalParams:
    """Patch radius, kernel bandwidth and diagonal handling.

    ``include_self`` decides whether the ``j == k`` term takes part in each
    row and in its normaliser. When it is False the diagonal is stored as 0.
    """

    patch_radius: int = 2
    bandwidth: Bandwidth = "auto"
    include_self: bool = True

    def __post_init__(self):
        if int(self.patch_radius) != self.patch_radius or self.patch_radius < 1:
            raise ValueError(f"patch_radius must be a positive integer, got {self.patch_radius!r}")
        if isinstance(self.bandwidth, str):
            if self.bandwidth != "auto":
                raise ValueError(f"bandwidth must be 'auto' or a positive number, got {self.bandwidth!r}")
        elif not (np.isfinite(self.bandwidth) and self.bandwidth > 0):
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth!r}")

    def check_length(self, K: int):
        if 2 * self.patch_radius + 1 > K:
            raise ValueError(
                f"sequence of {K} frames is too short for patch radius {self.patch_radius}"
                f" (need at least {2 * self.patch_radius + 1})"
            )


@dataclass(frozen=True)
class SimilarityMatrix:
    """Row-stochastic K x K matrix; entry (k, j) is the similarity of frame j to k."""

    values: np.ndarray
    params: NonlocalParams
    calibrated_h: float

    @property
    def K(self) -> int:
        return self.values.shape[0]


def neighborhood_offsets(M: int) -> np.ndarray:
    return np.concatenate([np.arange(-M, 0), np.arange(1, M + 1)])


def neighborhood_indices(K: int, M: int) -> np.ndarray:
    """K x 2M frame indices of every neighbourhood, clamped to ``[0, K-1]``."""
    return np.clip(np.arange(K)[:, None] + neighborhood_offsets(M)[None, :], 0, K - 1)


def neighborhood_distance(seq: FeatureSequence, k: int, j: int, M: int) -> float:
    """Sum of squared Euclidean distances between the neighbourhoods of k and j.

    Neighbourhood ``i`` of frame ``k`` is frame ``k + offset_i`` with
    offsets ``-M..-1, 1..M``; indices falling outside the sequence are
    replaced by the nearest valid frame.
    """
    x = _as_array(seq)
    K = x.shape[0]
    if not (0 <= k < K and 0 <= j < K):
        raise IndexError(f"frame indices ({k}, {j}) out of range for K={K}")
    offsets = neighborhood_offsets(M)
    nk = np.clip(k + offsets, 0, K - 1)
    nj = np.clip(j + offsets, 0, K - 1)
    return float(np.sum((x[nk] - x[nj]) ** 2))


def patch_distances(seq: FeatureSequence, M: int) -> np.ndarray:
    """K x K matrix of neighbourhood distances for every frame couple."""
    x = _as_array(seq)
    K = x.shape[0]
    patches = x[neighborhood_indices(K, M)].reshape(K, -1)
    if K == 1:
        return np.zeros((1, 1))
    return squareform(pdist(patches, metric="sqeuclidean"))


def calibrate_h(distances) -> float:
    """Bandwidth making the median of ``exp(-d / h)`` equal to 1/2.

    Since the kernel is monotone in d, this is ``median(d) / ln 2``. A zero
    median falls back to ``h = 1``.
    """
    d = np.asarray(distances, dtype=float).ravel()
    if d.size == 0:
        raise ValueError("cannot calibrate bandwidth from an empty set of distances")
    med = float(np.median(d))
    if med == 0:
        return 1.0
    return med / np.log(2.0)


def off_diagonal(matrix: np.ndarray) -> np.ndarray:
    """Entries of a square matrix at all ordered couples (k, j) with k != j."""
    return matrix[~np.eye(matrix.shape[0], dtype=bool)]


def similarity_from_distances(dist: np.ndarray, params: NonlocalParams) -> SimilarityMatrix:
    """Normalised kernel rows from a precomputed patch-distance matrix."""
    K = dist.shape[0]
    if params.bandwidth == "auto":
        h = calibrate_h(off_diagonal(dist)) if K > 1 else 1.0
    else:
        h = float(params.bandwidth)

    logits = -dist / h
    if not params.include_self:
        np.fill_diagonal(logits, -np.inf)
    # shifting by the row max leaves the normalised rows unchanged
    logits = logits - logits.max(axis=1, keepdims=True)
    kernel = np.exp(logits)
    values = kernel / kernel.sum(axis=1, keepdims=True)
    values.setflags(write=False)
    return SimilarityMatrix(values=values, params=params, calibrated_h=h)


def self_similarity_matrix(seq: FeatureSequence, params: NonlocalParams | None = None) -> SimilarityMatrix:
    """Row-stochastic nonlocal self-similarity matrix of a sequence.

    Parameters
    ----------
    seq : FeatureSequence
        K x P local features.
    params : NonlocalParams, optional
        Defaults to patch radius 2, automatic bandwidth, diagonal included.

    Returns
    -------
    SimilarityMatrix
        ``values[k, j] = exp(-d(k, j) / h) / Z(k)`` where ``Z(k)`` sums the
        kernel over the row.
    """
    params = params or NonlocalParams()
    x = _as_array(seq)
    K = x.shape[0]
    params.check_length(K)
    if K < 2 and not params.include_self:
        raise ValueError("a single frame has no other frames to compare with")
    return similarity_from_distances(patch_distances(x, params.patch_radius), params)


def nonlocal_features(sim: SimilarityMatrix) -> FeatureSequence:
    """Similarity rows as K-dimensional features indexed by absolute time."""
    return FeatureSequence(sim.values)
