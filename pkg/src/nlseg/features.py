"""Feature sequences, standardization and PCA."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FeatureSequence:
    """K time-ordered frames of P real-valued features.

    Rows are never reordered; row ``k`` is frame ``k``.
    """

    frames: np.ndarray

    def __post_init__(self):
        frames = np.array(self.frames, dtype=float)
        if frames.ndim == 1:
            frames = frames[:, None]
        if frames.ndim != 2:
            raise ValueError(f"frames must be 2-D, got shape {frames.shape}")
        if frames.shape[0] < 1 or frames.shape[1] < 1:
            raise ValueError(f"frames must have K >= 1 and P >= 1, got shape {frames.shape}")
        if not np.all(np.isfinite(frames)):
            raise ValueError("frames contain NaN or infinite values")
        frames.setflags(write=False)
        object.__setattr__(self, "frames", frames)

    @property
    def K(self) -> int:
        return self.frames.shape[0]

    @property
    def P(self) -> int:
        return self.frames.shape[1]

    def __len__(self):
        return self.K


@dataclass(frozen=True)
class PcaModel:
    """Principal axes fitted on one sequence.

    Attributes
    ----------
    mean : np.ndarray
        Length-P column means of the fitting data.
    scale : np.ndarray
        Length-P positive scale factors. Fitting never rescales, so this is
        all ones; it is kept so that a model can carry a standardization.
    components : np.ndarray
        C x P matrix with orthonormal rows, sorted by decreasing variance.
    explained_variance : np.ndarray
        Length-C population variance along each component.
    """

    mean: np.ndarray
    scale: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray

    @property
    def n_components(self) -> int:
        return self.components.shape[0]


def _as_array(seq) -> np.ndarray:
    if isinstance(seq, FeatureSequence):
        return seq.frames
    return FeatureSequence(seq).frames


def standardize(seq: FeatureSequence) -> FeatureSequence:
    """Zero-mean, unit population standard deviation per column.

    Columns whose entries are all equal are mapped to zeros.
    """
    x = _as_array(seq)
    mean = x.mean(axis=0)
    centered = x - mean
    std = np.sqrt(np.mean(centered**2, axis=0))
    # std can underflow to 0 on subnormal spreads
    constant = (np.ptp(x, axis=0) == 0) | (std == 0)
    std[constant] = 1.0
    out = centered / std
    out[:, constant] = 0.0
    return FeatureSequence(out)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # largest |coordinate| positive; argmax returns the lowest index on ties
    idx = np.argmax(np.abs(vectors), axis=1)
    signs = np.sign(vectors[np.arange(len(vectors)), idx])
    signs[signs == 0] = 1.0
    return vectors * signs[:, None]


def fit_pca(seq: FeatureSequence, n_components: int = 6) -> PcaModel:
    """Fit the top principal axes of a (standardized) sequence.

    Parameters
    ----------
    seq : FeatureSequence
        K x P data; expected to be standardized already.
    n_components : int
        Requested number of components; the model keeps
        ``min(n_components, P, K)``.

    Returns
    -------
    PcaModel
        Components are eigenvectors of the population covariance, sorted by
        decreasing eigenvalue, with the largest-magnitude coordinate of each
        made positive.
    """
    x = _as_array(seq)
    K, P = x.shape
    if n_components < 1:
        raise ValueError("n_components must be >= 1")
    if K < 2:
        raise ValueError("PCA needs at least 2 frames")
    C = min(n_components, P, K)
    mean = x.mean(axis=0)
    centered = x - mean

    if P <= K:
        cov = centered.T @ centered / K
        evals, evecs = np.linalg.eigh(cov)
        order = np.argsort(-evals, kind="stable")[:C]
        components = evecs[:, order].T
        variance = evals[order]
    else:
        # Rank is at most K - 1 here, so the Gram route cannot recover axes
        # with zero variance; the thin SVD spans them orthonormally.
        _, svals, vt = np.linalg.svd(centered, full_matrices=False)
        components = vt[:C]
        variance = svals[:C] ** 2 / K

    components = _fix_signs(np.ascontiguousarray(components))
    variance = np.clip(variance, 0.0, None)
    return PcaModel(
        mean=mean,
        scale=np.ones(P),
        components=components,
        explained_variance=variance,
    )


def project(seq: FeatureSequence, model: PcaModel) -> FeatureSequence:
    """Coordinates of each centered frame along the model's components."""
    x = _as_array(seq)
    if x.shape[1] != model.components.shape[1]:
        raise ValueError(
            f"sequence has {x.shape[1]} features, model expects {model.components.shape[1]}"
        )
    return FeatureSequence(((x - model.mean) / model.scale) @ model.components.T)
