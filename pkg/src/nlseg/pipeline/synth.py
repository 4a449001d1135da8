"""Seeded piecewise-constant sequences with sporadic outlier frames.

Random streams come from numpy's PCG64 bit generator seeded through
``SeedSequence(seed)``. Each call draws, in this order:

1. ``n_events`` segment means, ``standard_normal((n_events, P))``;
2. segment lengths: ``n_events - 1`` cut points ``integers(0, slack + 1)``
   sorted, where ``slack = K - n_events * min_segment_len``; the gaps
   between consecutive cut points (with 0 and ``slack`` at the ends) are
   added to ``min_segment_len``;
3. frame noise, ``standard_normal((K, P))``;
4. outlier flags, ``random(K) < outlier_rate``;
5. outlier noise, ``standard_normal((K, P))``.

Regular frames are ``mean + noise_sigma * noise``; flagged frames are
``mean + outlier_scale * outlier_noise``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Tuple

import numpy as np

from nlseg.features import FeatureSequence
from nlseg.segtree import Segmentation


@dataclass(frozen=True)
class SyntheticSpec:
    K: int = 300
    P: int = 20
    n_events: int = 8
    noise_sigma: float = 0.5
    outlier_rate: float = 0.1
    outlier_scale: float = 4.0
    min_segment_len: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.K < 1 or self.P < 1 or self.n_events < 1 or self.min_segment_len < 1:
            raise ValueError("K, P, n_events and min_segment_len must be positive")
        if self.n_events * self.min_segment_len > self.K:
            raise ValueError(
                f"{self.n_events} events of at least {self.min_segment_len} frames do not fit in K={self.K}"
            )
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be nonnegative")
        if not 0 <= self.outlier_rate < 1:
            raise ValueError("outlier_rate must be in [0, 1)")
        if self.outlier_scale <= 0:
            raise ValueError("outlier_scale must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for ``seed``; ``stream`` selects an independent child stream."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=tuple(stream))))


def segment_lengths(rng: np.random.Generator, K: int, n_events: int, min_len: int) -> np.ndarray:
    slack = K - n_events * min_len
    cuts = np.sort(rng.integers(0, slack + 1, size=n_events - 1))
    extra = np.diff(np.concatenate([[0], cuts, [slack]]))
    return min_len + extra


def generate_piecewise(spec: SyntheticSpec) -> Tuple[FeatureSequence, Segmentation]:
    """Draw a noisy piecewise-constant sequence and its true boundaries."""
    rng = make_rng(spec.seed)
    means = rng.standard_normal((spec.n_events, spec.P))
    lengths = segment_lengths(rng, spec.K, spec.n_events, spec.min_segment_len)
    labels = np.repeat(np.arange(spec.n_events), lengths)
    noise = rng.standard_normal((spec.K, spec.P))
    outliers = rng.random(spec.K) < spec.outlier_rate
    outlier_noise = rng.standard_normal((spec.K, spec.P))

    frames = means[labels] + spec.noise_sigma * noise
    frames[outliers] = means[labels[outliers]] + spec.outlier_scale * outlier_noise[outliers]
    boundaries = tuple(int(b) for b in np.cumsum(lengths)[:-1])
    return FeatureSequence(frames), Segmentation(boundaries, spec.K)


def spawn_specs(template: SyntheticSpec, n_sequences: int) -> List[SyntheticSpec]:
    """``n_sequences`` copies of ``template`` with per-sequence child seeds.

    Child ``i`` uses the first 64-bit word of
    ``SeedSequence(template.seed, spawn_key=(i,))``.
    """
    specs = []
    for i in range(n_sequences):
        child = np.random.SeedSequence(template.seed, spawn_key=(i,))
        specs.append(replace(template, seed=int(child.generate_state(1, dtype=np.uint64)[0])))
    return specs
