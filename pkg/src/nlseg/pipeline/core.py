"""End-to-end segmentation: standardize, optional nonlocal features, PCA, merge tree."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np

from nlseg.evaluation import DEFAULT_TOLERANCE
from nlseg.features import FeatureSequence, fit_pca, project, standardize
from nlseg.selfsim import NonlocalParams, SimilarityMatrix, nonlocal_features, self_similarity_matrix
from nlseg.segtree import MergeTree, Segmentation, build_tree, cut_tree

log = logging.getLogger(__name__)

MODES = ("local", "nonlocal")
NL_INPUTS = ("standardized", "raw")
STAGES = ("similarity", "components", "profile")


@dataclass(frozen=True)
class PipelineConfig:
    """Experiment knobs. Defaults follow the published settings
    (patch radius 2, 6 components, tolerance 5, full nonlocal range)."""

    mode: str = "nonlocal"
    patch_radius: int = 2
    bandwidth: Union[str, float] = "auto"
    include_self: bool = True
    n_components: int = 6
    n_segments: Union[str, int] = "sweep"
    tolerance: int = DEFAULT_TOLERANCE
    max_segments: Optional[int] = None
    seed: int = 0
    dump_stages: bool = False
    nl_input: str = "standardized"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.nl_input not in NL_INPUTS:
            raise ValueError(f"nl_input must be one of {NL_INPUTS}, got {self.nl_input!r}")
        if self.n_components < 1:
            raise ValueError("n_components must be >= 1")
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        if self.n_segments != "sweep" and (not isinstance(self.n_segments, int) or self.n_segments < 1):
            raise ValueError(f"n_segments must be 'sweep' or a positive integer, got {self.n_segments!r}")
        if self.max_segments is not None and self.max_segments < 1:
            raise ValueError("max_segments must be positive")
        # validates patch_radius and bandwidth
        self.nonlocal_params()

    def nonlocal_params(self) -> NonlocalParams:
        return NonlocalParams(
            patch_radius=self.patch_radius,
            bandwidth=self.bandwidth,
            include_self=self.include_self,
        )


@dataclass
class PipelineResult:
    tree: MergeTree
    segmentation: Optional[Segmentation]
    components: FeatureSequence
    similarity: Optional[SimilarityMatrix] = None
    stages: Dict[str, np.ndarray] = field(default_factory=dict)


def adjacent_distances(seq: FeatureSequence) -> np.ndarray:
    """Euclidean distance between each pair of consecutive frames (length K-1)."""
    return np.linalg.norm(np.diff(seq.frames, axis=0), axis=1)


def principal_components(seq: FeatureSequence, n_components: int) -> FeatureSequence:
    """Standardize a sequence and project it on its leading principal axes."""
    z = standardize(seq)
    if z.K < 2:
        return FeatureSequence(z.frames[:, :1] * 0.0)
    return project(z, fit_pca(z, n_components))


def finish(components: FeatureSequence, config: PipelineConfig, similarity=None) -> PipelineResult:
    tree = build_tree(components)
    segmentation = None
    if config.n_segments != "sweep":
        segmentation = cut_tree(tree, min(config.n_segments, tree.K))
    stages = {"components": components.frames, "profile": adjacent_distances(components)[:, None]}
    if similarity is not None:
        stages["similarity"] = similarity.values
    return PipelineResult(tree, segmentation, components, similarity, stages)


def run_pipeline(seq: FeatureSequence, config: PipelineConfig = PipelineConfig(), dump_dir=None) -> PipelineResult:
    """Segment one sequence.

    ``local``: standardize -> PCA -> merge tree.
    ``nonlocal``: standardize -> self-similarity matrix -> nonlocal features
    -> standardize -> PCA -> merge tree.

    With a numeric ``config.n_segments`` the tree is also cut. When
    ``config.dump_stages`` is set and ``dump_dir`` is given, the stage
    matrices are written there as CSV.
    """
    if not isinstance(seq, FeatureSequence):
        seq = FeatureSequence(seq)
    similarity = None
    if config.mode == "local":
        components = principal_components(seq, config.n_components)
    else:
        source = standardize(seq) if config.nl_input == "standardized" else seq
        similarity = self_similarity_matrix(source, config.nonlocal_params())
        log.debug("calibrated bandwidth h=%g", similarity.calibrated_h)
        components = principal_components(nonlocal_features(similarity), config.n_components)
    result = finish(components, config, similarity)
    if config.dump_stages and dump_dir is not None:
        write_stages(result, dump_dir)
    return result


def resume_from_stage(stage: str, matrix: np.ndarray, config: PipelineConfig = PipelineConfig()) -> PipelineResult:
    """Re-run the pipeline suffix that follows a dumped stage.

    ``similarity`` resumes at nonlocal features; ``components`` resumes at
    tree building.
    """
    matrix = np.asarray(matrix, dtype=float)
    if stage == "similarity":
        sim = SimilarityMatrix(matrix, config.nonlocal_params(), float("nan"))
        return finish(principal_components(nonlocal_features(sim), config.n_components), config, sim)
    if stage == "components":
        return finish(FeatureSequence(matrix), config)
    raise ValueError(f"cannot resume from stage {stage!r}")


def write_stages(result: PipelineResult, directory) -> Dict[str, Path]:
    from nlseg.pipeline.io import write_matrix

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = {}
    for name in STAGES:
        if name in result.stages:
            path = directory / f"{name}.csv"
            write_matrix(path, result.stages[name])
            written[name] = path
    return written
