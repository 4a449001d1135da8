"""Nonlocal self-similarity features for temporal segmentation of feature sequences."""

from nlseg.features import FeatureSequence, PcaModel, fit_pca, project, standardize
from nlseg.selfsim import (
    NonlocalParams,
    SimilarityMatrix,
    calibrate_h,
    neighborhood_distance,
    nonlocal_features,
    self_similarity_matrix,
)
from nlseg.segtree import MergeTree, Segmentation, build_tree, cut_tree
from nlseg.evaluation import EvalReport, best_f_over_cuts, f_measure, match_boundaries

__all__ = [
    "FeatureSequence",
    "PcaModel",
    "standardize",
    "fit_pca",
    "project",
    "NonlocalParams",
    "SimilarityMatrix",
    "neighborhood_distance",
    "calibrate_h",
    "self_similarity_matrix",
    "nonlocal_features",
    "MergeTree",
    "Segmentation",
    "build_tree",
    "cut_tree",
    "EvalReport",
    "match_boundaries",
    "f_measure",
    "best_f_over_cuts",
]

__version__ = "0.1.0"
