"""Agglomerative segmentation restricted to temporally adjacent nodes."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from nlseg.features import FeatureSequence, _as_array


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    parent: int
    distance: float
    rank: int


@dataclass(frozen=True)
class Node:
    start: int
    end: int
    model: np.ndarray

    @property
    def size(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class MergeTree:
    """Binary merge hierarchy over the frames of a sequence.

    Nodes ``0..K-1`` are the leaves in time order; merge ``r`` creates node
    ``K + r``. Every node covers a contiguous frame range ``[start, end)``.
    """

    nodes: List[Node]
    merges: List[Merge]

    @property
    def K(self) -> int:
        return len(self.nodes) - len(self.merges)

    @property
    def leaves(self) -> List[Node]:
        return self.nodes[: self.K]

    @property
    def root(self) -> Node:
        return self.nodes[-1]

    def linkage_distances(self) -> np.ndarray:
        return np.array([m.distance for m in self.merges])


@dataclass(frozen=True)
class Segmentation:
    """Interior boundaries of a partition of ``[0, K)``.

    A boundary ``b`` means a new segment starts at frame ``b``.
    """

    boundaries: tuple
    K: int

    def __post_init__(self):
        b = tuple(int(x) for x in self.boundaries)
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        for prev, cur in zip(b, b[1:]):
            if cur <= prev:
                raise ValueError(f"boundaries must be strictly increasing, got {list(b)}")
        if b and (b[0] <= 0 or b[-1] >= self.K):
            raise ValueError(f"boundaries must lie in (0, {self.K}), got {list(b)}")
        object.__setattr__(self, "boundaries", b)

    @property
    def n_segments(self) -> int:
        return len(self.boundaries) + 1

    def segments(self) -> List[tuple]:
        edges = (0,) + self.boundaries + (self.K,)
        return list(zip(edges[:-1], edges[1:]))

    def labels(self) -> np.ndarray:
        """Segment index of every frame."""
        labels = np.zeros(self.K, dtype=int)
        for b in self.boundaries:
            labels[b:] += 1
        return labels


def merge_models(a: Node, b: Node) -> np.ndarray:
    return (a.size * a.model + b.size * b.model) / (a.size + b.size)


def node_distance(a: Node, b: Node) -> float:
    return float(np.linalg.norm(a.model - b.model))


def build_tree(features: FeatureSequence) -> MergeTree:
    """Greedy bottom-up merging of adjacent nodes.

    At each step the adjacent pair whose mean vectors are closest in
    Euclidean distance is merged; equal distances go to the pair with the
    smallest left start frame. Pair distances live in a heap and entries
    whose nodes have already been merged away are skipped when popped.
    """
    x = _as_array(features)
    K = x.shape[0]
    nodes = [Node(k, k + 1, x[k].copy()) for k in range(K)]
    alive = [True] * K
    prev_of = list(range(-1, K - 1))
    next_of = list(range(1, K)) + [-1]

    heap = []
    for k in range(K - 1):
        heapq.heappush(heap, (node_distance(nodes[k], nodes[k + 1]), k, k, k + 1))

    merges = []
    while heap:
        dist, _, left, right = heapq.heappop(heap)
        if not (alive[left] and alive[right]):
            continue
        a, b = nodes[left], nodes[right]
        parent = len(nodes)
        nodes.append(Node(a.start, b.end, merge_models(a, b)))
        alive[left] = alive[right] = False
        alive.append(True)
        merges.append(Merge(left, right, parent, dist, len(merges)))

        before, after = prev_of[left], next_of[right]
        prev_of.append(before)
        next_of.append(after)
        if before >= 0:
            next_of[before] = parent
            heapq.heappush(heap, (node_distance(nodes[before], nodes[parent]), nodes[before].start, before, parent))
        if after >= 0:
            prev_of[after] = parent
            heapq.heappush(heap, (node_distance(nodes[parent], nodes[after]), nodes[parent].start, parent, after))

    return MergeTree(nodes=nodes, merges=merges)


def cut_tree(tree: MergeTree, n_segments: int) -> Segmentation:
    """Partition obtained by undoing the last ``n_segments - 1`` merges."""
    K = tree.K
    if not 1 <= n_segments <= K:
        raise ValueError(f"n_segments must be in [1, {K}], got {n_segments}")
    undone = tree.merges[K - n_segments:]
    return Segmentation(tuple(sorted(tree.nodes[m.right].start for m in undone)), K)


def segmentation_from_labels(labels: Sequence[int]) -> Segmentation:
    labels = np.asarray(labels)
    return Segmentation(tuple(np.flatnonzero(labels[1:] != labels[:-1]) + 1), len(labels))
