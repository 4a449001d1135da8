"""Slow reference implementations used as independent checks."""

import math

import numpy as np


def brute_mean_std(column):
    n = len(column)
    mean = sum(column) / n
    var = sum((v - mean) ** 2 for v in column) / n
    return mean, math.sqrt(var)


def brute_patch_distance(x, k, j, M):
    K = len(x)
    total = 0.0
    offsets = list(range(-M, 0)) + list(range(1, M + 1))
    for off in offsets:
        a = min(max(k + off, 0), K - 1)
        b = min(max(j + off, 0), K - 1)
        for p in range(x.shape[1]):
            total += (x[a, p] - x[b, p]) ** 2
    return total


def brute_similarity(x, M, h=None, include_self=True):
    """Nested-loop evaluation of the normalised exponential patch kernel."""
    x = np.asarray(x, dtype=float)
    K = len(x)
    d = [[brute_patch_distance(x, k, j, M) for j in range(K)] for k in range(K)]
    if h is None:
        off = sorted(d[k][j] for k in range(K) for j in range(K) if k != j)
        n = len(off)
        med = off[n // 2] if n % 2 else 0.5 * (off[n // 2 - 1] + off[n // 2])
        h = med / math.log(2) if med > 0 else 1.0
    S = np.zeros((K, K))
    for k in range(K):
        row = [0.0 if (j == k and not include_self) else math.exp(-d[k][j] / h) for j in range(K)]
        Z = sum(row)
        for j in range(K):
            S[k, j] = row[j] / Z
    return S, h


def naive_tree(x):
    """Adjacent-pair agglomeration by rescanning every pair at every step.

    Returns the merge list as (left, right, parent, distance) tuples.
    """
    x = np.asarray(x, dtype=float)
    K = len(x)
    # active nodes in time order: (node id, count, model)
    active = [(k, 1, x[k].copy()) for k in range(K)]
    next_id = K
    merges = []
    while len(active) > 1:
        best = None
        for i in range(len(active) - 1):
            diff = active[i][2] - active[i + 1][2]
            dist = math.sqrt(float(np.dot(diff, diff)))
            if best is None or dist < best[0]:
                best = (dist, i)
        dist, i = best
        (lid, ln, lm), (rid, rn, rm) = active[i], active[i + 1]
        model = (ln * lm + rn * rm) / (ln + rn)
        merges.append((lid, rid, next_id, dist))
        active[i : i + 2] = [(next_id, ln + rn, model)]
        next_id += 1
    return merges


def exhaustive_max_matching(predicted, truth, tolerance):
    """Size of the largest one-to-one matching, by trying every assignment."""
    predicted, truth = list(predicted), list(truth)

    def best(i, used):
        if i == len(predicted):
            return 0
        result = best(i + 1, used)
        for j, g in enumerate(truth):
            if not used >> j & 1 and abs(predicted[i] - g) <= tolerance:
                result = max(result, 1 + best(i + 1, used | 1 << j))
        return result

    return best(0, 0)


def leading_eigvec_2x2(cov):
    """Leading eigenvector of a symmetric 2x2 matrix in closed form."""
    a, b, c = cov[0, 0], cov[0, 1], cov[1, 1]
    theta = 0.5 * math.atan2(2 * b, a - c)
    v = np.array([math.cos(theta), math.sin(theta)])
    return v if v[np.argmax(np.abs(v))] > 0 else -v
