"""Exact nearest-neighbor queries with optional exclusion of claimed points.

A small kd-tree (widest-spread split dimension, median split) over the sample
rows. Queries are exact under Euclidean distance; ties at exactly equal
squared distance resolve to the smallest original row index, which keeps the
downstream subsample selection reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import Exhausted

_LEAF_SIZE = 16


class _Node:
    __slots__ = ("dim", "left_max", "right_min", "left", "right", "idx")

    def __init__(self, dim=-1, left_max=0.0, right_min=0.0,
                 left=None, right=None, idx=None):
        self.dim = dim
        self.left_max = left_max
        self.right_min = right_min
        self.left = left
        self.right = right
        self.idx = idx  # leaf only


@dataclass(frozen=True)
class PointIndex:
    """Immutable search structure over an (n, p) point matrix."""

    points: np.ndarray
    root: _Node

    @property
    def size(self) -> int:
        return self.points.shape[0]


def _build(points: np.ndarray, idx: np.ndarray) -> _Node:
    if idx.shape[0] <= _LEAF_SIZE:
        return _Node(idx=idx)
    sub = points[idx]
    spread = sub.max(axis=0) - sub.min(axis=0)
    dim = int(np.argmax(spread))
    order = np.argsort(sub[:, dim], kind="stable")
    half = idx.shape[0] // 2
    left_idx = idx[order[:half]]
    right_idx = idx[order[half:]]
    return _Node(
        dim=dim,
        left_max=float(points[left_idx, dim].max()),
        right_min=float(points[right_idx, dim].min()),
        left=_build(points, left_idx),
        right=_build(points, right_idx),
    )


def build_index(points) -> PointIndex:
    """Build an exact nearest-neighbor index over the rows of ``points``."""
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ValueError("points must be a nonempty (n, p) matrix")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return PointIndex(points=pts, root=_build(pts, np.arange(pts.shape[0])))


def _as_mask(excluded, n: int) -> np.ndarray | None:
    if excluded is None:
        return None
    if isinstance(excluded, np.ndarray) and excluded.dtype == bool:
        if excluded.shape != (n,):
            raise ValueError("exclusion mask must have shape (n,)")
        return excluded
    mask = np.zeros(n, dtype=bool)
    ex = list(excluded)
    if ex:
        mask[np.asarray(ex, dtype=np.intp)] = True
    return mask


def nearest(index: PointIndex, q, excluded=None) -> tuple[int, float]:
    """Nearest non-excluded row to ``q``: returns (row index, distance).

    ``excluded`` may be a boolean mask of length n or any iterable of row
    indices. Ties at equal squared distance go to the smallest row index.

    Raises
    ------
    Exhausted
        When every point is excluded.
    """
    pts = index.points
    n = pts.shape[0]
    q = np.asarray(q, dtype=np.float64).reshape(-1)
    if q.shape[0] != pts.shape[1]:
        raise ValueError(f"query has dimension {q.shape[0]}, index has {pts.shape[1]}")
    mask = _as_mask(excluded, n)
    if mask is not None and bool(mask.all()):
        raise Exhausted("all points are excluded")

    best_d2 = np.inf
    best_i = -1

    def visit(node: _Node) -> None:
        nonlocal best_d2, best_i
        if node.idx is not None:
            idx = node.idx
            if mask is not None:
                idx = idx[~mask[idx]]
                if idx.shape[0] == 0:
                    return
            d2 = ((pts[idx] - q) ** 2).sum(axis=1)
            m = d2.min()
            if m < best_d2:
                best_d2 = float(m)
                best_i = int(idx[d2 == m].min())
            elif m == best_d2:
                i = int(idx[d2 == m].min())
                if i < best_i:
                    best_i = i
            return
        qd = q[node.dim]
        if qd <= node.left_max:
            first, second, gap = node.left, node.right, node.right_min - qd
        else:
            first, second, gap = node.right, node.left, qd - node.left_max
        visit(first)
        # equal slab distance can still hide an equal-distance, smaller index
        if gap <= 0.0 or gap * gap <= best_d2:
            visit(second)

    visit(index.root)
    return best_i, float(np.sqrt(best_d2))
