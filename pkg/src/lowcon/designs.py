"""Latin hypercube designs and low-correlation (near-orthogonal) variants.

A Latin hypercube design (LHD) on r runs places, in every column, one point
at each of the r centered levels ((2k - 1 - r) / r for k = 1..r). The
near-orthogonal generator starts from a random LHD and greedily swaps pairs
of values within a column to shrink the pairwise column correlations, which
drives the condition number of the design information matrix toward 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateBox, InfeasibleDesign

DEFAULT_KAPPA_TARGET = 1.13


@dataclass(frozen=True)
class Box:
    """Axis-aligned design space: per-dimension [lower_j, upper_j]."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=np.float64).reshape(-1)
        up = np.asarray(self.upper, dtype=np.float64).reshape(-1)
        if lo.shape != up.shape:
            raise ValueError("lower and upper must have equal length")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(up))):
            raise ValueError("box bounds must be finite")
        if np.any(lo >= up):
            raise DegenerateBox("every dimension needs lower < upper")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @staticmethod
    def unit_cube(p: int) -> "Box":
        return Box(lower=-np.ones(p), upper=np.ones(p))


@dataclass(frozen=True)
class DesignMatrix:
    """A set of design points together with its box and quality diagnostics.

    ``kappa`` is the condition number of ``points.T @ points`` for the stored
    (possibly rescaled) points; ``max_abs_corr`` is the largest absolute
    pairwise Pearson correlation between columns (0.0 when p == 1).
    """

    points: np.ndarray
    box: Box
    kappa: float
    max_abs_corr: float

    @property
    def runs(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def lhd_levels(r: int) -> np.ndarray:
    """The r centered levels (2k - 1 - r) / r for k = 1..r, ascending."""
    if r < 1:
        raise ValueError("r must be at least 1")
    k = np.arange(1, r + 1, dtype=np.float64)
    return (2.0 * k - 1.0 - r) / r


def _gram_kappa(G: np.ndarray) -> float:
    ev = np.linalg.eigvalsh(G)
    if ev[0] <= 0.0:
        return np.inf
    return float(ev[-1] / ev[0])


def max_abs_correlation(points: np.ndarray) -> float:
    """Largest absolute pairwise column correlation; 0.0 for one column."""
    p = points.shape[1]
    if p == 1:
        return 0.0
    C = np.corrcoef(points, rowvar=False)
    off = np.abs(C - np.eye(p))
    return float(off.max())


def _make_design(points: np.ndarray, box: Box) -> DesignMatrix:
    return DesignMatrix(
        points=points,
        box=box,
        kappa=_gram_kappa(points.T @ points),
        max_abs_corr=max_abs_correlation(points),
    )


def _random_lhd_points(r: int, p: int, rng: np.random.Generator) -> np.ndarray:
    levels = lhd_levels(r)
    L = np.empty((r, p))
    for j in range(p):
        L[:, j] = rng.permutation(levels)
    return L


def generate_lhd(r: int, p: int, rng: np.random.Generator) -> DesignMatrix:
    """Random Latin hypercube design on the canonical box [-1, 1]^p.

    Each column is an independent uniform random permutation of
    ``lhd_levels(r)``.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if p < 1:
        raise ValueError("p must be at least 1")
    return _make_design(_random_lhd_points(r, p, rng), Box.unit_cube(p))


def _descend_correlations(
    L: np.ndarray,
    kappa_target: float,
    max_swaps: int,
) -> tuple[np.ndarray, float, int]:
    """Greedy within-column swap descent on the sum of squared off-diagonal
    Gram entries. Stops as soon as kappa(L.T L) reaches the target, or when a
    full sweep over columns accepts no swap. Returns (L, kappa, swaps)."""
    r, p = L.shape
    G = L.T @ L
    kap = _gram_kappa(G)
    if kap <= kappa_target:
        return L, kap, 0
    # diffs[a, b, k] = L[b, k] - L[a, k]; column slices stay in sync with L
    diffs = L[None, :, :] - L[:, None, :]
    swaps = 0
    while swaps < max_swaps:
        improved = False
        for j in range(p):
            dj = diffs[:, :, j]
            # Swapping rows (a, b) in column j changes Gram row j to
            # G[j, k] - dj[a, b] * diffs[a, b, k] for k != j.
            newrow = G[j, :][None, None, :] - dj[:, :, None] * diffs
            newrow[:, :, j] = 0.0
            rss = np.einsum("abk,abk->ab", newrow, newrow)
            cur = float(G[j, :] @ G[j, :] - G[j, j] ** 2)
            a, b = np.unravel_index(np.argmin(rss), rss.shape)
            if rss[a, b] < cur - 1e-15:
                L[a, j], L[b, j] = L[b, j], L[a, j]
                Gj = L.T @ L[:, j]
                G[j, :] = Gj
                G[:, j] = Gj
                diffs[:, :, j] = L[None, :, j] - L[:, None, j]
                improved = True
                swaps += 1
                kap = _gram_kappa(G)
                if kap <= kappa_target:
                    return L, kap, swaps
        if not improved:
            break
    return L, _gram_kappa(G), swaps


def generate_olhd(
    r: int,
    p: int,
    rng: np.random.Generator,
    kappa_target: float = DEFAULT_KAPPA_TARGET,
    max_restarts: int = 20,
    max_swaps: int | None = None,
) -> DesignMatrix:
    """Low-correlation Latin hypercube design on [-1, 1]^p.

    Runs the swap descent from up to ``max_restarts`` random LHD starts and
    returns the first design with ``kappa <= kappa_target``, or the lowest-
    kappa candidate seen if the target is never reached (the achieved kappa
    is always reported on the result, never hidden).

    Raises
    ------
    InfeasibleDesign
        When r <= p: the level set sums to zero, so the columns plus the
        all-ones vector are linearly dependent and L.T @ L is singular for
        every permutation.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if r <= p:
        raise InfeasibleDesign(
            f"r={r} runs cannot give a nonsingular {p}x{p} information matrix"
        )
    if r < 2:
        raise ValueError("r must be at least 2")
    if max_swaps is None:
        max_swaps = 200 * r * p
    box = Box.unit_cube(p)
    if p == 1:
        return _make_design(_random_lhd_points(r, 1, rng), box)

    best: np.ndarray | None = None
    best_kappa = np.inf
    for _ in range(max(1, max_restarts)):
        L = _random_lhd_points(r, p, rng)
        L, kap, _ = _descend_correlations(L, kappa_target, max_swaps)
        if kap < best_kappa:
            best, best_kappa = L, kap
        if best_kappa <= kappa_target:
            break
    assert best is not None
    return _make_design(best, box)


def rescale_design(design: DesignMatrix, box: Box) -> DesignMatrix:
    """Affinely map a design from its current box onto ``box``, per column.

    The within-column rank pattern (hence the LHD property) is preserved;
    kappa and max_abs_corr are recomputed for the mapped points.
    """
    if box.dim != design.dim:
        raise ValueError("box dimension must match design dimension")
    src = design.box
    src_center = (src.lower + src.upper) / 2.0
    src_half = (src.upper - src.lower) / 2.0
    unit = (design.points - src_center) / src_half
    center = (box.lower + box.upper) / 2.0
    half = (box.upper - box.lower) / 2.0
    return _make_design(center + unit * half, box)
