"""The six subsampling methods behind one interface.

Every sampler takes the full predictor matrix and a target size r and returns
a :class:`SubsampleSelection`. Probability-weighted samplers (blev, slev)
attach reciprocal inclusion-probability weights for weighted least squares;
the rest select rows for a plain fit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .designs import (
    DEFAULT_KAPPA_TARGET,
    Box,
    DesignMatrix,
    generate_olhd,
    rescale_design,
)
from .exceptions import ConstantColumn
from .linalg import condition_number, leverage_scores
from .neighbors import build_index, nearest


@dataclass(frozen=True)
class ScalingSpec:
    """Per-column min/max of the raw sample, defining the map onto [-1, 1]^p."""

    col_min: np.ndarray
    col_max: np.ndarray

    def transform(self, X: np.ndarray) -> np.ndarray:
        return 2.0 * (X - self.col_min) / (self.col_max - self.col_min) - 1.0

    def inverse(self, X_scaled: np.ndarray) -> np.ndarray:
        return self.col_min + (X_scaled + 1.0) * (self.col_max - self.col_min) / 2.0


@dataclass(frozen=True)
class SelectionDiagnostics:
    kappa_sub: float
    mean_nn_distance: float | None = None


@dataclass(frozen=True)
class SubsampleSelection:
    """Chosen row indices plus optional fit weights and method diagnostics.

    ``design`` and ``perturbation`` are populated only by :func:`lowcon`
    when asked to keep them: the design points in the scaled space and the
    matrix of (claimed point - design point) rows.
    """

    indices: np.ndarray
    method: str
    weights: np.ndarray | None = None
    diagnostics: SelectionDiagnostics = field(
        default_factory=lambda: SelectionDiagnostics(kappa_sub=np.nan)
    )
    design: DesignMatrix | None = None
    perturbation: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.indices)


def _check_X(X, name="X") -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-d")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} must be finite")
    return X


def scale_to_cube(X) -> tuple[np.ndarray, ScalingSpec]:
    """Affinely map each column of X onto [-1, 1] (min to -1, max to +1)."""
    X = _check_X(X)
    lo = X.min(axis=0)
    hi = X.max(axis=0)
    flat = np.nonzero(hi <= lo)[0]
    if flat.size:
        raise ConstantColumn(f"columns {flat.tolist()} have zero range")
    spec = ScalingSpec(col_min=lo, col_max=hi)
    return spec.transform(X), spec


def theta_box(X_scaled: np.ndarray, theta: float) -> Box:
    """Per-column [theta, 100 - theta] percentile box of the scaled sample.

    Uses linear-interpolation quantiles; theta = 0 returns the full
    [-1, 1]^p cube exactly (the scaled column extremes are exactly +-1).
    """
    if not 0.0 <= theta < 50.0:
        raise ValueError("theta must lie in [0, 50) percent")
    lo = np.quantile(X_scaled, theta / 100.0, axis=0)
    hi = np.quantile(X_scaled, 1.0 - theta / 100.0, axis=0)
    return Box(lower=lo, upper=hi)


def _kappa_sub(X: np.ndarray, idx: np.ndarray) -> float:
    sub = X[idx]
    if sub.shape[0] < sub.shape[1]:
        return np.inf
    return condition_number(sub)


def lowcon(
    X,
    r: int,
    theta: float = 1.0,
    rng: np.random.Generator | None = None,
    kappa_target: float = DEFAULT_KAPPA_TARGET,
    max_restarts: int = 20,
    unique: bool = True,
    keep_design: bool = False,
) -> SubsampleSelection:
    """Low-condition-number pursuit: match a space-filling design to the data.

    Scales the sample to [-1, 1]^p, trims the design space to the per-column
    [theta, 100 - theta] percentile box, draws a low-correlation Latin
    hypercube design of r points inside it (the first use of ``rng``), and
    claims each design point's nearest sample point in design order.

    With ``unique=True`` (default) every design point claims a distinct row,
    guaranteeing r distinct rows; ``unique=False`` allows repeat claims.
    Selection is invariant to per-column positive affine transforms of the
    raw data, since scaling normalizes them away.
    """
    X = _check_X(X)
    n, p = X.shape
    if rng is None:
        rng = np.random.default_rng()
    if not n > r:
        raise ValueError(f"need n > r, got n={n}, r={r}")
    if r < p + 1:
        raise ValueError(f"need r >= p + 1, got r={r}, p={p}")
    X_scaled, _ = scale_to_cube(X)
    box = theta_box(X_scaled, theta)
    canonical = generate_olhd(
        r, p, rng, kappa_target=kappa_target, max_restarts=max_restarts
    )
    design = rescale_design(canonical, box)
    index = build_index(X_scaled)
    claimed = np.zeros(n, dtype=bool)
    indices = np.empty(r, dtype=np.intp)
    dists = np.empty(r)
    for i, point in enumerate(design.points):
        j, d = nearest(index, point, excluded=claimed if unique else None)
        indices[i] = j
        dists[i] = d
        if unique:
            claimed[j] = True
    diag = SelectionDiagnostics(
        kappa_sub=_kappa_sub(X, indices),
        mean_nn_distance=float(dists.mean()),
    )
    return SubsampleSelection(
        indices=indices,
        method="LOWCON",
        diagnostics=diag,
        design=design if keep_design else None,
        perturbation=(X_scaled[indices] - design.points) if keep_design else None,
    )


def unif(X, r: int, rng: np.random.Generator) -> SubsampleSelection:
    """Uniform subsampling without replacement."""
    X = _check_X(X)
    n = X.shape[0]
    if n < r:
        raise ValueError(f"need n >= r, got n={n}, r={r}")
    indices = np.asarray(rng.choice(n, size=r, replace=False), dtype=np.intp)
    return SubsampleSelection(
        indices=indices,
        method="UNIF",
        diagnostics=SelectionDiagnostics(kappa_sub=_kappa_sub(X, indices)),
    )


def _leverage_probs(X: np.ndarray, alpha: float) -> np.ndarray:
    n = X.shape[0]
    h = leverage_scores(X)
    pi = alpha * h / h.sum() + (1.0 - alpha) / n
    return pi / pi.sum()


def _leverage_draw(
    X: np.ndarray, r: int, rng: np.random.Generator, alpha: float
) -> tuple[np.ndarray, np.ndarray]:
    n = X.shape[0]
    if n < r:
        raise ValueError(f"need n >= r, got n={n}, r={r}")
    pi = _leverage_probs(X, alpha)
    indices = np.asarray(rng.choice(n, size=r, replace=True, p=pi), dtype=np.intp)
    return indices, pi


def blev(X, r: int, rng: np.random.Generator) -> SubsampleSelection:
    """Basic leverage subsampling: i.i.d. draws with probability h_ii / p,
    with replacement, and 1 / (r pi) weights for weighted least squares."""
    X = _check_X(X)
    indices, pi = _leverage_draw(X, r, rng, alpha=1.0)
    return SubsampleSelection(
        indices=indices,
        method="BLEV",
        weights=1.0 / (r * pi[indices]),
        diagnostics=SelectionDiagnostics(kappa_sub=_kappa_sub(X, indices)),
    )


def slev(X, r: int, rng: np.random.Generator, alpha: float = 0.9) -> SubsampleSelection:
    """Shrinkage leverage subsampling: pi = alpha h/p + (1 - alpha)/n."""
    X = _check_X(X)
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    indices, pi = _leverage_draw(X, r, rng, alpha=alpha)
    return SubsampleSelection(
        indices=indices,
        method="SLEV",
        weights=1.0 / (r * pi[indices]),
        diagnostics=SelectionDiagnostics(kappa_sub=_kappa_sub(X, indices)),
    )


def levunw(X, r: int, rng: np.random.Generator) -> SubsampleSelection:
    """Unweighted leverage subsampling: the same draw as blev (identical
    indices under the same rng state) but fit by plain least squares."""
    X = _check_X(X)
    indices, _ = _leverage_draw(X, r, rng, alpha=1.0)
    return SubsampleSelection(
        indices=indices,
        method="LEVUNW",
        diagnostics=SelectionDiagnostics(kappa_sub=_kappa_sub(X, indices)),
    )


def iboss(X, r: int) -> SubsampleSelection:
    """Deterministic extreme-point selection.

    For each column in order, takes the floor(r / 2p) smallest and largest
    remaining rows by that column's value; any remainder is filled from
    column 1 extremes, alternating smallest/largest. Value ties resolve to
    the smallest row index. No randomness is involved.
    """
    X = _check_X(X)
    n, p = X.shape
    if r < 2 * p:
        raise ValueError(f"need r >= 2p, got r={r}, p={p}")
    if n < r:
        raise ValueError(f"need n >= r, got n={n}, r={r}")
    k = r // (2 * p)
    taken = np.zeros(n, dtype=bool)
    chosen: list[int] = []
    for j in range(p):
        asc = np.argsort(X[:, j], kind="stable")
        avail = asc[~taken[asc]]
        low = avail[:k]
        taken[low] = True
        rest = avail[k:]
        desc = rest[np.argsort(-X[rest, j], kind="stable")]
        high = desc[:k]
        taken[high] = True
        chosen.extend(int(i) for i in low)
        chosen.extend(int(i) for i in high)
    m = r - 2 * p * k
    if m > 0:
        asc = [int(i) for i in np.argsort(X[:, 0], kind="stable") if not taken[i]]
        desc_all = np.argsort(-X[:, 0], kind="stable")
        desc = [int(i) for i in desc_all if not taken[i]]
        ai = di = 0
        take_small = True
        while m > 0:
            if take_small:
                while taken[asc[ai]]:
                    ai += 1
                i = asc[ai]
            else:
                while taken[desc[di]]:
                    di += 1
                i = desc[di]
            taken[i] = True
            chosen.append(i)
            take_small = not take_small
            m -= 1
    indices = np.asarray(chosen, dtype=np.intp)
    return SubsampleSelection(
        indices=indices,
        method="IBOSS",
        diagnostics=SelectionDiagnostics(kappa_sub=_kappa_sub(X, indices)),
    )
