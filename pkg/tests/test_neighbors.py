import numpy as np
import pytest

from lowcon import Exhausted, build_index, nearest


def scan_oracle(points, q, excluded=None):
    """Brute-force nearest neighbor with the same tie rule."""
    d2 = ((points - q) ** 2).sum(axis=1)
    if excluded is not None:
        d2 = d2.copy()
        d2[list(excluded)] = np.inf
    m = d2.min()
    idx = int(np.nonzero(d2 == m)[0].min())
    return idx, float(np.sqrt(m))


def test_single_point():
    index = build_index(np.array([[1.0, 2.0]]))
    assert index.size == 1
    i, d = nearest(index, [1.0, 2.0])
    assert (i, d) == (0, 0.0)


def test_duplicates_return_lowest_index():
    pts = np.tile(np.array([[0.5, -0.5]]), (30, 1))
    index = build_index(pts)
    i, d = nearest(index, [0.0, 0.0])
    assert i == 0
    i, _ = nearest(index, [0.0, 0.0], excluded={0, 1, 2})
    assert i == 3


def test_query_on_sample_row():
    rng = np.random.default_rng(0)
    pts = rng.standard_normal((50, 3))
    index = build_index(pts)
    i, d = nearest(index, pts[17])
    assert i == 17 and d == 0.0


def test_equidistant_tie_breaks_to_smaller_index():
    pts = np.zeros((10, 2))
    pts[3] = [1.0, 0.0]
    pts[7] = [-1.0, 0.0]
    pts[[0, 1, 2, 4, 5, 6, 8, 9], :] = 50.0
    index = build_index(pts)
    i, d = nearest(index, [0.0, 0.0])
    assert i == 3 and d == 1.0


def test_matches_scan_oracle_random():
    rng = np.random.default_rng(1)
    pts = rng.standard_normal((1000, 5))
    index = build_index(pts)
    for _ in range(100):
        q = rng.standard_normal(5) * 1.5
        assert nearest(index, q) == scan_oracle(pts, q)


def test_matches_scan_oracle_with_exclusions():
    rng = np.random.default_rng(2)
    pts = rng.standard_normal((300, 3))
    index = build_index(pts)
    for _ in range(50):
        q = rng.standard_normal(3)
        k = int(rng.integers(0, 250))
        excluded = set(rng.choice(300, size=k, replace=False).tolist())
        got = nearest(index, q, excluded=excluded)
        assert got == scan_oracle(pts, q, excluded)


def test_matches_oracle_on_gridlike_ties():
    # lattice data produce many exactly-equal distances
    g = np.arange(5.0)
    pts = np.array([[a, b] for a in g for b in g])
    index = build_index(pts)
    rng = np.random.default_rng(3)
    for _ in range(60):
        q = rng.integers(0, 5, size=2).astype(float) + rng.choice([0.0, 0.5], 2)
        assert nearest(index, q) == scan_oracle(pts, q)


def test_monotone_under_growing_exclusion():
    rng = np.random.default_rng(4)
    pts = rng.standard_normal((200, 4))
    index = build_index(pts)
    q = rng.standard_normal(4)
    excluded: set[int] = set()
    last = -1.0
    for _ in range(150):
        i, d = nearest(index, q, excluded=excluded)
        assert d >= last
        last = d
        excluded.add(i)


def test_boolean_mask_exclusion():
    rng = np.random.default_rng(5)
    pts = rng.standard_normal((64, 2))
    index = build_index(pts)
    mask = np.zeros(64, dtype=bool)
    mask[:32] = True
    i, _ = nearest(index, pts[5], excluded=mask)
    assert i >= 32


def test_exhausted_when_all_excluded():
    index = build_index(np.zeros((4, 2)))
    with pytest.raises(Exhausted):
        nearest(index, [0.0, 0.0], excluded={0, 1, 2, 3})


def test_rejects_dimension_mismatch():
    index = build_index(np.zeros((4, 2)))
    with pytest.raises(ValueError):
        nearest(index, [0.0, 0.0, 0.0])
