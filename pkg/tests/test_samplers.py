import numpy as np
import pytest

from lowcon import (
    ConstantColumn,
    DegenerateBox,
    blev,
    fit_sls,
    generate_olhd,
    iboss,
    leverage_scores,
    levunw,
    lowcon,
    scale_to_cube,
    slev,
    theta_box,
    unif,
)
from lowcon.samplers import _leverage_probs


class TestScaling:
    def test_affine_endpoints(self):
        scaled, _ = scale_to_cube(np.array([[0.0], [1.0], [2.0]]))
        assert np.array_equal(scaled[:, 0], [-1.0, 0.0, 1.0])

    def test_idempotent_on_spanning_data(self):
        X = np.array([[-1.0], [1.0]])
        scaled, _ = scale_to_cube(X)
        assert np.array_equal(scaled, X)

    def test_round_trip(self):
        rng = np.random.default_rng(0)
        X = rng.standard_normal((50, 3)) * [2.0, 10.0, 0.3] + [5.0, -1.0, 0.0]
        scaled, spec = scale_to_cube(X)
        assert scaled.min(axis=0) == pytest.approx([-1.0] * 3)
        assert scaled.max(axis=0) == pytest.approx([1.0] * 3)
        assert np.allclose(spec.inverse(scaled), X, atol=1e-12)

    def test_constant_column_rejected(self):
        with pytest.raises(ConstantColumn):
            scale_to_cube(np.column_stack([np.arange(4.0), np.full(4, 7.0)]))


class TestThetaBox:
    def test_theta_zero_is_unit_cube(self):
        rng = np.random.default_rng(1)
        scaled, _ = scale_to_cube(rng.standard_normal((100, 3)))
        box = theta_box(scaled, 0.0)
        assert np.array_equal(box.lower, [-1.0] * 3)
        assert np.array_equal(box.upper, [1.0] * 3)

    def test_arithmetic_grid_quantiles(self):
        col = np.linspace(-1.0, 1.0, 101)[:, None]
        box = theta_box(col, 1.0)
        assert box.lower[0] == pytest.approx(-0.98, abs=1e-12)
        assert box.upper[0] == pytest.approx(0.98, abs=1e-12)

    def test_matches_sort_interpolation_oracle(self):
        rng = np.random.default_rng(2)
        col = np.sort(rng.standard_normal(137))
        scaled, _ = scale_to_cube(col[:, None])
        box = theta_box(scaled, 25.0)
        xs = np.sort(scaled[:, 0])
        pos = 0.25 * (len(xs) - 1)
        lo = int(np.floor(pos))
        expect_lower = xs[lo] + (pos - lo) * (xs[lo + 1] - xs[lo])
        assert box.lower[0] == pytest.approx(expect_lower, abs=1e-12)

    def test_degenerate_box_raises(self):
        col = np.concatenate([[-1.0], np.zeros(98), [1.0]])[:, None]
        with pytest.raises(DegenerateBox):
            theta_box(col, 10.0)

    def test_theta_range_validated(self):
        with pytest.raises(ValueError):
            theta_box(np.zeros((10, 1)), 50.0)


class TestUnif:
    def test_all_rows_when_r_equals_n(self):
        X = np.random.default_rng(3).standard_normal((6, 2))
        sel = unif(X, 6, np.random.default_rng(0))
        assert sorted(sel.indices.tolist()) == list(range(6))

    def test_deterministic(self):
        X = np.random.default_rng(4).standard_normal((40, 2))
        a = unif(X, 10, np.random.default_rng(5))
        b = unif(X, 10, np.random.default_rng(5))
        assert np.array_equal(a.indices, b.indices)

    def test_inclusion_frequencies(self):
        n, r, draws = 20, 5, 10_000
        X = np.random.default_rng(6).standard_normal((n, 2))
        rng = np.random.default_rng(7)
        counts = np.zeros(n)
        for _ in range(draws):
            counts[unif(X, r, rng).indices] += 1
        prob = r / n
        sd = np.sqrt(draws * prob * (1 - prob))
        assert np.all(np.abs(counts - draws * prob) <= 3 * sd)


def equal_leverage_design(n):
    """Rows on a circle: equal leverage, orthogonal columns."""
    theta = 2 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(theta), np.sin(theta)])


class TestBlev:
    def test_equal_leverage_gives_uniform_weights(self):
        n, r = 16, 8
        X = equal_leverage_design(n)
        sel = blev(X, r, np.random.default_rng(8))
        assert np.allclose(sel.weights, n / r)

    def test_probabilities_normalized(self):
        X = np.random.default_rng(9).standard_normal((30, 3))
        pi = _leverage_probs(X, alpha=1.0)
        assert pi.sum() == pytest.approx(1.0, abs=1e-10)
        assert np.allclose(pi, leverage_scores(X) / 3.0, atol=1e-12)

    def test_draw_frequencies_match_pi(self):
        rng = np.random.default_rng(10)
        X = rng.standard_normal((15, 2)) * np.array([1.0, 5.0])
        pi = _leverage_probs(X, alpha=1.0)
        draws, r = 10_000, 4
        counts = np.zeros(15)
        for _ in range(draws):
            np.add.at(counts, blev(X, r, rng).indices, 1.0)
        total = draws * r
        sd = np.sqrt(total * pi * (1 - pi))
        assert np.all(np.abs(counts - total * pi) <= 3 * sd + 1e-9)

    def test_with_replacement_can_repeat(self):
        # single dominant-leverage row gets drawn repeatedly
        X = np.vstack([np.full((20, 1), 0.01), [[100.0]]])
        sel = blev(X, 10, np.random.default_rng(11))
        assert len(sel.indices) == 10
        assert len(set(sel.indices.tolist())) < 10


class TestSlev:
    def test_alpha_one_identical_to_blev(self):
        X = np.random.default_rng(12).standard_normal((25, 2))
        a = blev(X, 8, np.random.default_rng(13))
        b = slev(X, 8, np.random.default_rng(13), alpha=1.0)
        assert np.array_equal(a.indices, b.indices)

    def test_small_alpha_near_uniform(self):
        X = np.random.default_rng(14).standard_normal((25, 2))
        pi = _leverage_probs(X, alpha=1e-12)
        assert np.allclose(pi, 1.0 / 25, atol=1e-10)

    def test_shrinkage_floor(self):
        X = np.random.default_rng(15).standard_normal((40, 3))
        alpha = 0.9
        pi = _leverage_probs(X, alpha=alpha)
        assert np.all(pi >= (1 - alpha) / 40 - 1e-12)

    def test_alpha_validated(self):
        X = np.random.default_rng(16).standard_normal((10, 2))
        with pytest.raises(ValueError):
            slev(X, 4, np.random.default_rng(0), alpha=0.0)


class TestLevunw:
    def test_same_indices_as_blev_same_seed(self):
        X = np.random.default_rng(17).standard_normal((30, 3))
        a = blev(X, 9, np.random.default_rng(18))
        b = levunw(X, 9, np.random.default_rng(18))
        assert np.array_equal(a.indices, b.indices)
        assert a.weights is not None and b.weights is None

    def test_fit_differs_from_blev_on_skewed_leverage(self):
        rng = np.random.default_rng(19)
        X = np.column_stack([np.ones(60), np.exp(rng.standard_normal(60) * 2)])
        y = X @ [1.0, 2.0] + 5 * X[:, 1] ** 2 + rng.standard_normal(60)
        a = blev(X, 20, np.random.default_rng(20))
        b = levunw(X, 20, np.random.default_rng(20))
        fa = fit_sls(X[a.indices], y[a.indices], weights=a.weights)
        fb = fit_sls(X[b.indices], y[b.indices])
        assert not np.allclose(fa.beta, fb.beta)


class TestIboss:
    def test_one_dim_extremes(self):
        X = np.array([5.0, 1.0, 9.0, 3.0, 7.0])[:, None]
        sel = iboss(X, 4)
        assert sorted(X[sel.indices, 0].tolist()) == [1.0, 3.0, 7.0, 9.0]

    def test_r_equals_2p_takes_min_max_per_column(self):
        rng = np.random.default_rng(21)
        X = rng.permutation(100.0 * np.arange(1, 13)).reshape(6, 2)
        sel = iboss(X, 4)
        first = sel.indices[:2]
        assert X[:, 0].min() in X[first, 0] and X[:, 0].max() in X[first, 0]

    def test_claim_blocks_are_pool_extremes(self):
        rng = np.random.default_rng(22)
        X = rng.standard_normal((200, 10))
        r, p = 40, 10
        sel = iboss(X, r)
        k = r // (2 * p)
        pool = np.ones(200, dtype=bool)
        for j in range(p):
            block = sel.indices[j * 2 * k: (j + 1) * 2 * k]
            vals = np.sort(X[pool, j])
            lo_set, hi_set = set(vals[:k]), set(vals[-k:])
            got = set(X[block, j].tolist())
            assert got == lo_set | hi_set
            pool[block] = False

    def test_remainder_alternates_extremes(self):
        X = np.arange(10.0)[:, None] @ np.ones((1, 2))
        X[:, 1] = X[::-1, 0]
        sel = iboss(X, 7)  # k = 1, remainder 3 from column 1
        assert len(sel.indices) == 7
        # after column blocks {0,9} and {0,9}-complement, remainder picks
        # smallest, largest, smallest of what is left in column 1
        rem = sel.indices[4:]
        assert X[rem[0], 0] == X[rem, 0].min()
        assert X[rem[1], 0] == X[rem, 0].max()

    def test_value_ties_resolve_to_smallest_index(self):
        X = np.zeros((6, 1))
        X[4:] = 1.0
        sel = iboss(X, 2)
        assert sel.indices.tolist() == [0, 4]

    def test_deterministic_api(self):
        X = np.random.default_rng(23).standard_normal((50, 2))
        assert np.array_equal(iboss(X, 8).indices, iboss(X, 8).indices)

    def test_preconditions(self):
        X = np.random.default_rng(24).standard_normal((10, 3))
        with pytest.raises(ValueError):
            iboss(X, 5)  # r < 2p


class TestLowcon:
    def test_recovers_design_points_exactly(self):
        # sample = the very design points the seeded run will generate, plus
        # two corner rows that pin the scaling; every claim lands at distance 0
        r, p, seed = 9, 2, 42
        reference = generate_olhd(r, p, np.random.default_rng(seed))
        X = np.vstack([reference.points, -np.ones(p), np.ones(p)])
        sel = lowcon(X, r, theta=0.0, rng=np.random.default_rng(seed))
        assert sorted(sel.indices.tolist()) == list(range(r))
        # scaling the corner-augmented sample reproduces the design points to
        # within one ulp, so every claim lands at (floating-point) distance 0
        assert sel.diagnostics.mean_nn_distance <= 1e-14

    def test_selected_points_near_theta_box(self):
        rng = np.random.default_rng(25)
        cov = np.array([[1.0, 0.5], [0.5, 1.0]])
        X = rng.multivariate_normal([0.0, 0.0], cov, size=1000)
        sel = lowcon(X, 9, theta=10.0, rng=np.random.default_rng(26))
        scaled, _ = scale_to_cube(X)
        box = theta_box(scaled, 10.0)
        slack = max(sel.diagnostics.mean_nn_distance * 9, 1e-12)
        pts = scaled[sel.indices]
        assert np.all(pts >= box.lower - slack)
        assert np.all(pts <= box.upper + slack)

    def test_indices_distinct_and_sized(self):
        X = np.random.default_rng(27).standard_normal((500, 3))
        sel = lowcon(X, 20, rng=np.random.default_rng(28))
        assert len(sel) == 20
        assert len(set(sel.indices.tolist())) == 20
        assert sel.weights is None

    def test_duplicate_claims_allowed_when_not_unique(self):
        X = np.random.default_rng(29).standard_normal((30, 1))
        sel = lowcon(X, 25, rng=np.random.default_rng(30), unique=False)
        assert len(sel) == 25
        assert len(set(sel.indices.tolist())) < 25

    def test_affine_invariance_of_selection(self):
        rng = np.random.default_rng(31)
        X = rng.standard_normal((400, 3))
        scales = np.array([3.0, 0.2, 11.0])
        shifts = np.array([-4.0, 0.5, 100.0])
        a = lowcon(X, 15, rng=np.random.default_rng(32))
        b = lowcon(X * scales + shifts, 15, rng=np.random.default_rng(32))
        assert np.array_equal(a.indices, b.indices)

    def test_condition_number_beats_uniform_on_heavy_tails(self):
        from lowcon import gen_predictors

        kap_low, kap_unif = [], []
        for seed in range(12):
            rng = np.random.default_rng(100 + seed)
            X = gen_predictors("D3", 1000, 10, rng)
            kap_low.append(
                lowcon(X, 40, rng=np.random.default_rng(seed)).diagnostics.kappa_sub
            )
            kap_unif.append(
                unif(X, 40, np.random.default_rng(seed)).diagnostics.kappa_sub
            )
        assert np.median(kap_low) < np.median(kap_unif)

    def test_keep_design_exposes_decomposition(self):
        X = np.random.default_rng(33).standard_normal((300, 2))
        sel = lowcon(X, 12, rng=np.random.default_rng(34), keep_design=True)
        scaled, _ = scale_to_cube(X)
        assert np.allclose(
            sel.design.points + sel.perturbation, scaled[sel.indices], atol=1e-12
        )

    def test_requires_strictly_more_rows(self):
        X = np.random.default_rng(35).standard_normal((10, 2))
        with pytest.raises(ValueError):
            lowcon(X, 10, rng=np.random.default_rng(0))
