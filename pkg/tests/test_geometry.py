import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from farkas_balance.errors import NoStrictSeparation, NumericalAmbiguity, ResidualBlowup
from farkas_balance.geometry import (
    GeometryConfig,
    PointMatrix,
    SeparatingNormal,
    SparseCoefficients,
    caratheodory_reduce,
    origin_in_hull,
    separating_normal,
)
from farkas_balance.simplex import solve_lp
from oracles import exact_origin_in_hull, scipy_separation_delta


def check_hull_witness(M, coeffs, tol=1e-8):
    assert isinstance(coeffs, SparseCoefficients)
    w = coeffs.weights
    assert np.all(w > 0)
    assert abs(w.sum() - 1) <= 1e-10
    assert len(coeffs) <= M.m + 1
    v = coeffs.dense(M.col_labels)
    assert np.max(np.abs(M.entries @ v)) <= tol


def check_normal(M, normal):
    assert isinstance(normal, SeparatingNormal)
    assert np.linalg.norm(normal.w) == pytest.approx(1.0, abs=1e-12)
    products = normal.w @ M.entries
    assert np.all(products >= normal.margin - 1e-12)
    assert normal.margin > 0


class TestSimplexCore:
    def test_textbook_program(self):
        # max 3x + 2y, x + y <= 4, x + 3y <= 6  ->  x = 4, y = 0
        A = [[1, 1, 1, 0], [1, 3, 0, 1]]
        res = solve_lp(A, [4, 6], [-3, -2, 0, 0], basis=[2, 3])
        assert res.status == "optimal"
        np.testing.assert_allclose(res.x[:2], [4, 0], atol=1e-12)
        assert res.objective == pytest.approx(-12)

    def test_phase_one_detects_infeasible(self):
        # x + y = 1 and x + y = 2
        res = solve_lp([[1, 1], [1, 1]], [1, 2])
        assert res.status == "infeasible"
        assert res.phase1_objective == pytest.approx(1.0)

    def test_redundant_rows(self):
        res = solve_lp([[1, 1], [2, 2]], [1, 2], [1, 2])
        assert res.status == "optimal"
        np.testing.assert_allclose(res.x, [1, 0], atol=1e-12)

    def test_unbounded(self):
        res = solve_lp([[1, -1]], [0], [-1, 0])
        assert res.status == "unbounded"

    @pytest.mark.parametrize("rule", ["bland", "dantzig"])
    def test_rules_agree_on_optimum(self, rule):
        rng = np.random.default_rng(5)
        A = rng.normal(size=(4, 9))
        x0 = rng.random(9)
        c = rng.random(9)
        res = solve_lp(A, A @ x0, c, rule=rule)
        ref = solve_lp(A, A @ x0, c, order=list(range(8, -1, -1)))
        assert res.objective == pytest.approx(ref.objective, abs=1e-9)


class TestOriginInHull:
    def test_midpoint(self):
        M = PointMatrix([[1.0, -1.0]])
        out = origin_in_hull(M)
        assert out.in_hull
        assert out.witness.entries == ((0, 0.5), (1, 0.5))

    def test_common_half_space(self):
        M = PointMatrix([[1, 1, 1], [0, 1, -1]])
        out = origin_in_hull(M)
        assert not out.in_hull
        np.testing.assert_allclose(out.witness.w, [1, 0], atol=1e-12)
        assert out.witness.margin == pytest.approx(1.0)

    def test_labels_carried_through(self):
        M = PointMatrix([[1.0, 2.0, -1.0]], col_labels=(7, 3, 12))
        out = origin_in_hull(M)
        assert set(out.witness.labels) <= {7, 3, 12}
        check_hull_witness(M, out.witness)

    def test_zero_column(self):
        M = PointMatrix([[1.0, 0.0, 2.0], [1.0, 0.0, 1.0]])
        out = origin_in_hull(M)
        assert out.witness.entries == ((1, 1.0),)

    def test_underdetermined_flag(self):
        assert origin_in_hull(PointMatrix([[1.0], [0.0]])).underdetermined
        assert not origin_in_hull(PointMatrix([[1.0, -1.0, 0.5]])).underdetermined

    def test_random_agrees_with_scipy(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            X = rng.normal(size=(3, 8)) + rng.normal(size=(3, 1)) * rng.random()
            delta = scipy_separation_delta(X)
            M = PointMatrix(X)
            out = origin_in_hull(M)
            assert out.in_hull == (delta <= 1e-9), delta
            if out.in_hull:
                check_hull_witness(M, out.witness)
            else:
                check_normal(M, out.witness)

    def test_ambiguity_surfaced(self):
        # the hull misses the origin by 1e-8: outside tol_hull, yet the best
        # margin is below a demanding tol_sep
        M = PointMatrix([[1e-8, 1e-8], [1.0, -1.0]])
        with pytest.raises(NumericalAmbiguity):
            origin_in_hull(M, GeometryConfig(tol_hull=1e-9, tol_sep=1e-6))
        out = origin_in_hull(M)
        assert not out.in_hull
        assert out.witness.margin == pytest.approx(1e-8, rel=1e-6)

    def test_deterministic(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(4, 15))
        a, b = origin_in_hull(PointMatrix(X)), origin_in_hull(PointMatrix(X))
        if a.in_hull:
            assert a.witness.entries == b.witness.entries
        else:
            assert np.array_equal(a.witness.w, b.witness.w)


class TestCaratheodory:
    def test_opposite_pairs(self):
        M = PointMatrix([[1, -1, 0, 0], [0, 0, 1, -1]])
        out = caratheodory_reduce(M, [0.25] * 4)
        assert len(out) <= 3
        check_hull_witness(M, out, tol=1e-12)

    def test_fixed_point(self):
        M = PointMatrix([[1, -1, 5], [2, -2, 0], [0, 0, 1]])
        out = caratheodory_reduce(M, [0.5, 0.5, 0.0])
        assert out.entries == ((0, 0.5), (1, 0.5))
        assert out.reduction_steps == 0

    def test_random_dense(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            X = rng.normal(size=(4, 20))
            v = rng.random(20)
            v /= v.sum()
            X -= (X @ v)[:, None]          # recentre so that M v = 0 exactly-ish
            M = PointMatrix(X)
            out = caratheodory_reduce(M, v)
            assert len(out) <= 5
            assert abs(out.weights.sum() - 1) <= 1e-10
            assert out.residual <= 1e-8
            # re-solve from scratch: the reduced columns still contain 0
            cols = [M.col_labels.index(lbl) for lbl in out.labels]
            assert origin_in_hull(PointMatrix(X[:, cols])).in_hull

    def test_rejects_bad_input(self):
        M = PointMatrix([[1.0, 2.0]])
        with pytest.raises(ValueError):
            caratheodory_reduce(M, [0.5, 0.5])
        with pytest.raises(ValueError):
            caratheodory_reduce(M, [-0.5, 1.5])

    def test_residual_blowup(self):
        M = PointMatrix([[1.0, -1.0, 0.0], [0.0, 0.0, 1.0]])
        with pytest.raises(ResidualBlowup):
            caratheodory_reduce(M, [0.5, 0.5, 0.0],
                                GeometryConfig(tol_hull=1e-9, tol_rank=1.5))


class TestSeparatingNormal:
    def test_single_column(self):
        out = separating_normal(PointMatrix([[2.0], [0.0]]))
        np.testing.assert_allclose(out.w, [1, 0])
        assert out.margin == pytest.approx(2.0)

    def test_repeated_diagonal(self):
        x = np.ones(2) / np.sqrt(2)
        out = separating_normal(PointMatrix(np.column_stack([x, x, x])))
        np.testing.assert_allclose(out.w, x, atol=1e-12)
        assert out.margin == pytest.approx(1.0)

    def test_constructed_separated(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            w_star = rng.normal(size=3)
            w_star /= np.linalg.norm(w_star)
            cols = []
            while len(cols) < 10:
                x = rng.normal(size=3)
                if w_star @ x >= 0.1:
                    cols.append(x)
            M = PointMatrix(np.column_stack(cols))
            out = separating_normal(M)
            check_normal(M, out)
            # w_star is feasible for the box program after scaling by 1/|w_star|_inf
            assert out.box_delta >= 0.1 / np.max(np.abs(w_star)) - 1e-9
            assert out.margin >= 0.1 / np.sqrt(3) - 1e-9

    def test_no_strict_separation(self):
        with pytest.raises(NoStrictSeparation):
            separating_normal(PointMatrix([[1.0, -1.0]]))


# ---------------------------------------------------------------- properties

def test_small_integer_matrices_match_exact_lp():
    rng = np.random.default_rng(123)
    for _ in range(300):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(1, 11))
        X = rng.integers(-1, 2, size=(m, n))
        M = PointMatrix(X)
        out = origin_in_hull(M)
        assert out.in_hull == exact_origin_in_hull(X.T.tolist())
        if out.in_hull:
            check_hull_witness(M, out.witness)
        else:
            check_normal(M, out.witness)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(2, 10), st.integers(0, 2 ** 31 - 1),
       st.sampled_from([0.25, 4.0, 1024.0]))
def test_scale_robustness(m, n, seed, lam):
    X = np.random.default_rng(seed).normal(size=(m, n))
    M = PointMatrix(X)
    try:
        a = origin_in_hull(M)
    except NumericalAmbiguity:
        return
    b = origin_in_hull(M.scaled(lam))
    assert a.in_hull == b.in_hull
    if a.in_hull:
        np.testing.assert_allclose(a.witness.weights, b.witness.weights, atol=1e-12)
    else:
        assert b.witness.margin == pytest.approx(lam * a.witness.margin, rel=1e-9)


def test_exhaustive_tiny_sign_matrices():
    # every 2 x 3 matrix with entries in {-1, 0, 1}
    for flat in itertools.product((-1, 0, 1), repeat=6):
        X = np.array(flat).reshape(2, 3)
        out = origin_in_hull(PointMatrix(X))
        assert out.in_hull == exact_origin_in_hull(X.T.tolist())
