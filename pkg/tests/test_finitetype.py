import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from secondform import finitetype
from secondform.finitetype import MatrixA, classify, fit_matrix, sample_grid, solve_rows
from secondform.surfaces import catalog


def test_grid_counts_and_order(sphere):
    grid = sample_grid(sphere, 6, 6)
    assert len(grid) == 36
    assert grid == sorted(grid, key=lambda p: (p[0], p[1]))
    assert len(sample_grid(catalog("catenoid"), 4, 4)) == 16


def test_torus_grid_drops_bands(torus):
    # with 10 cells the midpoints include u = +-pi/2, where sin(phi) = 0
    grid = sample_grid(torus, 10, 20)
    assert len(grid) == 8 * 20


def test_grid_errors(sphere):
    with pytest.raises(finitetype.GridError):
        sample_grid(sphere, 3, 10)
    with pytest.raises(finitetype.FlatSurfaceError):
        sample_grid(catalog("cylinder"), 8, 8)
    with pytest.raises(finitetype.GridError):
        sample_grid(sphere, 4, 4, sin_band=0.99)


matrices = arrays(np.float64, (3, 3), elements=st.floats(-5, 5, allow_nan=False))


@settings(max_examples=50)
@given(matrices, st.integers(0, 2**31 - 1))
def test_solve_rows_recovers_exact_matrix(A, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(20, 3))
    got, _, rms = solve_rows(X, X @ A.T)
    assert np.allclose(got, A, atol=1e-9)
    assert rms < 1e-9


@settings(max_examples=30)
@given(matrices, st.integers(0, 2**31 - 1))
def test_fit_invariant_under_row_permutation_and_duplication(A, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(15, 3))
    Y = X @ A.T + 0.01 * rng.normal(size=(15, 3))
    base, _, _ = solve_rows(X, Y)
    perm = rng.permutation(15)
    permuted, _, _ = solve_rows(X[perm], Y[perm])
    doubled, _, _ = solve_rows(np.vstack([X, X]), np.vstack([Y, Y]))
    assert np.allclose(base, permuted, atol=1e-10)
    assert np.allclose(base, doubled, atol=1e-10)


def test_affine_recovers_translation():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(10, 3))
    A = np.diag([1.0, 2.0, 3.0])
    b = np.array([0.5, -1.0, 2.0])
    got, gb, rms = solve_rows(X, X @ A.T + b, affine=True)
    assert np.allclose(got, A) and np.allclose(gb, b) and rms < 1e-12


def test_rank_deficient():
    X = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0], [2.0, 3.0, 0.0]])
    with pytest.raises(finitetype.RankDeficientError):
        solve_rows(X, X)


@pytest.mark.parametrize("diag, tag", [
    ((0, 0, 0), "I"), ((2, 2, 2), "II"), ((2, 2, 0), "III"), ((0, 0, 3), "IV"), ((1, 1, 3), "V"),
])
def test_classify_cases(diag, tag):
    cls = classify(MatrixA(np.diag(np.array(diag, float)), 0.0, 20))
    assert cls.case_tag == tag and cls.structure_ok
    assert cls.note


def test_classify_structure_and_residual():
    a = np.diag([2.0, 2.0, 2.0])
    a[0, 1] = 0.1
    assert not classify(MatrixA(a, 0.0, 20)).structure_ok
    assert classify(MatrixA(np.eye(3), 1.0, 20)).case_tag == "NOT_FINITE_TYPE"


@pytest.mark.parametrize("c", [1.0, 2.0])
def test_catenoid_fit(c):
    s = catalog("catenoid", c=c)
    fit = fit_matrix(s, sample_grid(s, 10, 10))
    assert np.allclose(fit.a, np.diag([2 / c, 2 / c, 0.0]), atol=1e-8)
    assert classify(fit).case_tag == "III"


def test_chart_sphere_fit():
    s = catalog("chart_sphere", r=2.0)
    fit = fit_matrix(s, sample_grid(s, 8, 8))
    assert np.allclose(fit.a, np.eye(3), atol=1e-8)


def test_fit_invariant_under_v_shift(sphere):
    a = fit_matrix(sphere, [(1.0, v) for v in np.linspace(0.1, 6.0, 15)] + [(2.0, 0.3), (0.5, 1.0)])
    b = fit_matrix(sphere, [(1.0, v + 0.2) for v in np.linspace(0.1, 6.0, 15)] + [(2.0, 0.5), (0.5, 1.2)])
    assert np.allclose(a.a, b.a, atol=1e-10)


def test_torus_is_not_finite_type(torus):
    fit = fit_matrix(torus, sample_grid(torus, 12, 12))
    assert fit.rms_residual > 1e-3
    assert classify(fit).case_tag == "NOT_FINITE_TYPE"


def test_takahashi(sphere, torus):
    res = finitetype.check_takahashi(sphere, sample_grid(sphere, 8, 8))
    assert res.is_eigen and res.eigenvalue == pytest.approx(2.0)
    assert not finitetype.check_takahashi(torus, sample_grid(torus, 8, 8)).is_eigen


def test_first_operator_affine_on_sphere(sphere):
    A, b, rms = finitetype.fit_affine_laplacian1(sphere, sample_grid(sphere, 8, 8))
    # with the leading minus sign, Delta^I x = 2x on the unit sphere
    assert np.allclose(A, 2 * np.eye(3), atol=1e-8)
    assert np.allclose(b, 0.0, atol=1e-8) and rms < 1e-8


def test_affine_only_for_first_operator(sphere):
    with pytest.raises(ValueError):
        fit_matrix(sphere, sample_grid(sphere, 6, 6), affine=True)
