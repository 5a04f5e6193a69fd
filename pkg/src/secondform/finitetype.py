"""Least-squares test of ``Delta^II x = A x`` and classification of ``A``.

For surfaces of revolution the matrix is forced into the shape
``diag(lambda, lambda, mu)``; the classification reports which of the five
sign patterns of ``(lambda, mu)`` a fitted matrix falls in.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import beltrami
from .geometry import ChartJets, DegeneratePointError, FlatPointError, _point_forms, K_TOL
from .surfaces import ArcLengthError, ChartSurface, RevolutionSurface, Surface, phi

SIN_BAND = 0.1
DPHI_BAND = 0.05
CLASSIFY_TOL = 1e-6
RESIDUAL_TOL = 1e-4
MIN_SAMPLES = 12

CASE_NOTES = {
    "I": "lambda = mu = 0: impossible, the reduced equations combine to 2 = 0",
    "II": "lambda = mu != 0: the profile is an arc of a circle centred at the origin (sphere)",
    "III": "lambda != 0, mu = 0: the surface is minimal (catenoid)",
    "IV": "lambda = 0, mu != 0: impossible, the equations force sin(phi) = 0",
    "V": "lambda, mu != 0, lambda != mu: impossible, elimination forces mu = lambda",
    "NOT_FINITE_TYPE": "no constant matrix A satisfies Delta^II x = A x on the sample",
}


class GridError(ValueError):
    """Too few valid sample points survive the singular-band exclusion."""


class FlatSurfaceError(FlatPointError):
    """Every candidate sample point has vanishing Gaussian curvature."""


class RankDeficientError(ValueError):
    """Sample positions span less than three dimensions; the fit is not unique."""


@dataclass(frozen=True)
class MatrixA:
    a: np.ndarray
    rms_residual: float
    n_samples: int

    def __post_init__(self):
        self.a.setflags(write=False)

    def to_list(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.a]


@dataclass(frozen=True)
class TypeClassification:
    case_tag: str
    lam: float
    mu: float
    structure_ok: bool
    note: str = ""


@dataclass(frozen=True)
class TakahashiResult:
    is_eigen: bool
    eigenvalue: float
    rms_residual: float


def _candidate_ok(surface: Surface, u: float, v: float, sin_band: float, dphi_band: float) -> tuple[bool, bool]:
    """Return ``(usable, flat)`` for one candidate point."""
    if isinstance(surface, RevolutionSurface):
        pd = phi(surface.profile, u)
        p = surface.profile.jets(u)[0].value
        K = pd.dphi * math.sin(pd.phi) / p
        flat = abs(K) < K_TOL
        return (abs(math.sin(pd.phi)) >= sin_band and abs(pd.dphi) >= dphi_band and not flat), flat
    try:
        ff = _point_forms(ChartJets(surface, u, v))
    except DegeneratePointError:
        return False, False
    flat = abs(ff.gauss_curvature) < K_TOL
    return not flat, flat


def sample_grid(
    surface: Surface,
    n_u: int,
    n_v: int,
    sin_band: float = SIN_BAND,
    dphi_band: float = DPHI_BAND,
) -> list[tuple[float, float]]:
    """Cell-centred tensor grid over the domain, minus singular bands.

    Ordering is ``u``-major and deterministic.

    Raises
    ------
    GridError
        Fewer than 12 points survive, or the domain is empty.
    FlatSurfaceError
        The Gaussian curvature vanishes at every candidate point.
    """
    if n_u < 4 or n_v < 4:
        raise GridError("grid needs at least 4 points in each direction")
    (a, b), (c, d) = surface.u_domain, surface.v_domain
    if not (b > a and d > c):
        raise GridError(f"empty domain u={surface.u_domain}, v={surface.v_domain}")
    us = a + (np.arange(n_u) + 0.5) * (b - a) / n_u
    if isinstance(surface, RevolutionSurface):
        vs = c + np.arange(n_v) * (d - c) / n_v
    else:
        vs = c + (np.arange(n_v) + 0.5) * (d - c) / n_v
    points, n_flat, n_total = [], 0, 0
    for u in us:
        row_ok, row_flat = _candidate_ok(surface, float(u), float(vs[0]), sin_band, dphi_band) \
            if isinstance(surface, RevolutionSurface) else (None, None)
        for v in vs:
            n_total += 1
            ok, flat = (row_ok, row_flat) if row_ok is not None else _candidate_ok(
                surface, float(u), float(v), sin_band, dphi_band)
            n_flat += flat
            if ok:
                points.append((float(u), float(v)))
    if n_flat == n_total:
        raise FlatSurfaceError("Gaussian curvature vanishes at every sample point; flat surfaces are excluded")
    if len(points) < MIN_SAMPLES:
        raise GridError(f"only {len(points)} valid points after singular-band exclusion (need {MIN_SAMPLES})")
    return points


def laplacian_samples(surface: Surface, grid, operator: str = "II") -> tuple[np.ndarray, np.ndarray]:
    """Positions and operator values at the grid points."""
    X = np.empty((len(grid), 3))
    Y = np.empty((len(grid), 3))
    for k, (u, v) in enumerate(grid):
        X[k] = surface.position(u, v)
        if operator == "I":
            Y[k] = beltrami.laplacian1_position(surface, u, v)
        elif isinstance(surface, RevolutionSurface):
            Y[k] = beltrami.laplacian2_position(surface, u, v)
        else:
            Y[k] = beltrami.laplacian2_position_general(surface, u, v)
    return X, Y


def solve_rows(X: np.ndarray, Y: np.ndarray, affine: bool = False):
    """Least-squares ``A`` (and ``b`` when ``affine``) with ``A x_k (+ b) ~ y_k``."""
    design = np.hstack([X, np.ones((len(X), 1))]) if affine else X
    if np.linalg.matrix_rank(design) < design.shape[1]:
        raise RankDeficientError("sample positions are coplanar through the origin; A is not determined")
    coef, *_ = np.linalg.lstsq(design, Y, rcond=None)
    A = coef[:3].T.copy()
    b = coef[3].copy() if affine else None
    resid = design @ coef - Y
    rms = math.sqrt(float(np.sum(resid**2)) / (3 * len(X)))
    return A, b, rms


def fit_matrix(surface: Surface, grid, operator: str = "II", affine: bool = False) -> MatrixA:
    """Fit the constant matrix in ``Delta x = A x`` over ``grid``.

    ``operator="I"`` fits the first-form operator instead; only that variant
    accepts ``affine=True`` (``Delta^I x = A x + b``), and the translation is
    then dropped from the returned matrix.
    """
    if affine and operator != "I":
        raise ValueError("the affine term is only available for the first-form operator")
    X, Y = laplacian_samples(surface, grid, operator)
    A, _, rms = solve_rows(X, Y, affine)
    return MatrixA(A, rms, len(grid))


def fit_affine_laplacian1(surface: Surface, grid):
    """``Delta^I x = A x + b``: returns ``(A, b, rms)``."""
    X, Y = laplacian_samples(surface, grid, "I")
    return solve_rows(X, Y, affine=True)


def classify(A: MatrixA, tol: float = CLASSIFY_TOL, residual_tol: float = RESIDUAL_TOL) -> TypeClassification:
    """Sort a fitted matrix into the five ``(lambda, mu)`` cases."""
    a = A.a
    scale = tol * max(1.0, float(np.linalg.norm(a)))
    off = [a[0, 1], a[0, 2], a[1, 0], a[1, 2], a[2, 0], a[2, 1], a[0, 0] - a[1, 1]]
    structure_ok = all(abs(x) < scale for x in off)
    lam = 0.5 * (a[0, 0] + a[1, 1])
    mu = float(a[2, 2])
    if A.rms_residual > residual_tol:
        tag = "NOT_FINITE_TYPE"
    else:
        lam0, mu0 = abs(lam) < scale, abs(mu) < scale
        if lam0 and mu0:
            tag = "I"
        elif abs(lam - mu) < scale:
            tag = "II"
        elif mu0:
            tag = "III"
        elif lam0:
            tag = "IV"
        else:
            tag = "V"
    return TypeClassification(tag, float(lam), mu, structure_ok, CASE_NOTES[tag])


def check_takahashi(surface: Surface, grid, tol: float = 1e-6) -> TakahashiResult:
    """Best scalar ``lambda`` with ``Delta^I x ~ lambda x``."""
    X, Y = laplacian_samples(surface, grid, "I")
    denom = float(np.sum(X * X))
    lam = float(np.sum(X * Y)) / denom if denom > 0 else 0.0
    rms = math.sqrt(float(np.sum((Y - lam * X) ** 2)) / (3 * len(X)))
    return TakahashiResult(rms < tol, lam, rms)
