"""Normal field, fundamental forms and curvature.

Orientation is fixed once: ``n = (x_u x x_v) / |x_u x x_v|`` with ``u`` before
``v``.  Every signed quantity (``kappa``, ``H``, ``b_ij``) follows from it.  For
the catalog sphere (``q = -r cos(u/r)``) this is the inward normal and
``H = 1/r``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .jets import BiJet3, cross, dot
from .surfaces import ProfileCurve, RevolutionSurface, Surface, phi

K_TOL = 1e-10
DET_TOL = 1e-12
CLOSED_FORM_TOL = 1e-8


class GeometryError(ValueError):
    pass


class DegeneratePointError(GeometryError):
    """``x_u`` and ``x_v`` are parallel (or vanish) at the point."""


class FlatPointError(GeometryError):
    """Gaussian curvature vanishes, so the second fundamental form is degenerate."""


class ConsistencyError(AssertionError):
    """Two independent formulas for the same quantity disagree."""


@dataclass(frozen=True)
class FundamentalForms:
    g11: float
    g12: float
    g22: float
    b11: float
    b12: float
    b22: float

    @property
    def det_g(self) -> float:
        return self.g11 * self.g22 - self.g12**2

    @property
    def det_b(self) -> float:
        return self.b11 * self.b22 - self.b12**2

    @property
    def gauss_curvature(self) -> float:
        return self.det_b / self.det_g

    @property
    def mean_curvature(self) -> float:
        return (self.g11 * self.b22 - 2 * self.g12 * self.b12 + self.g22 * self.b11) / (2 * self.det_g)


@dataclass(frozen=True)
class CurvatureData:
    phi: float
    kappa: float
    R1: float
    R2: float
    H: float
    K: float


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


class ChartJets:
    """Position jets of a chart at one point, with the derived frame jets.

    ``x`` carries order 3, ``x_u``/``x_v`` order 2, and second derivatives
    order 1, which is what the divergence form of the Beltrami operators
    needs.
    """

    def __init__(self, surface: Surface, u: float, v: float):
        self.surface, self.u, self.v = surface, u, v
        self.x = surface.chart_jets(u, v)
        self.xu = tuple(c.du() for c in self.x)
        self.xv = tuple(c.dv() for c in self.x)
        self.xuu = tuple(c.du() for c in self.xu)
        self.xuv = tuple(c.dv() for c in self.xu)
        self.xvv = tuple(c.dv() for c in self.xv)
        self._normal = None

    def normal_jets(self):
        if self._normal is None:
            xu = tuple(c.truncate(1) for c in self.xu)
            xv = tuple(c.truncate(1) for c in self.xv)
            m = cross(xu, xv)
            norm2 = dot(m, m)
            if norm2.value < DET_TOL**2:
                raise DegeneratePointError(f"degenerate chart point ({self.u!r}, {self.v!r})")
            inv = norm2.compose([norm2.value**-0.5, -0.5 * norm2.value**-1.5])
            self._normal = tuple(c * inv for c in m)
        return self._normal

    def metric_jets(self):
        """``(g11, g12, g22)`` as order-1 jets."""
        xu = tuple(c.truncate(1) for c in self.xu)
        xv = tuple(c.truncate(1) for c in self.xv)
        return dot(xu, xu), dot(xu, xv), dot(xv, xv)

    def second_form_jets(self):
        """``(b11, b12, b22)`` as order-1 jets."""
        n = self.normal_jets()
        return dot(self.xuu, n), dot(self.xuv, n), dot(self.xvv, n)

    def point(self) -> np.ndarray:
        return np.array([c.value for c in self.x])


def _point_forms(cj: ChartJets) -> FundamentalForms:
    g = cj.metric_jets()
    b = cj.second_form_jets()
    return FundamentalForms(*(j.value for j in g), *(j.value for j in b))


def normal(surface: Surface, u: float, v: float) -> np.ndarray:
    """Unit normal ``(x_u x x_v)/|x_u x x_v|``."""
    return np.array([c.value for c in ChartJets(surface, u, v).normal_jets()])


def forms(surface: Surface, u: float, v: float) -> FundamentalForms:
    """First and second fundamental form coefficients at ``(u, v)``.

    For surfaces of revolution the chart result is checked against
    ``b11 = kappa``, ``b12 = 0``, ``b22 = p q'``.

    Raises
    ------
    DegeneratePointError, FlatPointError, ConsistencyError
    """
    ff = _point_forms(ChartJets(surface, u, v))
    if ff.det_g <= 0:
        raise DegeneratePointError("metric is not positive definite")
    if abs(ff.det_b) < DET_TOL:
        raise FlatPointError(f"det b = {ff.det_b:.3g}: Gaussian curvature vanishes at ({u!r}, {v!r})")
    if isinstance(surface, RevolutionSurface):
        closed = revolution_forms(surface.profile, u)
        for name in ("g11", "g12", "g22", "b11", "b12", "b22"):
            a, b = getattr(ff, name), getattr(closed, name)
            if not _close(a, b, CLOSED_FORM_TOL):
                raise ConsistencyError(f"{name}: chart {a!r} vs closed form {b!r}")
    return ff


def revolution_forms(profile: ProfileCurve, u: float) -> FundamentalForms:
    """Closed forms ``g = diag(1, p^2)``, ``b = diag(kappa, p q')`` for arc-length profiles."""
    pd = phi(profile, u)
    p, _ = profile.jets(u)
    return FundamentalForms(1.0, 0.0, p.value**2, pd.dphi, 0.0, p.value * math.sin(pd.phi))


def curvature(profile: ProfileCurve, u: float, k_tol: float = K_TOL) -> CurvatureData:
    """Principal radii, mean and Gaussian curvature of a surface of revolution.

    ``R1 = kappa``, ``R2 = q'/p``, ``2H = phi' + sin(phi)/p`` and
    ``K = phi' sin(phi)/p``, the latter cross-checked against ``-p''/p``.

    Raises
    ------
    FlatPointError
        If ``|K| < k_tol``.
    """
    pd = phi(profile, u)
    p, q = profile.jets(u)
    kappa = pd.dphi
    R1 = kappa
    R2 = q.d1 / p.value
    K = kappa * math.sin(pd.phi) / p.value
    K_alt = -p.d2 / p.value
    if abs(K) < k_tol and abs(K_alt) < k_tol:
        raise FlatPointError(f"K = {K:.3g} at u={u!r}: Gaussian curvature vanishes (excluded case)")
    if not _close(K, K_alt, 1e-8):
        raise ConsistencyError(f"K = {K!r} (turning angle) vs {K_alt!r} (-p''/p)")
    if not _close(K, R1 * R2, 1e-8):
        raise ConsistencyError("K differs from R1*R2")
    H = 0.5 * (kappa + math.sin(pd.phi) / p.value)
    return CurvatureData(phi=pd.phi, kappa=kappa, R1=R1, R2=R2, H=H, K=K)
