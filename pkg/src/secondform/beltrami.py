"""Beltrami operators of the first and second fundamental forms.

For a symmetric form ``h_ij`` (``g`` or ``b``)::

    grad_h(f, g) = h^{ij} f_i g_j
    Delta_h f    = -(1/sqrt|h|) d_i( sqrt|h| h^{ij} d_j f )

``|h|`` is the absolute value of the determinant; the catenoid has
``det b < 0``.  The divergence is taken analytically on order-1 jets of the
weights, never by finite differences.

On a surface of revolution with arc-length profile the second operator takes
the closed form (``kappa = phi'``)::

    Delta_II = -(1/phi') d_uu - 1/(p sin phi) d_vv
               + 1/2 (phi''/phi'^2 - (cos phi sin phi + p phi' cos phi)/(p phi' sin phi)) d_u
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import exprlang
from .geometry import (
    DET_TOL,
    ChartJets,
    ConsistencyError,
    DegeneratePointError,
    FlatPointError,
    _point_forms,
)
from .jets import BiJet3
from .surfaces import RevolutionSurface, Surface, phi

AGREEMENT_TOL = 1e-8
SINGULAR_TOL = 1e-12


class SingularPointError(ValueError):
    """The closed form is singular (``sin phi = 0`` or ``phi' = 0``)."""


@dataclass(frozen=True)
class ScalarField:
    """A function on the surface: an expression in ``u, v`` or a coordinate ``x1..x3``."""

    expr: exprlang.Expr | None = None
    params: Mapping[str, float] | None = None
    coordinate: int | None = None

    @classmethod
    def from_text(cls, text: str, **params: float) -> "ScalarField":
        return cls(expr=exprlang.parse(text), params=params)

    @classmethod
    def x(cls, k: int) -> "ScalarField":
        if k not in (1, 2, 3):
            raise ValueError("coordinate index must be 1, 2 or 3")
        return cls(coordinate=k)

    def jet(self, cj: ChartJets) -> BiJet3:
        if self.coordinate is not None:
            return cj.x[self.coordinate - 1]
        return exprlang.eval_bijet(self.expr, cj.u, cj.v, self.params or {})

    def __repr__(self):
        if self.coordinate is not None:
            return f"ScalarField(x{self.coordinate})"
        return f"ScalarField({exprlang.to_text(self.expr)!r})"


X1, X2, X3 = ScalarField.x(1), ScalarField.x(2), ScalarField.x(3)


def _as_field(f) -> ScalarField:
    if isinstance(f, ScalarField):
        return f
    if isinstance(f, str):
        if f in ("x1", "x2", "x3"):
            return ScalarField.x(int(f[1]))
        return ScalarField.from_text(f)
    raise TypeError(f"not a scalar field: {f!r}")


class _Weights:
    """``sqrt|h| h^{ij}`` as order-1 jets, plus ``sqrt|h|`` at the point."""

    def __init__(self, h11, h12, h22, what: str):
        det = h11 * h22 - h12 * h12
        if abs(det.value) < DET_TOL:
            if what == "II":
                raise FlatPointError(f"det b = {det.value:.3g}: Gaussian curvature vanishes")
            raise DegeneratePointError("degenerate metric")
        sign = math.copysign(1.0, det.value)
        root = (det * sign).compose([math.sqrt(abs(det.value)), 0.5 / math.sqrt(abs(det.value))])
        scale = root / det  # sqrt|h| / det
        self.w11 = h22 * scale
        self.w12 = -h12 * scale
        self.w22 = h11 * scale
        self.root = root.value

    def laplacian(self, f: BiJet3) -> float:
        fu = f.du().truncate(1)
        fv = f.dv().truncate(1)
        Vu = self.w11 * fu + self.w12 * fv
        Vv = self.w12 * fu + self.w22 * fv
        div = Vu.du().value + Vv.dv().value
        return -div / self.root


def _weights(cj: ChartJets, which: str) -> _Weights:
    h = cj.second_form_jets() if which == "II" else cj.metric_jets()
    return _Weights(*h, which)


def grad2(surface: Surface, f, g, u: float, v: float) -> float:
    """First differential parameter ``b^{ij} f_i g_j``."""
    cj = ChartJets(surface, u, v)
    ff = _point_forms(cj)
    if abs(ff.det_b) < DET_TOL:
        raise FlatPointError(f"det b = {ff.det_b:.3g}: Gaussian curvature vanishes")
    fj, gj = _as_field(f).jet(cj), _as_field(g).jet(cj)
    fu, fv = fj.partial(1, 0), fj.partial(0, 1)
    gu, gv = gj.partial(1, 0), gj.partial(0, 1)
    det = ff.det_b
    return (ff.b22 * fu * gu - ff.b12 * (fu * gv + fv * gu) + ff.b11 * fv * gv) / det


def laplacian2_general(surface: Surface, f, u: float, v: float) -> float:
    """``Delta^II f`` from the divergence form on any chart."""
    cj = ChartJets(surface, u, v)
    return _weights(cj, "II").laplacian(_as_field(f).jet(cj))


def laplacian1_general(surface: Surface, f, u: float, v: float) -> float:
    """``Delta^I f``: the same divergence form built from ``g``."""
    cj = ChartJets(surface, u, v)
    return _weights(cj, "I").laplacian(_as_field(f).jet(cj))


def _revolution_terms(surface: Surface, u: float):
    if not isinstance(surface, RevolutionSurface):
        raise TypeError("closed forms need a surface of revolution")
    pd = phi(surface.profile, u)
    p = surface.profile.jets(u)[0].value
    s = math.sin(pd.phi)
    if abs(s) < SINGULAR_TOL or abs(pd.dphi) < SINGULAR_TOL:
        raise SingularPointError(f"sin(phi)={s:.3g}, phi'={pd.dphi:.3g} at u={u!r}")
    return pd, p, s, math.cos(pd.phi)


def laplacian2_revolution(surface: Surface, f, u: float, v: float) -> float:
    """``Delta^II f`` from the closed form for surfaces of revolution."""
    pd, p, s, c = _revolution_terms(surface, u)
    cj = ChartJets(surface, u, v)
    fj = _as_field(f).jet(cj)
    f_u, f_uu, f_vv = fj.partial(1, 0), fj.partial(2, 0), fj.partial(0, 2)
    d1, d2 = pd.dphi, pd.ddphi
    first = 0.5 * (d2 / d1**2 - (c * s + p * d1 * c) / (p * d1 * s))
    return -f_uu / d1 - f_vv / (p * s) + first * f_u


def radial_factor(surface: Surface, u: float) -> float:
    """``Delta^II x1 / cos v`` (equal to ``Delta^II x2 / sin v``)."""
    pd, p, s, c = _revolution_terms(surface, u)
    d1, d2 = pd.dphi, pd.ddphi
    H = 0.5 * (d1 + s / p)
    return s + 1 / s + d2 * c / (2 * d1**2) - H * c**2 / (d1 * s)


def axial_value(surface: Surface, u: float) -> float:
    """``Delta^II x3``, a function of ``u`` alone."""
    pd, p, s, c = _revolution_terms(surface, u)
    d1, d2 = pd.dphi, pd.ddphi
    return -1.5 * c + d2 * s / (2 * d1**2) - s * c / (2 * p * d1)


def laplacian2_position(surface: Surface, u: float, v: float, check: bool = True) -> np.ndarray:
    """``(Delta^II x1, Delta^II x2, Delta^II x3)`` from the componentwise closed forms.

    With ``check`` the result is compared with :func:`laplacian2_revolution`
    applied to each coordinate.
    """
    rad = radial_factor(surface, u)
    out = np.array([rad * math.cos(v), rad * math.sin(v), axial_value(surface, u)])
    if check:
        for k, field in enumerate((X1, X2, X3)):
            ref = laplacian2_revolution(surface, field, u, v)
            if abs(ref - out[k]) > AGREEMENT_TOL * max(1.0, abs(ref)):
                raise ConsistencyError(f"Delta^II x{k + 1}: componentwise {out[k]!r} vs operator {ref!r}")
    return out


def laplacian2_position_general(surface: Surface, u: float, v: float) -> np.ndarray:
    cj = ChartJets(surface, u, v)
    w = _weights(cj, "II")
    return np.array([w.laplacian(c) for c in cj.x])


def laplacian1_position(surface: Surface, u: float, v: float) -> np.ndarray:
    """``Delta^I x`` componentwise; equals ``-2 H n``."""
    cj = ChartJets(surface, u, v)
    w = _weights(cj, "I")
    return np.array([w.laplacian(c) for c in cj.x])
