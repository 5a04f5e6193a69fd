"""Surfaces of revolution and general parametric charts.

A surface of revolution is generated by a profile ``(p(u), 0, q(u))`` turned
about the z-axis::

    x(u, v) = (p(u) cos v, p(u) sin v, q(u))

Profiles are expected in arc-length form (``p'^2 + q'^2 = 1``); other
profiles can be brought there with :func:`reparametrize_arclength`.
"""
from __future__ import annotations

import math
import re
import shlex
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping
from urllib.parse import parse_qsl

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator

from . import exprlang
from .exprlang import Expr, eval_bijet, eval_jet
from .jets import BiJet3, Jet3

ARC_TOL = 1e-7


class SurfaceError(ValueError):
    """Invalid surface definition or evaluation outside the domain."""


class ArcLengthError(SurfaceError):
    """The profile is not parametrized by arc length at the requested point."""


class DegenerateProfileError(SurfaceError):
    """The profile speed vanishes, so it cannot be reparametrized."""


class SurfaceFileError(SurfaceError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _freeze(params: Mapping[str, float]) -> Mapping[str, float]:
    return MappingProxyType({k: float(v) for k, v in params.items()})


@dataclass(frozen=True)
class PhiData:
    """Turning angle of an arc-length profile and its first two derivatives."""

    phi: float
    dphi: float
    ddphi: float


class ProfileCurve:
    """Profile curve ``u -> (p(u), q(u))`` on an open interval.

    Parameters
    ----------
    p_expr, q_expr : Expr or str
        Radius and height functions of ``u``.
    params : mapping
        Parameter values bound at evaluation.
    u_domain : (a, b)
        Open parameter interval.
    arc_tol : float
        Tolerance on ``|p'^2 + q'^2 - 1|``.
    """

    def __init__(self, p_expr, q_expr, params=None, u_domain=(0.0, 1.0), arc_tol: float = ARC_TOL):
        self.p_expr: Expr = exprlang.parse(p_expr) if isinstance(p_expr, str) else p_expr
        self.q_expr: Expr = exprlang.parse(q_expr) if isinstance(q_expr, str) else q_expr
        self.params = _freeze(params or {})
        for e in (self.p_expr, self.q_expr):
            exprlang.check_bound(e, self.params)
        self.u_domain = (float(u_domain[0]), float(u_domain[1]))
        self.arc_tol = float(arc_tol)

    def __repr__(self):
        return (
            f"ProfileCurve(p={exprlang.to_text(self.p_expr)!r}, q={exprlang.to_text(self.q_expr)!r}, "
            f"params={dict(self.params)}, u_domain={self.u_domain})"
        )

    def in_domain(self, u: float) -> bool:
        a, b = self.u_domain
        return a < u < b

    def check_domain(self, u: float) -> None:
        if not self.in_domain(u):
            raise SurfaceError(f"u={u!r} outside the open domain {self.u_domain}")

    def jets(self, u: float) -> tuple[Jet3, Jet3]:
        """``(p, q)`` as third-order jets at ``u``."""
        self.check_domain(u)
        uj = Jet3.variable(u)
        return eval_jet(self.p_expr, uj, self.params), eval_jet(self.q_expr, uj, self.params)

    def speed_jet(self, u: float) -> Jet3:
        p, q = self.jets(u)
        return _speed(p, q)

    def arclength_residual(self, u: float) -> float:
        p, q = self.jets(u)
        return abs(p.d1**2 + q.d1**2 - 1.0)

    def sample_u(self, n: int) -> np.ndarray:
        a, b = self.u_domain
        return a + (np.arange(n) + 0.5) * (b - a) / n


def _speed(p: Jet3, q: Jet3) -> Jet3:
    """``sqrt(p'^2 + q'^2)`` as a second-order jet."""
    dp, dq = p.diff(), q.diff()
    s2 = dp * dp + dq * dq
    if s2.value <= 0:
        raise DegenerateProfileError("profile speed vanishes")
    return s2.compose([math.sqrt(s2.value), 0.5 / math.sqrt(s2.value), -0.25 * s2.value**-1.5])


class TabulatedProfile(ProfileCurve):
    """Arc-length reparametrization of another profile.

    Arc length ``s(u)`` is tabulated by adaptive quadrature at Chebyshev
    nodes and inverted with a monotone cubic interpolant; the inverse is then
    polished by Newton steps against the quadrature, and the jets of ``u(s)``
    follow from ``du/ds = 1/|r'(u)|``.
    """

    def __init__(self, base: ProfileCurve, n_nodes: int = 64):
        self.base = base
        self.p_expr, self.q_expr = base.p_expr, base.q_expr
        self.params = base.params
        self.arc_tol = base.arc_tol
        a, b = base.u_domain
        if not b > a:
            raise SurfaceError(f"empty domain {base.u_domain}")
        k = np.arange(n_nodes)
        cheb = 0.5 * (a + b) - 0.5 * (b - a) * np.cos(math.pi * k / (n_nodes - 1))
        self._u_nodes = cheb
        speeds = [self._base_speed(x) for x in self._interior(cheb)]
        if min(speeds) < 1e-12:
            raise DegenerateProfileError("profile speed below 1e-12")
        s = np.zeros(n_nodes)
        for i in range(1, n_nodes):
            s[i] = s[i - 1] + quad(self._base_speed, cheb[i - 1], cheb[i], epsabs=1e-14, epsrel=1e-13)[0]
        self._s_nodes = a + s
        self._inverse = PchipInterpolator(self._s_nodes, self._u_nodes)
        self.u_domain = (float(self._s_nodes[0]), float(self._s_nodes[-1]))

    @staticmethod
    def _interior(nodes):
        a, b = nodes[0], nodes[-1]
        eps = 1e-9 * (b - a)
        return np.clip(nodes, a + eps, b - eps)

    def _base_speed(self, u: float) -> float:
        uj = Jet3.variable(u)
        p = eval_jet(self.p_expr, uj, self.params)
        q = eval_jet(self.q_expr, uj, self.params)
        return math.hypot(p.d1, q.d1)

    def _arc(self, u: float) -> float:
        i = int(np.clip(np.searchsorted(self._u_nodes, u) - 1, 0, len(self._u_nodes) - 2))
        return self._s_nodes[i] + quad(self._base_speed, self._u_nodes[i], u, epsabs=1e-14, epsrel=1e-13)[0]

    def base_parameter(self, s: float) -> float:
        """Parameter ``u`` of the original profile at arc length ``s``."""
        u = float(self._inverse(s))
        for _ in range(8):
            step = (self._arc(u) - s) / self._base_speed(u)
            u -= step
            if abs(step) < 1e-15 * max(1.0, abs(u)):
                break
        return u

    def jets(self, s: float) -> tuple[Jet3, Jet3]:
        self.check_domain(s)
        u0 = self.base_parameter(s)
        sigma = self.base.speed_jet(u0) if self.base.in_domain(u0) else _speed(
            *(eval_jet(e, Jet3.variable(u0), self.params) for e in (self.p_expr, self.q_expr))
        )
        s0, s1, s2 = sigma.derivatives()
        # inverse-function rule for u(s) with du/ds = 1/sigma(u)
        u1 = 1.0 / s0
        u2 = -s1 / s0**3
        u3 = -s2 / s0**4 + 3 * s1**2 / s0**5
        uj = Jet3(u0, u1, u2, u3)
        return eval_jet(self.p_expr, uj, self.params), eval_jet(self.q_expr, uj, self.params)


def reparametrize_arclength(profile: ProfileCurve, n_nodes: int = 64) -> ProfileCurve:
    """Return an arc-length version of ``profile``.

    The new parameter starts at the old left endpoint, so a profile that is
    already arc-length comes back unchanged.
    """
    return TabulatedProfile(profile, n_nodes)


def phi(profile: ProfileCurve, u: float) -> PhiData:
    """Turning angle ``phi`` with ``p' = cos phi``, ``q' = sin phi``."""
    p, q = profile.jets(u)
    res = abs(p.d1**2 + q.d1**2 - 1.0)
    if res > profile.arc_tol:
        raise ArcLengthError(f"arc-length residual {res:.3g} exceeds {profile.arc_tol:.3g} at u={u!r}")
    return PhiData(
        phi=math.atan2(q.d1, p.d1),
        dphi=p.d1 * q.d2 - q.d1 * p.d2,
        ddphi=p.d1 * q.d3 - q.d1 * p.d3,
    )


# -- surfaces ---------------------------------------------------------------------

class Surface:
    """Base class: a parametrized surface ``x(u, v)`` in E^3."""

    name: str = "surface"
    u_domain: tuple[float, float]
    v_domain: tuple[float, float]

    def chart_jets(self, u: float, v: float) -> tuple[BiJet3, BiJet3, BiJet3]:
        raise NotImplementedError

    def position(self, u: float, v: float) -> np.ndarray:
        raise NotImplementedError


class RevolutionSurface(Surface):
    """Surface obtained by rotating ``profile`` about the z-axis."""

    v_domain = (0.0, 2 * math.pi)

    def __init__(self, profile: ProfileCurve, name: str = "revolution", description: str = ""):
        # profiles touching or crossing the axis are out of scope
        for u in profile.sample_u(32):
            p = profile.jets(float(u))[0].value
            if not p > 0:
                raise SurfaceError(f"profile radius p={p:.6g} at u={float(u):.6g}; p must stay positive")
        self.profile = profile
        self.name = name
        self.description = description or repr(profile)

    @property
    def u_domain(self):
        return self.profile.u_domain

    def __repr__(self):
        return f"RevolutionSurface({self.name!r}, {self.profile!r})"

    def position(self, u: float, v: float) -> np.ndarray:
        p, q = self.profile.jets(u)
        return np.array([p.value * math.cos(v), p.value * math.sin(v), q.value])

    def chart_jets(self, u: float, v: float):
        p, q = self.profile.jets(u)
        P, Q = BiJet3.from_u(p), BiJet3.from_u(q)
        c, s = math.cos(v), math.sin(v)
        cv = BiJet3.from_v(Jet3(c, -s, -c, s))
        sv = BiJet3.from_v(Jet3(s, c, -s, -c))
        return P * cv, P * sv, Q


class ChartSurface(Surface):
    """Surface given by three coordinate expressions in ``u`` and ``v``."""

    def __init__(self, x1, x2, x3, params=None, u_domain=(0.0, 1.0), v_domain=(0.0, 1.0), name="chart"):
        self.exprs = tuple(exprlang.parse(e) if isinstance(e, str) else e for e in (x1, x2, x3))
        self.params = _freeze(params or {})
        for e in self.exprs:
            exprlang.check_bound(e, self.params)
        self.u_domain = (float(u_domain[0]), float(u_domain[1]))
        self.v_domain = (float(v_domain[0]), float(v_domain[1]))
        self.name = name
        self.description = ", ".join(exprlang.to_text(e) for e in self.exprs)

    def __repr__(self):
        return f"ChartSurface({self.name!r}, {self.description!r})"

    def check_domain(self, u, v):
        (a, b), (c, d) = self.u_domain, self.v_domain
        if not (a < u < b and c < v < d):
            raise SurfaceError(f"({u!r}, {v!r}) outside the chart domain")

    def position(self, u: float, v: float) -> np.ndarray:
        self.check_domain(u, v)
        return np.array([exprlang.eval_float(e, u, self.params, v) for e in self.exprs])

    def chart_jets(self, u: float, v: float):
        self.check_domain(u, v)
        return tuple(eval_bijet(e, u, v, self.params) for e in self.exprs)


def position(surface: Surface, u: float, v: float) -> np.ndarray:
    return surface.position(u, v)


# -- catalog ----------------------------------------------------------------------

_CATALOG_DEFAULTS = {
    "sphere": {"r": 1.0},
    "catenoid": {"c": 1.0},
    "torus": {"R": 2.0, "a": 1.0},
    "cylinder": {"r": 1.0},
    "cone": {"k": 1.0},
    "chart_sphere": {"r": 1.0},
}


def catalog(name: str, **params: float) -> Surface:
    """Built-in surfaces with arc-length profiles.

    ``sphere(r)``, ``catenoid(c, L=2c)``, ``torus(R, a)``, ``cylinder(r)``,
    ``cone(k)`` and ``chart_sphere(r)`` (the sphere as a general chart).
    Cylinder and cone have vanishing Gaussian curvature and exist to exercise
    the flat-surface rejection.
    """
    if name not in _CATALOG_DEFAULTS:
        raise SurfaceError(f"unknown catalog surface {name!r}; known: {sorted(_CATALOG_DEFAULTS)}")
    merged = dict(_CATALOG_DEFAULTS[name])
    if name == "catenoid":
        merged["L"] = 2.0 * float(params.get("c", merged["c"]))
    unknown = set(params) - set(merged)
    if unknown:
        raise SurfaceError(f"unknown parameter(s) {sorted(unknown)} for {name}")
    merged.update({k: float(v) for k, v in params.items()})
    for k, val in merged.items():
        if not val > 0:
            raise SurfaceError(f"parameter {k} must be positive, got {val!r}")
    desc = f"{name}({', '.join(f'{k}={v:g}' for k, v in merged.items())})"
    if name == "sphere":
        r = merged["r"]
        prof = ProfileCurve("r*sin(u/r)", "-r*cos(u/r)", merged, (0.0, math.pi * r))
    elif name == "catenoid":
        prof = ProfileCurve("sqrt(c^2 + u^2)", "c*asinh(u/c)", merged, (-merged["L"], merged["L"]))
    elif name == "torus":
        R, a = merged["R"], merged["a"]
        if not R > a:
            raise SurfaceError("torus requires R > a")
        prof = ProfileCurve("R + a*cos(u/a)", "a*sin(u/a)", merged, (-math.pi * a, math.pi * a))
    elif name == "cylinder":
        prof = ProfileCurve("r", "u", merged, (-1.0, 1.0))
    elif name == "cone":
        prof = ProfileCurve("u/sqrt(1 + k^2)", "k*u/sqrt(1 + k^2)", merged, (0.5, 2.0))
    else:
        return ChartSurface(
            "r*sin(u)*cos(v)", "r*sin(u)*sin(v)", "-r*cos(u)", merged,
            (0.0, math.pi), (0.0, 2 * math.pi), name=desc,
        )
    return RevolutionSurface(prof, name=desc)


def parse_catalog_uri(uri: str) -> Surface:
    """``catalog:name?k=v&k=v`` -> surface."""
    if not uri.startswith("catalog:"):
        raise SurfaceError(f"not a catalog URI: {uri!r}")
    body = uri[len("catalog:"):]
    name, _, query = body.partition("?")
    params = {}
    for k, v in parse_qsl(query, keep_blank_values=True, strict_parsing=bool(query)):
        try:
            params[k] = float(v)
        except ValueError:
            raise SurfaceError(f"parameter {k} is not a number: {v!r}") from None
    return catalog(name, **params)


# -- surface-definition files -----------------------------------------------------

_KEY_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9.]*$")


def _strip_comment(line: str) -> str:
    out, quote = [], None
    for ch in line:
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == "#":
            break
        out.append(ch)
    return "".join(out)


def _unquote(value: str, lineno: int) -> str:
    try:
        parts = shlex.split(value)
    except ValueError as exc:
        raise SurfaceFileError(str(exc), lineno) from None
    return " ".join(parts)


def _pair(value: str, lineno: int) -> tuple[float, float]:
    try:
        a, b = (float(x) for x in value.split())
    except ValueError:
        raise SurfaceFileError(f"expected two numbers, got {value!r}", lineno) from None
    return a, b


def parse_surface_text(text: str, arc_tol: float = ARC_TOL) -> Surface:
    """Build a surface from the ``[surface]`` key/value format.

    Example::

        [surface]
        kind = revolution
        p = "sqrt(c^2 + u^2)"
        q = "c*asinh(u/c)"
        params.c = 1
        u_range = -2 2
        arclength = assume
    """
    section = None
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise SurfaceFileError("malformed section header", lineno)
            section = line[1:-1].strip()
            if section != "surface":
                raise SurfaceFileError(f"unknown section [{section}]", lineno)
            continue
        if section is None:
            raise SurfaceFileError("key outside [surface] section", lineno)
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not _KEY_RE.match(key):
            raise SurfaceFileError(f"expected 'key = value', got {line!r}", lineno)
        if key in entries:
            raise SurfaceFileError(f"duplicate key {key!r}", lineno)
        entries[key] = (value.strip(), lineno)
    if section is None:
        raise SurfaceFileError("missing [surface] section")

    params = {}
    for key, (value, lineno) in entries.items():
        if key.startswith("params."):
            try:
                params[key[len("params."):]] = float(value)
            except ValueError:
                raise SurfaceFileError(f"parameter value is not a number: {value!r}", lineno) from None

    def get(key, default=None):
        if key in entries:
            return entries[key]
        if default is None:
            raise SurfaceFileError(f"missing key {key!r}")
        return default, None

    def expr(key):
        value, lineno = get(key)
        try:
            return exprlang.parse(_unquote(value, lineno))
        except exprlang.ExprSyntaxError as exc:
            raise SurfaceFileError(f"{key}: {exc}", lineno) from exc

    known = {"kind", "p", "q", "x1", "x2", "x3", "u_range", "v_range", "arclength", "name"}
    for key, (_, lineno) in entries.items():
        if key not in known and not key.startswith("params."):
            raise SurfaceFileError(f"unknown key {key!r}", lineno)

    kind, kline = get("kind")
    u_range = _pair(*get("u_range"))
    name = _unquote(*get("name", "file")) if "name" in entries else "file"
    try:
        if kind == "revolution":
            prof = ProfileCurve(expr("p"), expr("q"), params, u_range, arc_tol)
            mode, mline = get("arclength", "auto")
            if mode not in ("auto", "assume"):
                raise SurfaceFileError(f"arclength must be auto or assume, got {mode!r}", mline)
            if mode == "auto":
                sample = prof.sample_u(32)
                if max(prof.arclength_residual(u) for u in sample) > arc_tol:
                    prof = reparametrize_arclength(prof)
            return RevolutionSurface(prof, name=name)
        if kind == "chart":
            v_range = _pair(*get("v_range"))
            return ChartSurface(expr("x1"), expr("x2"), expr("x3"), params, u_range, v_range, name=name)
    except exprlang.UnboundParameterError as exc:
        raise SurfaceFileError(str(exc)) from exc
    raise SurfaceFileError(f"kind must be revolution or chart, got {kind!r}", kline)


def load_surface(path) -> Surface:
    with open(path, encoding="utf-8") as fh:
        return parse_surface_text(fh.read())
