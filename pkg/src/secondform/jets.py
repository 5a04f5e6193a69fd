"""Truncated Taylor jets in one and two variables.

A jet stores the normalized Taylor coefficients ``c[alpha] = d^alpha f / alpha!``
of a scalar function at a point, truncated at a total order.  Products are
truncated convolutions; elementary functions are applied by composing their
derivative stack with the non-constant part of the argument, so every
derivative is exact up to rounding.

``Jet3`` is a function of ``u`` and carries ``value, d1, d2, d3``.
``BiJet3`` is a function of ``(u, v)`` and carries every mixed partial up to
total order 3 (10 numbers).  Both support lower orders, which is how derived
quantities such as ``x_u`` (order 2) or ``b_ij`` (order 1) are carried.
"""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

MAX_ORDER = 3


@lru_cache(maxsize=None)
def _basis(nvars: int, order: int):
    idx = [a for a in product(range(order + 1), repeat=nvars) if sum(a) <= order]
    idx.sort(key=lambda a: (sum(a), tuple(-x for x in a)))
    pos = {a: k for k, a in enumerate(idx)}
    n = len(idx)
    mul = np.zeros((n, n, n))
    for i, a in enumerate(idx):
        for j, b in enumerate(idx):
            c = tuple(x + y for x, y in zip(a, b))
            if c in pos:
                mul[pos[c], i, j] = 1.0
    # d/dx_k maps order -> order-1
    deriv = []
    if order > 0:
        lower = _basis(nvars, order - 1)[0]
        lpos = {a: k for k, a in enumerate(lower)}
        for k in range(nvars):
            D = np.zeros((len(lower), n))
            for a, i in pos.items():
                if a[k] == 0:
                    continue
                b = list(a)
                b[k] -= 1
                b = tuple(b)
                if b in lpos:
                    D[lpos[b], i] = a[k]
            deriv.append(D)
    fact = np.array([math.prod(math.factorial(x) for x in a) for a in idx], dtype=float)
    return idx, pos, mul, deriv, fact


class _Jet:
    """Common machinery; subclasses fix the number of variables."""

    __slots__ = ("_c", "order")
    nvars = 1

    def __init__(self, coef: np.ndarray, order: int):
        self._c = coef
        self.order = order

    # -- construction helpers -------------------------------------------------
    @classmethod
    def _new(cls, coef, order):
        obj = cls.__new__(cls)
        obj._c = coef
        obj.order = order
        return obj

    @classmethod
    def constant(cls, value: float, order: int = MAX_ORDER):
        n = len(_basis(cls.nvars, order)[0])
        c = np.zeros(n)
        c[0] = value
        return cls._new(c, order)

    @property
    def value(self) -> float:
        return float(self._c[0])

    def is_constant(self) -> bool:
        return not np.any(self._c[1:])

    def truncate(self, order: int):
        if order >= self.order:
            return self
        n = len(_basis(self.nvars, order)[0])
        return self._new(self._c[:n].copy(), order)

    def partial(self, *alpha: int) -> float:
        """Mixed partial derivative ``d^alpha f`` at the expansion point."""
        idx, pos, _, _, fact = _basis(self.nvars, self.order)
        if len(alpha) != self.nvars:
            raise ValueError(f"expected {self.nvars} indices")
        k = pos.get(tuple(alpha))
        if k is None:
            raise ValueError(f"derivative {alpha} exceeds jet order {self.order}")
        return float(self._c[k] * fact[k])

    def diff(self, k: int = 0):
        """Jet of the partial derivative in variable ``k`` (one order lower)."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        D = _basis(self.nvars, self.order)[3][k]
        return self._new(D @ self._c, self.order - 1)

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, _Jet):
            if type(other) is not type(self):
                raise TypeError("cannot mix jets in different variables")
            order = min(self.order, other.order)
            return self.truncate(order), other.truncate(order), order
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self, self.constant(float(other), self.order), self.order
        return NotImplemented, None, None

    def __add__(self, other):
        a, b, order = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return self._new(a._c + b._c, order)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, order = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return self._new(a._c - b._c, order)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._new(-self._c, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._new(self._c * float(other), self.order)
        a, b, order = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        mul = _basis(self.nvars, order)[2]
        return self._new(np.einsum("kij,i,j->k", mul, a._c, b._c), order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._new(self._c / float(other), self.order)
        if isinstance(other, _Jet):
            return self * other.reciprocal()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if isinstance(n, (int, np.integer)) or (isinstance(n, float) and n.is_integer()):
            return self.ipow(int(n))
        return NotImplemented

    def ipow(self, n: int):
        """Integer power by repeated multiplication."""
        if n < 0:
            return self.ipow(-n).reciprocal()
        result = self.constant(1.0, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, derivs: Sequence[float]):
        """Apply ``f`` given ``derivs = (f(x0), f'(x0), ...)`` at ``x0 = self.value``."""
        order = self.order
        delta = self._c.copy()
        delta[0] = 0.0
        mul = _basis(self.nvars, order)[2]
        out = np.zeros_like(delta)
        out[0] = derivs[0]
        power = None
        for k in range(1, order + 1):
            power = delta if power is None else np.einsum("kij,i,j->k", mul, power, delta)
            out = out + (derivs[k] / math.factorial(k)) * power
        return self._new(out, order)

    def reciprocal(self):
        x = self.value
        if x == 0.0:
            raise ZeroDivisionError("reciprocal of a jet with zero value")
        return self.compose([1 / x, -1 / x**2, 2 / x**3, -6 / x**4])

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(f'{d:.6g}' for d in self.derivatives())}; order={self.order})"


class Jet3(_Jet):
    """Value and first three derivatives of a function of one variable."""

    __slots__ = ()
    nvars = 1

    def __init__(self, value: float, d1: float = 0.0, d2: float = 0.0, d3: float = 0.0):
        super().__init__(np.array([value, d1, d2 / 2.0, d3 / 6.0], dtype=float), MAX_ORDER)

    @classmethod
    def variable(cls, x: float) -> "Jet3":
        return cls(x, 1.0, 0.0, 0.0)

    @classmethod
    def from_derivatives(cls, derivs: Sequence[float]) -> "Jet3":
        order = len(derivs) - 1
        c = np.array([d / math.factorial(k) for k, d in enumerate(derivs)], dtype=float)
        return cls._new(c, order)

    def derivatives(self) -> tuple[float, ...]:
        return tuple(float(self._c[k] * math.factorial(k)) for k in range(self.order + 1))

    @property
    def d1(self) -> float:
        return self.partial(1)

    @property
    def d2(self) -> float:
        return self.partial(2)

    @property
    def d3(self) -> float:
        return self.partial(3)

    def __eq__(self, other):
        if not isinstance(other, Jet3):
            return NotImplemented
        return self.order == other.order and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash((self.order, self._c.tobytes()))


class BiJet3(_Jet):
    """All partials of ``f(u, v)`` up to a total order (3 by default).

    Mixed partials share one slot per multi-index, so ``f_uv == f_vu`` holds
    by construction.
    """

    __slots__ = ()
    nvars = 2

    @classmethod
    def variable(cls, u: float, v: float, which: int) -> "BiJet3":
        jet = cls.constant(u if which == 0 else v)
        pos = _basis(2, MAX_ORDER)[1]
        jet._c[pos[(1, 0) if which == 0 else (0, 1)]] = 1.0
        return jet

    @classmethod
    def from_u(cls, jet: Jet3) -> "BiJet3":
        """Lift a function of ``u`` alone."""
        out = cls.constant(0.0, jet.order)
        pos = _basis(2, jet.order)[1]
        for k in range(jet.order + 1):
            out._c[pos[(k, 0)]] = jet._c[k]
        return out

    @classmethod
    def from_v(cls, jet: Jet3) -> "BiJet3":
        """Lift a function of ``v`` alone."""
        out = cls.constant(0.0, jet.order)
        pos = _basis(2, jet.order)[1]
        for k in range(jet.order + 1):
            out._c[pos[(0, k)]] = jet._c[k]
        return out

    def du(self) -> "BiJet3":
        return self.diff(0)

    def dv(self) -> "BiJet3":
        return self.diff(1)

    def derivatives(self) -> tuple[float, ...]:
        idx, _, _, _, fact = _basis(2, self.order)
        return tuple(float(c * f) for c, f in zip(self._c, fact))

    def derivative_map(self) -> dict[tuple[int, int], float]:
        idx, _, _, _, fact = _basis(2, self.order)
        return {a: float(c * f) for a, c, f in zip(idx, self._c, fact)}


# -- elementary functions: derivative stacks up to third order ---------------

def _stack_sin(x):
    s, c = math.sin(x), math.cos(x)
    return [s, c, -s, -c]


def _stack_cos(x):
    s, c = math.sin(x), math.cos(x)
    return [c, -s, -c, s]


def _stack_tan(x):
    t = math.tan(x)
    s2 = 1 + t * t
    return [t, s2, 2 * t * s2, 2 * s2 * (1 + 3 * t * t)]


def _stack_sinh(x):
    s, c = math.sinh(x), math.cosh(x)
    return [s, c, s, c]


def _stack_cosh(x):
    s, c = math.sinh(x), math.cosh(x)
    return [c, s, c, s]


def _stack_tanh(x):
    t = math.tanh(x)
    s2 = 1 - t * t
    return [t, s2, -2 * t * s2, -2 * s2 * (1 - 3 * t * t)]


def _stack_asinh(x):
    w = 1 + x * x
    return [math.asinh(x), w**-0.5, -x * w**-1.5, (2 * x * x - 1) * w**-2.5]


def _stack_exp(x):
    e = math.exp(x)
    return [e, e, e, e]


def _stack_ln(x):
    return [math.log(x), 1 / x, -1 / x**2, 2 / x**3]


def _stack_sqrt(x):
    r = math.sqrt(x)
    return [r, 0.5 / r, -0.25 / r**3, 0.375 / r**5]


def _stack_abs(x):
    return [abs(x), math.copysign(1.0, x), 0.0, 0.0]


DERIVATIVE_STACKS = {
    "sin": _stack_sin,
    "cos": _stack_cos,
    "tan": _stack_tan,
    "sinh": _stack_sinh,
    "cosh": _stack_cosh,
    "tanh": _stack_tanh,
    "asinh": _stack_asinh,
    "exp": _stack_exp,
    "ln": _stack_ln,
    "sqrt": _stack_sqrt,
    "abs": _stack_abs,
}


def apply(name: str, x):
    """Apply the named elementary function to a jet (no domain checks)."""
    return x.compose(DERIVATIVE_STACKS[name](x.value))


def sqrt(x):
    return apply("sqrt", x)


def sin(x):
    return apply("sin", x)


def cos(x):
    return apply("cos", x)


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
