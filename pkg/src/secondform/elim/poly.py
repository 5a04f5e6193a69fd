"""Sparse multivariate polynomials and fractions with exact rational coefficients.

The symbol set is fixed.  A monomial is a tuple of exponents in the order of
:data:`SYMBOLS`; terms are ordered graded-lexicographically with ``P`` the
most significant symbol.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from functools import reduce as _fold
from math import gcd as _igcd, lcm as _ilcm
from typing import Iterable, Mapping

from .. import exprlang

SYMBOLS = ("P", "Q", "S", "C", "W", "F1", "F2", "L", "M", "H")
INDEX = {name: i for i, name in enumerate(SYMBOLS)}
NVARS = len(SYMBOLS)
PARAMETERS = frozenset(["L", "M"])
_ZERO_EXP = (0,) * NVARS


class PolyError(ValueError):
    pass


class NotDivisibleError(PolyError):
    pass


def _order_key(e):
    return (sum(e), e)


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(repr(c))
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact coefficient: {c!r}")


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SymPoly:
    """Immutable polynomial ``sum c_e * prod SYMBOLS[i]^e[i]`` over Q."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != NVARS:
                raise PolyError(f"exponent tuple of length {len(e)}")
            c = _coerce_coeff(c)
            if c:
                clean[tuple(e)] = clean.get(tuple(e), 0) + c
        self._t = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SymPoly":
        obj = cls.__new__(cls)
        obj._t = terms
        obj._hash = None
        return obj

    # -- construction ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "SymPoly":
        c = _coerce_coeff(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "SymPoly":
        e = [0] * NVARS
        e[INDEX[name]] = power
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Iterable[int], c=1) -> "SymPoly":
        c = _coerce_coeff(c)
        return cls._raw({tuple(exps): c} if c else {})

    @classmethod
    def from_text(cls, text: str) -> "SymPoly":
        """Parse an expression over the fixed symbols (``^`` with integer exponents)."""
        frac = SymFrac.from_text(text)
        if not frac.den.is_constant():
            raise PolyError(f"not a polynomial: {text!r}")
        return frac.num * (1 / frac.den.constant_value())

    # -- inspection -------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __len__(self):
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and _ZERO_EXP in self._t)

    def constant_value(self) -> Fraction:
        return self._t.get(_ZERO_EXP, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def variables(self) -> frozenset:
        used = [False] * NVARS
        for e in self._t:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return frozenset(SYMBOLS[i] for i in range(NVARS) if used[i])

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree when omitted); ``-1`` for zero."""
        if not self._t:
            return -1
        if var is None:
            return max(sum(e) for e in self._t)
        i = INDEX[var]
        return max(e[i] for e in self._t)

    def leading(self) -> tuple[tuple, Fraction]:
        e = max(self._t, key=_order_key)
        return e, self._t[e]

    def coefficients(self, var: str) -> dict[int, "SymPoly"]:
        """Collect by powers of ``var``."""
        i = INDEX[var]
        out: dict[int, dict] = {}
        for e, c in self._t.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: SymPoly._raw(v) for k, v in out.items()}

    def coeff(self, var: str, k: int) -> "SymPoly":
        return self.coefficients(var).get(k, ZERO)

    @classmethod
    def from_coefficients(cls, var: str, coeffs: Mapping[int, "SymPoly"]) -> "SymPoly":
        x = cls.symbol(var)
        out = ZERO
        for k, c in coeffs.items():
            out = out + c * x**k
        return out

    def integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._t.values())

    # -- arithmetic ---------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, SymPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return SymPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            self, other = other, self
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return SymPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "SymPoly":
        k = _coerce_coeff(k)
        if not k:
            return ZERO
        return SymPoly._raw({e: c * k for e, c in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        if len(self._t) < len(other._t):
            self, other = other, self
        t: dict = {}
        for eb, cb in other._t.items():
            for ea, ca in self._t.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = t.get(e, 0) + ca * cb
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return SymPoly._raw(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, SymPoly):
            if other.is_constant():
                return self.scale(1 / other.constant_value())
            q = self.exact_div(other)
            if q is None:
                raise NotDivisibleError("polynomial division is not exact")
            return q
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("only non-negative integer powers")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymPoly.const(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- calculus and substitution --------------------------------------------------
    def diff(self, var: str) -> "SymPoly":
        i = INDEX[var]
        t = {}
        for e, c in self._t.items():
            k = e[i]
            if k:
                t[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return SymPoly._raw(t)

    def subs(self, var: str, value: "SymPoly | int | Fraction") -> "SymPoly":
        value = self._lift(value)
        coeffs = self.coefficients(var)
        out = ZERO
        powers = {0: ONE}
        for k in sorted(coeffs):
            if k not in powers:
                powers[k] = value**k
            out = out + coeffs[k] * powers[k]
        return out

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate with ``point`` mapping symbol names to numbers (mpmath or float)."""
        vals = [point.get(name) for name in SYMBOLS]
        total = 0
        for e, c in self._t.items():
            term = c.numerator
            for i, k in enumerate(e):
                if k:
                    if vals[i] is None:
                        raise PolyError(f"no value supplied for {SYMBOLS[i]}")
                    term = term * vals[i] ** k
            total = total + term / c.denominator
        return total

    # -- division --------------------------------------------------------------------
    def exact_div(self, other: "SymPoly") -> "SymPoly | None":
        """Quotient when ``other`` divides ``self`` exactly, else ``None``."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        for i in range(NVARS):
            if other._maxdeg(i) > self._maxdeg(i):
                return None
        if len(other._t) == 1:
            (eb, cb), = other._t.items()
            t = {}
            for e, c in self._t.items():
                d = tuple(x - y for x, y in zip(e, eb))
                if min(d) < 0:
                    return None
                t[d] = c / cb
            return SymPoly._raw(t)
        lb, lc = other.leading()
        bterms = list(other._t.items())
        r = dict(self._t)
        heap = [(-sum(e), tuple(-x for x in e)) for e in r]
        heapq.heapify(heap)
        q = {}
        while r:
            while True:
                key = heapq.heappop(heap)
                e = tuple(-x for x in key[1])
                if e in r:
                    break
            d = tuple(x - y for x, y in zip(e, lb))
            if min(d) < 0:
                return None
            k = r[e] / lc
            q[d] = k
            for eb, cb in bterms:
                e2 = tuple(x + y for x, y in zip(eb, d))
                v = r.get(e2, 0) - k * cb
                if v:
                    if e2 not in r:
                        heapq.heappush(heap, (-sum(e2), tuple(-x for x in e2)))
                    r[e2] = v
                else:
                    r.pop(e2, None)
        return SymPoly._raw(q)

    def _maxdeg(self, i: int) -> int:
        return max((e[i] for e in self._t), default=0)

    def monomial_content(self) -> tuple:
        """Componentwise minimum exponent over all terms."""
        it = iter(self._t)
        m = list(next(it))
        for e in it:
            for i, k in enumerate(e):
                if k < m[i]:
                    m[i] = k
        return tuple(m)

    def shift_down(self, exps: tuple) -> "SymPoly":
        return SymPoly._raw({tuple(x - y for x, y in zip(e, exps)): c for e, c in self._t.items()})

    # -- normalization ----------------------------------------------------------------
    def rational_content(self) -> Fraction:
        """Positive rational ``k`` with ``self / k`` integral and primitive."""
        if not self._t:
            return Fraction(1)
        num = _fold(_igcd, (c.numerator for c in self._t.values()))
        den = _fold(_ilcm, (c.denominator for c in self._t.values()))
        return Fraction(abs(num), den)

    def primitive(self) -> "SymPoly":
        """Integer-primitive with positive leading (graded-lex) coefficient."""
        if not self._t:
            return self
        k = self.rational_content()
        if self.leading()[1] < 0:
            k = -k
        return self.scale(1 / k)

    # -- printing ---------------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._t.items(), key=lambda ec: _order_key(ec[0]), reverse=True)

    def to_text(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = _mono_text(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{_frac_text(a)}*{mono}"
            else:
                body = _frac_text(a)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SymPoly({self.to_text()!r})"


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_text(e) -> str:
    out = []
    for name, k in zip(SYMBOLS, e):
        if k == 1:
            out.append(name)
        elif k:
            out.append(f"{name}^{k}")
    return "*".join(out)


ZERO = SymPoly._raw({})
ONE = SymPoly._raw({_ZERO_EXP: Fraction(1)})


# -- gcd -----------------------------------------------------------------------------

def _normalize_gcd(g: SymPoly) -> SymPoly:
    return g.primitive()


def gcd(a: SymPoly, b: SymPoly) -> SymPoly:
    """Greatest common divisor over Q, integer-primitive with positive leading term."""
    if a.is_zero():
        return _normalize_gcd(b) if not b.is_zero() else ZERO
    if b.is_zero():
        return _normalize_gcd(a)
    if a.is_constant() or b.is_constant():
        return ONE
    ma, mb = a.monomial_content(), b.monomial_content()
    m = tuple(min(x, y) for x, y in zip(ma, mb))
    core = _gcd_core(a.shift_down(ma), b.shift_down(mb))
    return _normalize_gcd(core * SymPoly.monomial(m))


def gcd_list(polys: Iterable[SymPoly]) -> SymPoly:
    polys = sorted((p for p in polys if not p.is_zero()), key=len)
    if not polys:
        return ZERO
    g = polys[0].primitive()
    for p in polys[1:]:
        if g == ONE:
            break
        if p.exact_div(g) is not None:
            continue
        g = gcd(g, p)
    return g


def content_in(p: SymPoly, var: str) -> SymPoly:
    """Gcd of the coefficients of ``p`` viewed as a polynomial in ``var``."""
    return gcd_list(p.coefficients(var).values())


def _igcd_frac(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(_igcd(a.numerator, b.numerator), _ilcm(a.denominator, b.denominator))


def _prem(a: dict, b: dict) -> dict:
    """Pseudo-remainder of univariate polynomials given as ``{degree: coeff}``."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        new = {k: c * lb for k, c in r.items()}
        for k, c in b.items():
            v = new.get(k + shift, ZERO) - lr * c
            if v.is_zero():
                new.pop(k + shift, None)
            else:
                new[k + shift] = v
        r = {k: c for k, c in new.items() if not c.is_zero()}
    return r


def _gcd_core(a: SymPoly, b: SymPoly) -> SymPoly:
    if a.is_constant() or b.is_constant():
        return ONE
    if len(b) > len(a):
        a, b = b, a
    if a.exact_div(b) is not None:
        return b
    va, vb = a.variables(), b.variables()
    for x in sorted(va - vb):
        return gcd(content_in(a, x), b)
    for x in sorted(vb - va):
        return gcd(a, content_in(b, x))
    x = min(va, key=lambda s: (max(a.degree(s), b.degree(s)), INDEX[s]))
    ca, cb = content_in(a, x), content_in(b, x)
    c = gcd(ca, cb)
    A = (a / ca).primitive().coefficients(x)
    B = (b / cb).primitive().coefficients(x)
    if max(B) > max(A):
        A, B = B, A
    while True:
        R = _prem(A, B)
        if not R:
            break
        if max(R) == 0:
            return c
        cr = gcd_list(R.values())
        R = {k: v / cr for k, v in R.items()}
        k = _fold(_igcd_frac, (v.rational_content() for v in R.values()))
        R = {d: v.scale(1 / k) for d, v in R.items()}
        A, B = B, R
    g = SymPoly.from_coefficients(x, B)
    g = g / content_in(g, x)
    return c * g


# -- fractions -------------------------------------------------------------------------

class SymFrac:
    """Reduced quotient of polynomials; the denominator has leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = num if isinstance(num, SymPoly) else SymPoly.const(num)
        den = ONE if den is None else (den if isinstance(den, SymPoly) else SymPoly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = ONE
            else:
                g = gcd(num, den)
                if g != ONE:
                    num, den = num / g, den / g
            lc = den.leading()[1]
            if lc != 1:
                num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num, self.den = num, den

    @classmethod
    def from_text(cls, text: str) -> "SymFrac":
        return _from_ast(exprlang.parse(text))

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _lift(self, other):
        if isinstance(other, SymFrac):
            return other
        if isinstance(other, SymPoly):
            return SymFrac(other, ONE, _reduced=True)
        if isinstance(other, (int, Fraction)):
            return SymFrac(SymPoly.const(other), ONE, _reduced=True)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return SymFrac(self.num + other.num, self.den)
        return SymFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return SymFrac(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return SymFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return SymFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return SymFrac(ONE) / self**(-n)
        return SymFrac(self.num**n, self.den**n, _reduced=True)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def subs(self, var: str, value) -> "SymFrac":
        """Substitute a polynomial or fraction for ``var``."""
        value = self._lift(value)
        return _subs_frac(self.num, var, value) / _subs_frac(self.den, var, value)

    def evaluate(self, point):
        return self.num.evaluate(point) / self.den.evaluate(point)

    def to_text(self) -> str:
        if self.den == ONE:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"SymFrac({self.to_text()!r})"


def _subs_frac(p: SymPoly, var: str, value: SymFrac) -> SymFrac:
    if value.den == ONE:
        return SymFrac(p.subs(var, value.num), ONE, _reduced=True)
    coeffs = p.coefficients(var)
    n = max(coeffs)
    # homogenize: sum c_k num^k den^(n-k) / den^n
    out = ZERO
    for k, c in coeffs.items():
        out = out + c * value.num**k * value.den**(n - k)
    return SymFrac(out, value.den**n)


def _from_ast(node) -> SymFrac:
    E = exprlang
    if isinstance(node, E.Num):
        return SymFrac(SymPoly.const(Fraction(repr(node.value))))
    if isinstance(node, (E.Param, E.Var)):
        if node.name not in INDEX:
            raise PolyError(f"unknown symbol {node.name!r}; expected one of {', '.join(SYMBOLS)}")
        return SymFrac(SymPoly.symbol(node.name))
    if isinstance(node, E.Const):
        raise PolyError(f"transcendental constant {node.name!r} has no exact value")
    if isinstance(node, E.Neg):
        return -_from_ast(node.operand)
    if isinstance(node, E.Call):
        raise PolyError(f"function {node.func!r} is not allowed in polynomial input")
    a, b = _from_ast(node.left), _from_ast(node.right)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return a / b
    if not (b.is_polynomial() and b.num.is_constant()):
        raise PolyError("exponent must be an integer constant")
    k = b.num.constant_value()
    if k.denominator != 1:
        raise PolyError("exponent must be an integer")
    return a ** int(k)


def sym(name: str) -> SymPoly:
    return SymPoly.symbol(name)
