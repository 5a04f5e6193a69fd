"""Rewrite rules, formal derivation along the profile, and elimination.

The rewrite system, applied in this fixed order until nothing changes::

    W       -> L*P*C + M*Q*S
    M*Q*C   -> L*P*S - 2
    C^2     -> 1 - S^2

Here ``W`` is the auxiliary quantity ``lambda p cos(phi) + mu q sin(phi)``;
with that definition both ``W*F1 = (M - L)*C*S`` and ``W*C = L*P - 2*S``
hold on solutions, which is what the derivation rules rely on.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import INDEX, NVARS, ONE, PARAMETERS, ZERO, SymFrac, SymPoly, gcd_list, sym

P, Q, S, C, W, F1, F2, L, M, H = (sym(n) for n in ("P", "Q", "S", "C", "W", "F1", "F2", "L", "M", "H"))

W_DEF = L * P * C + M * Q * S
RELATION = L * P * S - M * Q * C - 2
MODES = ("free", "caseV", "caseIV")

_iC, _iM, _iQ = INDEX["C"], INDEX["M"], INDEX["Q"]


class ReductionError(ValueError):
    """A rewrite or postcondition failed (a rule error, never expected on valid input)."""


class ZeroResultError(ReductionError):
    """Elimination cancelled everything: the two equations were proportional."""


# -- reduction --------------------------------------------------------------------------

def _rewrite_mqc(p: SymPoly) -> SymPoly:
    base = L * P * S - 2
    powers = {0: ONE}
    buckets: dict[int, dict] = {}
    for e, c in p.items():
        k = min(e[_iM], e[_iQ], e[_iC])
        if k:
            e = list(e)
            e[_iM] -= k
            e[_iQ] -= k
            e[_iC] -= k
            e = tuple(e)
        buckets.setdefault(k, {})[e] = c
    out = ZERO
    for k, terms in buckets.items():
        if k not in powers:
            powers[k] = base**k
        out = out + SymPoly(terms) * powers[k]
    return out


def _rewrite_c2(p: SymPoly) -> SymPoly:
    base = 1 - S * S
    powers = {0: ONE}
    buckets: dict[int, dict] = {}
    for e, c in p.items():
        j = e[_iC] // 2
        if j:
            e = e[:_iC] + (e[_iC] - 2 * j,) + e[_iC + 1:]
        buckets.setdefault(j, {})[e] = c
    out = ZERO
    for j, terms in buckets.items():
        if j not in powers:
            powers[j] = base**j
        out = out + SymPoly(terms) * powers[j]
    return out


def reduce_poly(p: SymPoly, rules: str = "full") -> SymPoly:
    """Normal form of a polynomial.

    ``rules="full"`` applies the whole system; ``rules="trig"`` only
    ``C^2 -> 1 - S^2`` (used while the linear relation is still being derived).
    """
    while True:
        q = p
        if rules == "full":
            if "W" in q.variables():
                q = q.subs("W", W_DEF)
            q = _rewrite_mqc(q)
        q = _rewrite_c2(q)
        if q == p:
            return q
        p = q


def reduce(e, rules: str = "full") -> SymFrac:
    """Normal form of a fraction under the rewrite system, gcd-reduced.

    Raises
    ------
    ReductionError
        If the denominator reduces to zero (it lies in the relation ideal).
    """
    if isinstance(e, SymPoly):
        e = SymFrac(e)
    num = reduce_poly(e.num, rules)
    den = reduce_poly(e.den, rules)
    if den.is_zero():
        raise ReductionError(f"denominator {e.den} reduces to zero")
    return SymFrac(num, den)


# -- derivation ----------------------------------------------------------------------------

def _free_table():
    return {
        "P": SymFrac(C),
        "Q": SymFrac(S),
        "S": SymFrac(C * F1),
        "C": SymFrac(-S * F1),
        "F1": SymFrac(F2),
        "W": SymFrac(L * C * C + M * S * S + F1 * (M * Q * C - L * P * S)),
        "H": SymFrac(F2 * P * P + F1 * C * P - S * C, 2 * P * P),
    }


def phi1_caseV() -> SymFrac:
    """``phi'`` from ``W phi' = (mu - lambda) cos(phi) sin(phi)``."""
    return SymFrac((M - L) * C * S, W)


def phi2_caseV() -> SymFrac:
    """``phi''`` obtained by differentiating ``phi1_caseV``."""
    f1 = phi1_caseV()
    return (((L - 2 * M) * S * S + (M - 2 * L) * C * C) * f1 + 2 * f1 * f1) / SymFrac(W)


def phi1_caseIV() -> SymFrac:
    """``phi' = cos(phi)/q`` with ``mu q cos(phi) = -2``."""
    return SymFrac(-M * C * C, 2)


def phi2_caseIV() -> SymFrac:
    """``phi'' = -2 sin(phi) cos(phi)/q^2`` with ``mu q cos(phi) = -2``."""
    return SymFrac(-M * M * C**3 * S, 2)


def _table(mode: str):
    t = _free_table()
    if mode == "free":
        return t, {}
    if mode == "caseV":
        f1, f2 = phi1_caseV(), phi2_caseV()
        t["W"] = SymFrac(L * C * C + M * S * S) - 2 * f1
    elif mode == "caseIV":
        f1, f2 = phi1_caseIV(), phi2_caseIV()
    else:
        raise ValueError(f"unknown derivation mode {mode!r}; expected one of {MODES}")
    t["S"] = SymFrac(C) * f1
    t["C"] = SymFrac(-S) * f1
    t["F1"] = f2
    return t, {"F1": f1, "F2": f2}


def specialize(e, mode: str):
    """Replace ``phi'`` and ``phi''`` by their case values (identity in free mode)."""
    e = e if isinstance(e, SymFrac) else SymFrac(e)
    _, subs = _table(mode)
    for var in ("F2", "F1"):
        if var in subs and (var in e.num.variables() or var in e.den.variables()):
            e = e.subs(var, subs[var])
    return e


def _d_poly(p: SymPoly, table) -> SymFrac:
    acc = SymFrac(ZERO)
    for var in sorted(p.variables(), key=INDEX.get):
        if var in PARAMETERS:
            continue
        if var == "F2":
            raise ReductionError("third derivative of phi is not available")
        acc = acc + SymFrac(p.diff(var)) * table[var]
    return acc


def derive_raw(e, mode: str = "free") -> SymFrac:
    """Formal ``d/du`` without reduction."""
    e = specialize(e, mode)
    table, _ = _table(mode)
    dn = _d_poly(e.num, table)
    if e.den == ONE:
        return dn
    dd = _d_poly(e.den, table)
    return (dn * e.den - SymFrac(e.num) * dd) / SymFrac(e.den * e.den)


def derive(e, mode: str = "free", rules: str | None = None) -> SymFrac:
    """Formal derivative along the arc-length profile, reduced.

    ``free`` uses only ``p' = C, q' = S, S' = C F1, C' = -S F1, F1' = F2``;
    ``caseV`` also replaces ``F1`` and ``F2`` by their values from the linear
    relation (assuming ``W != 0``); ``caseIV`` uses ``F1 = cos/q`` and
    ``F2 = -2 sin cos/q^2`` with ``mu q cos = -2``.
    """
    if rules is None:
        rules = "full" if mode == "caseV" else "trig"
    return reduce(derive_raw(e, mode), rules)


# -- normalization -----------------------------------------------------------------------

def _sign_key(e):
    return (e[INDEX["S"]], e[INDEX["L"]], sum(e), e)


def sign_normalize(p: SymPoly) -> tuple[SymPoly, int]:
    """Make the coefficient of the highest (S-degree, L-degree, grlex) term positive."""
    if p.is_zero():
        return p, 1
    e = max((e for e, _ in p.items()), key=_sign_key)
    sign = -1 if p.terms[e] < 0 else 1
    return (p if sign > 0 else -p), sign


def _params_only(p: SymPoly) -> bool:
    return p.variables() <= PARAMETERS


def parameter_content(p: SymPoly) -> SymPoly:
    """Gcd of the coefficients over ``Q[L, M]``."""
    buckets: dict[tuple, dict] = {}
    li, mi = INDEX["L"], INDEX["M"]
    for e, c in p.items():
        key = tuple(0 if i in (li, mi) else k for i, k in enumerate(e))
        rest = tuple(k if i in (li, mi) else 0 for i, k in enumerate(e))
        buckets.setdefault(key, {})[rest] = c
    return gcd_list(SymPoly(t) for t in buckets.values())


def p_content(p: SymPoly) -> SymPoly:
    """Gcd of the ``P``-coefficients; for ``P``-free input, the parameter content."""
    if "P" in p.variables():
        return gcd_list(p.coefficients("P").values())
    return parameter_content(p)


@dataclass(frozen=True)
class Normalized:
    poly: SymPoly
    content: SymPoly  # raw == content * poly


def normalize(raw: SymPoly, how: str = "P") -> Normalized:
    """Divide out the content and fix the sign and integer scale."""
    if raw.is_zero():
        raise ZeroResultError("equation reduced to zero")
    g = p_content(raw) if how == "P" else parameter_content(raw)
    child = raw / g
    k = child.rational_content()
    child = child.scale(1 / k)
    child, sign = sign_normalize(child)
    content = g.scale(k * sign)
    return Normalized(child, content)


# -- cascade steps ----------------------------------------------------------------------------

@dataclass(frozen=True)
class StepResult:
    poly: SymPoly
    content: SymPoly
    raw: SymFrac  # unreduced expression equal (mod relations) to content*poly


def check_free(p: SymPoly, allowed=frozenset("PSLM")) -> None:
    extra = p.variables() - set(allowed) - PARAMETERS
    if extra:
        raise ReductionError(f"symbols {sorted(extra)} survive reduction in {p}")


def derive_step(eq: SymPoly) -> StepResult:
    """Derivative of a ``{P, S, L, M}`` equation under the linear relation.

    The derivative is taken in ``caseV`` mode, multiplied by ``W`` to clear
    the denominator, reduced, and content-normalized.  An odd power of ``C``
    that survives reduction is divided out.
    """
    check_free(eq)
    red = reduce(SymFrac(W) * derive_raw(eq, "caseV"))
    if not red.is_polynomial():
        raise ReductionError(f"denominator {red.den} survives clearing by W")
    num = red.num
    extra = ONE
    if "C" in num.variables():
        q = num.exact_div(C)
        if q is None:
            raise ReductionError("odd power of C is not a common factor")
        num, extra = q, C
    check_free(num)
    n = normalize(num, "P")
    # the certificate keeps phi' symbolic; it is checked where phi' takes its case value
    return StepResult(n.poly, n.content * extra, SymFrac(W) * derive_raw(eq, "free"))


def leading_in(p: SymPoly, var: str = "P") -> tuple[int, SymPoly]:
    d = p.degree(var)
    return d, p.coeff(var, d)


def eliminate(eq_hi: SymPoly, eq_lo: SymPoly) -> StepResult:
    """Drop the top power of ``P``: ``A1*eq_lo - B1*eq_hi`` with leading coefficients ``A1``, ``B1``.

    Raises
    ------
    ZeroResultError
        If the inputs are proportional.
    ValueError
        If the ``P``-degrees differ.
    """
    da, A1 = leading_in(eq_hi)
    db, B1 = leading_in(eq_lo)
    if da != db:
        raise ValueError(f"P-degrees differ ({da} vs {db})")
    if da < 1:
        raise ValueError("both equations are free of P")
    raw = A1 * eq_lo - B1 * eq_hi
    if raw.is_zero():
        raise ZeroResultError("equations are proportional; elimination gives 0")
    n = normalize(raw, "P")
    return StepResult(n.poly, n.content, SymFrac(raw))


# -- the two reduced equations ------------------------------------------------------------------

MEAN_CURVATURE = SymFrac(F1 * P + S, 2 * P)


def lhs_radial() -> SymFrac:
    """Left side of the radial equation (coefficient of ``cos v``), ``H`` kept symbolic."""
    return (SymFrac(S) + SymFrac(ONE, S) + SymFrac(F2 * C, 2 * F1 * F1) - SymFrac(H * C * C, F1 * S))


def lhs_axial() -> SymFrac:
    """Left side of the axial equation."""
    return SymFrac(Fraction(-3, 2) * C) + SymFrac(F2 * S, 2 * F1 * F1) - SymFrac(S * C, 2 * P * F1)


def expand_mean_curvature(e: SymFrac) -> SymFrac:
    return e.subs("H", MEAN_CURVATURE)


def general_identity() -> SymFrac:
    """``S*radial - C*axial - 2`` with ``H`` expanded; reduces to zero."""
    e = SymFrac(S) * lhs_radial() - SymFrac(C) * lhs_axial() - 2
    return reduce(expand_mean_curvature(e), "trig")
