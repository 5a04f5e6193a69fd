"""Printed coefficient families of the rotational case-V cascade, for comparison.

Fully printed equations are listed as coefficient lists in descending powers
of ``P``; for the later equations only the leading ``S``-term of each
``P``-coefficient was printed.  All comparisons are up to one nonzero rational
scalar per equation, since each step is only defined up to content.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .poly import SymPoly, ZERO

# step name -> list of (label, coefficient of P^k), highest k first
PRINTED_FULL = {
    "cubic": [
        ("a1", "L^2*(M-L)*S"),
        ("a2", "L*((2*L-M)-2*(M-L)*S^2)"),
        ("a3", "((M-L)*S^2-(M-4*L))*S"),
        ("a4", "2*S^2"),
    ],
    "cubic_derived": [
        ("b1", "L^2*(M-L)*S*((2*L+M)-(M-L)*S^2)"),
        ("b2", "2*L*(L*(2*L-M)-(M-L)*(3*L+2*M)*S^2+2*(M-L)^2*S^4)"),
        ("b3", "((8*L*M-8*L^2-M^2)+2*(M-L)*(2*M+L)*S^2-3*(M-L)^2*S^4)*S"),
        ("b4", "6*(M-2*L)*S^2-6*(M-L)*S^4"),
    ],
    "quadratic": [
        ("c1", "L*(2*(M-L)^2*S^4-3*M*(M-L)*S^2-M*(2*L-M))"),
        ("c2", "2*(-(M-L)^2*S^4+(M+2*L)*(M-L)*S^2+L*(3*M-8*L))*S"),
        ("c3", "-4*(M-L)*S^4+4*(M-4*L)*S^2"),
    ],
}

# step name -> list of (label, P-power, leading S-term); the final step is P-free
PRINTED_LEADING = {
    "quadratic_derived": [
        ("d1", 2, "-4*L*(M-L)^3*S^6"),
        ("d2", 1, "5*(M-L)^3*S^7"),
        ("d3", 0, "10*(M-L)^2*S^6"),
    ],
    "linear": [
        ("e1", 1, "2*(M-L)^5*S^10"),
        ("e2", 0, "20*(M-L)^4*S^9"),
    ],
    "linear_derived": [
        ("h1", 1, "-20*(M-L)^6*S^12"),
        ("h2", 0, "-184*(M-L)^5*S^11"),
    ],
    "final": [
        ("final", 0, "32*(M-L)^10*S^20"),
    ],
}

PRINTED_FINAL_S_DEGREE = 20


@dataclass(frozen=True)
class CoefficientCheck:
    label: str
    matches: bool
    computed: str
    printed: str
    kind: str  # "full" or "leading"


@dataclass(frozen=True)
class StepComparison:
    step: str
    scale: Fraction | None  # printed = scale * computed, fixed by the first entry
    checks: tuple = field(default_factory=tuple)

    @property
    def matches(self) -> bool:
        return all(c.matches for c in self.checks)


def published_polynomial(step: str) -> SymPoly:
    """Reassemble a fully printed equation as a polynomial in ``P``."""
    rows = PRINTED_FULL[step]
    n = len(rows) - 1
    P = SymPoly.symbol("P")
    out = ZERO
    for k, (_, text) in enumerate(rows):
        out = out + SymPoly.from_text(text) * P ** (n - k)
    return out


def _ratio(a: SymPoly, b: SymPoly) -> Fraction | None:
    """``k`` with ``b == k*a``, or ``None``."""
    if a.is_zero() or b.is_zero():
        return Fraction(1) if a.is_zero() and b.is_zero() else None
    ea, ca = a.leading()
    cb = b.terms.get(ea)
    if cb is None:
        return None
    k = cb / ca
    return k if a.scale(k) == b else None


def leading_s_term(p: SymPoly) -> SymPoly:
    d = p.degree("S")
    return p.coeff("S", d) * SymPoly.symbol("S") ** d if d >= 0 else ZERO


def compare_full(step: str, computed: SymPoly) -> StepComparison:
    rows = PRINTED_FULL[step]
    n = len(rows) - 1
    scale = None
    checks = []
    for k, (label, text) in enumerate(rows):
        printed = SymPoly.from_text(text)
        got = computed.coeff("P", n - k)
        if scale is None:
            scale = _ratio(got, printed)
        ok = scale is not None and got.scale(scale) == printed
        checks.append(CoefficientCheck(label, ok, got.to_text(), printed.to_text(), "full"))
    ok_deg = computed.degree("P") == n
    if not ok_deg:
        checks.append(CoefficientCheck("P-degree", False, str(computed.degree("P")), str(n), "full"))
    return StepComparison(step, scale, tuple(checks))


def compare_leading(step: str, computed: SymPoly) -> StepComparison:
    scale = None
    checks = []
    for label, k, text in PRINTED_LEADING[step]:
        printed = SymPoly.from_text(text)
        got = leading_s_term(computed.coeff("P", k))
        if scale is None:
            scale = _ratio(got, printed)
        ok = scale is not None and got.scale(scale) == printed
        checks.append(CoefficientCheck(label, ok, got.to_text(), printed.to_text(), "leading"))
    if step == "final":
        d = computed.degree("S")
        checks.append(CoefficientCheck("S-degree", d == PRINTED_FINAL_S_DEGREE, str(d),
                                       str(PRINTED_FINAL_S_DEGREE), "leading"))
    return StepComparison(step, scale, tuple(checks))


def compare(step: str, computed: SymPoly) -> StepComparison | None:
    if step in PRINTED_FULL:
        return compare_full(step, computed)
    if step in PRINTED_LEADING:
        return compare_leading(step, computed)
    return None
