"""Symbolic replay of the five sign patterns of ``(lambda, mu)``.

Every trace starts from the two reduced equations (radial and axial), with
``H`` expanded as ``(phi' + sin(phi)/p)/2``, and ends in an equation that
settles the case.
"""
from __future__ import annotations

from fractions import Fraction

from . import published
from .poly import ONE, ZERO, SymFrac, SymPoly
from .rules import (
    C, F1, H, L, M, P, Q, S, W,
    ReductionError,
    StepResult,
    check_free,
    derive_raw,
    derive_step,
    eliminate,
    expand_mean_curvature,
    lhs_axial,
    lhs_radial,
    normalize,
    parameter_content,
    reduce,
    sign_normalize,
    specialize,
)
from .trace import CascadeTrace, TraceStep

CASES = ("I", "II", "III", "IV", "V")

OMEGA_NOTE = ("W stands for lambda*p*cos(phi) + mu*q*sin(phi); with this definition "
              "W*phi' = (mu - lambda)*cos(phi)*sin(phi) and W*cos(phi) = lambda*p - 2*sin(phi) "
              "both hold. W != 0 is assumed throughout.")


def _fix_params(e, lam, mu):
    """Substitute the case values of ``L`` and ``M`` (``mu="L"`` ties them)."""
    e = e if isinstance(e, SymFrac) else SymFrac(e)
    if mu == "L":
        e = e.subs("M", L)
    elif mu is not None:
        e = e.subs("M", SymPoly.const(mu))
    if lam is not None:
        e = e.subs("L", SymPoly.const(lam))
    return e


def _equations(lam=None, mu=None):
    """Radial and axial equations as ``lhs - rhs`` with ``H`` expanded."""
    radial = expand_mean_curvature(lhs_radial() - SymFrac(L * P))
    axial = expand_mean_curvature(lhs_axial() - SymFrac(M * Q))
    return _fix_params(radial, lam, mu), _fix_params(axial, lam, mu)


def _combined(lam=None, mu=None) -> tuple[SymFrac, TraceStep]:
    radial, axial = _equations(lam, mu)
    raw = SymFrac(S) * radial - SymFrac(C) * axial
    red = reduce(raw, "trig")
    if not red.is_polynomial():
        raise ReductionError(f"combination did not clear denominators: {red}")
    n = normalize(red.num, "params")
    step = TraceStep("combined", n.poly, "reduce", ("radial", "axial"), n.content, raw,
                     "sin(phi)*radial - cos(phi)*axial")
    return raw, step


def _poly_step(name, raw: SymFrac, rule, parents, rules="trig", how="params", divide=None, note=""):
    red = reduce(raw, rules)
    if not red.is_polynomial():
        raise ReductionError(f"{name}: denominator {red.den} survives")
    num = red.num
    extra = ONE
    if divide is not None:
        q = num.exact_div(divide)
        if q is None:
            raise ReductionError(f"{name}: {divide} is not a factor of {num}")
        num, extra = q, divide
    n = normalize(num, how)
    return TraceStep(name, n.poly, rule, parents, n.content * extra, raw, note)


# -- cases I-IV ------------------------------------------------------------------------------

def case_I() -> CascadeTrace:
    t = CascadeTrace("I", header=["lambda = mu = 0"])
    _, step = _combined(0, 0)
    t.add(step)
    val = step.equation
    if not (val.is_constant() and not val.is_zero()):
        raise ReductionError(f"case I combination is not a nonzero constant: {val}")
    const = (step.content * step.equation).constant_value()
    t.conclusion = f"the combination reduces to the nonzero constant {const}: contradiction, no surface"
    return t


def case_II() -> CascadeTrace:
    t = CascadeTrace("II", header=["lambda = mu != 0"])
    _, comb = _combined(None, "L")
    t.add(comb)
    d = _poly_step("derived", derive_raw(comb.equation, "free"), "derive", ("combined",),
                   divide=F1, note="lambda*phi'*(p*p' + q*q') = 0; phi' != 0 since K != 0")
    t.add(d)
    radius = _poly_step("radius", derive_raw(P * P + Q * Q, "free"), "derive", (),
                        note="(p^2 + q^2)' = 2*(p*p' + q*q')")
    t.add(radius)
    if d.equation != radius.equation:
        raise ReductionError("derived equation is not the derivative of p^2 + q^2")
    t.conclusion = ("lambda*phi' != 0 (else K = 0), so (p^2 + q^2)' = 0: p^2 + q^2 is constant, "
                    "the profile lies on a circle about the origin and the surface is a sphere")
    return t


def case_III() -> CascadeTrace:
    t = CascadeTrace("III", header=["lambda != 0, mu = 0"])
    _, comb = _combined(None, 0)
    t.add(comb)
    d = _poly_step("derived", derive_raw(comb.equation, "free"), "derive", ("combined",),
                   note="(sin(phi) + p*phi')*cos(phi) = 0")
    t.add(d)
    # 2H = phi' + sin/p  =>  phi' = 2H - S/P
    raw = SymFrac(d.equation).subs("F1", SymFrac(2 * H * P - S, P))
    h = _poly_step("mean_curvature", raw, "reduce", ("derived",), note="2*H*p*cos(phi) = 0")
    t.add(h)
    if h.equation != H * P * C:
        raise ReductionError(f"case III did not reach H*P*C: {h.equation}")
    t.conclusion = "H*p*cos(phi) = 0 forces H = 0 on an open set: the surface is minimal (catenoid)"
    return t


def case_IV() -> CascadeTrace:
    t = CascadeTrace("IV", header=["lambda = 0, mu != 0",
                                   "phi' = cos(phi)/q and phi'' = -2 sin(phi) cos(phi)/q^2 with mu*q*cos(phi) = -2"])
    radial, _ = _equations(0, None)
    _, comb = _combined(0, None)
    t.add(comb)
    d1 = _poly_step("derived", derive_raw(comb.equation, "free"), "derive", ("combined",),
                    divide=S, note="q*phi' - cos(phi) = 0 after dividing by mu*sin(phi)")
    t.add(d1)
    d2 = _poly_step("second_derived", derive_raw(d1.equation, "free"), "derive", ("derived",),
                    note="2*phi'*sin(phi) + q*phi'' = 0")
    t.add(d2)
    # radial equation with the case values of phi', phi'' and mu*q*cos(phi) = -2
    spec = specialize(radial, "caseIV")
    raw = spec * SymFrac(spec.den)
    first = _poly_step("first_equation", raw, "reduce", ("radial", "derived", "second_derived"),
                       rules="full", note="mu*p*(1 + sin^2) + 2*sin = 0")
    first = TraceStep(first.name, first.equation, first.rule, first.parents, first.content,
                      radial * SymFrac(spec.den), first.note)
    t.add(first)
    check_free(first.equation)
    draw = derive_raw(first.equation, "caseIV")
    fd = _poly_step("first_derived", draw, "derive", ("first_equation",), rules="full",
                    divide=C * S, note="divided by mu*cos(phi)*sin(phi)")
    fd = TraceStep(fd.name, fd.equation, fd.rule, fd.parents, fd.content,
                   derive_raw(first.equation, "free"), fd.note)
    t.add(fd)
    e = eliminate(first.equation, fd.equation)
    t.add(TraceStep("final", e.poly, "eliminate", ("first_equation", "first_derived"), e.content, e.raw))
    if e.poly != S:
        raise ReductionError(f"case IV did not force sin(phi) = 0: {e.poly}")
    t.conclusion = (f"elimination of p leaves ({e.content.to_text()})*sin(phi) = 0, so sin(phi) = 0: "
                    "q is constant and K = 0, the excluded case")
    return t


# -- case V ----------------------------------------------------------------------------------

def cubic_from_axial() -> TraceStep:
    """The cubic in ``p``: axial equation with case-V ``phi'``, ``phi''``, cleared and reduced."""
    _, axial = _equations()
    spec = specialize(axial, "caseV")
    mult = spec.den * C
    red = reduce(SymFrac(spec.num * C))
    if not red.is_polynomial():
        raise ReductionError("cubic: denominator survives")
    check_free(red.num)
    n = normalize(red.num, "P")
    return TraceStep("cubic", n.poly, "reduce", ("axial", "combined"), n.content,
                     axial * SymFrac(mult), "axial equation times W*p*cos(phi)^2*(lambda - mu), reduced")


def _forces_equal(final: SymPoly) -> bool | None:
    """Does the vanishing of every S-coefficient force ``L = M`` (given ``L, M != 0``)?

    ``True`` when some coefficient is a monomial in ``L, M`` times a power of
    ``L - M``; ``None`` when the structure is not of that form.
    """
    diff = L - M
    coeffs = final.coefficients("S")
    for c in coeffs.values():
        q = c
        k = 0
        while True:
            r = q.exact_div(diff)
            if r is None:
                break
            q, k = r, k + 1
        if q.is_monomial():
            return True
    return None


def factor_difference(poly: SymPoly) -> str:
    """Text of ``poly`` with the powers of ``L - M`` pulled out."""
    diff = L - M
    k = 0
    while (q := poly.exact_div(diff)) is not None:
        poly, k = q, k + 1
    if not k:
        return poly.to_text()
    if poly == ONE:
        return f"(L - M)^{k}"
    rest = poly.to_text() if poly.is_monomial() else f"({poly.to_text()})"
    return f"{rest}*(L - M)^{k}"


def _cascade(t: CascadeTrace, cubic: TraceStep) -> CascadeTrace:
    t.add(cubic)
    chain = [
        ("cubic_derived", "derive", ("cubic",)),
        ("quadratic", "eliminate", ("cubic", "cubic_derived")),
        ("quadratic_derived", "derive", ("quadratic",)),
        ("linear", "eliminate", ("quadratic", "quadratic_derived")),
        ("linear_derived", "derive", ("linear",)),
        ("final", "eliminate", ("linear", "linear_derived")),
    ]
    for name, rule, parents in chain:
        if rule == "derive":
            r = derive_step(t.step(parents[0]).equation)
        else:
            r = eliminate(t.step(parents[0]).equation, t.step(parents[1]).equation)
        check_free(r.poly)
        t.add(TraceStep(name, r.poly, rule, parents, r.content, r.raw))
    for s in t.steps:
        comp = published.compare(s.name, s.equation)
        if comp is not None:
            t.comparisons.append(comp)
    final = t.final.equation
    if "P" in final.variables():
        raise ReductionError("final equation still contains P")
    t.forces_equal = _forces_equal(final)
    lead = final.coeff("S", final.degree("S"))
    head = (f"final polynomial in sin(phi) of degree {final.degree('S')}, leading coefficient "
            f"{factor_difference(lead)}, content {factor_difference(t.final.content)}")
    if t.forces_equal:
        t.conclusion = head + "; all coefficients vanish only if mu = lambda: contradiction"
    else:
        t.conclusion = head + "; vanishing does not by itself force mu = lambda"
    return t


def case_V(seed: str = "derived") -> CascadeTrace:
    """Case V cascade.

    ``seed="derived"`` obtains the cubic from the axial equation;
    ``seed="published"`` starts instead from the printed cubic, which
    localizes where the printed coefficient families diverge.
    """
    t = CascadeTrace("V", header=["lambda != 0, mu != 0, lambda != mu", OMEGA_NOTE], seed=seed)
    _, comb = _combined()
    t.add(comb)
    if seed == "derived":
        cubic = cubic_from_axial()
    elif seed == "published":
        eq, _ = sign_normalize(published.published_polynomial("cubic").primitive())
        cubic = TraceStep("cubic", eq, "seed", (), ONE, None, "printed cubic, taken as given")
    else:
        raise ValueError(f"unknown seed {seed!r}")
    return _cascade(t, cubic)


_RUNNERS = {"I": case_I, "II": case_II, "III": case_III, "IV": case_IV, "V": case_V}


def run_case(tag: str, seed: str = "derived") -> CascadeTrace:
    """Replay the argument for one case; see :data:`CASES`."""
    tag = tag.upper()
    if tag not in _RUNNERS:
        raise ValueError(f"unknown case {tag!r}; expected one of {', '.join(CASES)}")
    if tag == "V":
        return case_V(seed)
    return _RUNNERS[tag]()


def run_all(seed: str = "derived") -> list[CascadeTrace]:
    return [run_case(c, seed) for c in CASES]
