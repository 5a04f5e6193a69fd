"""Cascade traces, their text/JSON forms, and numeric certificates.

Each step stores, next to the normalized equation, a *certificate*: an
unreduced expression ``raw`` built directly from the parent equations (before
any rewriting) such that ``raw == content * equation`` holds at every point
satisfying the case relations.  Evaluating both sides at random relation
points in 50-digit arithmetic checks the rewriting, the substitutions for
``phi'`` and ``phi''``, and the content bookkeeping independently of the
symbolic code that produced the step.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import mpmath

from .poly import INDEX, PARAMETERS, SYMBOLS, SymFrac, SymPoly
from .published import StepComparison

CERT_DPS = 50
CERT_POINTS = 50
CERT_TOL = mpmath.mpf("1e-20")


@dataclass(frozen=True)
class TraceStep:
    name: str
    equation: SymPoly
    rule: str  # derive / eliminate / reduce / seed
    parents: tuple = ()
    content: SymPoly = field(default_factory=lambda: SymPoly.const(1))
    raw: SymFrac | None = None
    note: str = ""

    def grouped_text(self) -> str:
        return f"{self.name}: {grouped(self.equation)}"


@dataclass
class CascadeTrace:
    case: str
    header: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    conclusion: str = ""
    forces_equal: bool | None = None
    comparisons: list = field(default_factory=list)
    seed: str = "derived"

    def add(self, step: TraceStep) -> TraceStep:
        self.steps.append(step)
        return step

    def step(self, name: str) -> TraceStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    @property
    def final(self) -> TraceStep:
        return self.steps[-1]

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.steps]

    def full_mismatches(self) -> list[str]:
        return [f"{c.step}.{k.label}" for c in self.comparisons for k in c.checks
                if k.kind == "full" and not k.matches]

    def leading_mismatches(self) -> list[str]:
        return [f"{c.step}.{k.label}" for c in self.comparisons for k in c.checks
                if k.kind == "leading" and not k.matches]

    def to_text(self) -> str:
        lines = [f"== case {self.case} ({self.seed}) =="]
        lines += [f"# {h}" for h in self.header]
        for s in self.steps:
            par = f" <- {', '.join(s.parents)}" if s.parents else ""
            lines.append(f"[{s.rule}{par}; content {s.content.to_text()}]")
            lines.append("  " + s.grouped_text())
            if s.note:
                lines.append(f"  ({s.note})")
        for comp in self.comparisons:
            for c in comp.checks:
                flag = "match" if c.matches else ("MISMATCH" if c.kind == "full" else "differs")
                lines.append(f"compare {comp.step}.{c.label} [{c.kind}]: {flag}")
                if not c.matches:
                    lines.append(f"    computed: {c.computed}")
                    lines.append(f"    printed:  {c.printed}")
        lines.append(f"conclusion: {self.conclusion}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "seed": self.seed,
            "header": list(self.header),
            "steps": [
                {
                    "name": s.name,
                    "rule": s.rule,
                    "parents": list(s.parents),
                    "content": s.content.to_text(),
                    "equation": s.equation.to_text(),
                    "grouped": grouped(s.equation),
                    "note": s.note,
                }
                for s in self.steps
            ],
            "comparisons": [_comparison_dict(c) for c in self.comparisons],
            "conclusion": self.conclusion,
            "forces_mu_equals_lambda": self.forces_equal,
        }


def _comparison_dict(c: StepComparison) -> dict:
    return {
        "step": c.step,
        "scale": None if c.scale is None else str(c.scale),
        "checks": [
            {"label": k.label, "kind": k.kind, "matches": k.matches, "computed": k.computed, "printed": k.printed}
            for k in c.checks
        ],
    }


def grouped(p: SymPoly) -> str:
    """``[coeff in L, M]*P^a*S^b + ...`` with the parameter polynomial bracketed."""
    if p.is_zero():
        return "0"
    pi = [INDEX[n] for n in PARAMETERS]
    buckets: dict[tuple, dict] = {}
    for e, c in p.items():
        key = tuple(0 if i in pi else k for i, k in enumerate(e))
        rest = tuple(k if i in pi else 0 for i, k in enumerate(e))
        buckets.setdefault(key, {})[rest] = c
    parts = []
    for key in sorted(buckets, key=lambda e: (sum(e), e), reverse=True):
        coeff = SymPoly(buckets[key]).to_text()
        mono = SymPoly.monomial(key).to_text()
        if mono == "1":
            parts.append(f"[{coeff}]")
        else:
            parts.append(f"[{coeff}]*{mono}")
    return " + ".join(parts)


# -- relation-satisfying sample points ------------------------------------------------------

def _uniform(rng, lo, hi, avoid=0.15):
    while True:
        x = mpmath.mpf(rng.uniform(lo, hi))
        if abs(x) > avoid:
            return x


def sample_point(case: str, rng: random.Random) -> dict:
    """A random point where the relations of ``case`` hold exactly (to working precision)."""
    while True:
        S = _uniform(rng, -0.95, 0.95, 0.1)
        C = mpmath.sqrt(1 - S * S) * rng.choice((-1, 1))
        P = mpmath.mpf(rng.uniform(0.3, 3.0))
        pt = {"S": S, "C": C, "P": P}
        F1 = _uniform(rng, -2, 2)
        F2 = mpmath.mpf(rng.uniform(-2, 2))
        if case == "I":
            L = M = mpmath.mpf(0)
            Q = mpmath.mpf(rng.uniform(-2, 2))
        elif case == "II":
            L = M = _uniform(rng, -3, 3, 0.3)
            Q = (L * P * S - 2) / (L * C)
        elif case == "III":
            L, M = _uniform(rng, -3, 3, 0.3), mpmath.mpf(0)
            P = 2 / (L * S)
            pt["P"] = P
            Q = mpmath.mpf(rng.uniform(-2, 2))
        elif case == "IV":
            L, M = mpmath.mpf(0), _uniform(rng, -3, 3, 0.3)
            Q = -2 / (M * C)
            F1 = -M * C * C / 2
            F2 = -M * M * C**3 * S / 2
        else:
            L, M = _uniform(rng, -3, 3, 0.3), _uniform(rng, -3, 3, 0.3)
            if abs(L - M) < 0.2:
                continue
            Q = (L * P * S - 2) / (M * C)
        W = L * P * C + M * Q * S
        if case == "V":
            if abs(W) < 0.05:
                continue
            F1 = (M - L) * C * S / W
            F2 = (((L - 2 * M) * S * S + (M - 2 * L) * C * C) * F1 + 2 * F1 * F1) / W
            if abs(F1) < 1e-3:
                continue
        pt.update({"Q": Q, "W": W, "F1": F1, "F2": F2, "L": L, "M": M, "H": (F1 + S / P) / 2})
        return pt


@dataclass(frozen=True)
class CertificateResult:
    step: str
    max_residual: float
    passed: bool


def verify_certificates(trace: CascadeTrace, n_points: int = CERT_POINTS, seed: int = 0,
                        tol=CERT_TOL) -> list[CertificateResult]:
    """Evaluate every step certificate at ``n_points`` random relation points."""
    rng = random.Random(f"{trace.case}:{seed}")
    results = []
    with mpmath.workdps(CERT_DPS):
        points = [sample_point(trace.case, rng) for _ in range(n_points)]
        for s in trace.steps:
            if s.raw is None:
                continue
            worst = mpmath.mpf(0)
            for pt in points:
                lhs = s.raw.evaluate(pt)
                rhs = s.content.evaluate(pt) * s.equation.evaluate(pt)
                scale = max(abs(lhs), abs(rhs), mpmath.mpf(1))
                worst = max(worst, abs(lhs - rhs) / scale)
            results.append(CertificateResult(s.name, float(worst), bool(worst < tol)))
    return results
