"""Analysis report: fit, classification and numeric cross-checks for one surface."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import beltrami, finitetype, geometry
from .geometry import ChartJets, _point_forms
from .surfaces import RevolutionSurface, Surface, phi

IDENTITY_TOL = 1e-8
TAKAHASHI_TOL = 1e-6
REPORT_KEYS = ("surface", "grid", "curvature", "matrixA", "classification", "checks")


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    tol: float
    detail: str = ""
    required: bool = True

    def __post_init__(self):
        # numpy scalars sneak in from comparisons; keep the JSON plain
        self.passed = bool(self.passed)
        self.value = float(self.value)
        self.tol = float(self.tol)
        self.required = bool(self.required)


@dataclass
class Report:
    surface: dict
    grid: dict
    curvature: dict
    matrixA: dict
    classification: dict
    checks: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "grid": self.grid,
            "curvature": self.curvature,
            "matrixA": self.matrixA,
            "classification": self.classification,
            "checks": [asdict(c) if isinstance(c, Check) else c for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        missing = set(REPORT_KEYS) - set(d)
        if missing:
            raise ValueError(f"report is missing keys {sorted(missing)}")
        return cls(d["surface"], d["grid"], d["curvature"], d["matrixA"], d["classification"],
                   [Check(**c) for c in d["checks"]])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def csv_row(self) -> dict:
        a = self.matrixA["a"]
        row = {
            "surface": self.surface["name"],
            "n_points": self.grid["n_points"],
            "rms_residual": fmt(self.matrixA["rms_residual"]),
            "lambda": fmt(self.classification["lambda"]),
            "mu": fmt(self.classification["mu"]),
            "case": self.classification["case"],
            "structure_ok": self.classification["structure_ok"],
        }
        for i in range(3):
            for j in range(3):
                row[f"a{i + 1}{j + 1}"] = fmt(a[i][j])
        for k in ("H_min", "H_max", "K_min", "K_max"):
            row[k] = fmt(self.curvature[k])
        return row

    def to_csv(self) -> str:
        return rows_to_csv([self.csv_row()])

    def to_text(self) -> str:
        c = self.classification
        a = np.array(self.matrixA["a"])
        lines = [
            f"surface: {self.surface['name']}",
            f"grid: {self.grid['n_u']}x{self.grid['n_v']} ({self.grid['n_points']} valid points)",
            f"H in [{self.curvature['H_min']:.6g}, {self.curvature['H_max']:.6g}], "
            f"K in [{self.curvature['K_min']:.6g}, {self.curvature['K_max']:.6g}]",
            "A =",
            *("  " + "  ".join(f"{x: .10f}" for x in row) for row in a),
            f"rms residual: {self.matrixA['rms_residual']:.3e}",
            f"case: {c['case']}  (lambda={c['lambda']:.10g}, mu={c['mu']:.10g}, structure_ok={c['structure_ok']})",
            f"  {c['note']}",
            "checks:",
        ]
        for ch in self.checks:
            mark = "ok  " if ch.passed else "FAIL"
            lines.append(f"  [{mark}] {ch.name}: {ch.value:.3e} (tol {ch.tol:g}) {ch.detail}".rstrip())
        return "\n".join(lines)


def fmt(x: float) -> str:
    """17 significant digits; enough to round-trip any double."""
    return format(float(x), ".17g")


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _describe(surface: Surface) -> dict:
    kind = "revolution" if isinstance(surface, RevolutionSurface) else "chart"
    return {
        "name": surface.name,
        "kind": kind,
        "u_domain": [float(x) for x in surface.u_domain],
        "v_domain": [float(x) for x in surface.v_domain],
    }


def _curvatures(surface: Surface, grid) -> tuple[np.ndarray, np.ndarray]:
    Hs, Ks = [], []
    for u, v in grid:
        if isinstance(surface, RevolutionSurface):
            cd = geometry.curvature(surface.profile, u)
            Hs.append(cd.H)
            Ks.append(cd.K)
        else:
            ff = _point_forms(ChartJets(surface, u, v))
            Hs.append(ff.mean_curvature)
            Ks.append(ff.gauss_curvature)
    return np.array(Hs), np.array(Ks)


def _max_rel(a, b) -> float:
    return max(abs(x - y) / max(1.0, abs(y)) for x, y in zip(a, b))


def analyze(surface: Surface, n_u: int = 20, n_v: int = 20, tol: float = finitetype.CLASSIFY_TOL) -> Report:
    """Fit, classify and cross-check one surface.

    Raises
    ------
    finitetype.GridError, finitetype.FlatSurfaceError
    """
    grid = finitetype.sample_grid(surface, n_u, n_v)
    fit = finitetype.fit_matrix(surface, grid)
    cls = finitetype.classify(fit, tol=tol)
    H, K = _curvatures(surface, grid)
    checks = [Check("structure", cls.structure_ok, float(max(abs(fit.a[0, 1]), abs(fit.a[0, 2]), abs(fit.a[1, 0]),
                                                            abs(fit.a[1, 2]), abs(fit.a[2, 0]), abs(fit.a[2, 1]),
                                                            abs(fit.a[0, 0] - fit.a[1, 1]))),
                    tol, "off-diagonal entries and a11 - a22",
                    required=cls.case_tag != "NOT_FINITE_TYPE")]

    # Delta^I x = -2 H n
    worst = 0.0
    for (u, v), h in zip(grid, H):
        lap1 = beltrami.laplacian1_position(surface, u, v)
        n = geometry.normal(surface, u, v)
        worst = max(worst, float(np.max(np.abs(lap1 + 2 * h * n))))
    checks.append(Check("laplacian1_equals_minus_2Hn", worst < IDENTITY_TOL, worst, IDENTITY_TOL))

    if isinstance(surface, RevolutionSurface):
        worst_op = 0.0
        worst_comp = 0.0
        worst_lin = 0.0
        for u, v in grid:
            gen = beltrami.laplacian2_position_general(surface, u, v)
            comp = beltrami.laplacian2_position(surface, u, v, check=False)
            closed = [beltrami.laplacian2_revolution(surface, f, u, v) for f in (beltrami.X1, beltrami.X2, beltrami.X3)]
            worst_op = max(worst_op, _max_rel(gen, closed))
            worst_comp = max(worst_comp, _max_rel(comp, closed))
            pd = phi(surface.profile, u)
            p, q = (j.value for j in surface.profile.jets(u))
            lin = cls.lam * p * math.sin(pd.phi) - cls.mu * q * math.cos(pd.phi) - 2
            worst_lin = max(worst_lin, abs(lin))
        checks.append(Check("general_vs_closed_form", worst_op < IDENTITY_TOL, worst_op, IDENTITY_TOL))
        checks.append(Check("componentwise_vs_closed_form", worst_comp < IDENTITY_TOL, worst_comp, IDENTITY_TOL))
        if cls.case_tag in ("II", "III", "V"):
            checks.append(Check("linear_relation", worst_lin < 1e-6, worst_lin, 1e-6,
                                "lambda p sin(phi) - mu q cos(phi) = 2"))

    tk = finitetype.check_takahashi(surface, grid, TAKAHASHI_TOL)
    checks.append(Check("takahashi", True, tk.rms_residual, TAKAHASHI_TOL,
                        f"eigenvalue={tk.eigenvalue:.10g} is_eigen={tk.is_eigen}", required=False))

    return Report(
        surface=_describe(surface),
        grid={"n_u": n_u, "n_v": n_v, "n_points": len(grid)},
        curvature={"H_min": float(H.min()), "H_max": float(H.max()),
                   "K_min": float(K.min()), "K_max": float(K.max())},
        matrixA={"a": fit.to_list(), "rms_residual": float(fit.rms_residual), "n_samples": fit.n_samples},
        classification={"case": cls.case_tag, "lambda": cls.lam, "mu": cls.mu,
                        "structure_ok": cls.structure_ok, "note": cls.note},
        checks=checks,
    )
