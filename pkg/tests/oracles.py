"""Independent oracles for the test suite: random expressions and Richardson differences."""
from __future__ import annotations

import random

# catalog profile expressions with parameter ranges and a safe u-interval
CATALOG_EXPRS = [
    ("r*sin(u/r)", {"r": (0.5, 3.0)}, (0.2, 1.4)),
    ("-r*cos(u/r)", {"r": (0.5, 3.0)}, (0.2, 1.4)),
    ("sqrt(c^2 + u^2)", {"c": (0.5, 2.0)}, (-1.5, 1.5)),
    ("c*asinh(u/c)", {"c": (0.5, 2.0)}, (-1.5, 1.5)),
    ("R + a*cos(u/a)", {"R": (2.0, 4.0), "a": (0.5, 1.5)}, (-1.0, 1.0)),
    ("a*sin(u/a)", {"R": (2.0, 4.0), "a": (0.5, 1.5)}, (-1.0, 1.0)),
    ("u/sqrt(1 + k^2)", {"k": (0.5, 2.0)}, (0.5, 2.0)),
]

# wrappers that stay smooth and well-conditioned on any real input of moderate size
WRAPPERS = [
    "sin({})", "cos({})", "tanh({})", "asinh({})", "exp({}/4)",
    "sqrt(2 + ({})^2)", "ln(3 + ({})^2)", "({})^2", "({})^3", "1/(2 + ({})^2)", "cosh({}/2)",
]


def random_expression(rng: random.Random) -> tuple[str, dict, float]:
    """One random expression, its parameters and an evaluation point."""
    base, ranges, (lo, hi) = rng.choice(CATALOG_EXPRS)
    params = {k: rng.uniform(*r) for k, r in ranges.items()}
    text = base
    for _ in range(rng.randint(0, 2)):
        text = rng.choice(WRAPPERS).format(text)
    if rng.random() < 0.4:
        other, oranges, _ = rng.choice(CATALOG_EXPRS)
        if set(oranges) <= set(params) or not set(oranges) & set(params):
            for k, r in oranges.items():
                params.setdefault(k, rng.uniform(*r))
            text = f"({text}) {rng.choice('+-*')} ({other})"
    return text, params, rng.uniform(lo, hi)


def _central(f, x: float, h: float, k: int) -> float:
    if k == 1:
        return (f(x + h) - f(x - h)) / (2 * h)
    if k == 2:
        return (f(x + h) - 2 * f(x) + f(x - h)) / h**2
    return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h**3)


def richardson(f, x: float, k: int, h: float = 0.05, levels: int = 4) -> float:
    """k-th derivative from central differences, Richardson-extrapolated in h^2."""
    table = [[_central(f, x, h / 2**i, k)] for i in range(levels)]
    for i in range(1, levels):
        for j in range(1, i + 1):
            prev = table[i][j - 1]
            table[i].append(prev + (prev - table[i - 1][j - 1]) / (4**j - 1))
    return table[-1][-1]
