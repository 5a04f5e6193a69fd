"""
What fails the test: the torus, and flat surfaces
=================================================

A torus has no constant A; the least-squares residual stays of order one.
Cylinders and cones have K = 0 and are rejected before any fit.
"""
import numpy as np

from secondform import finitetype
from secondform.geometry import FlatPointError
from secondform.surfaces import catalog

torus = catalog("torus", R=2.0, a=1.0)
grid = finitetype.sample_grid(torus, 20, 20)
fit = finitetype.fit_matrix(torus, grid)
cls = finitetype.classify(fit)
print("torus R=2, a=1: %d grid points" % len(grid))
print(np.round(fit.a, 4))
print("rms residual %.3f  ->  %s" % (fit.rms_residual, cls.case_tag))

# Refining the grid does not make the residual go away.
for n in (8, 16, 32):
    f = finitetype.fit_matrix(torus, finitetype.sample_grid(torus, n, n))
    print("  grid %2dx%-2d  rms %.4f" % (n, n, f.rms_residual))

# The first-form operator tells the same story: the torus is no eigen-surface
# of Delta^I, the sphere is.
for s in (catalog("sphere"), torus):
    tk = finitetype.check_takahashi(s, finitetype.sample_grid(s, 12, 12))
    print("%-28s Delta^I x = %.4f x ? %s (rms %.1e)" % (s.name, tk.eigenvalue, tk.is_eigen, tk.rms_residual))

for name in ("cylinder", "cone"):
    try:
        finitetype.sample_grid(catalog(name), 10, 10)
    except FlatPointError as exc:
        print("%s rejected: %s" % (name, exc))
