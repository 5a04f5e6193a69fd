"""
Spheres and catenoids satisfy Delta^II x = A x
==============================================

Fit the constant matrix A on a grid of points and read off the two
eigenvalues lambda (the x1, x2 block) and mu (the x3 entry).
"""
from pathlib import Path

import numpy as np

from secondform import finitetype, report
from secondform.surfaces import catalog, load_surface

np.set_printoptions(precision=6, suppress=True)

# The unit sphere: A comes out as 2 times the identity, to machine precision.
sphere = catalog("sphere", r=1.0)
grid = finitetype.sample_grid(sphere, 20, 20)
fit = finitetype.fit_matrix(sphere, grid)
print("unit sphere, %d points" % len(grid))
print(fit.a)
print("rms residual %.2e  ->  case %s" % (fit.rms_residual, finitetype.classify(fit).case_tag))

# The eigenvalue scales as 2/r.
for r in (0.5, 1.0, 2.0, 3.0):
    cls = finitetype.classify(finitetype.fit_matrix(catalog("sphere", r=r),
                                                    finitetype.sample_grid(catalog("sphere", r=r), 12, 12)))
    print("r = %.1f   lambda = %.12f   mu = %.12f   2/r = %.12f" % (r, cls.lam, cls.mu, 2 / r))

# The catenoid gives diag(2/c, 2/c, 0): lambda != 0 and mu = 0.
for c in (1.0, 2.0):
    cat = catalog("catenoid", c=c)
    rep = report.analyze(cat, 16, 16)
    print("\ncatenoid c = %g" % c)
    print(np.array(rep.matrixA["a"]))
    print("case %s, mean curvature in [%.1e, %.1e]" % (rep.classification["case"],
                                                      rep.curvature["H_min"], rep.curvature["H_max"]))

# A surface file works the same way.  The cosh profile is not arc-length,
# so it is reparametrized on load; the fit degrades only to quadrature accuracy.
here = Path(__file__).parent / "surfaces"
for name in ("catenoid.srf", "cosh_profile.srf"):
    s = load_surface(here / name)
    fit = finitetype.fit_matrix(s, finitetype.sample_grid(s, 10, 10))
    print("\n%s: diag(A) = %s, rms %.1e" % (name, np.diag(fit.a), fit.rms_residual))
