"""
Three ways to compute Delta^II
==============================

The general divergence form works on any chart.  Surfaces of revolution
also have a closed form in terms of the turning angle phi, and the position
vector has a componentwise closed form.  All three agree to rounding.
"""
import numpy as np

from secondform import beltrami, finitetype, geometry
from secondform.beltrami import X1, X2, X3, ScalarField
from secondform.surfaces import catalog

fields = [X1, X2, X3, ScalarField.from_text("u^2"), ScalarField.from_text("sin(v)")]

for name in ("sphere", "catenoid", "torus"):
    s = catalog(name)
    worst_field, worst_pos, worst_first = 0.0, 0.0, 0.0
    for u, v in finitetype.sample_grid(s, 20, 20):
        for f in fields:
            a = beltrami.laplacian2_general(s, f, u, v)
            b = beltrami.laplacian2_revolution(s, f, u, v)
            worst_field = max(worst_field, abs(a - b))
        gen = beltrami.laplacian2_position_general(s, u, v)
        comp = beltrami.laplacian2_position(s, u, v, check=False)
        worst_pos = max(worst_pos, np.max(np.abs(gen - comp)))
        # the classical identity Delta^I x = -2 H n
        H = geometry.curvature(s.profile, u).H
        lap1 = beltrami.laplacian1_position(s, u, v)
        worst_first = max(worst_first, np.max(np.abs(lap1 + 2 * H * geometry.normal(s, u, v))))
    print("%-10s general vs closed %.1e | componentwise %.1e | Delta^I x + 2Hn %.1e"
          % (name, worst_field, worst_pos, worst_first))

# The product rule with the second-form gradient:
# Delta^II(fg) = f Delta^II g + g Delta^II f - 2 grad^II(f, g)
s = catalog("torus")
u, v = 0.9, 1.7
f = ScalarField.from_text("sin(u)*v")
g = ScalarField.from_text("exp(u/3)*cos(v)")
fg = ScalarField.from_text("sin(u)*v*exp(u/3)*cos(v)")
fv, gv = np.sin(u) * v, np.exp(u / 3) * np.cos(v)
lhs = beltrami.laplacian2_general(s, fg, u, v)
rhs = (fv * beltrami.laplacian2_general(s, g, u, v) + gv * beltrami.laplacian2_general(s, f, u, v)
       - 2 * beltrami.grad2(s, f, g, u, v))
print("product rule on the torus: %.15f vs %.15f" % (lhs, rhs))
