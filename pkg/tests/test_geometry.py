import math

import numpy as np
import pytest

from secondform import geometry
from secondform.surfaces import catalog


def _fd_forms(surface, u, v, h=1e-4):
    """First and second fundamental forms from central differences of the position."""
    x = surface.position
    xu = (x(u + h, v) - x(u - h, v)) / (2 * h)
    xv = (x(u, v + h) - x(u, v - h)) / (2 * h)
    xuu = (x(u + h, v) - 2 * x(u, v) + x(u - h, v)) / h**2
    xvv = (x(u, v + h) - 2 * x(u, v) + x(u, v - h)) / h**2
    xuv = (x(u + h, v + h) - x(u + h, v - h) - x(u - h, v + h) + x(u - h, v - h)) / (4 * h * h)
    n = np.cross(xu, xv)
    n /= np.linalg.norm(n)
    return (xu @ xu, xu @ xv, xv @ xv, xuu @ n, xuv @ n, xvv @ n)


@pytest.mark.parametrize("name, u, v", [
    ("sphere", 1.1, 0.4), ("catenoid", 0.6, 2.0), ("torus", -0.8, 5.0), ("chart_sphere", 1.2, 2.5),
])
def test_forms_against_finite_differences(name, u, v):
    s = catalog(name)
    ff = geometry.forms(s, u, v)
    got = (ff.g11, ff.g12, ff.g22, ff.b11, ff.b12, ff.b22)
    assert np.allclose(got, _fd_forms(s, u, v), atol=1e-6)


def test_sphere_curvatures():
    for r in (0.5, 2.0):
        prof = catalog("sphere", r=r).profile
        for u in prof.sample_u(5):
            cd = geometry.curvature(prof, u)
            assert cd.K == pytest.approx(1 / r**2)
            assert abs(cd.H) == pytest.approx(1 / r)
            assert cd.R1 == pytest.approx(cd.R2)


def test_catenoid_curvatures():
    c = 1.5
    prof = catalog("catenoid", c=c).profile
    for u in (-2.0, 0.0, 1.3):
        cd = geometry.curvature(prof, u)
        assert cd.H == pytest.approx(0.0, abs=1e-13)
        assert cd.K == pytest.approx(-(c**2) / (c**2 + u**2) ** 2)


def test_torus_outer_equator():
    prof = catalog("torus", R=2.0, a=1.0).profile
    assert geometry.curvature(prof, 0.0).K == pytest.approx(1 / 3)


def test_revolution_and_chart_agree():
    rev = catalog("sphere", r=1.0)
    chart = catalog("chart_sphere", r=1.0)
    a = geometry.forms(rev, 1.0, 0.5)
    b = geometry.forms(chart, 1.0, 0.5)
    assert a.gauss_curvature == pytest.approx(b.gauss_curvature)
    assert abs(a.mean_curvature) == pytest.approx(abs(b.mean_curvature))


def test_normal_is_unit_and_orthogonal():
    s = catalog("torus")
    u, v, h = 0.4, 1.0, 1e-6
    n = geometry.normal(s, u, v)
    xu = (s.position(u + h, v) - s.position(u - h, v)) / (2 * h)
    xv = (s.position(u, v + h) - s.position(u, v - h)) / (2 * h)
    assert np.linalg.norm(n) == pytest.approx(1.0)
    assert abs(n @ xu) < 1e-8 and abs(n @ xv) < 1e-8


def test_h_times_n_is_orientation_free():
    # mean curvature vector of the unit sphere points to the centre
    s = catalog("sphere")
    u, v = 1.0, 0.3
    hn = geometry.curvature(s.profile, u).H * geometry.normal(s, u, v)
    assert np.allclose(hn, -s.position(u, v), atol=1e-12)


@pytest.mark.parametrize("name", ["cylinder", "cone"])
def test_flat_surfaces_rejected(name):
    prof = catalog(name).profile
    with pytest.raises(geometry.FlatPointError):
        geometry.curvature(prof, prof.sample_u(3)[1])
