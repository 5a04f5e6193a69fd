import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from secondform import jets
from secondform.jets import BiJet3, Jet3

finite = st.floats(-3, 3, allow_nan=False)


def close(a, b, tol=1e-12):
    return all(abs(x - y) <= tol * max(1.0, abs(y)) for x, y in zip(a, b))


def test_variable_and_constant():
    x = Jet3.variable(1.5)
    assert x.derivatives() == (1.5, 1.0, 0.0, 0.0)
    assert Jet3.constant(2.0).derivatives() == (2.0, 0.0, 0.0, 0.0)


def test_sin_times_exp_closed_form():
    # (e^x sin x)' = e^x (sin + cos), '' = 2 e^x cos, ''' = 2 e^x (cos - sin)
    x0 = 0.7
    x = Jet3.variable(x0)
    f = jets.apply("exp", x) * jets.sin(x)
    ex, s, c = math.exp(x0), math.sin(x0), math.cos(x0)
    assert close(f.derivatives(), (ex * s, ex * (s + c), 2 * ex * c, 2 * ex * (c - s)))


def test_division_and_reciprocal():
    x = Jet3.variable(2.0)
    f = 1 / x
    assert close(f.derivatives(), (0.5, -0.25, 2 / 8, -6 / 16))
    assert close((x / x).derivatives(), (1.0, 0.0, 0.0, 0.0))


def test_integer_power_matches_repeated_product():
    x = Jet3.variable(1.3)
    assert close((x**5).derivatives(), (x * x * x * x * x).derivatives())
    assert close((x**-2).derivatives(), (1 / (x * x)).derivatives())


@given(finite, finite, finite)
def test_leibniz_third_order(a, b, x0):
    x = Jet3.variable(x0)
    f = jets.sin(a * x)
    g = jets.cos(b * x)
    fd, gd = f.derivatives(), g.derivatives()
    want = fd[3] * gd[0] + 3 * fd[2] * gd[1] + 3 * fd[1] * gd[2] + fd[0] * gd[3]
    got = (f * g).derivatives()[3]
    assert abs(got - want) <= 1e-9 * max(1.0, abs(want))


@given(st.lists(st.floats(-5, 5, allow_nan=False), min_size=1, max_size=5), finite)
def test_polynomials_exact(coeffs, x0):
    x = Jet3.variable(x0)
    jet = Jet3.constant(0.0)
    for c in coeffs:
        jet = jet * x + c
    # Horner on the value and its derivatives separately
    val = d1 = d2 = d3 = 0.0
    for c in coeffs:
        d3 = d3 * x0 + 3 * d2
        d2 = d2 * x0 + 2 * d1
        d1 = d1 * x0 + val
        val = val * x0 + c
    assert close(jet.derivatives(), (val, d1, d2, d3), 1e-9)


def test_bijet_mixed_partials():
    u = BiJet3.variable(0.4, 1.1, 0)
    v = BiJet3.variable(0.4, 1.1, 1)
    f = jets.sin(u) * v * v
    m = f.derivative_map()
    su, cu = math.sin(0.4), math.cos(0.4)
    assert m[(1, 1)] == pytest.approx(2 * 1.1 * cu)
    assert m[(2, 1)] == pytest.approx(-2 * 1.1 * su)
    assert m[(1, 2)] == pytest.approx(2 * cu)
    assert m[(0, 3)] == pytest.approx(0.0)
    assert f.du().value == pytest.approx(cu * 1.21)
    assert f.dv().value == pytest.approx(2 * 1.1 * su)


def test_from_u_embeds_univariate():
    j = jets.sin(Jet3.variable(0.3))
    b = BiJet3.from_u(j).derivative_map()
    assert b[(3, 0)] == pytest.approx(j.d3)
    assert b[(0, 1)] == 0.0 and b[(1, 1)] == 0.0


def test_cross_and_dot():
    u = BiJet3.variable(0.0, 0.0, 0)
    a = [u, BiJet3.constant(0.0), BiJet3.constant(1.0)]
    b = [BiJet3.constant(0.0), BiJet3.constant(1.0), BiJet3.constant(0.0)]
    c = jets.cross(a, b)
    assert [x.value for x in c] == [-1.0, 0.0, 0.0]
    assert jets.dot(a, a).value == 1.0
