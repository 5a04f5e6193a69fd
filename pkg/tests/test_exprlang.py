import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secondform import exprlang as X
from secondform.jets import Jet3


@pytest.mark.parametrize("text, offset", [
    ("sin(u", 5),
    ("u +* 2", 3),
    ("2 ^ ", 4),
    ("foo(u)", 0),
    ("u ** 2", 3),
    ("", 0),
    ("u +\u00a0 )", 6),  # NBSP is two bytes in UTF-8
])
def test_syntax_error_byte_offsets(text, offset):
    with pytest.raises(X.ExprSyntaxError) as exc:
        X.parse(text)
    assert exc.value.offset == offset


def test_precedence_and_associativity():
    assert X.eval_float(X.parse("-2^2"), 0.0) == -4.0
    assert X.eval_float(X.parse("2^3^2"), 0.0) == 512.0
    assert X.eval_float(X.parse("8/4/2"), 0.0) == 1.0
    assert X.eval_float(X.parse("1 - 2 - 3"), 0.0) == -4.0
    assert X.eval_float(X.parse("2*pi"), 0.0) == pytest.approx(2 * math.pi)


def test_parameters_and_binding():
    e = X.parse("a*sin(b*u) + pi + e")
    assert X.parameters(e) == {"a", "b"}
    with pytest.raises(X.UnboundParameterError):
        X.eval_float(e, 1.0, {"a": 1.0})
    assert X.eval_float(e, 0.0, {"a": 1.0, "b": 2.0}) == pytest.approx(math.pi + math.e)


@pytest.mark.parametrize("text, u", [("ln(u)", -1.0), ("sqrt(u)", -1.0), ("1/u", 0.0)])
def test_domain_errors(text, u):
    with pytest.raises(X.ExprError):
        X.eval_float(X.parse(text), u)


def test_jet_and_float_agree():
    e = X.parse("c*asinh(u/c) + sqrt(c^2 + u^2)")
    j = X.eval_jet(e, Jet3.variable(0.8), {"c": 1.3})
    assert j.value == pytest.approx(X.eval_float(e, 0.8, {"c": 1.3}))


def test_bijet_evaluation():
    m = X.eval_bijet(X.parse("u*v^2"), 1.0, 2.0).derivative_map()
    assert m[(0, 0)] == 4.0 and m[(1, 1)] == 4.0 and m[(0, 2)] == 2.0 and m[(1, 2)] == 2.0


# -- round trip -------------------------------------------------------------------

names = st.sampled_from(["u", "v", "a", "pi"])
numbers = st.floats(0, 100, allow_nan=False, allow_infinity=False).map(lambda x: repr(round(x, 3)))
funcs = st.sampled_from(sorted(X.FUNCTIONS))


def _expr_text(children):
    return st.one_of(
        st.tuples(children, st.sampled_from("+-*/^"), children).map(lambda t: f"({t[0]}) {t[1]} ({t[2]})"),
        st.tuples(funcs, children).map(lambda t: f"{t[0]}({t[1]})"),
        children.map(lambda t: f"-{t}"),
    )


expr_texts = st.recursive(st.one_of(names, numbers), _expr_text, max_leaves=8)


@settings(max_examples=200)
@given(expr_texts)
def test_to_text_round_trip(text):
    e = X.parse(text)
    printed = X.to_text(e)
    assert X.parse(printed) == e
    assert X.to_text(X.parse(printed)) == printed
