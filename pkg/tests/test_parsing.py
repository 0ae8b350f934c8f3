from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heisenkit.parsing import ParseError, parse_scalar, parse_tpoly, tokenize
from heisenkit.scalars import Scalar, TPoly

p, q = Scalar.params("p q")
t = TPoly.t()


@pytest.mark.parametrize("text, value", [
    ("2+3*4", Scalar(14)),
    ("(2^3)^2", Scalar(64)),
    ("2^-2", Scalar(Fraction(1, 4))),
    ("-2^2", Scalar(-4)),
    ("(1-2)*3", Scalar(-3)),
    ("1/2/2", Scalar(Fraction(1, 4))),
    ("p^-1", 1 / p),
    ("1/(q-1)", 1 / (q - 1)),
    ("(p^2-1)/(p-1)", p + 1),
])
def test_scalar_precedence(text, value):
    assert parse_scalar(text) == value


def test_tpoly():
    assert parse_tpoly("p*t^2 - 3*t + 1/2", ["p"]) == (t * t).scale(p) - t.scale(3) + Fraction(1, 2)
    assert parse_tpoly("(t+1)^2") == t * t + t.scale(2) + 1
    assert parse_tpoly(3) == TPoly.const(3)


def test_tpoly_rejects_division_by_polynomial():
    with pytest.raises(ParseError, match="divide"):
        parse_tpoly("1/t")


def test_undeclared_parameter_position():
    with pytest.raises(ParseError) as exc:
        parse_scalar("p +\n  zz", ["p"])
    assert exc.value.line == 2 and exc.value.column == 3
    assert "line 2, column 3" in str(exc.value)


@pytest.mark.parametrize("text", ["", "1+", "(1", "1)", "2 $ 3", "1/0", "2^3^2"])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


def test_tokenize_positions():
    toks = tokenize("p  + 12")
    assert [(k.kind, k.value, k.pos) for k in toks[:3]] == [("IDENT", "p", 0), ("OP", "+", 3), ("INT", "12", 5)]


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5))
def test_tpoly_print_parse_round_trip(coeffs):
    f = TPoly(coeffs).scale(p) + TPoly(coeffs[::-1])
    assert parse_tpoly(str(f)) == f
