import pytest
from hypothesis import given, strategies as st

from heisenkit.freealg import (
    FreeElement,
    GeneratorMismatch,
    NotHomogeneous,
    Presentation,
    grade_of,
    parse_element,
    span_equal,
)
from heisenkit.parsing import ParseError
from heisenkit.scalars import Scalar

GENS = ("t", "x", "y")
p = Scalar.param("p")


def el(text, params=None):
    return parse_element(text, GENS, params)


words = st.lists(st.sampled_from(GENS), max_size=4)
elements = st.lists(st.tuples(st.integers(-3, 3), words), max_size=4).map(
    lambda terms: sum((FreeElement.word(GENS, w, c) for c, w in terms), FreeElement(GENS)))


def test_noncommutative_product():
    assert el("x*y") != el("y*x")
    assert el("(x + y)^2") == el("x*x + x*y + y*x + y*y")


def test_braced_scalars_and_bare_params():
    assert el("{1/(p-1)}*x") == FreeElement.gen(GENS, "x") * (1 / (p - 1))
    assert el("p*x", ["p"]) == el("{p}*x")


def test_no_division_outside_braces():
    with pytest.raises(ParseError):
        el("x/2")


def test_unknown_generator():
    with pytest.raises(ParseError, match="unknown generator"):
        el("z*x")


@given(elements)
def test_print_parse_round_trip(e):
    assert el(str(e)) == e


@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_grade_of():
    assert grade_of(el("x*y - t"), {"t": 2}) == 2
    assert grade_of(el("x*y - t")) is NotHomogeneous
    assert grade_of(FreeElement(GENS)) is None


def test_substitute_and_rename():
    e = el("x*y")
    assert e.substitute({"t": el("t"), "x": el("x + t"), "y": el("y")}) == el("x*y + t*y")
    r = e.rename({"x": "X", "y": "Y", "t": "T"})
    assert r.gens == ("T", "X", "Y") and str(r) == "X*Y"


def test_span_equal_up_to_scale():
    S1 = [el("x*y - t"), el("y*x")]
    S2 = [el("{2}*x*y - {2}*t + y*x"), el("{-1}*y*x")]
    res = span_equal(S1, S2)
    assert res.equal and res.rank_union == 2
    assert not span_equal(S1, [el("x*y")]).equal


def test_span_equal_specialize_mode(rng):
    S1 = [el("p*x*y", ["p"])]
    S2 = [el("x*y")]
    assert span_equal(S1, S2, mode="specialize", rng=rng).equal


def test_span_equal_needs_common_gens():
    with pytest.raises(GeneratorMismatch):
        span_equal([el("x")], [parse_element("x", ("x",))])


def test_presentation_dict():
    P = Presentation([("t", 2), "x", "y"], [el("y*x - x*y - t")])
    assert P.weights == {"t": 2, "x": 1, "y": 1}
    assert P.to_dict()["relations"] == [str(el("y*x - x*y - t"))]
