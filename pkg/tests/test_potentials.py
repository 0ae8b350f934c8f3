import random
from itertools import product

import pytest

from heisenkit.engine import QGHA
from heisenkit.families import to_qgha
from heisenkit.freealg import FreeElement, grade_of, parse_element, span_equal
from heisenkit.potentials import (
    cubic_potential,
    cyclic_derivative,
    deformed_potential,
    jacobian_presentation,
    jacobian_relations,
    linear_change,
    match_jacobian,
    quadratic_correction_as_printed,
    random_invertible,
)
from heisenkit.scalars import Scalar, TPoly

GENS = ("t", "x", "y")
t = TPoly.t()
p, c, d, e, k = Scalar.params("p c d e k")


def el(text):
    return parse_element(text, GENS, ["p", "c", "d", "e", "k"])


def test_word_rule():
    assert cyclic_derivative(el("x*y*t"), "x") == el("y*t")
    assert cyclic_derivative(el("t^3"), "t") == el("3*t^2")
    assert cyclic_derivative(el("x*y*x"), "x") == el("y*x + x*y")


def test_cubic_potential_derivatives():
    phi = cubic_potential(p, c)
    assert cyclic_derivative(phi, "x") == el("y*t - p*t*y")
    assert cyclic_derivative(phi, "y") == el("t*x - p*x*t")
    assert cyclic_derivative(phi, "t") == el("x*y - p*y*x + p*c*t^2")


def test_jacobian_presentation():
    P = jacobian_presentation(cubic_potential(p, c))
    assert len(P.relations) == 3
    assert jacobian_presentation(FreeElement(GENS)).relations == []


def all_words(n):
    return [w for m in range(1, n + 1) for w in product(range(3), repeat=m)]


def test_cyclic_invariance():
    for w in all_words(4):
        rot = w[1:] + w[:1]
        for v in GENS:
            a = cyclic_derivative(FreeElement(GENS, {w: 1}), v)
            b = cyclic_derivative(FreeElement(GENS, {rot: 1}), v)
            assert a == b


def test_degree_drop():
    for w in all_words(4):
        for v in GENS:
            dv = cyclic_derivative(FreeElement(GENS, {w: 1}), v)
            assert not dv or grade_of(dv) == len(w) - 1


def test_basis_independence_proxy():
    rng = random.Random(5)
    point = {"p": 3, "c": -2}
    phi = cubic_potential(p, c).specialize(point)
    for _ in range(3):
        m = random_invertible(3, rng)
        changed = jacobian_relations(linear_change(phi, m))
        images = [linear_change(r, m) for r in jacobian_relations(phi)]
        assert span_equal(changed, images).equal


def test_match_graded():
    A = QGHA(1 / p, t.scale(p), (t * t).scale(c))
    assert match_jacobian(A).verdict == "graded_CY_witness"


def test_match_deformed():
    A = QGHA(1 / p, t.scale(p) + k, (t * t).scale(c) + t.scale(d) + e)
    rep = match_jacobian(A)
    assert rep.verdict == "CY_witness_via_PBW_deformation"
    assert rep.span_check["equal"]
    assert parse_element(rep.potential, GENS, ["p", "c", "d", "e", "k"]) == deformed_potential(p, c, k, d, e)


def test_printed_correction_works_only_at_p_minus_one():
    A = QGHA(1 / p, t.scale(p) + k, (t * t).scale(c) + t.scale(d) + e)
    lit = cubic_potential(p, c) - quadratic_correction_as_printed(k, d, e)
    assert not span_equal(jacobian_relations(lit), A.relations()).equal
    B = QGHA(-1, -t + k, (t * t).scale(c) + t.scale(d) + e)
    lit = cubic_potential(-1, c) - quadratic_correction_as_printed(k, d, e)
    assert span_equal(jacobian_relations(lit), B.relations()).equal


def test_no_witness():
    assert match_jacobian(QGHA(Scalar.param("q"), t * t, t)).verdict == "no_witness"
    assert match_jacobian(QGHA(2, t.scale(p), t)).verdict == "no_witness"


def test_corollaries():
    assert match_jacobian(to_qgha({"family": "quantum_heisenberg", "q": "q"})).verdict != "no_witness"
    assert match_jacobian(to_qgha({"family": "gha", "f": "t + k", "params": ["k"]})).verdict != "no_witness"
