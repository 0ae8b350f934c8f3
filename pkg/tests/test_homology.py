import random
from math import comb

import pytest

from heisenkit.engine import QGHA
from heisenkit.families import to_qgha
from heisenkit.freealg import Presentation, parse_element
from heisenkit.homology import (
    NotGraded,
    NotQuadratic,
    find_gradings,
    hilbert_dims,
    hilbert_dims_from_relations,
    koszul_identity,
    koszul_numeric_check,
    quadratic_dual_dims,
    series_coefficients,
)
from heisenkit.scalars import Scalar, TPoly

t = TPoly.t()
p, c = Scalar.params("p c")
HH = to_qgha({"family": "hayashi", "p": "p", "q": "q"})
GH = to_qgha({"family": "gaddis", "p": "p", "q": "q"})


def test_find_gradings():
    assert (1, 1, 1) in find_gradings(HH)
    g = find_gradings(GH)
    assert (1, 1, 2) in g and (1, 1, 1) not in g
    assert find_gradings(to_qgha({"family": "gha", "f": "t + 1"})) == []
    with pytest.raises(ValueError):
        find_gradings(HH, 0)


def test_hilbert_examples():
    assert hilbert_dims(HH, (1, 1, 1), 4) == [1, 3, 6, 10, 15]
    assert hilbert_dims(GH, (1, 1, 2), 4) == [1, 2, 4, 6, 9]
    assert hilbert_dims(HH, (1, 1, 1), 0) == [1]
    with pytest.raises(NotGraded):
        hilbert_dims(GH, (1, 1, 1), 3)


def test_hilbert_closed_forms():
    assert hilbert_dims(HH, (1, 1, 1), 12) == [comb(n + 2, 2) for n in range(13)]
    assert hilbert_dims(GH, (1, 1, 2), 12) == series_coefficients([1, 1, 2], 12)


@pytest.mark.parametrize("A, weights", [(HH, {"t": 1}), (GH, {"t": 2})])
def test_hilbert_matches_ideal_computation(A, weights):
    # the PBW count agrees with the codimension of the ideal slice in the free algebra
    point = {"p": 3, "q": -2}
    dims = hilbert_dims_from_relations(A.presentation(weights), 4, point)
    w = (1, 1, weights["t"])
    assert dims == hilbert_dims(A, w, 4)


def test_dual_dims():
    assert quadratic_dual_dims(HH, 6) == [1, 3, 3, 1, 0, 0, 0]
    A = QGHA(1 / p, t.scale(p), (t * t).scale(c))
    assert quadratic_dual_dims(A, 6, rng=random.Random(3)) == [1, 3, 3, 1, 0, 0, 0]
    assert quadratic_dual_dims(HH, 4, mode="symbolic") == [1, 3, 3, 1, 0]


def test_dual_of_polynomial_ring_is_exterior():
    gens = ("x", "y", "t")
    rels = [parse_element(s, gens) for s in ("x*y - y*x", "x*t - t*x", "y*t - t*y")]
    assert quadratic_dual_dims(Presentation(list(gens), rels), 5) == [1, 3, 3, 1, 0, 0]


def test_dual_of_free_algebra():
    assert quadratic_dual_dims(Presentation(["x", "y"], []), 3) == [1, 2, 0, 0]


def test_not_quadratic():
    with pytest.raises(NotQuadratic):
        quadratic_dual_dims(GH, 3)


def test_symbolic_limit():
    with pytest.raises(ValueError):
        quadratic_dual_dims(HH, 5, mode="symbolic")


def test_koszul_check():
    rep = koszul_numeric_check(HH, 6)
    assert rep.verdict == "consistent" and rep.residuals == [0] * 7
    assert len(rep.trials) == 3


def test_koszul_injected_fault():
    rep = koszul_numeric_check(HH, 6, dual_override=[1, 3, 4, 1])
    assert rep.verdict == "inconsistent" and rep.first_failure == 2


def test_koszul_identity_pure():
    assert koszul_identity([1, 3, 6, 10], [1, 3, 3, 1], 3) == [0, 0, 0, 0]
