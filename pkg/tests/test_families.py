import json
from fractions import Fraction

import pytest

from heisenkit.engine import QGHA, normal_form
from heisenkit.families import (
    FamilySpec,
    ZeroParameter,
    classify,
    from_downup,
    gaddis_iso_orbit,
    gha_iso_to_gaddis,
    to_qgha,
    translate_iso,
)
from heisenkit.scalars import Scalar, TPoly

t = TPoly.t()
p, q, k, c, d, e = Scalar.params("p q k c d e")

SPECS = [
    {"family": "heisenberg"},
    {"family": "quantum_heisenberg", "q": "q"},
    {"family": "gaddis", "p": "p", "q": "q"},
    {"family": "hayashi", "p": "p", "q": "q"},
    {"family": "gha", "f": "a*t^2 + b", "params": ["a", "b"]},
    {"family": "qgha", "q": "p^-1", "f": "p*t+k", "g": "c*t^2+d*t+e", "params": ["p", "k", "c", "d", "e"]},
    {"family": "downup", "g": "a*t^2 + b", "p1": "p1", "p2": "p2", "p3": "p3"},
]


@pytest.mark.parametrize("spec", SPECS, ids=[s["family"] for s in SPECS])
def test_native_relations_normalize_to_zero(spec):
    fs = FamilySpec.from_dict(spec)
    A = to_qgha(fs)
    for r in fs.presentation().relations:
        assert normal_form(r, A).is_zero()


def test_canonical_triples():
    assert to_qgha({"family": "heisenberg"}).same_structure(QGHA(1, t, t))
    G = to_qgha({"family": "gaddis", "p": "p", "q": "q"})
    assert G.q == q and G.f == t.scale(1 / p) and G.g == t
    D = to_qgha({"family": "downup", "g": "t", "p1": "a", "p2": "b", "p3": "c"})
    a, b = Scalar.params("a b")
    assert D.q == b and D.f == t.scale(a) - c and D.g == -t and D.names == ("t", "u", "d")


def test_downup_round_trip():
    spec = FamilySpec.from_dict({"family": "downup", "g": "c*t^2", "p1": "p", "p2": "q", "p3": "k"})
    back = from_downup(to_qgha(spec))
    assert all(back[key] == spec[key] for key in ("g", "p1", "p2", "p3"))


def test_spec_json():
    fs = FamilySpec.from_json(json.dumps(SPECS[5]))
    assert FamilySpec.from_dict(fs.to_dict()).to_dict() == fs.to_dict()
    with pytest.raises(ValueError):
        FamilySpec.from_dict({"family": "nope"})
    with pytest.raises(ValueError):
        FamilySpec.from_dict({"family": "gaddis", "p": "p"})


def test_translate_iso():
    A = QGHA(q, t.scale(p), (t * t).scale(c))
    alpha = k / (1 - p)
    B = translate_iso(A, alpha)
    assert B.f == t.scale(p) + k
    assert B.g == (t - alpha).__mul__(t - alpha).scale(c)
    assert translate_iso(A, 0).same_structure(A)
    H = translate_iso(QGHA(1, t, t), Scalar.param("a"))
    assert H.f == t and H.g == t - Scalar.param("a")


def test_translate_composition():
    A = QGHA(q, t * t + k, t)
    a, b = Scalar.params("a b")
    assert translate_iso(translate_iso(A, a), b).same_structure(translate_iso(A, a + b))


def test_classify_examples():
    r = classify(QGHA(q, t.scale(p) + e, t.scale(c) + d))
    assert r.skew_pbw_over_K and r.skew_pbw_over_Kt
    r = classify(to_qgha({"family": "gha", "f": "t^2"}))
    assert r.noetherian_gha is False and not r.skew_pbw_over_Kt
    r = classify(QGHA(1 / p, t.scale(p) + k, (t * t).scale(c) + t.scale(d) + e))
    assert r.cy_dimension3_family
    assert classify(QGHA(q, t.scale(p), TPoly())).quantum_polynomial
    assert any("q" in w for w in classify(QGHA(q, t, t)).warnings)


def test_gaddis_orbit():
    assert len(gaddis_iso_orbit(p, q)) == 4
    assert gaddis_iso_orbit(1, 1) == [(1, 1)]
    orbit = gaddis_iso_orbit(2, Fraction(1, 2))
    assert sorted(orbit) == [(Fraction(1, 2), 2), (2, Fraction(1, 2))]
    with pytest.raises(ZeroParameter):
        gaddis_iso_orbit(0, 1)


def test_gha_iso_to_gaddis_cases():
    r = gha_iso_to_gaddis(1, q)
    assert r.isomorphic and r.images == {"X": "{1/(q - 1)}*x", "Y": "y", "T": "t - x*y"}
    assert gha_iso_to_gaddis(p, 1).isomorphic
    r11 = gha_iso_to_gaddis(1, 1)
    assert not r11.isomorphic and r11.obstruction == "centrality"
    assert gha_iso_to_gaddis(p, q).obstruction == "rep-variety"
