import json
from fractions import Fraction

import pytest

from heisenkit.engine import QGHA, normal_form
from heisenkit.families import FamilySpec, gha_iso_to_gaddis, to_qgha, translate_iso
from heisenkit.freealg import parse_element
from heisenkit.homology import hilbert_dims
from heisenkit.morphisms import (
    GenMap,
    centrality_of,
    compose,
    identity_map,
    rep_variety_shape,
    scan_diagonal_maps,
    translation_hom,
    translation_inverse,
    verify_hom,
    verify_inverse_pair,
)
from heisenkit.scalars import Scalar, TPoly

t = TPoly.t()
l, m, p, q, k = Scalar.params("l m p q k")
Hl = QGHA(1, t.scale(l), t.scale(l) - t)
Hlm = QGHA(1, t.scale(l) + m, t.scale(l) + m - t)


def test_psi_and_inverse():
    psi = GenMap(Hl, Hlm, {"t": "t + {m/(l-1)}", "x": "x", "y": "y"})
    inv = GenMap(Hlm, Hl, {"t": "t - {m/(l-1)}", "x": "x", "y": "y"})
    assert verify_hom(psi) and verify_hom(inv)
    assert verify_inverse_pair(psi, inv)


def test_broken_map_reports_relation():
    bad = GenMap(Hl, Hlm, {"t": "t", "x": "x", "y": "y"})
    res = verify_hom(bad)
    assert not res.valid and res.residual not in (None, "0")


def test_phi_gaddis_to_gha():
    r = gha_iso_to_gaddis(1, q)
    G = to_qgha(FamilySpec("gaddis", {"p": 1, "q": q})).with_names(("T", "X", "Y"))
    H = to_qgha(r.target)
    phi, phi_inv = GenMap(G, H, r.images), GenMap(H, G, r.inverse_images)
    assert verify_hom(phi) and verify_hom(phi_inv) and verify_inverse_pair(phi, phi_inv)


def test_identity():
    A = QGHA(q, t * t + k, t)
    assert verify_hom(identity_map(A)) and verify_inverse_pair(identity_map(A), identity_map(A))


def test_translation_examples():
    A = QGHA(q, t.scale(p), (t * t).scale(Scalar.param("c")))
    alpha = k / (1 - p)
    T = translation_hom(A, alpha)
    assert T.target.f == t.scale(p) + k
    assert verify_hom(T) and verify_inverse_pair(T, translation_inverse(A, alpha))
    assert translation_hom(A, 0).target.same_structure(A)
    B = QGHA(1, t * t, TPoly())
    T1 = translation_hom(B, 1)
    assert T1.target.f == (t - 1) * (t - 1) + 1 and verify_hom(T1)


def test_functoriality():
    A = QGHA(q, t * t + k, t)
    a, b = Scalar.params("a b")
    C = compose(translation_hom(A, a), translation_hom(translate_iso(A, a), b))
    assert verify_hom(C) and C.target.same_structure(translate_iso(A, a + b))


def test_graded_slices_agree_under_isomorphism():
    A = QGHA(q, t.scale(p), t * t)
    B = translate_iso(A, 0)
    assert hilbert_dims(A, (1, 1, 1), 5) == hilbert_dims(B, (1, 1, 1), 5)


def test_rep_variety_shapes():
    h = rep_variety_shape(Hl, point={"l": Fraction(3)})
    assert h.components == [{"gamma": "0"}] and h.dimensions == [2]
    g = rep_variety_shape(FamilySpec("gaddis", {"p": p, "q": q}).presentation(),
                          point={"p": Fraction(2), "q": Fraction(5)})
    assert g.dimensions == [1, 1]
    assert {frozenset(c) for c in g.components} == {frozenset({"alpha", "gamma"}), frozenset({"beta", "gamma"})}


def test_centrality():
    assert centrality_of(to_qgha(FamilySpec("gaddis", {"p": 1, "q": q})), "t")
    assert not centrality_of(Hl, "t")


def test_diagonal_scan_finds_nothing():
    src = to_qgha(FamilySpec("gaddis", {"p": 1, "q": 1})).with_names(("T", "X", "Y"))
    res = scan_diagonal_maps(src, QGHA(1, t.scale(Fraction(3)), t.scale(Fraction(2))), grid=(-1, 1, 2))
    assert res["tried"] == 54 and res["passing"] == []


def test_genmap_json():
    data = {"source": {"q": "1", "f": "l*t", "g": "l*t - t", "params": ["l", "m"]},
            "target": {"q": "1", "f": "l*t + m", "g": "l*t + m - t", "params": ["l", "m"]},
            "images": {"t": "t + {m/(l-1)}", "x": "x", "y": "y"}}
    g = GenMap.from_json(json.dumps(data))
    assert verify_hom(g)
    assert GenMap.from_dict({"source": data["source"], "target": data["target"], "images": g.to_dict()["images"]})


def test_missing_image():
    with pytest.raises(ValueError):
        GenMap(Hl, Hlm, {"t": "t"})
