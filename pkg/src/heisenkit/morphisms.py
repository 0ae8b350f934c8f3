"""Algebra maps given on generators, their verification, and the isomorphism fixtures."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping

import sympy

from .engine import NormalElement, QGHA, nmul, normal_form, one_dim_rep_constraints, rep_variables
from .families import FamilySpec, gha_iso_to_gaddis, to_qgha, translate_iso
from .freealg import FreeElement, Presentation, parse_element
from .parsing import parse_scalar, parse_tpoly
from .scalars import Scalar, TPoly, as_coeff, coeff_str, random_assignment

__all__ = [
    "GenMap",
    "HomCheck",
    "centrality_of",
    "compose",
    "identity_map",
    "rep_variety_shape",
    "scan_diagonal_maps",
    "translation_hom",
    "verify_hom",
    "verify_inverse_pair",
]


def _source_presentation(src) -> Presentation:
    if isinstance(src, QGHA):
        return src.presentation()
    if isinstance(src, FamilySpec):
        return src.presentation()
    return src


def algebra_from_dict(data: Mapping) -> QGHA:
    """A family spec or an explicit ``{"q", "f", "g"}`` triple, with optional ``generators``."""
    data = dict(data)
    names = data.pop("generators", None)
    if "family" in data:
        A = to_qgha(data)
    else:
        params = data.get("params")
        q = data["q"]
        q = parse_scalar(q, params) if isinstance(q, str) else Scalar(q)
        f, g = (parse_tpoly(data[k], params) if isinstance(data[k], str) else TPoly(data[k]) for k in ("f", "g"))
        A = QGHA(q, f, g)
    return A.with_names(tuple(names)) if names else A


@dataclass
class GenMap:
    """Algebra map ``source -> target`` determined by generator images."""

    source: QGHA | Presentation | FamilySpec
    target: QGHA
    images: dict[str, FreeElement]

    def __post_init__(self):
        names = _source_presentation(self.source).names
        parsed = {}
        for g, img in self.images.items():
            if isinstance(img, str):
                img = parse_element(img, self.target.names)
            parsed[g] = img
        missing = [g for g in names if g not in parsed]
        if missing:
            raise ValueError(f"no image for generators {missing}")
        self.images = parsed

    @property
    def source_names(self) -> tuple[str, ...]:
        return _source_presentation(self.source).names

    def image(self, e: FreeElement) -> NormalElement:
        imgs = {g: normal_form(self.images[g], self.target) for g in e.gens}
        return e.substitute(imgs, one=self.target.one())

    def to_dict(self) -> dict:
        src = self.source.to_dict() if hasattr(self.source, "to_dict") else str(self.source)
        return {"source": src, "target": self.target.to_dict(),
                "images": {g: str(self.images[g]) for g in self.source_names}}

    @classmethod
    def from_dict(cls, data: Mapping) -> "GenMap":
        return cls(algebra_from_dict(data["source"]), algebra_from_dict(data["target"]), dict(data["images"]))

    @classmethod
    def from_json(cls, text: str) -> "GenMap":
        return cls.from_dict(json.loads(text))


@dataclass
class HomCheck:
    valid: bool
    failing_relation: str | None = None
    residual: str | None = None
    checked: int = 0

    def __bool__(self):
        return self.valid

    def to_dict(self) -> dict:
        return {"valid": self.valid, "failing_relation": self.failing_relation,
                "residual": self.residual, "relations_checked": self.checked}


def verify_hom(m: GenMap) -> HomCheck:
    """Every source relation must map to 0 in the target."""
    rels = _source_presentation(m.source).relations
    for n, r in enumerate(rels):
        img = m.image(r)
        if not img.is_zero():
            return HomCheck(False, str(r), str(img), n + 1)
    return HomCheck(True, checked=len(rels))


def _composite_fixes_generators(m: GenMap, back: GenMap) -> bool:
    """``back . m`` sends every source generator of m to itself."""
    src = m.source
    if not isinstance(src, QGHA):
        src = to_qgha(src) if isinstance(src, FamilySpec) else None
    if src is None:
        raise TypeError("inverse-pair checks need a QGHA source")
    for g in m.source_names:
        there = m.images[g]
        imgs = {h: normal_form(back.images[h], src) for h in there.gens}
        if there.substitute(imgs, one=src.one()) != normal_form(FreeElement.gen(src.names, g), src):
            return False
    return True


def verify_inverse_pair(m: GenMap, minv: GenMap) -> bool:
    return _composite_fixes_generators(m, minv) and _composite_fixes_generators(minv, m)


def compose(first: GenMap, second: GenMap) -> GenMap:
    """``second . first``: apply ``first`` then ``second``."""
    images = {}
    for g, img in first.images.items():
        sub = {h: second.images[h] for h in img.gens}
        images[g] = img.substitute(sub, one=FreeElement.const(second.target.names, 1))
    return GenMap(first.source, second.target, images)


def identity_map(A: QGHA) -> GenMap:
    return GenMap(A, A, {g: FreeElement.gen(A.names, g) for g in A.names})


def translation_hom(A: QGHA, alpha) -> GenMap:
    """Isomorphism ``A -> translate_iso(A, alpha)`` with t -> t - alpha, x -> x, y -> y."""
    alpha = as_coeff(alpha)
    B = translate_iso(A, alpha)
    t, x, y = B.names
    images = {A.names[0]: FreeElement.gen(B.names, t) - alpha,
              A.names[1]: FreeElement.gen(B.names, x),
              A.names[2]: FreeElement.gen(B.names, y)}
    return GenMap(A, B, images)


def translation_inverse(A: QGHA, alpha) -> GenMap:
    alpha = as_coeff(alpha)
    B = translate_iso(A, alpha)
    images = {B.names[0]: FreeElement.gen(A.names, A.names[0]) + alpha,
              B.names[1]: FreeElement.gen(A.names, A.names[1]),
              B.names[2]: FreeElement.gen(A.names, A.names[2])}
    return GenMap(B, A, images)


# obstruction fixtures ------------------------------------------------------------


def _to_sympy(s: Scalar):
    names = {n: sympy.Symbol(n) for n in s.parameters}
    return sympy.sympify(str(s).replace("^", "**"), locals=names)


def _contained(small: dict, big: dict, syms) -> bool:
    return all(sympy.simplify((v - e).subs(small, simultaneous=True)) == 0 for v, e in big.items())


def _maximal_components(sols: list[dict], syms) -> list[dict]:
    """Drop solution families contained in another one (sympy lists overlaps separately)."""
    keep = []
    for i, s in enumerate(sols):
        dominated = False
        for j, other in enumerate(sols):
            if i == j or not _contained(s, other, syms):
                continue
            if not _contained(other, s, syms) or j < i:
                dominated = True
                break
        if not dominated:
            keep.append(s)
    return keep


@dataclass
class RepShape:
    constraints: list[str]
    components: list[dict[str, str]]
    dimensions: list[int]
    point: dict[str, str]

    def to_dict(self) -> dict:
        return {"constraints": self.constraints, "components": self.components,
                "dimensions": self.dimensions, "point": self.point}


def rep_variety_shape(P: Presentation | QGHA, point: Mapping | None = None, rng=None) -> RepShape:
    """Components of the one-dimensional representation variety.

    Parameters other than the representation variables are fixed at
    ``point`` (random if omitted); sympy solves the resulting polynomial
    system and each solution family is reported with its dimension.
    """
    cons = one_dim_rep_constraints(P)
    names = P.names if isinstance(P, Presentation) else P.names
    var = rep_variables(names)
    rep_vars = set(var.values())
    params = set()
    for c in cons:
        params |= c.parameters - rep_vars
    if point is None:
        point = random_assignment(params, rng or random.Random(0)) if params else {}
    syms = [sympy.Symbol(var[n]) for n in names]
    subs = {sympy.Symbol(k): sympy.Rational(v.numerator, v.denominator) for k, v in point.items()}
    eqs = [sympy.numer(sympy.together(_to_sympy(c).subs(subs))) for c in cons]
    eqs = [e for e in eqs if e != 0]
    sols = sympy.solve(eqs, syms, dict=True) if eqs else [{}]
    sols = _maximal_components(sols, syms)
    comps, dims = [], []
    for s in sols:
        comps.append({str(k): str(v) for k, v in sorted(s.items(), key=lambda kv: str(kv[0]))})
        dims.append(len(syms) - len(s))
    order = sorted(range(len(comps)), key=lambda i: json.dumps(comps[i], sort_keys=True))
    return RepShape([str(c) for c in cons], [comps[i] for i in order], [dims[i] for i in order],
                    {k: str(v) for k, v in sorted(point.items())})


def centrality_of(A: QGHA, name: str) -> bool:
    """Whether a generator commutes with every generator (hence is central)."""
    z = normal_form(FreeElement.gen(A.names, name), A)
    for g in A.names:
        h = normal_form(FreeElement.gen(A.names, g), A)
        if not (nmul(z, h) - nmul(h, z)).is_zero():
            return False
    return True


def scan_diagonal_maps(source, target: QGHA, grid=(-2, -1, Fraction(1, 2), 1, 2, 3)) -> dict:
    """Try every ``X -> a x, Y -> b y, T -> c t`` (and with x, y swapped) over ``grid``.

    Returns the number of candidates and those passing verify_hom.
    """
    names = _source_presentation(source).names
    tn, xn, yn = target.names
    gx, gy, gt = (FreeElement.gen(target.names, n) for n in (xn, yn, tn))
    tried, passing = 0, []
    for swap in (False, True):
        for a, b, c in product(grid, repeat=3):
            ix, iy = (gy, gx) if swap else (gx, gy)
            m = GenMap(source, target, {names[0]: gt * c, names[1]: ix * a, names[2]: iy * b})
            tried += 1
            if verify_hom(m):
                passing.append({"swap": swap, "a": str(a), "b": str(b), "c": str(c)})
    return {"tried": tried, "passing": passing}
