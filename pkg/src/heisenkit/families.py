"""Named Heisenberg-type families, their qGHA form, and classification predicates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .engine import QGHA
from .freealg import FreeElement, Presentation
from .parsing import parse_scalar, parse_tpoly
from .scalars import DivisionByZero, Scalar, TPoly, as_coeff, coeff_str

__all__ = [
    "FAMILIES",
    "ClassificationReport",
    "FamilySpec",
    "ZeroParameter",
    "classify",
    "from_downup",
    "gaddis_iso_orbit",
    "gha_iso_to_gaddis",
    "to_qgha",
    "translate_iso",
]

# family tag -> (parameter fields, which of them are polynomials in t)
FAMILIES = {
    "heisenberg": ((), ()),
    "quantum_heisenberg": (("q",), ()),
    "gaddis": (("p", "q"), ()),
    "hayashi": (("p", "q"), ()),
    "gha": (("f",), ("f",)),
    "qgha": (("q", "f", "g"), ("f", "g")),
    "downup": (("g", "p1", "p2", "p3"), ("g",)),
}

# deformation slot for the two-parameter families follows the relation yx - q xy
GADDIS_TEXT_NOTE = (
    "The alternative literature convention sets the deformation parameter to p; "
    "matching yx - q*x*y = t against yx - q*x*y = g puts q there instead, which is what is used."
)


class ZeroParameter(ValueError):
    pass


@dataclass
class FamilySpec:
    family: str
    values: dict = field(default_factory=dict)
    params: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; known: {sorted(FAMILIES)}")
        fields, polys = FAMILIES[self.family]
        missing = [k for k in fields if k not in self.values]
        if missing:
            raise ValueError(f"family {self.family!r} needs {missing}")
        extra = set(self.values) - set(fields)
        if extra:
            raise ValueError(f"unexpected fields {sorted(extra)} for family {self.family!r}")
        parsed = {}
        for k in fields:
            v = self.values[k]
            if isinstance(v, (Scalar, TPoly)):
                parsed[k] = v if (k not in polys or isinstance(v, TPoly)) else TPoly.const(v)
            elif k in polys:
                parsed[k] = parse_tpoly(v, self.params)
            else:
                parsed[k] = parse_scalar(v, self.params) if isinstance(v, str) else Scalar(v)
        self.values = parsed

    @classmethod
    def from_dict(cls, data: Mapping) -> "FamilySpec":
        data = dict(data)
        family = data.pop("family", None)
        if family is None:
            raise ValueError("algebra spec needs a 'family' field")
        params = data.pop("params", None)
        return cls(family, data, tuple(params) if params is not None else None)

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        out = {"family": self.family}
        for k, v in self.values.items():
            out[k] = str(v)
        if self.params is not None:
            out["params"] = list(self.params)
        return out

    def __getitem__(self, key):
        return self.values[key]

    def generator_names(self) -> tuple[str, str, str]:
        """Native names for the (t, x, y) slots."""
        if self.family == "downup":
            return ("t", "u", "d")
        return ("t", "x", "y")

    def presentation(self) -> Presentation:
        """The defining relations exactly as the family is usually written."""
        v = self.values
        names = self.generator_names()
        t, x, y = (FreeElement.gen(names, n) for n in names)

        def tp(a: TPoly) -> FreeElement:
            return FreeElement(names, {(0,) * j: c for j, c in enumerate(a.coeffs)})

        if self.family == "heisenberg":
            rels = [t * x - x * t, y * t - t * y, y * x - x * y - t]
        elif self.family == "quantum_heisenberg":
            q = v["q"]
            rels = [y * x - x * y * q - t, x * t - t * x * q, y * t - t * y * q**-1]
        elif self.family in ("gaddis", "hayashi"):
            p, q = v["p"], v["q"]
            tail = t if self.family == "gaddis" else t * t
            rels = [y * x - x * y * q - tail, x * t - t * x * p, y * t - t * y * p**-1]
        elif self.family == "gha":
            f = tp(v["f"])
            rels = [t * x - x * f, y * t - f * y, y * x - x * y - f + t]
        elif self.family == "qgha":
            f, g = tp(v["f"]), tp(v["g"])
            rels = [t * x - x * f, y * t - f * y, y * x - x * y * v["q"] - g]
        else:  # downup: d t = p1 t d - p3 d, t u = p1 u t - p3 u, d u - p2 u d + g = 0
            d, u = y, x
            p1, p2, p3 = v["p1"], v["p2"], v["p3"]
            g = tp(v["g"])
            rels = [d * t - t * d * p1 + d * p3, t * u - u * t * p1 + u * p3, d * u - u * d * p2 + g]
        return Presentation(list(names), rels)


def _as_scalar(v):
    return v if isinstance(v, Scalar) else Scalar(v)


def to_qgha(spec: FamilySpec | Mapping, **kwargs) -> QGHA:
    """Canonical ``H_q(f, g)`` for a family; generators keep the family's names."""
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec.from_dict(spec)
    v = spec.values
    t = TPoly.t()
    fam = spec.family
    if fam == "heisenberg":
        q, f, g = 1, t, t
    elif fam == "quantum_heisenberg":
        q, f, g = v["q"], t.scale(_as_scalar(v["q"]) ** -1), t
    elif fam == "gaddis":
        q, f, g = v["q"], t.scale(_as_scalar(v["p"]) ** -1), t
    elif fam == "hayashi":
        q, f, g = v["q"], t.scale(_as_scalar(v["p"]) ** -1), t * t
    elif fam == "gha":
        q, f, g = 1, v["f"], v["f"] - t
    elif fam == "qgha":
        q, f, g = v["q"], v["f"], v["g"]
    else:
        q, f, g = v["p2"], t.scale(v["p1"]) - v["p3"], -v["g"]
    return QGHA(q, f, g, names=spec.generator_names(), **kwargs)


def from_downup(A: QGHA) -> FamilySpec:
    """Inverse correspondence for affine f = a t + b: ``L(-g, a, q, -b)``."""
    if A.f.degree() > 1:
        raise ValueError("only affine f corresponds to a generalized down-up algebra")
    a, b = A.f[1], A.f[0]
    return FamilySpec("downup", {"g": -A.g, "p1": _as_scalar(a), "p2": _as_scalar(A.q), "p3": -_as_scalar(b)})


def translate_iso(A: QGHA, alpha) -> QGHA:
    """``H_q(f, g) -> H_q(f(t - alpha) + alpha, g(t - alpha))``."""
    shift = TPoly.t() - as_coeff(alpha)
    return QGHA(A.q, A.f.compose(shift) + as_coeff(alpha), A.g.compose(shift), A.names,
                A.cache_size, A.term_cap)


# classification -------------------------------------------------------------


def _nonzero_warning(label: str, c) -> str | None:
    if isinstance(c, Scalar) and not c.is_rational():
        num = c.numerator_str()
        if any(ch.isalpha() for ch in num):
            return f"{label} holds generically; fails where {num} = 0"
    return None


@dataclass
class ClassificationReport:
    algebra: dict
    skew_pbw_over_Kt: bool
    skew_pbw_over_K: bool
    noetherian_gha: bool | None
    graded_with_weights: list[tuple[int, int, int]]
    cy_dimension3_family: bool
    quantum_polynomial: bool
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "skew_pbw_over_Kt": self.skew_pbw_over_Kt,
            "skew_pbw_over_K": self.skew_pbw_over_K,
            "noetherian_gha": self.noetherian_gha,
            "graded_with_weights": [list(w) for w in self.graded_with_weights],
            "cy_dimension3_family": self.cy_dimension3_family,
            "quantum_polynomial": self.quantum_polynomial,
            "warnings": self.warnings,
        }


def is_gha_shape(A: QGHA) -> bool:
    return A.q == 1 and A.g == A.f - TPoly.t()


def cy_hypotheses(A: QGHA) -> bool:
    """f = p t + k with p != 0, deg g <= 2 and q = 1/p."""
    return A.f.degree() == 1 and A.g.degree() <= 2 and A.q * A.f[1] == 1


def classify(A: QGHA, max_weight: int = 3) -> ClassificationReport:
    from .homology import find_gradings

    deg_f, deg_g = A.f.degree(), A.g.degree()
    q_nonzero = A.q != 0
    warnings = []
    if q_nonzero:
        w = _nonzero_warning("q != 0", A.q)
        if w:
            warnings.append(w)
    if deg_f >= 1:
        w = _nonzero_warning("leading coefficient of f != 0", A.f.lc())
        if w:
            warnings.append(w)
    return ClassificationReport(
        algebra=A.to_dict(),
        skew_pbw_over_Kt=deg_f == 1 and q_nonzero,
        skew_pbw_over_K=deg_f == 1 and deg_g <= 1 and q_nonzero,
        noetherian_gha=(deg_f == 1) if is_gha_shape(A) else None,
        graded_with_weights=find_gradings(A, max_weight),
        cy_dimension3_family=cy_hypotheses(A),
        quantum_polynomial=(not A.g and deg_f == 1 and A.f[0] == 0 and q_nonzero),
        warnings=warnings,
    )


# isomorphisms among the named families ------------------------------------


def gaddis_iso_orbit(p, q) -> list[tuple]:
    """Parameter pairs (p', q') with GH_{p',q'} isomorphic to GH_{p,q}, deduplicated."""
    p, q = as_coeff(p), as_coeff(q)
    if p == 0 or q == 0:
        raise ZeroParameter("p and q must be nonzero")
    out = []
    for pair in ((p, q), (q, p), (1 / p, 1 / q), (1 / q, 1 / p)):
        if pair not in out:
            out.append(pair)
    return out


@dataclass
class GaddisGHAResult:
    isomorphic: bool
    target: FamilySpec | None = None
    images: dict[str, str] = field(default_factory=dict)
    inverse_images: dict[str, str] = field(default_factory=dict)
    reason: str = ""
    obstruction: str | None = None

    def to_dict(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "target": self.target.to_dict() if self.target else None,
            "images": self.images,
            "inverse_images": self.inverse_images,
            "reason": self.reason,
            "obstruction": self.obstruction,
        }


def gha_iso_to_gaddis(p, q) -> GaddisGHAResult:
    """Decide whether GH_{p,q} is a generalized Heisenberg algebra, with witnesses.

    Source generators are named X, Y, T; target generators x, y, t.
    Parameter values are compared symbolically (``p == 1`` means identically 1).
    """
    p, q = _as_scalar(as_coeff(p)), _as_scalar(as_coeff(q))
    if p == 0 or q == 0:
        raise ZeroParameter("p and q must be nonzero")
    if p == 1 and q == 1:
        return GaddisGHAResult(
            False,
            reason="GH_{1,1} is the enveloping algebra of the Heisenberg Lie algebra; "
                   "H(t) is commutative and H(t+mu) has no nonzero commutative quotient, "
                   "while H(lambda t), lambda != 1, has t non-central although t is central in GH_{1,1}",
            obstruction="centrality",
        )
    if p == 1:
        inv = q - 1
        return GaddisGHAResult(
            True,
            target=FamilySpec("gha", {"f": TPoly.t().scale(q)}),
            images={"X": f"{{{1 / inv}}}*x", "Y": "y", "T": "t - x*y"},
            inverse_images={"x": f"{{{inv}}}*X", "y": "Y", "t": f"T + {{{inv}}}*X*Y"},
            reason="p = 1, q != 1",
        )
    if q == 1:
        # GH_{p,1} -> GH_{1,p} -> H(pt) composed: swap x and y, rescale t
        return GaddisGHAResult(
            True,
            target=FamilySpec("gha", {"f": TPoly.t().scale(p)}),
            images={"X": "y", "Y": "x", "T": f"{{{1 - p}}}*t"},
            inverse_images={"x": "Y", "y": "X", "t": f"{{{1 / (1 - p)}}}*T"},
            reason="q = 1, p != 1 (via the orbit swap (p, q) -> (q, p))",
        )
    return GaddisGHAResult(
        False,
        reason="for p, q != 1 the one-dimensional representations of GH_{p,q} form the reducible "
               "curve {alpha*beta = 0, gamma = 0}, those of H(lambda t) form the plane {gamma = 0}",
        obstruction="rep-variety",
    )
