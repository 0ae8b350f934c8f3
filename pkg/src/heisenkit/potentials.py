"""Cyclic derivatives, Jacobian presentations and Calabi-Yau potential witnesses."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .engine import QGHA
from .freealg import FreeElement, Presentation, SpanComparison, parse_element, span_equal
from .scalars import Scalar, random_rational

__all__ = [
    "PotentialReport",
    "cubic_potential",
    "cyclic_derivative",
    "deformed_potential",
    "jacobian_presentation",
    "jacobian_relations",
    "linear_change",
    "match_jacobian",
    "quadratic_correction",
    "quadratic_correction_as_printed",
]

GENS = ("t", "x", "y")
CAVEAT = ("certifies that the relations come from the potential; the Calabi-Yau conclusion "
          "additionally assumes char K not in {2, 3}")


def cyclic_derivative(phi: FreeElement, v: str) -> FreeElement:
    """Sum of ``b a`` over every factorization ``w = a v b`` of every word of phi."""
    k = phi.gens.index(v)
    out: dict = {}
    for w, c in phi.terms.items():
        for pos, letter in enumerate(w):
            if letter == k:
                nw = w[pos + 1:] + w[:pos]
                out[nw] = out[nw] + c if nw in out else c
    return FreeElement(phi.gens, out)


def jacobian_relations(phi: FreeElement) -> list[FreeElement]:
    return [cyclic_derivative(phi, v) for v in phi.gens]


def jacobian_presentation(phi: FreeElement) -> Presentation:
    return Presentation(list(phi.gens), jacobian_relations(phi))


def cubic_potential(p, c) -> FreeElement:
    """Degree-3 potential whose derivatives give ``H_{1/p}(p t, c t^2)``."""
    p, c = Scalar(p), Scalar(c)
    t, x, y = (FreeElement.gen(GENS, n) for n in GENS)
    return (x * y * t + y * t * x * p - t * x * y * p + y * x * t - x * t * y - t * y * x * p
            + (t * t * t) * (p * c / 3))


def quadratic_correction(p, k, d, e) -> FreeElement:
    """Lower-order part ``Phi'`` so that ``Phi3 - Phi'`` gives ``H_{1/p}(p t + k, c t^2 + d t + e)``."""
    p, k, d, e = (Scalar(v) for v in (p, k, d, e))
    t, x, y = (FreeElement.gen(GENS, n) for n in GENS)
    return x * y * k - (t * t) * (p * d / 2) - t * (p * e)


def quadratic_correction_as_printed(k, d, e) -> FreeElement:
    """``k x y + d t^2 / 2 + e t``: only yields the target relations when (1 + p)(d t + e) = 0."""
    k, d, e = (Scalar(v) for v in (k, d, e))
    t, x, y = (FreeElement.gen(GENS, n) for n in GENS)
    return x * y * k + (t * t) * (d / 2) + t * e


def deformed_potential(p, c, k, d, e) -> FreeElement:
    return cubic_potential(p, c) - quadratic_correction(p, k, d, e)


def linear_change(phi: FreeElement, matrix: Sequence[Sequence]) -> FreeElement:
    """Apply ``v_i -> sum_j matrix[i][j] v_j`` to every generator."""
    gens = [FreeElement.gen(phi.gens, n) for n in phi.gens]
    images = {}
    for name, row in zip(phi.gens, matrix):
        img = FreeElement(phi.gens)
        for g, a in zip(gens, row):
            if a != 0:
                img = img + g * a
        images[name] = img
    return phi.substitute(images)


def random_invertible(n: int, rng: random.Random) -> list[list[Fraction]]:
    from . import linalg
    while True:
        m = [[random_rational(rng, bound=5, max_den=3, nonzero=False) for _ in range(n)] for _ in range(n)]
        if linalg.rank(m) == n:
            return m


@dataclass
class PotentialReport:
    algebra: dict
    verdict: str
    hypotheses: dict
    potential: str | None = None
    derivatives: dict[str, str] = field(default_factory=dict)
    span_check: dict | None = None
    caveat: str = CAVEAT
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "verdict": self.verdict,
            "hypotheses": self.hypotheses,
            "potential": self.potential,
            "derivatives": self.derivatives,
            "span_check": self.span_check,
            "caveat": self.caveat,
            "notes": self.notes,
        }


def match_jacobian(A: QGHA) -> PotentialReport:
    """Build the witness potential for ``H_{1/p}(p t + k, c t^2 + d t + e)`` and certify it.

    The relations are compared with the potential's derivatives as spans,
    since the derivatives only agree with the defining relations up to scale.
    """
    f, g = A.f, A.g
    hyp = {
        "deg_f_is_1": f.degree() == 1,
        "deg_g_at_most_2": g.degree() <= 2,
        "q_times_p_is_1": f.degree() == 1 and A.q * f[1] == 1,
    }
    report = PotentialReport(A.to_dict(), "no_witness", hyp)
    if not all(hyp.values()):
        report.notes.append("hypotheses fail: need f = p t + k, deg g <= 2, q = 1/p")
        return report
    p, k = f[1], f[0]
    c, d, e = g[2], g[1], g[0]
    homogeneous = k == 0 and d == 0 and e == 0
    phi = cubic_potential(p, c) if homogeneous else deformed_potential(p, c, k, d, e)
    names = dict(zip(GENS, A.names))
    if A.names != GENS:
        phi = phi.rename(names)
    rels = jacobian_relations(phi)
    cmp: SpanComparison = span_equal(rels, A.relations())
    report.potential = str(phi)
    report.derivatives = {v: str(r) for v, r in zip(phi.gens, rels)}
    report.span_check = cmp.to_dict()
    if cmp.equal:
        report.verdict = "graded_CY_witness" if homogeneous else "CY_witness_via_PBW_deformation"
        if not homogeneous:
            report.notes.append("deformation part has degree 2, below the degree-3 leading potential")
    else:
        report.notes.append("derivative span differs from the relation span")
    return report
