"""Gradings, Hilbert functions, quadratic duals and the numerical Koszul test."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from . import linalg
from .engine import QGHA
from .freealg import NotHomogeneous, Presentation, grade_of
from .scalars import random_assignment

__all__ = [
    "KoszulReport",
    "NotGraded",
    "NotQuadratic",
    "find_gradings",
    "hilbert_dims",
    "hilbert_dims_from_relations",
    "koszul_identity",
    "koszul_numeric_check",
    "quadratic_dual_dims",
    "series_coefficients",
]


class NotGraded(ValueError):
    pass


class NotQuadratic(ValueError):
    pass


def _weight_map(A: QGHA, weights) -> dict[str, int]:
    """Accept a name->weight mapping or a ``(w_x, w_y, w_t)`` triple."""
    t, x, y = A.names
    if weights is None:
        return {t: 1, x: 1, y: 1}
    if isinstance(weights, Mapping):
        w = {t: 1, x: 1, y: 1}
        role = {"t": t, "x": x, "y": y}
        for k, v in weights.items():
            w[role.get(k, k) if k not in w else k] = int(v)
        return w
    wx, wy, wt = weights
    return {x: int(wx), y: int(wy), t: int(wt)}


def _homogeneous(rels, w) -> bool:
    return all(grade_of(r, w) is not NotHomogeneous for r in rels)


def find_gradings(A: QGHA, max_weight: int = 3) -> list[tuple[int, int, int]]:
    """Positive weight triples ``(w_x, w_y, w_t)`` making every relation homogeneous."""
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    t, x, y = A.names
    rels = A.relations()
    out = []
    for wx, wy, wt in product(range(1, max_weight + 1), repeat=3):
        if _homogeneous(rels, {x: wx, y: wy, t: wt}):
            out.append((wx, wy, wt))
    return out


def hilbert_dims(A: QGHA, weights=None, N: int = 6) -> list[int]:
    """``dim A_n`` for n = 0..N by counting PBW monomials of weighted degree n."""
    w = _weight_map(A, weights)
    if not _homogeneous(A.relations(), w):
        raise NotGraded(f"relations are not homogeneous for weights {w}")
    t, x, y = A.names
    dims = [0] * (N + 1)
    for i in range(N // w[x] + 1):
        for k in range((N - i * w[x]) // w[y] + 1):
            rest = N - i * w[x] - k * w[y]
            for j in range(rest // w[t] + 1):
                dims[i * w[x] + k * w[y] + j * w[t]] += 1
    return dims


def _words_of_degree(n: int, w: Sequence[int]) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for g, wg in enumerate(w):
        if wg <= n:
            out.extend((g,) + rest for rest in _words_of_degree(n - wg, w))
    return out


def hilbert_dims_from_relations(P: Presentation, N: int, point: Mapping | None = None) -> list[int]:
    """Independent Hilbert function of ``T(V)/(relations)`` via ideal slices.

    The degree-n slice of the ideal is spanned by ``u r v`` over words u, v
    and relations r; its codimension is ``dim A_n``.  Exponential in N, so
    only useful as a cross-check at small degree.
    """
    w = [P.weights[g] for g in P.names]
    rels = []
    for r in P.relations:
        d = grade_of(r, P.weights)
        if d is NotHomogeneous:
            raise NotGraded(f"relation {r} is not homogeneous")
        rels.append((d, r.specialize(point) if point else r))
    dims = []
    for n in range(N + 1):
        words = _words_of_degree(n, w)
        index = {wd: i for i, wd in enumerate(words)}
        rows = []
        for d, r in rels:
            for a in range(n - d + 1):
                for u in _words_of_degree(a, w):
                    for v in _words_of_degree(n - d - a, w):
                        row = [Fraction(0)] * len(words)
                        for word, c in r.terms.items():
                            row[index[u + word + v]] += c
                        rows.append(row)
        dims.append(len(words) - (linalg.rank(rows) if rows else 0))
    return dims


def series_coefficients(factors: Sequence[int], N: int) -> list[int]:
    """Coefficients of ``prod 1/(1 - s^d)`` for d in ``factors`` up to s^N."""
    c = [1] + [0] * N
    for d in factors:
        for n in range(d, N + 1):
            c[n] += c[n - d]
    return c


def _quadratic_presentation(P) -> Presentation:
    if isinstance(P, QGHA):
        P = P.presentation()
    for r in P.relations:
        if any(len(word) != 2 for word in r.terms):
            raise NotQuadratic(f"relation {r} is not homogeneous quadratic")
    return P


def _dual_dims_exact(rels: list[list], m: int, N: int) -> list[int]:
    """dim of ``K_n = cap_i V^i (x) R (x) V^(n-2-i)``, which is ``dim (A^!)_n``."""
    dims = [1, m][: N + 1]
    if N < 2:
        return dims
    R, _ = linalg.rref(rels) if rels else ([], [])
    R = [r for r in R if any(c != 0 for c in r)]
    dims.append(len(R))
    perp = linalg.nullspace(R, m * m) if R else [
        [Fraction(int(i == j)) for i in range(m * m)] for j in range(m * m)]
    K = R
    for n in range(3, N + 1):
        if not K:
            dims.append(0)
            continue
        nb = len(K)
        unknowns = [(b, l) for b in range(nb) for l in range(m)]
        constraints = []
        for prefix in range(m ** (n - 2)):
            for phi in perp:
                row = []
                for b, l in unknowns:
                    vec = K[b]
                    row.append(sum((phi[a * m + l] * vec[prefix * m + a]
                                    for a in range(m) if phi[a * m + l] != 0 and vec[prefix * m + a] != 0),
                                   Fraction(0)))
                if any(c != 0 for c in row):
                    constraints.append(row)
        sols = linalg.nullspace(constraints, len(unknowns)) if constraints else [
            [Fraction(int(i == j)) for i in range(len(unknowns))] for j in range(len(unknowns))]
        newK = []
        for s in sols:
            v = [Fraction(0)] * (m ** n)
            for (b, l), c in zip(unknowns, s):
                if c == 0:
                    continue
                for pos, e in enumerate(K[b]):
                    if e != 0:
                        v[pos * m + l] += c * e
            newK.append(v)
        K = newK
        dims.append(len(K))
    return dims


def quadratic_dual_dims(P, N: int = 6, *, mode: str = "specialize", point: Mapping | None = None,
                        rng: random.Random | None = None) -> list[int]:
    """``dim (A^!)_n`` for n = 0..N by exact intersection of relation spaces.

    In ``specialize`` mode the parameters are set to ``point`` (random if
    omitted); ``symbolic`` works over Q(params) and is limited to N <= 4.
    """
    P = _quadratic_presentation(P)
    m = len(P.names)
    params = set()
    for r in P.relations:
        params |= r.parameters
    rels = list(P.relations)
    if mode == "symbolic":
        if N > 4:
            raise ValueError("symbolic dual dimensions are limited to N <= 4")
    elif params:
        if point is None:
            rng = rng or random.Random(0)
            point = random_assignment(params, rng)
        rels = [r.specialize(point) for r in rels]
    vecs = []
    for r in rels:
        v = [Fraction(0)] * (m * m)
        for (a, b), c in r.terms.items():
            v[a * m + b] += c
        vecs.append(v)
    return _dual_dims_exact(vecs, m, N)


def koszul_identity(hilb: Sequence[int], dual: Sequence[int], N: int) -> list[int]:
    """Residuals ``sum_i (-1)^i dual_i hilb_(n-i) - [n == 0]`` for n = 0..N."""
    out = []
    for n in range(N + 1):
        s = sum((-1) ** i * dual[i] * hilb[n - i] for i in range(n + 1) if i < len(dual))
        out.append(s - (1 if n == 0 else 0))
    return out


@dataclass
class KoszulReport:
    weights: dict[str, int]
    hilbert_dims: list[int]
    dual_dims: list[int]
    identity_checked_to: int
    residuals: list[int]
    verdict: str
    trials: list[dict] = field(default_factory=list)
    first_failure: int | None = None

    def to_dict(self) -> dict:
        return {
            "weights": self.weights,
            "hilbert_dims": self.hilbert_dims,
            "dual_dims": self.dual_dims,
            "identity_checked_to": self.identity_checked_to,
            "residuals": self.residuals,
            "verdict": self.verdict,
            "first_failure": self.first_failure,
            "trials": self.trials,
            "note": "necessary numerical condition only",
        }


def _report(w, hilb, dual, N, trials=()) -> KoszulReport:
    res = koszul_identity(hilb, dual, N)
    bad = next((n for n, r in enumerate(res) if r != 0), None)
    verdict = "consistent" if bad is None else "inconsistent"
    return KoszulReport(w, list(hilb), list(dual), N, res, verdict, list(trials), bad)


def koszul_numeric_check(A: QGHA, N: int = 6, *, trials: int = 3, rng: random.Random | None = None,
                         dual_override: Sequence[int] | None = None) -> KoszulReport:
    """Check ``H_A(s) H_{A!}(-s) = 1`` through degree N with all weights 1.

    The dual is computed at ``trials`` random specializations; disagreeing
    trials are reported as inconsistent.  ``dual_override`` replaces the
    computed dual (used to inject faults).
    """
    w = _weight_map(A, None)
    hilb = hilbert_dims(A, w, N)
    if dual_override is not None:
        return _report(w, hilb, list(dual_override) + [0] * (N + 1 - len(dual_override)), N)
    rng = rng or random.Random(0)
    P = _quadratic_presentation(A)
    params = sorted(A.parameters)
    records, duals = [], []
    for _ in range(max(1, trials)):
        avoid = [c for c in (A.q, A.f.lc()) if c != 0]
        point = random_assignment(params, rng, avoid=avoid) if params else {}
        d = quadratic_dual_dims(P, N, point=point)
        duals.append(d)
        records.append({"point": {k: str(v) for k, v in point.items()}, "dual_dims": d,
                        "residuals": koszul_identity(hilb, d, N)})
        if not params:
            break
    rep = _report(w, hilb, duals[0], N, records)
    if any(d != duals[0] for d in duals):
        rep.verdict = "inconsistent"
    if any(any(rec["residuals"]) for rec in records):
        rep.verdict = "inconsistent"
    return rep
