"""Bounded-degree verification of skew PBW extension structure.

A claim names a coefficient ring R (``"K"``, ``"K[t]"`` or ``"R_xt"`` for
``K<x,t>/(tx - x f)``) and ordered extension variables.  Each condition is
decided by linear algebra on normal forms: an element lies in an R-span iff
it solves a linear system whose columns are normal forms of ``r * m`` for r
running over a monomial basis of R up to the degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg
from .engine import NormalElement, QGHA, nmul, normal_form
from .scalars import NEG_INF, Scalar, TPoly

__all__ = [
    "GradedReport",
    "InconsistentClaim",
    "SkewPBWCertificate",
    "SkewPBWClaim",
    "Violation",
    "check_graded_extension",
    "extract_sigma_delta",
    "freeness_over_subring",
    "recheck_certificate",
    "verify",
    "verify_condition_iii",
    "verify_condition_iv",
]

RINGS = ("K", "K[t]", "R_xt")
DEFAULT_VARS = {"K": ("x", "t", "y"), "K[t]": ("x", "y"), "R_xt": ("y",)}
DEFAULT_MAXDEG = 6


class InconsistentClaim(ValueError):
    pass


@dataclass
class Violation:
    condition: str
    detail: str
    residual: str | None = None

    def __bool__(self):
        return False

    def to_dict(self) -> dict:
        return {"violation": self.condition, "detail": self.detail, "residual": self.residual}


@dataclass
class SkewPBWClaim:
    algebra: QGHA
    ring: str = "K[t]"
    extension_vars: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"ring must be one of {RINGS}")
        role = dict(zip(("t", "x", "y"), self.algebra.names))
        if self.extension_vars is None:
            self.extension_vars = tuple(role[v] for v in DEFAULT_VARS[self.ring])
        self.extension_vars = tuple(self.extension_vars)
        ring_gens = {"K": (), "K[t]": (role["t"],), "R_xt": (role["x"], role["t"])}[self.ring]
        if set(ring_gens) & set(self.extension_vars):
            raise ValueError("extension variables must be disjoint from ring generators")
        if not set(self.extension_vars) <= set(self.algebra.names):
            raise ValueError(f"unknown extension variables {self.extension_vars}")

    # ring helpers ---------------------------------------------------------

    @property
    def ring_generators(self) -> tuple[str, ...]:
        t, x, _ = self.algebra.names
        return {"K": (), "K[t]": (t,), "R_xt": (x, t)}[self.ring]

    def ring_basis(self, maxdeg: int) -> list[tuple[str, NormalElement]]:
        A = self.algebra
        if self.ring == "K":
            return [("1", A.one())]
        if self.ring == "K[t]":
            return [(f"t^{j}", A.monomial(0, j, 0)) for j in range(maxdeg + 1)]
        return [(f"x^{a}t^{b}", A.monomial(a, b, 0))
                for a in range(maxdeg + 1) for b in range(maxdeg + 1 - a)]

    def gen(self, name: str) -> NormalElement:
        t, x, y = self.algebra.names
        return {t: self.algebra.t(), x: self.algebra.x(), y: self.algebra.y()}[name]


def _keys(elements: Sequence[NormalElement]) -> list:
    keys = set()
    for e in elements:
        keys |= set(e.monomials())
    return sorted(keys)


def _vec(e: NormalElement, keys) -> list:
    m = e.monomials()
    return [m.get(k, Fraction(0)) for k in keys]


def _solve_in_span(target: NormalElement, blocks: Sequence[Sequence[NormalElement]]):
    """Express ``target`` as a combination of the blocks' elements; None if impossible."""
    flat = [e for b in blocks for e in b]
    keys = _keys(flat + [target])
    sol = linalg.solve([_vec(e, keys) for e in flat], _vec(target, keys))
    if sol is None:
        return None
    out, pos = [], 0
    for b in blocks:
        out.append(sol[pos:pos + len(b)])
        pos += len(b)
    return out


def _combine(basis, coeffs, A: QGHA) -> NormalElement:
    total = A.zero()
    for (_, r), c in zip(basis, coeffs):
        if c != 0:
            total = total + r.scale(c)
    return total


@dataclass
class ConditionIII:
    var: str
    r: str
    c: NormalElement
    remainder: NormalElement

    def to_dict(self):
        return {"var": self.var, "r": self.r, "c": str(self.c), "remainder": str(self.remainder)}


def _ring_element(claim: SkewPBWClaim, r) -> NormalElement:
    A = claim.algebra
    if isinstance(r, NormalElement):
        return r
    if isinstance(r, TPoly):
        return NormalElement(A, {(0, 0): r})
    if isinstance(r, str):
        from .freealg import parse_element
        return normal_form(parse_element(r, A.names), A)
    return A.scalar(r)


def verify_condition_iii(claim: SkewPBWClaim, r, var: str, maxdeg: int = DEFAULT_MAXDEG):
    """Find c in R \\ {0} with ``var * r - c * var`` in R, or return a Violation.

    The ring basis is enlarged to the degree of ``var * r`` when that exceeds maxdeg.
    """
    A = claim.algebra
    r = _ring_element(claim, r)
    if r.is_zero():
        raise ValueError("r must be nonzero")
    xi = claim.gen(var)
    target = nmul(xi, r)
    basis = claim.ring_basis(max(maxdeg, target.degree()))
    blocks = [[nmul(b, xi) for _, b in basis], [b for _, b in basis]]
    sol = _solve_in_span(target, blocks)
    if sol is None:
        return Violation("iii", f"{var}*({r}) = {target} is not in R + R*{var} (degree <= {maxdeg})",
                         str(target))
    c = _combine(basis, sol[0], A)
    rem = _combine(basis, sol[1], A)
    if c.is_zero():
        return Violation("iii", f"{var}*({r}) = {target} forces c = 0", str(target))
    return ConditionIII(var, str(r), c, rem)


@dataclass
class ConditionIV:
    pair: tuple[str, str]
    d: NormalElement
    tails: dict[str, NormalElement]

    def to_dict(self):
        return {"pair": list(self.pair), "d": str(self.d),
                "tails": {k: str(v) for k, v in self.tails.items()}}


def verify_condition_iv(claim: SkewPBWClaim, i: int, j: int, maxdeg: int = DEFAULT_MAXDEG):
    """For i < j: ``x_j x_i - d x_i x_j`` in ``R + R x_1 + ... + R x_n`` with d != 0."""
    if not i < j:
        raise ValueError("need i < j")
    A = claim.algebra
    names = claim.extension_vars
    xi, xj = claim.gen(names[i]), claim.gen(names[j])
    target = nmul(xj, xi)
    basis = claim.ring_basis(max(maxdeg, target.degree()))
    prod = nmul(xi, xj)
    blocks = [[nmul(b, prod) for _, b in basis], [b for _, b in basis]]
    for v in names:
        g = claim.gen(v)
        blocks.append([nmul(b, g) for _, b in basis])
    sol = _solve_in_span(target, blocks)
    pair = (names[i], names[j])
    if sol is None:
        return Violation("iv", f"{names[j]}*{names[i]} = {target} leaves R + sum R*x_k (degree <= {maxdeg})",
                         str(target))
    d = _combine(basis, sol[0], A)
    if d.is_zero():
        return Violation("iv", f"{names[j]}*{names[i]} = {target} forces d = 0", str(target))
    tails = {"1": _combine(basis, sol[1], A)}
    for v, coeffs in zip(names, sol[2:]):
        tails[v] = _combine(basis, coeffs, A)
    return ConditionIV(pair, d, tails)


@dataclass
class SigmaDelta:
    var: str
    sigma: dict[str, NormalElement]
    delta: dict[str, NormalElement]

    def to_dict(self):
        return {"var": self.var, "sigma": {k: str(v) for k, v in self.sigma.items()},
                "delta": {k: str(v) for k, v in self.delta.items()}}


def extract_sigma_delta(claim: SkewPBWClaim, maxdeg: int = DEFAULT_MAXDEG) -> dict[str, SigmaDelta]:
    """sigma_i(r) = c_{i,r} and delta_i(r) = x_i r - sigma_i(r) x_i on ring generators.

    Multiplicativity is checked on ``t^2``; a mismatch raises InconsistentClaim.
    """
    A = claim.algebra
    out = {}
    for v in claim.extension_vars:
        sig, dlt = {}, {}
        for rg in claim.ring_generators:
            res = verify_condition_iii(claim, claim.gen(rg), v, maxdeg)
            if isinstance(res, Violation):
                raise InconsistentClaim(f"condition (iii) fails for {v}, {rg}: {res.detail}")
            sig[rg], dlt[rg] = res.c, res.remainder
        t = A.names[0]
        if t in sig:
            sq = verify_condition_iii(claim, nmul(A.t(), A.t()), v, maxdeg)
            if isinstance(sq, Violation):
                raise InconsistentClaim(f"condition (iii) fails for {v} on t^2")
            s, d = sig[t], dlt[t]
            if sq.c != nmul(s, s) or sq.remainder != nmul(s, d) + nmul(d, A.t()):
                raise InconsistentClaim(f"sigma/delta for {v} do not extend multiplicatively to t^2")
        out[v] = SigmaDelta(v, sig, dlt)
    return out


def freeness_over_subring(claim: SkewPBWClaim, maxdeg: int = 4) -> bool:
    """Bounded check that ``{r * x^alpha}`` is a basis of the degree-sliced algebra.

    Normal monomials ``x^i t^j y^k`` with ``i + j + k <= maxdeg`` must lie in
    the span of ``r * m`` (r in the ring basis, m a standard monomial, both of
    degree <= maxdeg) and those products must be linearly independent.
    """
    A = claim.algebra
    basis = claim.ring_basis(maxdeg)
    names = claim.extension_vars
    n = len(names)

    def compositions(total, parts):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for a in range(total + 1):
            for rest in compositions(total - a, parts - 1):
                yield (a,) + rest

    std = []
    for deg in range(maxdeg + 1):
        for alpha in compositions(deg, n):
            m = A.one()
            for v, a in zip(names, alpha):
                for _ in range(a):
                    m = nmul(m, claim.gen(v))
            std.append(m)
    products = [nmul(r, m) for _, r in basis for m in std]
    slice_monomials = [(i, j, k) for i in range(maxdeg + 1) for j in range(maxdeg + 1 - i)
                       for k in range(maxdeg + 1 - i - j)]
    # group by (x-power, y-power); left multiplication by ring elements of K[t] keeps it
    groups: dict = {}
    mixed = False
    for e in products:
        ks = {(i, k) for (i, _, k) in e.monomials()}
        if len(ks) != 1:
            mixed = True
            break
        groups.setdefault(ks.pop(), []).append(e)
    if mixed:
        groups = {None: products}
    for key, elems in groups.items():
        keys = _keys(elems)
        rows = [_vec(e, keys) for e in elems]
        if linalg.rank(rows) != len(rows):
            return False
    for (i, j, k) in slice_monomials:
        group = groups.get((i, k), []) if None not in groups else groups[None]
        target = A.monomial(i, j, k)
        if _solve_in_span(target, [group]) is None:
            return False
    return True


@dataclass
class SkewPBWCertificate:
    claim: dict
    holds: bool
    free: bool
    condition_iii: list = field(default_factory=list)
    condition_iv: list = field(default_factory=list)
    sigma_delta: dict = field(default_factory=dict)
    bijective: bool = False
    endomorphism_type: bool = False
    violations: list[Violation] = field(default_factory=list)
    maxdeg: int = DEFAULT_MAXDEG

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "holds": self.holds,
            "free_on_slice": self.free,
            "condition_iii": [c.to_dict() for c in self.condition_iii],
            "condition_iv": [c.to_dict() for c in self.condition_iv],
            "sigma_delta": {k: v.to_dict() for k, v in self.sigma_delta.items()},
            "bijective": self.bijective,
            "endomorphism_type": self.endomorphism_type,
            "violations": [v.to_dict() for v in self.violations],
            "maxdeg": self.maxdeg,
            "note": "bounded-degree certificate, not a proof",
        }


def _is_unit_scalar(e: NormalElement) -> bool:
    mons = e.monomials()
    return list(mons) == [(0, 0, 0)] and mons[(0, 0, 0)] != 0


def _invertible_on_t(s: NormalElement) -> bool:
    mons = s.monomials()
    if any(i or k for (i, _, k) in mons):
        return False
    return max(j for (_, j, _) in mons) == 1 if mons else False


def verify(claim: SkewPBWClaim, maxdeg: int = DEFAULT_MAXDEG, free_maxdeg: int = 4) -> SkewPBWCertificate:
    """Run every condition of the definition on the claim and collect witnesses."""
    A = claim.algebra
    cert = SkewPBWCertificate(
        claim={"ring": claim.ring, "vars": list(claim.extension_vars), "algebra": A.to_dict()},
        holds=False, free=freeness_over_subring(claim, free_maxdeg), maxdeg=maxdeg)
    if not cert.free:
        cert.violations.append(Violation("ii", "standard monomials are not a free R-basis on the tested slice"))
    test_elems = []
    if claim.ring == "K[t]":
        test_elems = [A.t(), nmul(A.t(), A.t())]
    elif claim.ring == "R_xt":
        test_elems = [A.t(), A.x(), nmul(A.x(), A.t())]
    for v in claim.extension_vars:
        for r in test_elems:
            res = verify_condition_iii(claim, r, v, maxdeg)
            (cert.violations if isinstance(res, Violation) else cert.condition_iii).append(res)
    n = len(claim.extension_vars)
    for i, j in combinations(range(n), 2):
        res = verify_condition_iv(claim, i, j, maxdeg)
        (cert.violations if isinstance(res, Violation) else cert.condition_iv).append(res)
    if not cert.violations:
        try:
            cert.sigma_delta = extract_sigma_delta(claim, maxdeg)
        except InconsistentClaim as exc:
            cert.violations.append(Violation("sigma-delta", str(exc)))
    cert.holds = not cert.violations
    if cert.holds:
        sd = cert.sigma_delta.values()
        cert.endomorphism_type = all(all(d.is_zero() for d in s.delta.values()) for s in sd)
        t = A.names[0]
        sig_ok = all(_invertible_on_t(s.sigma[t]) for s in sd) if claim.ring == "K[t]" else True
        cert.bijective = sig_ok and all(_is_unit_scalar(c.d) for c in cert.condition_iv)
    return cert


def recheck_certificate(cert: SkewPBWCertificate, claim: SkewPBWClaim) -> bool:
    """Substitute the recorded witnesses back; every identity must normalize to 0."""
    for sd in cert.sigma_delta.values():
        xi = claim.gen(sd.var)
        for rg, s in sd.sigma.items():
            r = claim.gen(rg)
            if not (nmul(xi, r) - nmul(s, xi) - sd.delta[rg]).is_zero():
                return False
    for c in cert.condition_iv:
        xi, xj = claim.gen(c.pair[0]), claim.gen(c.pair[1])
        lhs = nmul(xj, xi) - nmul(c.d, nmul(xi, xj)) - c.tails["1"]
        for v in claim.extension_vars:
            lhs = lhs - nmul(c.tails[v], claim.gen(v))
        if not lhs.is_zero():
            return False
    return True


# graded extensions -----------------------------------------------------------


@dataclass
class GradedReport:
    weights: dict[str, int]
    condition_i: bool
    condition_ii: bool
    variables_degree_one: bool
    ring_generated_in_degree_one: bool
    graded: bool
    details: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "weights": self.weights,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "variables_degree_one": self.variables_degree_one,
            "ring_generated_in_degree_one": self.ring_generated_in_degree_one,
            "graded": self.graded,
            "details": self.details,
        }


def _weighted_degrees(e: NormalElement, w: Mapping[str, int]) -> set[int]:
    t, x, y = e.algebra.names
    return {i * w[x] + j * w[t] + k * w[y] for (i, j, k) in e.monomials()}


def _homogeneous_of(e: NormalElement, deg: int, w) -> bool:
    degs = _weighted_degrees(e, w)
    return not degs or degs == {deg}


def check_graded_extension(claim: SkewPBWClaim, weights: Mapping[str, int] | None = None,
                           maxdeg: int = DEFAULT_MAXDEG) -> GradedReport:
    """Check that sigma_i is graded, delta_i raises degree by deg x_i, and the
    pair relations have tails in ``R_2 + R_1 x_1 + ... + R_1 x_n`` with d in R_0.

    Weights default to 1 on every generator.
    """
    A = claim.algebra
    w = {n: 1 for n in A.names}
    w.update(weights or {})
    details = []
    sd = extract_sigma_delta(claim, maxdeg)
    cond_i = True
    for v, s in sd.items():
        for rg in s.sigma:
            if not _homogeneous_of(s.sigma[rg], w[rg], w):
                cond_i = False
                details.append(f"sigma_{v}({rg}) = {s.sigma[rg]} is not of degree {w[rg]}")
            if not _homogeneous_of(s.delta[rg], w[rg] + w[v], w):
                cond_i = False
                details.append(f"delta_{v}({rg}) = {s.delta[rg]} is not of degree {w[rg] + w[v]}")
    cond_ii = True
    names = claim.extension_vars
    for i, j in combinations(range(len(names)), 2):
        res = verify_condition_iv(claim, i, j, maxdeg)
        if isinstance(res, Violation):
            cond_ii = False
            details.append(res.detail)
            continue
        total = w[names[i]] + w[names[j]]
        if not _homogeneous_of(res.d, 0, w):
            cond_ii = False
            details.append(f"d_{names[i]}{names[j]} = {res.d} is not in R_0")
        if not _homogeneous_of(res.tails["1"], total, w):
            cond_ii = False
            details.append(f"tail {res.tails['1']} of {names[j]}*{names[i]} is not in R_{total}")
        for v in names:
            if not _homogeneous_of(res.tails[v], total - w[v], w):
                cond_ii = False
                details.append(f"coefficient {res.tails[v]} of {v} is not in R_{total - w[v]}")
    vars_one = all(w[v] == 1 for v in names)
    if not vars_one:
        details.append("extension variables must have degree 1")
    ring_one = all(w[g] == 1 for g in claim.ring_generators)
    if not ring_one:
        details.append("coefficient ring is not generated in degree 1")
    return GradedReport(dict(w), cond_i, cond_ii, vars_one, ring_one,
                        cond_i and cond_ii and vars_one and ring_one, details)
