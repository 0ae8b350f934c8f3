"""Noncommutative polynomials over Q(params), presentations, and span comparison."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .parsing import Parser, ScalarDomain
from .scalars import Scalar, as_coeff, coeff_params, coeff_str, random_assignment, specialize

__all__ = [
    "FreeElement",
    "GeneratorMismatch",
    "NotHomogeneous",
    "Presentation",
    "SpanComparison",
    "free_mul",
    "grade_of",
    "parse_element",
    "span_equal",
]

Word = tuple  # tuple of generator indices


class GeneratorMismatch(ValueError):
    pass


class _NotHomogeneous:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotHomogeneous"

    def __bool__(self):
        return False


NotHomogeneous = _NotHomogeneous()


def format_term(coeff, monomial: str, first: bool) -> str:
    """Render ``coeff * monomial`` in the element grammar, with a leading sign."""
    neg = coeff.is_negative() if isinstance(coeff, Scalar) else coeff < 0
    mag = -coeff if neg else coeff
    cs = coeff_str(mag)
    plain_int = cs.isdigit()
    if monomial:
        if mag == 1:
            body = monomial
        else:
            body = f"{cs}*{monomial}" if plain_int else f"{{{cs}}}*{monomial}"
    else:
        body = cs if plain_int else f"{{{cs}}}"
    if first:
        return f"-{body}" if neg else body
    return f"- {body}" if neg else f"+ {body}"


class FreeElement:
    """Element of the free algebra ``K<gens>``: a map word -> coefficient."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence[str], terms: Mapping[Word, object] | None = None):
        self.gens = tuple(gens)
        clean = {}
        if terms:
            for w, c in terms.items():
                c = as_coeff(c)
                if c != 0:
                    clean[tuple(w)] = c
        self.terms = clean

    # constructors -------------------------------------------------------

    @classmethod
    def gen(cls, gens: Sequence[str], name: str) -> "FreeElement":
        gens = tuple(gens)
        if name not in gens:
            raise GeneratorMismatch(f"{name!r} is not among generators {gens}")
        return cls(gens, {(gens.index(name),): 1})

    @classmethod
    def const(cls, gens: Sequence[str], c) -> "FreeElement":
        return cls(gens, {(): c})

    @classmethod
    def word(cls, gens: Sequence[str], letters: Iterable[str], c=1) -> "FreeElement":
        gens = tuple(gens)
        return cls(gens, {tuple(gens.index(a) for a in letters): c})

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FreeElement):
            if other.gens != self.gens:
                raise GeneratorMismatch(f"generators {self.gens} vs {other.gens}")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return FreeElement.const(self.gens, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return FreeElement(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElement(self.gens, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return free_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("free algebra powers must be nonnegative integers")
        out = FreeElement.const(self.gens, 1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "FreeElement":
        return FreeElement(self.gens, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = FreeElement.const(self.gens, other)
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # inspection ---------------------------------------------------------

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    @property
    def parameters(self) -> frozenset[str]:
        out = frozenset()
        for c in self.terms.values():
            out |= coeff_params(c)
        return out

    def coefficient(self, letters: Iterable[str]):
        w = tuple(self.gens.index(a) for a in letters)
        return self.terms.get(w, Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: (-len(wc[0]), tuple(-i for i in wc[0])))

    def word_str(self, w: Word) -> str:
        return "*".join(self.gens[i] for i in w)

    def __str__(self):
        if not self.terms:
            return "0"
        return " ".join(
            format_term(c, self.word_str(w), k == 0) for k, (w, c) in enumerate(self.sorted_terms())
        )

    def __repr__(self):
        return f"FreeElement({str(self)!r})"

    # transformations ----------------------------------------------------

    def map_coeffs(self, fn) -> "FreeElement":
        return FreeElement(self.gens, {w: fn(c) for w, c in self.terms.items()})

    def specialize(self, assignment) -> "FreeElement":
        return self.map_coeffs(lambda c: specialize(c, assignment))

    def substitute(self, images: Mapping[str, object], one=None):
        """Image under the algebra map sending each generator to ``images[name]``.

        Images may live in any ring supporting ``+``, ``*`` and scalar
        multiplication; ``one`` is that ring's unit (defaults to the unit of
        the free algebra on the images' generators).
        """
        if one is None:
            first = next(iter(images.values()))
            one = FreeElement.const(first.gens, 1)
        total = one * 0 if not isinstance(one, FreeElement) else FreeElement(one.gens)
        for w, c in self.terms.items():
            prod = one
            for i in w:
                prod = prod * images[self.gens[i]]
            total = total + prod * c
        return total

    def rename(self, mapping: Mapping[str, str], gens: Sequence[str] | None = None) -> "FreeElement":
        """Rename generators; the result lives on ``gens`` (default: renamed tuple)."""
        new_names = [mapping.get(g, g) for g in self.gens]
        gens = tuple(gens) if gens is not None else tuple(new_names)
        idx = [gens.index(n) for n in new_names]
        return FreeElement(gens, {tuple(idx[i] for i in w): c for w, c in self.terms.items()})


def free_mul(a: FreeElement, b: FreeElement) -> FreeElement:
    """Concatenation product, extended bilinearly."""
    if a.gens != b.gens:
        raise GeneratorMismatch(f"generators {a.gens} vs {b.gens}")
    out: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            w = w1 + w2
            c = c1 * c2
            out[w] = out[w] + c if w in out else c
    return FreeElement(a.gens, out)


def grade_of(e: FreeElement, weights: Mapping[str, int] | None = None):
    """Weighted degree of ``e`` if homogeneous, else ``NotHomogeneous``.

    Missing weights default to 1.  The zero element has no degree (None).
    """
    weights = weights or {}
    w = [weights.get(g, 1) for g in e.gens]
    degs = {sum(w[i] for i in word) for word in e.terms}
    if not degs:
        return None
    if len(degs) > 1:
        return NotHomogeneous
    return degs.pop()


@dataclass
class Presentation:
    """Generators (optionally weighted) and defining relations."""

    generators: list[tuple[str, int | None]]
    relations: list[FreeElement] = field(default_factory=list)

    def __post_init__(self):
        self.generators = [(g, None) if isinstance(g, str) else tuple(g) for g in self.generators]
        names = self.names
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        rels = []
        for r in self.relations:
            if r.gens != names:
                r = r.rename({}, names)
            if r:
                rels.append(r)
        self.relations = rels

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self.generators)

    @property
    def weights(self) -> dict[str, int]:
        return {g: (w or 1) for g, w in self.generators}

    def gen(self, name: str) -> FreeElement:
        return FreeElement.gen(self.names, name)

    def rename(self, mapping: Mapping[str, str]) -> "Presentation":
        gens = [(mapping.get(g, g), w) for g, w in self.generators]
        return Presentation(gens, [r.rename(mapping) for r in self.relations])

    def to_dict(self) -> dict:
        return {
            "generators": [g for g, _ in self.generators],
            "weights": {g: w for g, w in self.generators if w is not None},
            "relations": [str(r) for r in self.relations],
        }


class ElementDomain(ScalarDomain):
    allow_div = False
    allow_neg_pow = False

    def __init__(self, gens, params=None):
        super().__init__(params)
        self.gens = tuple(gens)

    def integer(self, n):
        return FreeElement.const(self.gens, n)

    def ident(self, name, tok, parser):
        if name in self.gens:
            return FreeElement.gen(self.gens, name)
        if self.params is not None and name in self.params:
            return FreeElement.const(self.gens, Scalar.param(name))
        parser.fail(f"unknown generator {name!r}", tok)

    def from_scalar(self, s):
        return FreeElement.const(self.gens, s)

    def power(self, a, n, tok, parser):
        return a**n


def parse_element(text: str, gens: Sequence[str] = ("t", "x", "y"), params=None) -> FreeElement:
    """Parse e.g. ``{1/(q-1)}*x*y - t^2`` over the given generators.

    Scalars go in braces; declared parameter names may also appear bare.
    """
    parser = Parser(str(text), ElementDomain(gens, params))
    parser.scalar_domain = ScalarDomain(None if params is None else params)
    return parser.parse()


# span comparison ------------------------------------------------------------


@dataclass
class SpanComparison:
    equal: bool
    rank_first: int
    rank_second: int
    rank_union: int
    basis: list[FreeElement]
    mode: str = "symbolic"

    def __bool__(self):
        return self.equal

    def to_dict(self) -> dict:
        return {
            "equal": self.equal,
            "rank_first": self.rank_first,
            "rank_second": self.rank_second,
            "rank_union": self.rank_union,
            "mode": self.mode,
            "basis": [str(b) for b in self.basis],
        }


def _vectors(elements: Sequence[FreeElement], words: list) -> list[list]:
    return [[e.terms.get(w, Fraction(0)) for w in words] for e in elements]


def _compare(S1, S2, gens):
    words = sorted({w for e in list(S1) + list(S2) for w in e.terms}, key=lambda w: (-len(w), w))
    v1, v2 = _vectors(S1, words), _vectors(S2, words)
    r1 = linalg.rank(v1) if v1 else 0
    r2 = linalg.rank(v2) if v2 else 0
    ru = linalg.rank(v1 + v2) if v1 or v2 else 0
    red, _ = linalg.rref(v1) if v1 else ([], [])
    basis = [FreeElement(gens, dict(zip(words, row))) for row in red]
    return SpanComparison(r1 == r2 == ru, r1, r2, ru, basis)


def span_equal(
    S1: Sequence[FreeElement],
    S2: Sequence[FreeElement],
    maxdeg: int | None = None,
    *,
    mode: str = "symbolic",
    trials: int = 5,
    rng: random.Random | None = None,
) -> SpanComparison:
    """Do two lists of elements span the same K-subspace?

    In ``"specialize"`` mode the comparison is repeated at ``trials`` random
    rational parameter values and must hold at every one of them.
    """
    S1, S2 = list(S1), list(S2)
    gens = (S1 or S2)[0].gens if (S1 or S2) else ()
    for e in S1 + S2:
        if e.gens != gens:
            raise GeneratorMismatch("span_equal needs a common generator set")
        if maxdeg is not None and e.degree() > maxdeg:
            raise ValueError(f"element of degree {e.degree()} exceeds maxdeg={maxdeg}")
    if mode == "symbolic":
        return _compare(S1, S2, gens)
    if mode != "specialize":
        raise ValueError(f"unknown mode {mode!r}")
    rng = rng or random.Random(0)
    params = set()
    coeffs = []
    for e in S1 + S2:
        params |= e.parameters
        coeffs.extend(e.terms.values())
    result = None
    for _ in range(trials):
        point = random_assignment(params, rng, avoid=[c for c in coeffs if isinstance(c, Scalar)])
        result = _compare([e.specialize(point) for e in S1], [e.specialize(point) for e in S2], gens)
        result.mode = "specialize"
        if not result.equal:
            return result
    return result
