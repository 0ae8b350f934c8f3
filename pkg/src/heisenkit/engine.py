"""Normal forms in quantum generalized Heisenberg algebras.

``H_q(f, g)`` is generated by t, x, y subject to

    t x = x f(t),    y t = f(t) y,    y x - q x y = g(t).

Every element is written uniquely-as-far-as-we-know in the basis
``x^i t^j y^k``, stored as ``{(i, k): a_ik(t)}``.  Products are computed by
three commutation pushes rather than by a monomial order: when ``deg f >= 2``
the rule ``t x -> x f(t)`` raises word length, so no degree-compatible order
terminates, while recursion on the (y-power, x-power) pair does.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .freealg import FreeElement, Presentation, format_term
from .scalars import NEG_INF, Scalar, TPoly, as_coeff, coeff_params, specialize

__all__ = [
    "AlgebraMismatch",
    "LimitExceeded",
    "NormalElement",
    "QGHA",
    "nmul",
    "normal_form",
    "one_dim_rep_constraints",
    "push_t_past_x",
    "push_y_past_t",
    "push_y_past_x",
    "reduction_paths",
    "rewrite_normal_form",
]

DEFAULT_TERM_CAP = 100_000


class AlgebraMismatch(ValueError):
    pass


class LimitExceeded(RuntimeError):
    """A computation outgrew the configured term cap."""


class QGHA:
    """The algebra ``H_q(f, g)``.

    ``names`` gives the printed names of (t, x, y); downup algebras, for
    instance, use ``("t", "u", "d")``.
    """

    def __init__(self, q, f: TPoly, g: TPoly, names: Sequence[str] = ("t", "x", "y"),
                 cache_size: int = 64, term_cap: int = DEFAULT_TERM_CAP):
        self.q = as_coeff(q)
        self.f = f if isinstance(f, TPoly) else TPoly.const(f)
        self.g = g if isinstance(g, TPoly) else TPoly.const(g)
        self.names = tuple(names)
        if len(self.names) != 3 or len(set(self.names)) != 3:
            raise ValueError("need three distinct generator names for (t, x, y)")
        self.cache_size = cache_size
        self.term_cap = term_cap
        self._iterates = [TPoly.t()]
        self._ycache: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    # basic data ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QGHA):
            return NotImplemented
        return (self.q, self.f, self.g, self.names) == (other.q, other.f, other.g, other.names)

    def __hash__(self):
        return hash((self.q, self.f, self.g, self.names))

    def __repr__(self):
        return f"H_{{{self.q}}}({self.f}, {self.g})"

    def same_structure(self, other: "QGHA") -> bool:
        return (self.q, self.f, self.g) == (other.q, other.f, other.g)

    def with_names(self, names: Sequence[str]) -> "QGHA":
        return QGHA(self.q, self.f, self.g, names, self.cache_size, self.term_cap)

    @property
    def parameters(self) -> frozenset[str]:
        return coeff_params(self.q) | self.f.parameters | self.g.parameters

    def specialize(self, point: Mapping[str, Fraction]) -> "QGHA":
        return QGHA(specialize(self.q, point), self.f.specialize(point), self.g.specialize(point),
                    self.names, self.cache_size, self.term_cap)

    def to_dict(self) -> dict:
        return {"q": str(self.q) if isinstance(self.q, Scalar) else _fr(self.q),
                "f": str(self.f), "g": str(self.g), "generators": list(self.names)}

    def iterate_f(self, n: int) -> TPoly:
        """The n-fold composite f(f(...f(t)))."""
        its = self._iterates
        while len(its) <= n:
            its.append(self.f.compose(its[-1]))
        return its[n]

    # free-algebra side --------------------------------------------------

    def tpoly_element(self, a: TPoly) -> FreeElement:
        return FreeElement(self.names, {(0,) * j: c for j, c in enumerate(a.coeffs)})

    def gen(self, name: str) -> FreeElement:
        return FreeElement.gen(self.names, name)

    def relations(self) -> list[FreeElement]:
        t, x, y = (self.gen(n) for n in self.names)
        f, g = self.tpoly_element(self.f), self.tpoly_element(self.g)
        return [t * x - x * f, y * t - f * y, y * x - x * y * self.q - g]

    def presentation(self, weights: Mapping[str, int] | None = None) -> Presentation:
        weights = weights or {}
        return Presentation([(n, weights.get(n)) for n in self.names], self.relations())

    # normal-element side ------------------------------------------------

    def one(self) -> "NormalElement":
        return NormalElement(self, {(0, 0): TPoly.const(1)})

    def zero(self) -> "NormalElement":
        return NormalElement(self, {})

    def monomial(self, i: int, j: int, k: int, c=1) -> "NormalElement":
        return NormalElement(self, {(i, k): TPoly.monomial(j, c)})

    def scalar(self, c) -> "NormalElement":
        return NormalElement(self, {(0, 0): TPoly.const(c)})

    def t(self):
        return self.monomial(0, 1, 0)

    def x(self):
        return self.monomial(1, 0, 0)

    def y(self):
        return self.monomial(0, 0, 1)

    # cache --------------------------------------------------------------

    def _cache_get(self, key):
        cache = self._ycache
        value = cache.get(key)
        if value is not None and self.cache_size:
            with self._lock:
                if key in cache:
                    cache.move_to_end(key)
        return value

    def _cache_put(self, key, value):
        if not self.cache_size:
            return
        with self._lock:
            self._ycache[key] = value
            while len(self._ycache) > self.cache_size:
                self._ycache.popitem(last=False)


def _fr(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class NormalElement:
    """``sum x^i a_ik(t) y^k`` in a fixed :class:`QGHA`."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: QGHA, terms: Mapping[tuple[int, int], TPoly] | None = None):
        self.algebra = algebra
        self.terms = {key: a for key, a in (terms or {}).items() if a}
        if len(self.terms) > algebra.term_cap or sum(len(a.coeffs) for a in self.terms.values()) > algebra.term_cap:
            raise LimitExceeded(f"normal form has more than {algebra.term_cap} monomials")

    def _check(self, other):
        if isinstance(other, NormalElement):
            if other.algebra is not self.algebra and not other.algebra.same_structure(self.algebra):
                raise AlgebraMismatch(f"{self.algebra!r} vs {other.algebra!r}")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.algebra.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for key, a in other.terms.items():
            out[key] = out[key] + a if key in out else a
        return NormalElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return NormalElement(self.algebra, {k: -a for k, a in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        return nmul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = self.algebra.one()
        for _ in range(n):
            out = nmul(out, self)
        return out

    def scale(self, c) -> "NormalElement":
        return NormalElement(self.algebra, {k: a.scale(c) for k, a in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.algebra.scalar(other)
        if not isinstance(other, NormalElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def monomials(self) -> dict[tuple[int, int, int], object]:
        """``{(i, j, k): coefficient of x^i t^j y^k}``."""
        out = {}
        for (i, k), a in self.terms.items():
            for j, c in enumerate(a.coeffs):
                if c != 0:
                    out[(i, j, k)] = c
        return out

    def coefficient(self, i: int, j: int, k: int):
        a = self.terms.get((i, k))
        return a[j] if a is not None else Fraction(0)

    def degree(self):
        return max((i + j + k for i, j, k in self.monomials()), default=NEG_INF)

    def to_free(self) -> FreeElement:
        return FreeElement(self.algebra.names, {(1,) * i + (0,) * j + (2,) * k: c
                                                for (i, j, k), c in self.monomials().items()})

    def specialize(self, point) -> "NormalElement":
        A = self.algebra.specialize(point)
        return NormalElement(A, {k: a.specialize(point) for k, a in self.terms.items()})

    def __str__(self):
        mons = self.monomials()
        if not mons:
            return "0"
        t, x, y = self.algebra.names
        order = sorted(mons, key=lambda m: (-(m[0] + m[1] + m[2]), -m[0], -m[1], -m[2]))
        parts = []
        for n, m in enumerate(order):
            factors = []
            for name, e in zip((x, t, y), m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            parts.append(format_term(mons[m], "*".join(factors), n == 0))
        return " ".join(parts)

    def __repr__(self):
        return f"NormalElement({str(self)!r})"


# pushes -------------------------------------------------------------------


def push_t_past_x(b: int, d: int, A: QGHA) -> NormalElement:
    """Normal form of ``t^b x^d``, namely ``x^d (f^{(d)}(t))^b``."""
    if b < 0 or d < 0:
        raise ValueError("exponents must be nonnegative")
    return NormalElement(A, {(d, 0): A.iterate_f(d) ** b})


def push_y_past_t(e: int, c: int, A: QGHA) -> NormalElement:
    """Normal form of ``y^c t^e``, namely ``(f^{(c)}(t))^e y^c``."""
    if e < 0 or c < 0:
        raise ValueError("exponents must be nonnegative")
    return NormalElement(A, {(0, c): A.iterate_f(c) ** e})


def _accumulate(out: dict, key, a: TPoly):
    if key in out:
        out[key] = out[key] + a
    else:
        out[key] = a


def _times_right(A: QGHA, terms: Mapping, b: TPoly, k2: int, out: dict, i_shift: int = 0, left: TPoly | None = None):
    """Add ``x^i_shift left(t) * (sum x^j c(t) y^m) * b(t) y^k2`` into ``out``.

    Uses ``a(t) x^j = x^j a(f^(j)(t))`` and ``y^m b(t) = b(f^(m)(t)) y^m``.
    """
    for (j, m), c in terms.items():
        coeff = c
        if left is not None:
            coeff = left.compose(A.iterate_f(j)) * coeff
        coeff = coeff * b.compose(A.iterate_f(m)) if b.degree() > 0 else coeff * b
        if coeff:
            _accumulate(out, (j + i_shift, m + k2), coeff)


def push_y_past_x(c: int, d: int, A: QGHA) -> NormalElement:
    """Normal form of ``y^c x^d`` (memoized per algebra)."""
    if c < 0 or d < 0:
        raise ValueError("exponents must be nonnegative")
    if c == 0:
        return NormalElement(A, {(d, 0): TPoly.const(1)})
    if d == 0:
        return NormalElement(A, {(0, c): TPoly.const(1)})
    key = (c, d)
    hit = A._cache_get(key)
    if hit is not None:
        return hit
    if c == 1:
        # y x^d = q x (y x^{d-1}) + g(t) x^{d-1} = q x (y x^{d-1}) + x^{d-1} g(f^{(d-1)}(t))
        prev = push_y_past_x(1, d - 1, A)
        out = {(i + 1, k): a.scale(A.q) for (i, k), a in prev.terms.items() if A.q != 0}
        _accumulate(out, (d - 1, 0), A.g.compose(A.iterate_f(d - 1)))
        result = NormalElement(A, out)
    else:
        # y^c x^d = y^{c-1} (y x^d); each term x^i a(t) y^k needs y^{c-1} x^i
        out: dict = {}
        for (i, k), a in push_y_past_x(1, d, A).terms.items():
            _times_right(A, push_y_past_x(c - 1, i, A).terms, a, k, out)
        result = NormalElement(A, out)
    A._cache_put(key, result)
    return result


def nmul(a: NormalElement, b: NormalElement) -> NormalElement:
    """Product of two normal forms, returned in normal form."""
    if a.algebra is not b.algebra and not a.algebra.same_structure(b.algebra):
        raise AlgebraMismatch(f"{a.algebra!r} vs {b.algebra!r}")
    A = a.algebra
    out: dict = {}
    for (i, k), left in a.terms.items():
        for (i2, k2), right in b.terms.items():
            middle = push_y_past_x(k, i2, A)
            _times_right(A, middle.terms, right, k2, out, i_shift=i, left=left)
            if len(out) > A.term_cap:
                raise LimitExceeded(f"product has more than {A.term_cap} terms")
    return NormalElement(A, out)


def _left_mul_gen(A: QGHA, letter: int, N: NormalElement) -> NormalElement:
    if letter == 1:  # x
        return NormalElement(A, {(i + 1, k): a for (i, k), a in N.terms.items()})
    if letter == 0:  # t x^i = x^i f^{(i)}(t)
        return NormalElement(A, {(i, k): A.iterate_f(i) * a for (i, k), a in N.terms.items()})
    out: dict = {}
    for (i, k), a in N.terms.items():
        _times_right(A, push_y_past_x(1, i, A).terms, a, k, out)
    return NormalElement(A, out)


def normal_form(e: FreeElement, A: QGHA) -> NormalElement:
    """Image of a free-algebra element in ``A``, written in the PBW basis."""
    try:
        letters = [A.names.index(g) for g in e.gens]
    except ValueError:
        raise AlgebraMismatch(f"generators {e.gens} not among {A.names}") from None
    total: dict = {}
    for word, c in e.terms.items():
        N = A.scalar(c)
        for idx in reversed(word):
            N = _left_mul_gen(A, letters[idx], N)
        for key, a in N.terms.items():
            _accumulate(total, key, a)
    return NormalElement(A, total)


# word rewriting (independent route used for confluence checks) -------------

_T, _X, _Y = 0, 1, 2


def _redexes(word: tuple) -> list[int]:
    return [p for p in range(len(word) - 1)
            if (word[p], word[p + 1]) in ((_T, _X), (_Y, _T), (_Y, _X))]


def _rewrite_at(A: QGHA, word: tuple, p: int):
    pre, pair, post = word[:p], (word[p], word[p + 1]), word[p + 2:]
    out = []
    if pair == (_T, _X):
        for j, c in enumerate(A.f.coeffs):
            if c != 0:
                out.append((pre + (_X,) + (_T,) * j + post, c))
    elif pair == (_Y, _T):
        for j, c in enumerate(A.f.coeffs):
            if c != 0:
                out.append((pre + (_T,) * j + (_Y,) + post, c))
    else:
        if A.q != 0:
            out.append((pre + (_X, _Y) + post, A.q))
        for j, c in enumerate(A.g.coeffs):
            if c != 0:
                out.append((pre + (_T,) * j + post, c))
    return out


def _rewrite_words(A: QGHA, start: Mapping[tuple, object], strategy: str) -> NormalElement:
    """Reduce every word once, memoizing its normal form.

    Popping words while their coefficients are still accumulating would
    rewrite the same word many times, so each distinct word is resolved
    depth-first and cached instead.
    """
    memo: dict[tuple, dict] = {}
    for root in start:
        stack = [root]
        while stack:
            word = stack[-1]
            if word in memo:
                stack.pop()
                continue
            reds = _redexes(word)
            if not reds:
                i, k = word.count(_X), word.count(_Y)
                memo[word] = {(i, k): TPoly.monomial(len(word) - i - k, 1)}
                stack.pop()
                continue
            kids = _rewrite_at(A, word, reds[0] if strategy == "leftmost" else reds[-1])
            missing = [w2 for w2, _ in kids if w2 not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc: dict = {}
            for w2, c2 in kids:
                for key, a in memo[w2].items():
                    _accumulate(acc, key, a.scale(c2))
            memo[word] = acc
            stack.pop()
            if len(memo) > 100 * A.term_cap:
                raise LimitExceeded("rewriting produced too many words")
    done: dict = {}
    for word, c in start.items():
        for key, a in memo[word].items():
            _accumulate(done, key, a.scale(c))
    return NormalElement(A, done)


def rewrite_normal_form(e: FreeElement, A: QGHA, strategy: str = "leftmost",
                        first: int | None = None) -> NormalElement:
    """Normal form by plain word rewriting with the three defining rules.

    ``first`` forces the initial rewrite at that position (it must be a redex
    of every word of ``e``); afterwards ``strategy`` picks the redex.
    """
    letters = [A.names.index(g) for g in e.gens]
    start: dict = {}
    for word, c in e.terms.items():
        w = tuple(letters[i] for i in word)
        if first is not None:
            if first not in _redexes(w):
                raise ValueError(f"position {first} is not a redex of {e.word_str(word)}")
            for w2, c2 in _rewrite_at(A, w, first):
                start[w2] = start[w2] + c * c2 if w2 in start else c * c2
        else:
            start[w] = start[w] + c if w in start else c
    return _rewrite_words(A, start, strategy)


def reduction_paths(word: str | Iterable[str], A: QGHA) -> dict[str, NormalElement]:
    """Normal forms of one word reached along different reduction routes.

    The word is given by generator names (e.g. ``"ytx"`` or ``["y", "t", "x"]``).
    Routes: each initial redex followed by leftmost rewriting, pure rightmost
    rewriting, the push-based :func:`normal_form`, and every bracketing
    ``nmul(nf(u), nf(v))`` of a two-piece split.  Confluence means all agree.
    """
    letters = list(word)
    e = FreeElement.word(A.names, letters)
    paths = {}
    w = tuple(A.names.index(a) for a in letters)
    for p in _redexes(w):
        paths[f"redex@{p}"] = rewrite_normal_form(e, A, first=p)
    paths["rightmost"] = rewrite_normal_form(e, A, strategy="rightmost")
    paths["leftmost"] = rewrite_normal_form(e, A, strategy="leftmost")
    paths["pushes"] = normal_form(e, A)
    for s in range(1, len(letters)):
        u = normal_form(FreeElement.word(A.names, letters[:s]), A)
        v = normal_form(FreeElement.word(A.names, letters[s:]), A)
        paths[f"split@{s}"] = nmul(u, v)
    return paths


# one-dimensional representations ------------------------------------------

_REP_NAMES = {"x": "alpha", "y": "beta", "t": "gamma"}


def rep_variables(names: Sequence[str], variables: Mapping[str, str] | None = None) -> dict[str, str]:
    variables = dict(variables or {})
    out = {}
    for n in names:
        out[n] = variables.get(n) or _REP_NAMES.get(n) or _REP_NAMES.get(n.lower()) or f"a_{n}"
    return out


def one_dim_rep_constraints(P: Presentation | QGHA, variables: Mapping[str, str] | None = None) -> list[Scalar]:
    """Relations with each generator replaced by a commuting parameter.

    The zero set of the returned polynomials is the set of algebra maps to K.
    By default x, y, t become alpha, beta, gamma.
    """
    if isinstance(P, QGHA):
        P = P.presentation()
    var = rep_variables(P.names, variables)
    images = {n: Scalar.param(var[n]) for n in P.names}
    out = []
    for r in P.relations:
        total = Scalar(0)
        for w, c in r.terms.items():
            term = Scalar(c) if not isinstance(c, Scalar) else c
            for i in w:
                term = term * images[P.names[i]]
            total = total + term
        if total != 0:
            out.append(total)
    return out
