"""Exact coefficient arithmetic: the field Q(params) and polynomials in t over it.

A :class:`Scalar` is a reduced fraction of integer polynomials in named
parameters.  Parameter-free values may also be carried around as plain
:class:`fractions.Fraction` objects; every routine in the package accepts
either, which is what makes the cheap "specialization mode" possible.
"""

from __future__ import annotations

import math
import random
import threading
from fractions import Fraction
from typing import Iterable, Mapping

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

__all__ = [
    "DivisionByZero",
    "PoleError",
    "Scalar",
    "TPoly",
    "NEG_INF",
    "as_coeff",
    "is_zero",
    "random_assignment",
    "specialize",
]

NEG_INF = -math.inf


class DivisionByZero(ZeroDivisionError):
    pass


class PoleError(ZeroDivisionError):
    """Raised when a specialization makes a denominator vanish."""


_rings: dict[tuple[str, ...], PolyRing] = {}
_rings_lock = threading.Lock()


def _ring(names: Iterable[str]) -> PolyRing:
    key = tuple(sorted(set(names)))
    ring = _rings.get(key)
    if ring is None:
        with _rings_lock:
            ring = _rings.setdefault(key, PolyRing(key, ZZ, grlex))
    return ring


def _used_names(poly) -> set[str]:
    names = poly.ring.symbols
    used = set()
    for monom in poly.keys():
        used.update(str(names[i]) for i, e in enumerate(monom) if e)
    return used


def _poly_key(poly):
    names = [str(s) for s in poly.ring.symbols]
    return frozenset(
        (tuple((names[i], e) for i, e in enumerate(m) if e), int(c))
        for m, c in poly.items()
    )


def _format_monomial(names, monom) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_poly(poly) -> str:
    if not poly:
        return "0"
    names = [str(s) for s in poly.ring.symbols]
    out = []
    for monom, coeff in poly.terms():  # grlex descending
        coeff = int(coeff)
        mono = _format_monomial(names, monom)
        mag = abs(coeff)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(out)


def _eval_poly(poly, values: Mapping[str, Fraction]) -> Fraction:
    names = [str(s) for s in poly.ring.symbols]
    vals = []
    for n in names:
        if n not in values:
            raise KeyError(f"no value assigned to parameter {n!r}")
        vals.append(Fraction(values[n]))
    total = Fraction(0)
    for monom, coeff in poly.items():
        term = Fraction(int(coeff))
        for v, e in zip(vals, monom):
            if e:
                term *= v**e
        total += term
    return total


class Scalar:
    """Element of Q(params) kept as ``num/den`` in lowest terms.

    The denominator's leading coefficient (graded-lex over the sorted
    parameter names) is positive, so equal values have identical
    representations.

    >>> p = Scalar.param("p")
    >>> (p**2 - 1) / (p - 1)
    Scalar('p + 1')
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0, den=None, *, _canonical=False):
        if isinstance(value, Scalar) and den is None:
            self.num, self.den, self._hash = value.num, value.den, value._hash
            return
        if den is None:
            if isinstance(value, Fraction) or isinstance(value, int):
                fr = Fraction(value)
                ring = _ring(())
                num, den = ring(fr.numerator), ring(fr.denominator)
            else:
                num, den = value, value.ring.one
        else:
            num, den = value, den
        if not _canonical:
            num, den = self._canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _canonicalize(num, den):
        if num.ring is not den.ring:
            ring = _ring(tuple(map(str, num.ring.symbols)) + tuple(map(str, den.ring.symbols)))
            num, den = num.set_ring(ring), den.set_ring(ring)
        if not den:
            raise DivisionByZero("zero denominator")
        # shrink to the parameters actually used
        used = _used_names(num) | _used_names(den)
        if len(used) != len(num.ring.symbols):
            ring = _ring(used)
            num, den = num.set_ring(ring), den.set_ring(ring)
        if not num:
            return num.ring.zero, num.ring.one
        g = num.gcd(den)
        if g != 1:
            num, den = num.exquo(g), den.exquo(g)
        if den.LC < 0:
            num, den = -num, -den
        return num, den

    # constructors -------------------------------------------------------

    @classmethod
    def param(cls, name: str) -> "Scalar":
        if not name or not name.isidentifier():
            raise ValueError(f"invalid parameter name {name!r}")
        ring = _ring((name,))
        return cls(ring.gens[0], ring.one, _canonical=True)

    @classmethod
    def params(cls, names: str) -> tuple["Scalar", ...]:
        return tuple(cls.param(n) for n in names.replace(",", " ").split())

    # coercion -----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other)
        return NotImplemented

    @staticmethod
    def _unify(a, b):
        if a.num.ring is b.num.ring:
            return a.num, a.den, b.num, b.den
        names = tuple(map(str, a.num.ring.symbols)) + tuple(map(str, b.num.ring.symbols))
        ring = _ring(names)
        return (a.num.set_ring(ring), a.den.set_ring(ring),
                b.num.set_ring(ring), b.den.set_ring(ring))

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        an, ad, bn, bd = self._unify(self, other)
        if ad == bd:
            return Scalar(an + bn, ad)
        return Scalar(an * bd + bn * ad, ad * bd)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, _canonical=True)

    def __pos__(self):
        return self

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
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        an, ad, bn, bd = self._unify(self, other)
        return Scalar(an * bn, ad * bd)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise DivisionByZero("division by zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.num**n, self.den**n, _canonical=True)

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.ring is other.num.ring:
            return self.num == other.num and self.den == other.den
        return _poly_key(self.num) == _poly_key(other.num) and _poly_key(self.den) == _poly_key(other.den)

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((_poly_key(self.num), _poly_key(self.den)))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # inspection ---------------------------------------------------------

    @property
    def parameters(self) -> frozenset[str]:
        return frozenset(map(str, self.num.ring.symbols))

    def is_rational(self) -> bool:
        return not self.num.ring.symbols

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} depends on parameters {sorted(self.parameters)}")
        return Fraction(int(self.num.LC) if self.num else 0, int(self.den.LC))

    def is_negative(self) -> bool:
        """Sign convention used for printing: leading numerator coefficient < 0."""
        return bool(self.num) and self.num.LC < 0

    def numerator_str(self) -> str:
        return _format_poly(self.num)

    def specialize(self, assignment: Mapping[str, Fraction]) -> Fraction:
        d = _eval_poly(self.den, assignment)
        if d == 0:
            raise PoleError(f"denominator {_format_poly(self.den)} vanishes")
        return _eval_poly(self.num, assignment) / d

    def substitute(self, assignment: Mapping[str, "Scalar | Fraction | int"]) -> "Scalar":
        """Partial substitution of parameters by other scalars."""
        def ev(poly):
            names = [str(s) for s in poly.ring.symbols]
            gens = [as_coeff(assignment[n]) if n in assignment else Scalar.param(n) for n in names]
            total = Scalar(0)
            for monom, coeff in poly.items():
                term = Scalar(int(coeff))
                for g, e in zip(gens, monom):
                    if e:
                        term = term * g**e
                total = total + term
            return total
        den = ev(self.den)
        if not den:
            raise PoleError(f"denominator {_format_poly(self.den)} vanishes")
        return ev(self.num) / den

    def __str__(self):
        num = _format_poly(self.num)
        if self.den == 1:
            return num
        den = _format_poly(self.den)
        if len(self.num) > 1:
            num = f"({num})"
        simple = self.den.is_ground or (
            len(self.den) == 1 and int(self.den.LC) == 1
            and sum(1 for e in self.den.LM if e) == 1
        )
        if not simple:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def as_coeff(value):
    """Normalize an int/Fraction/Scalar to a coefficient (Fraction or Scalar)."""
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as a coefficient")


def is_zero(c) -> bool:
    return c == 0


def specialize(a, assignment: Mapping[str, Fraction]) -> Fraction:
    """Evaluate a coefficient at a rational point of the parameter space."""
    if isinstance(a, Scalar):
        return a.specialize(assignment)
    return Fraction(a)


def coeff_params(c) -> frozenset[str]:
    return c.parameters if isinstance(c, Scalar) else frozenset()


def coeff_str(c) -> str:
    if isinstance(c, Scalar):
        return str(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def random_rational(rng: random.Random, bound: int = 29, max_den: int = 7, nonzero: bool = True) -> Fraction:
    while True:
        v = Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
        if v or not nonzero:
            return v


def random_assignment(names: Iterable[str], rng: random.Random, avoid=(), tries: int = 200) -> dict[str, Fraction]:
    """A random rational point at which no scalar in ``avoid`` vanishes or has a pole."""
    names = sorted(set(names))
    for _ in range(tries):
        point = {n: random_rational(rng) for n in names}
        try:
            if all(specialize(a, point) != 0 for a in avoid):
                return point
        except PoleError:
            continue
    raise RuntimeError("could not find a regular specialization")


class TPoly:
    """Polynomial in the distinguished variable ``t`` over Q(params).

    Coefficients are stored low degree first with no trailing zeros.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls) -> "TPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "TPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c=1) -> "TPoly":
        return cls((0,) * n + (c,))

    @staticmethod
    def _coerce(other):
        if isinstance(other, TPoly):
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return TPoly((other,))
        return NotImplemented

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return TPoly(tuple(x + b[i] if i < len(b) else x for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(tuple(-c for c in self.coeffs))

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
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return TPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, TPoly):
            if c.degree() != 0:
                raise ValueError("only division by a nonzero constant is supported")
            c = c.coeffs[0]
        if c == 0:
            raise DivisionByZero("division by zero")
        inv = 1 / as_coeff(c)
        return TPoly(tuple(x * inv for x in self.coeffs))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("TPoly powers must be nonnegative integers")
        result, base = TPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def compose(self, h: "TPoly") -> "TPoly":
        """``self(h(t))`` by Horner's rule."""
        h = self._coerce(h)
        result = TPoly()
        for c in reversed(self.coeffs):
            result = result * h + c
        return result

    __call__ = compose

    def evaluate(self, value):
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def scale(self, c) -> "TPoly":
        return TPoly(tuple(c * x for x in self.coeffs))

    def specialize(self, assignment) -> "TPoly":
        return TPoly(tuple(specialize(c, assignment) for c in self.coeffs))

    @property
    def parameters(self) -> frozenset[str]:
        out = frozenset()
        for c in self.coeffs:
            out |= coeff_params(c)
        return out

    def is_homogeneous(self) -> bool:
        return sum(1 for c in self.coeffs if c != 0) <= 1

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for n in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[n]
            if c == 0:
                continue
            mono = "" if n == 0 else ("t" if n == 1 else f"t^{n}")
            neg = c.is_negative() if isinstance(c, Scalar) else c < 0
            mag = -c if neg else c
            cs = coeff_str(mag)
            if mono:
                if any(ch in cs for ch in "+-/ "):
                    cs = f"({cs})"
                body = mono if mag == 1 else f"{cs}*{mono}"
            else:
                body = f"({cs})" if neg and any(ch in cs.lstrip("-") for ch in "+- ") else cs
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"TPoly({str(self)!r})"
