"""Exact coefficient fields and sparse multivariate polynomials.

Polynomials live in a ring ``k[x1, ..., xn]`` described by a :class:`RingSpec`.
Coefficients are :class:`fractions.Fraction` (or plain ``int`` when integral)
over the rationals, and ``int`` residues in ``[0, p)`` over a prime field.
Terms are kept in a dict keyed by dense exponent tuples; the descending term
order is derived from the ring's monomial order on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import RingMismatch

SERIES_VARIABLE = "X"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals (``characteristic == 0``) or GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic and not _is_prime(self.characteristic):
            raise ValueError(f"field characteristic {self.characteristic} is not prime")

    @classmethod
    def parse(cls, name: str) -> "Field":
        if name in ("Q", "QQ"):
            return cls(0)
        if name.startswith("Fp:"):
            try:
                p = int(name[3:])
            except ValueError:
                raise ValueError(f"bad field descriptor {name!r}") from None
            return cls(p)
        raise ValueError(f"bad field descriptor {name!r}")

    @property
    def name(self) -> str:
        return f"Fp:{self.characteristic}" if self.characteristic else "Q"

    def convert(self, x):
        """Canonical element for an int, Fraction or numeric string."""
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x)
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"{x} has no image in GF({p})")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot convert {type(x).__name__} to a field element")

    def inv(self, x):
        p = self.characteristic
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if p:
            return pow(x, -1, p)
        x = Fraction(1) / x
        return x.numerator if x.denominator == 1 else x

    def neg(self, x):
        return (-x) % self.characteristic if self.characteristic else -x

    def __str__(self):
        return self.name


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def _lex_key(m):
    return m


_ORDERS = {"grevlex": _grevlex_key, "lex": _lex_key}


@dataclass(frozen=True)
class RingSpec:
    """The polynomial ring ``field[variables]`` with a monomial order."""

    variables: tuple
    field: Field = QQ
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate ring variables in {self.variables}")
        if SERIES_VARIABLE in self.variables:
            raise ValueError(f"{SERIES_VARIABLE!r} is reserved for the series variable")
        for v in self.variables:
            if not (v.isidentifier() and v.isascii()):
                raise ValueError(f"bad variable name {v!r}")
        if self.order not in _ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self):
        """Sort key on exponent tuples; larger key means larger monomial."""
        return _ORDERS[self.order]

    @property
    def zero_monomial(self):
        return (0,) * len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial(self)

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {self.zero_monomial: c})

    def gens(self) -> list:
        n = len(self.variables)
        return [
            Polynomial._raw(self, {tuple(int(i == j) for j in range(n)): 1})
            for i in range(n)
        ]

    def gen(self, name: str) -> "Polynomial":
        return self.gens()[self.variables.index(name)]

    def parse(self, src: str) -> "Polynomial":
        from .exprio import parse_poly

        return parse_poly(src, self)

    def describe(self) -> dict:
        return {"vars": list(self.variables), "field": self.field.name, "order": self.order}

    @classmethod
    def from_description(cls, d: dict) -> "RingSpec":
        return cls(tuple(d["vars"]), Field.parse(d.get("field", "Q")), d.get("order", "grevlex"))


def _check_ring(a: "Polynomial", b: "Polynomial"):
    if a.ring != b.ring:
        raise RingMismatch(f"polynomials from different rings: {a.ring} vs {b.ring}")


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial over a :class:`RingSpec`."""

    __slots__ = ("ring", "_terms", "__dict__")

    def __init__(self, ring: RingSpec, terms=None):
        self.ring = ring
        out = {}
        if terms:
            convert = ring.field.convert
            n = ring.nvars
            for m, c in dict(terms).items():
                m = tuple(int(e) for e in m)
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for ring with {n} variables")
                c = convert(c)
                if c != 0:
                    out[m] = c
        self._terms = out

    @classmethod
    def _raw(cls, ring, terms):
        # terms already canonical: no zero coefficients, reduced residues
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        return p

    # -- inspection ------------------------------------------------------

    @property
    def term_dict(self) -> dict:
        return self._terms

    def terms(self) -> list:
        """(monomial, coefficient) pairs in strictly descending monomial order."""
        key = self.ring.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    @cached_property
    def lm(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=self.ring.key)

    @property
    def lc(self):
        return self._terms[self.lm]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        z = self.ring.zero_monomial
        return all(m == z for m in self._terms)

    def constant_coefficient(self):
        return self._terms.get(self.ring.zero_monomial, 0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def __len__(self):
        return len(self._terms)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            _check_ring(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if p:
                s %= p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial._raw(self.ring, {m: (-c) % p for m, c in self._terms.items()})
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: (c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c)
                   for m, c in out.items() if c}
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field.convert(c)
        return self * self.ring.constant(c) if c else self.ring.zero()

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def mul_term(self, m, c) -> "Polynomial":
        """Multiply by the single term ``c * x^m``."""
        p = self.ring.field.characteristic
        out = {}
        for mm, cc in self._terms.items():
            v = cc * c
            if p:
                v %= p
            out[tuple(x + y for x, y in zip(mm, m))] = v
        return Polynomial._raw(self.ring, out)

    def evaluate(self, point) -> object:
        F = self.ring.field
        total = 0
        for m, c in self._terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * F.convert(x) ** e
            total += t
        return F.convert(total)

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __str__(self):
        from .exprio import print_poly

        return print_poly(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


@dataclass(frozen=True)
class RationalPoint:
    """A rational point ``(c1, ..., cn)``, naming the maximal ideal ``(x1-c1, ..., xn-cn)``."""

    ring: RingSpec
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.ring.nvars:
            raise ValueError(
                f"point has {len(self.coords)} coordinates, ring has {self.ring.nvars} variables")
        object.__setattr__(self, "coords", tuple(self.ring.field.convert(c) for c in self.coords))

    @classmethod
    def origin(cls, ring: RingSpec) -> "RationalPoint":
        return cls(ring, (0,) * ring.nvars)

    def is_origin(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __neg__(self):
        F = self.ring.field
        return RationalPoint(self.ring, tuple(F.neg(c) for c in self.coords))

    def maximal_ideal_generators(self) -> list:
        return [x - c for x, c in zip(self.ring.gens(), self.coords)]


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_ring(p, q)
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_ring(p, q)
    return p * q


def shift_to_origin(p: Polynomial, pt: RationalPoint) -> Polynomial:
    """Return ``p(x1 + c1, ..., xn + cn)``; the maximal ideal at ``pt`` goes to ``(x1, ..., xn)``."""
    if pt.ring != p.ring:
        raise RingMismatch("point and polynomial live in different rings")
    if pt.is_origin():
        return p
    ring = p.ring
    shifted = [x + c for x, c in zip(ring.gens(), pt.coords)]
    powers = {}

    def power(i, e):
        if (i, e) not in powers:
            powers[i, e] = shifted[i] ** e
        return powers[i, e]

    result = ring.zero()
    for m, c in p.term_dict.items():
        t = ring.constant(c)
        for i, e in enumerate(m):
            if e:
                t = t * power(i, e)
        result = result + t
    return result
