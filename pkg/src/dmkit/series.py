"""Power series over R = k[x1..xn]: truncations, units, and unit-tail form.

A :class:`UnitTailSeries` stores ``f = sum_j a_j * u_j * X**j`` with distinct
exponents ``j`` and units ``u_j`` of R[[X]].  For any such representation the
content of ``f`` is exactly the ideal ``(a_0, ..., a_n)``, which is what makes
power-series contents computable here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Polynomial, RingSpec
from .errors import (
    InsufficientUnitPrecision,
    NotStabilized,
    PrecisionExceeded,
    RecurrenceMismatch,
    RingMismatch,
)
from .groebner import Ideal, NotMember, lift

DEFAULT_PRECISION = 16


@dataclass(frozen=True)
class TruncatedSeries:
    """``coeffs[0] + coeffs[1] X + ... + coeffs[d] X^d`` modulo ``X^(d+1)``."""

    ring: RingSpec
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        for c in coeffs:
            if c.ring != self.ring:
                raise RingMismatch("series coefficient from a different ring")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_list(cls, ring, coeffs, precision=None):
        coeffs = [c if isinstance(c, Polynomial) else ring.constant(c) for c in coeffs]
        if precision is not None:
            if len(coeffs) > precision + 1:
                coeffs = coeffs[: precision + 1]
            coeffs = coeffs + [ring.zero()] * (precision + 1 - len(coeffs))
        return cls(ring, tuple(coeffs))

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def truncate(self, d: int) -> "TruncatedSeries":
        if d > self.precision:
            raise PrecisionExceeded(f"precision {d} exceeds stored precision {self.precision}")
        return TruncatedSeries(self.ring, self.coeffs[: d + 1])

    def __add__(self, other):
        if other.ring != self.ring:
            raise RingMismatch("series from different rings")
        d = min(self.precision, other.precision)
        return TruncatedSeries(self.ring, tuple(a + b for a, b in zip(self.coeffs[: d + 1], other.coeffs)))

    def __mul__(self, other):
        return series_mul(self, other)


@dataclass(frozen=True)
class UnitSeries:
    """A unit of R[[X]]: constant coefficient is a nonzero scalar.

    ``precision=None`` marks a polynomial unit (zero beyond the listed
    coefficients); otherwise the coefficients are known modulo ``X^(precision+1)``.
    """

    ring: RingSpec
    coeffs: tuple
    precision: int | None = None

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs or not coeffs[0].is_constant() or coeffs[0].is_zero():
            raise ValueError("a unit series needs a nonzero scalar constant term")
        for c in coeffs:
            if c.ring != self.ring:
                raise RingMismatch("unit coefficient from a different ring")
        if self.precision is None:
            while len(coeffs) > 1 and coeffs[-1].is_zero():
                coeffs = coeffs[:-1]
        else:
            coeffs = coeffs[: self.precision + 1]
            coeffs = coeffs + (self.ring.zero(),) * (self.precision + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def one(cls, ring):
        return cls(ring, (ring.one(),))

    @classmethod
    def polynomial(cls, ring, coeffs):
        return cls(ring, tuple(c if isinstance(c, Polynomial) else ring.constant(c) for c in coeffs))

    @classmethod
    def geometric(cls, ring, precision=DEFAULT_PRECISION):
        """``1 + X + X^2 + ...`` known to ``precision``."""
        return cls(ring, (ring.one(),) * (precision + 1), precision)

    @property
    def is_polynomial(self) -> bool:
        return self.precision is None

    def coefficient(self, i: int) -> Polynomial:
        if i < len(self.coeffs):
            return self.coeffs[i]
        if self.precision is None:
            return self.ring.zero()
        raise InsufficientUnitPrecision(f"unit known to X^{self.precision}, coefficient {i} requested")

    def to_truncated(self, d: int) -> TruncatedSeries:
        return TruncatedSeries(self.ring, tuple(self.coefficient(i) for i in range(d + 1)))

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c.is_zero() for c in self.coeffs[1:])


@dataclass(frozen=True)
class UnitTailSeries:
    """``sum a_j u_j X^j`` over distinct ``j``; ``terms`` holds ``(a_j, j, u_j)`` sorted by ``j``."""

    ring: RingSpec
    terms: tuple
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        terms = tuple(sorted(((a, int(j), u) for a, j, u in self.terms), key=lambda t: t[1]))
        js = [j for _, j, _ in terms]
        if len(set(js)) != len(js):
            raise ValueError("unit-tail exponents must be distinct")
        for a, j, u in terms:
            if j < 0 or j > self.precision:
                raise ValueError(f"exponent {j} outside working precision {self.precision}")
            if a.ring != self.ring or u.ring != self.ring:
                raise RingMismatch("unit-tail term from a different ring")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def polynomial(cls, ring, coeffs, precision=DEFAULT_PRECISION):
        """The polynomial ``sum coeffs[j] X^j`` with every unit equal to 1."""
        one = UnitSeries.one(ring)
        coeffs = [c if isinstance(c, Polynomial) else ring.constant(c) for c in coeffs]
        terms = [(c, j, one) for j, c in enumerate(coeffs) if c]
        return cls(ring, tuple(terms), max(precision, len(coeffs) - 1))

    @property
    def is_polynomial(self) -> bool:
        return all(u.is_polynomial for _, _, u in self.terms)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a, _, _ in self.terms)

    def known_degree(self):
        """Highest X-degree whose coefficient is determined, or None for polynomials."""
        bounds = [j + u.precision for a, j, u in self.terms if not u.is_polynomial and a]
        return min(bounds) if bounds else None

    def x_degree(self):
        """X-degree of a polynomial series (-1 for zero)."""
        if not self.is_polynomial:
            raise ValueError("series is not a polynomial")
        return max((j + len(u.coeffs) - 1 for a, j, u in self.terms if a), default=-1)

    def insert_term(self, a, j, u) -> "UnitTailSeries":
        return UnitTailSeries(self.ring, self.terms + ((a, j, u),), max(self.precision, j))


def expand(f: UnitTailSeries, d: int) -> TruncatedSeries:
    """Coefficients of ``f`` modulo ``X^(d+1)``."""
    if d < 0:
        raise ValueError("precision must be non-negative")
    ring = f.ring
    out = [ring.zero() for _ in range(d + 1)]
    for a, j, u in f.terms:
        if not a:
            continue
        for i in range(d + 1 - j):
            c = u.coefficient(i)
            if c:
                out[i + j] = out[i + j] + a * c
    return TruncatedSeries(ring, tuple(out))


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Truncated Cauchy product at precision ``min(d_f, d_g)``."""
    if f.ring != g.ring:
        raise RingMismatch("series from different rings")
    d = min(f.precision, g.precision)
    out = []
    for n in range(d + 1):
        s = f.ring.zero()
        for i in range(n + 1):
            a, b = f.coeffs[i], g.coeffs[n - i]
            if a and b:
                s = s + a * b
        out.append(s)
    return TruncatedSeries(f.ring, tuple(out))


def unit_inverse(u: UnitSeries, d: int) -> UnitSeries:
    """Inverse of ``u`` modulo ``X^(d+1)`` by solving coefficients in order."""
    ring = u.ring
    F = ring.field
    c0 = F.inv(u.coeffs[0].constant_coefficient())
    inv = [ring.constant(c0)]
    for n in range(1, d + 1):
        s = ring.zero()
        for i in range(1, n + 1):
            c = u.coefficient(i)
            if c:
                s = s + c * inv[n - i]
        inv.append(-(s.scale(c0)))
    return UnitSeries(ring, tuple(inv), d)


def content(f: UnitTailSeries) -> Ideal:
    """Exact content ``(a_0, ..., a_n)`` of a unit-tail series."""
    return Ideal(f.ring, [a for a, _, _ in f.terms])


def truncated_content(f: TruncatedSeries, d: int) -> Ideal:
    """The ideal ``(a_0, ..., a_d)``."""
    if d > f.precision:
        raise PrecisionExceeded(f"requested {d}, series known to X^{f.precision}")
    return Ideal(f.ring, f.coeffs[: d + 1])


def stabilization_index(f: TruncatedSeries) -> int:
    """Least n with every later stored coefficient in ``(a_0, ..., a_n)``.

    This is the last index at which the ascending chain of partial contents
    grows; it certifies stabilization only up to the stored precision.
    """
    last = 0
    chain = []
    for i, a in enumerate(f.coeffs):
        if a and (not chain or a not in Ideal(f.ring, chain)):
            last = i
            chain.append(a)
            # keep the chain small: swap in its reduced basis
            chain = list(Ideal(f.ring, chain).groebner())
    return last


def unit_tail_rewrite(f: TruncatedSeries, recurrence=None) -> UnitTailSeries:
    """Rewrite a truncation as ``sum_{j<=n} a_j u_j X^j`` with ``u_j = 1 + sum_i r_ij X^(i-j)``.

    ``recurrence`` lists rows ``[r_i0, ..., r_in]`` for ``i = n+1, ..., d``; without
    it the rows come from membership certificates against ``(a_0, ..., a_n)``.
    """
    ring = f.ring
    d = f.precision
    a = f.coeffs
    if recurrence is not None:
        rows = [[r if isinstance(r, Polynomial) else ring.constant(r) for r in row] for row in recurrence]
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise RecurrenceMismatch("recurrence rows have different lengths")
        n = widths.pop() - 1 if widths else d
        if len(rows) != d - n:
            raise RecurrenceMismatch(f"expected {d - n} recurrence rows for indices {n + 1}..{d}")
        for i, row in zip(range(n + 1, d + 1), rows):
            s = ring.zero()
            for j, r in enumerate(row):
                s = s + r * a[j]
            if s != a[i]:
                raise RecurrenceMismatch(f"row for index {i} does not reproduce coefficient {a[i]}")
    else:
        n = stabilization_index(f)
        base = Ideal(ring, a[: n + 1])
        rows = []
        for i in range(n + 1, d + 1):
            if not a[i]:
                rows.append([ring.zero()] * (n + 1))
                continue
            try:
                cert = lift(a[i], base)
            except NotMember:
                raise NotStabilized(f"coefficient {i} is not in the content of the first {n + 1}") from None
            by_gen = dict(zip(cert.generators, cert.cofactors))
            row, seen = [], set()
            for j in range(n + 1):
                # Ideal merges repeated generators; the first occurrence carries the cofactor
                if a[j] and a[j] not in seen:
                    row.append(by_gen[a[j]])
                    seen.add(a[j])
                else:
                    row.append(ring.zero())
            rows.append(row)
    terms = []
    for j in range(n + 1):
        coeffs = [ring.zero()] * (d - j + 1)
        coeffs[0] = ring.one()
        for i, row in zip(range(n + 1, d + 1), rows):
            coeffs[i - j] = row[j]
        terms.append((a[j], j, UnitSeries(ring, tuple(coeffs), d - j)))
    return UnitTailSeries(ring, tuple(terms), d)


def pdeg_upper_bound(f: UnitTailSeries) -> int:
    """Largest exponent carrying a nonzero coefficient; bounds the pseudodegree from above."""
    return max((j for a, j, _ in f.terms if a), default=0)
