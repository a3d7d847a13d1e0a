"""Ideals of k[x1..xn] and the decision procedures built on reduced Groebner bases.

The engine is Buchberger's algorithm with the Gebauer-Moeller pair update
(product and chain criteria) and the normal selection strategy.  Internally
polynomials are plain ``{exponent tuple: coefficient}`` dicts; basis elements
are kept monic so reduction never divides.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Polynomial, RationalPoint, RingSpec, shift_to_origin
from .errors import NotMember, NotSubideal, RingMismatch, ZeroIdeal


# ---------------------------------------------------------------------------
# dict-level kernels


def _heap_key(order):
    if order == "grevlex":
        return lambda m: (-sum(m),) + m[::-1]
    return lambda m: tuple(-e for e in m)


def _clean(c, mod):
    if mod:
        return c % mod
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _addmul(acc, src, c, shift, mod):
    """acc += c * x^shift * src, in place."""
    for m, v in src.items():
        mm = tuple(a + b for a, b in zip(m, shift))
        s = acc.get(mm, 0) + c * v
        if mod:
            s %= mod
        if s:
            acc[mm] = s
        else:
            acc.pop(mm, None)


def _dict_mul(a, b, mod):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: _clean(c, mod) for m, c in out.items() if (c % mod if mod else c)}


def _scale(d, c, mod):
    if mod:
        return {m: v * c % mod for m, v in d.items()}
    return {m: _clean(v * c, 0) for m, v in d.items()}


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _reduce(terms, basis, order, mod, quotients=None):
    """Fully reduce ``terms`` by ``basis`` (a list of ``(lm, monic dict)``).

    Returns the remainder dict.  When ``quotients`` is a dict, the quotient of
    every basis position is accumulated into ``quotients[position]``.
    """
    if not terms or not basis:
        return dict(terms)
    hk = _heap_key(order)
    p = dict(terms)
    heap = [(hk(m), m) for m in p]
    heapq.heapify(heap)
    queued = set(p)
    rem = {}
    found = {}
    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        c = p.pop(m, None)
        if c is None:
            continue
        idx = found.get(m, -1)
        if idx == -1:
            idx = None
            for i, (lm, _) in enumerate(basis):
                if _divides(lm, m):
                    idx = i
                    break
            found[m] = idx
        if idx is None:
            rem[m] = c
            continue
        lm, g = basis[idx]
        q = tuple(b - a for a, b in zip(lm, m))
        for mg, cg in g.items():
            if mg == lm:
                continue
            mm = tuple(a + b for a, b in zip(mg, q))
            v = p.get(mm, 0) - c * cg
            if mod:
                v %= mod
            if v:
                p[mm] = v
                if mm not in queued:
                    queued.add(mm)
                    heapq.heappush(heap, (hk(mm), mm))
            else:
                p.pop(mm, None)
        if quotients is not None:
            qd = quotients.setdefault(idx, {})
            s = qd.get(q, 0) + c
            if mod:
                s %= mod
            if s:
                qd[q] = s
            else:
                qd.pop(q, None)
    return {m: _clean(c, mod) for m, c in rem.items()}


class _Engine:
    """One Buchberger run; optionally tracks cofactors over the input list."""

    def __init__(self, ring: RingSpec, gens, track=False):
        self.ring = ring
        self.key = ring.key
        self.order = ring.order
        self.mod = ring.field.characteristic
        self.field = ring.field
        self.track = track
        self.n_input = len(gens)
        self.polys = []
        self.lms = []
        self.cofs = []
        self.G = []
        self.B = []
        self.unit = None
        self.inputs = [p.term_dict for p in gens]

    def _lead(self, d):
        return max(d, key=self.key)

    def _basis(self):
        return [(self.lms[i], self.polys[i]) for i in self.G]

    def _reduce_tracked(self, d, cof):
        if not self.track:
            return _reduce(d, self._basis(), self.order, self.mod), None
        quot = {}
        r = _reduce(d, self._basis(), self.order, self.mod, quot)
        cof = [dict(c) for c in cof]
        for pos, qd in quot.items():
            src = self.cofs[self.G[pos]]
            for i in range(self.n_input):
                if src[i]:
                    prod = _dict_mul(qd, src[i], self.mod)
                    _addmul(cof[i], prod, -1, self.ring.zero_monomial, self.mod)
        return r, cof

    def _insert(self, d, cof):
        lm = self._lead(d)
        inv = self.field.inv(d[lm])
        d = _scale(d, inv, self.mod)
        if cof is not None:
            cof = [_scale(c, inv, self.mod) for c in cof]
        h = len(self.polys)
        self.polys.append(d)
        self.lms.append(lm)
        self.cofs.append(cof)
        if not any(lm):
            self.unit = h
            return
        self._update(h)

    def _update(self, h):
        lms = self.lms
        lh = lms[h]
        C = [(g, _lcm(lms[g], lh)) for g in self.G]
        D = []
        while C:
            g1, l1 = C.pop()
            if _coprime(lms[g1], lh) or not (
                any(_divides(l2, l1) for _, l2 in C) or any(_divides(l2, l1) for _, l2 in D)
            ):
                D.append((g1, l1))
        E = [(g, l) for g, l in D if not _coprime(lms[g], lh)]
        B = [
            (a, b, l)
            for a, b, l in self.B
            if not (_divides(lh, l) and _lcm(lms[a], lh) != l and _lcm(lms[b], lh) != l)
        ]
        B.extend((g, h, l) for g, l in E)
        self.B = B
        self.G = [g for g in self.G if not _divides(lh, lms[g])] + [h]

    def run(self):
        zero = self.ring.zero_monomial
        order = sorted(
            (i for i, d in enumerate(self.inputs) if d),
            key=lambda i: (self.key(self._lead(self.inputs[i])), i),
        )
        for i in order:
            cof = None
            if self.track:
                cof = [{} for _ in range(self.n_input)]
                cof[i] = {zero: 1}
            r, cof = self._reduce_tracked(self.inputs[i], cof)
            if r:
                self._insert(r, cof)
                if self.unit is not None:
                    return self._finish()
        key = self.key
        while self.B:
            best = min(range(len(self.B)), key=lambda t: (key(self.B[t][2]), self.B[t][0], self.B[t][1]))
            a, b, l = self.B.pop(best)
            ta = tuple(x - y for x, y in zip(l, self.lms[a]))
            tb = tuple(x - y for x, y in zip(l, self.lms[b]))
            s = {}
            _addmul(s, self.polys[a], 1, ta, self.mod)
            _addmul(s, self.polys[b], -1, tb, self.mod)
            cof = None
            if self.track:
                cof = [{} for _ in range(self.n_input)]
                for i in range(self.n_input):
                    _addmul(cof[i], self.cofs[a][i], 1, ta, self.mod)
                    _addmul(cof[i], self.cofs[b][i], -1, tb, self.mod)
            if not s:
                continue
            r, cof = self._reduce_tracked(s, cof)
            if r:
                self._insert(r, cof)
                if self.unit is not None:
                    break
        return self._finish()

    def _finish(self):
        if self.unit is not None:
            self.G = [self.unit]
        G = sorted(self.G, key=lambda i: self.key(self.lms[i]), reverse=True)
        out_polys, out_cofs = [], []
        for pos, i in enumerate(G):
            others = [(self.lms[j], self.polys[j]) for j in G if j != i]
            lm = self.lms[i]
            tail = {m: c for m, c in self.polys[i].items() if m != lm}
            if self.track:
                self_G = self.G
                self.G = [j for j in G if j != i]
                r, cof = self._reduce_tracked(tail, self.cofs[i])
                self.G = self_G
                # cofactors above track tail - q*others; the lead term rides along unchanged
            else:
                r = _reduce(tail, others, self.order, self.mod)
                cof = None
            r[lm] = 1
            self.polys[i] = r
            if cof is not None:
                self.cofs[i] = cof
            out_polys.append(Polynomial._raw(self.ring, r))
            out_cofs.append(cof)
        if not self.track:
            return out_polys, None
        cof_polys = [
            [Polynomial._raw(self.ring, {m: _clean(c, self.mod) for m, c in d.items()}) for d in cof]
            for cof in out_cofs
        ]
        return out_polys, cof_polys


# ---------------------------------------------------------------------------
# public types


class Ideal:
    """Finitely generated ideal with a lazily cached reduced Groebner basis.

    The cache is filled by plain attribute assignment; concurrent first calls may
    compute the basis twice, which is harmless because the result is unique.
    """

    def __init__(self, ring: RingSpec, gens=()):
        self.ring = ring
        seen = set()
        kept = []
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError(f"ideal generators must be Polynomials, got {type(g).__name__}")
            if g.ring != ring:
                raise RingMismatch("generator ring differs from ideal ring")
            if g and g not in seen:
                seen.add(g)
                kept.append(g)
        self.gens = tuple(kept)
        self._gb = None
        self._tracked = None

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    def __repr__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")" if self.gens else "(0)"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def groebner(self) -> tuple:
        if self._gb is None:
            if self._tracked is not None:
                self._gb = self._tracked[0]
            else:
                polys, _ = _Engine(self.ring, self.gens).run()
                self._gb = tuple(polys)
        return self._gb

    def _basis(self):
        return [(g.lm, g.term_dict) for g in self.groebner()]

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise RingMismatch("polynomial and ideal live in different rings")
        r = _reduce(p.term_dict, self._basis(), self.ring.order, self.ring.field.characteristic)
        return Polynomial._raw(self.ring, r)

    def __contains__(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        if other.ring != self.ring:
            raise RingMismatch("ideals live in different rings")
        return all(g in self for g in other.gens)

    def compact(self) -> "Ideal":
        """The same ideal, generated by its reduced Groebner basis."""
        out = Ideal(self.ring, self.groebner())
        out._gb = self.groebner()
        return out

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, e):
        return ideal_power(self, e)


@dataclass(frozen=True)
class MembershipCertificate:
    """``target = sum(cofactors[i] * generators[i])``, checkable by re-expansion."""

    target: Polynomial
    generators: tuple
    cofactors: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "cofactors", tuple(self.cofactors))

    def expand(self) -> Polynomial:
        if len(self.generators) != len(self.cofactors):
            raise ValueError("certificate needs one cofactor per generator")
        total = self.target.ring.zero()
        for c, g in zip(self.cofactors, self.generators):
            total = total + c * g
        return total

    def is_valid(self) -> bool:
        return len(self.generators) == len(self.cofactors) and self.expand() == self.target


# ---------------------------------------------------------------------------
# operations


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")


def groebner_basis(I: Ideal) -> list:
    return list(I.groebner())


def normal_form(p: Polynomial, I: Ideal) -> Polynomial:
    return I.normal_form(p)


def contains(I: Ideal, p: Polynomial) -> bool:
    return p in I


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return I.groebner() == J.groebner()


def is_subideal(J: Ideal, I: Ideal) -> bool:
    """True iff J is contained in I."""
    _same_ring(I, J)
    return I.contains_ideal(J)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, [a * b for a in I.gens for b in J.gens])


def ideal_power(I: Ideal, e: int) -> Ideal:
    """Iterated product with deduplication; ``I**0`` is the unit ideal."""
    if e < 0:
        raise ValueError("ideal exponent must be non-negative")
    out = Ideal.unit(I.ring)
    for _ in range(e):
        out = ideal_product(out, I)
    return out


def compact_power(I: Ideal, e: int) -> Ideal:
    """``I**e`` generated by a reduced Groebner basis after every multiplication."""
    if e < 0:
        raise ValueError("ideal exponent must be non-negative")
    out = Ideal.unit(I.ring)
    base = I.compact()
    for _ in range(e):
        out = ideal_product(out, base).compact()
    return out


def lift(p: Polynomial, I: Ideal) -> MembershipCertificate:
    """Cofactors expressing ``p`` over the original generators of ``I``."""
    if p.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    ring = I.ring
    if p.is_zero():
        return MembershipCertificate(p, I.gens, [ring.zero()] * len(I.gens))
    if I._tracked is None:
        polys, cofs = _Engine(ring, I.gens, track=True).run()
        I._tracked = (tuple(polys), cofs)
        if I._gb is None:
            I._gb = tuple(polys)
    gb, cofs = I._tracked
    mod = ring.field.characteristic
    quot = {}
    r = _reduce(p.term_dict, [(g.lm, g.term_dict) for g in gb], ring.order, mod, quot)
    if r:
        raise NotMember(f"{p} is not in the ideal {I!r}")
    cofactors = [ring.zero() for _ in I.gens]
    for pos, qd in quot.items():
        q = Polynomial._raw(ring, {m: _clean(c, mod) for m, c in qd.items()})
        for i, c in enumerate(cofs[pos]):
            if c:
                cofactors[i] = cofactors[i] + q * c
    cert = MembershipCertificate(p, I.gens, cofactors)
    assert cert.is_valid(), "lift produced an invalid certificate"
    return cert


class _Echelon:
    """Incremental row echelon form over the field, rows keyed by pivot monomial."""

    def __init__(self, ring):
        self.key = ring.key
        self.field = ring.field
        self.rows = {}

    def insert(self, vec: dict) -> bool:
        F = self.field
        mod = F.characteristic
        v = dict(vec)
        while v:
            m = max(v, key=self.key)
            row = self.rows.get(m)
            if row is None:
                inv = F.inv(v[m])
                self.rows[m] = _scale(v, inv, mod)
                return True
            _addmul(v, row, -v[m], (0,) * len(m), mod)
        return False


def _shifted(I: Ideal, pt: RationalPoint):
    if pt.ring != I.ring:
        raise RingMismatch("point and ideal live in different rings")
    if I.is_zero():
        raise ZeroIdeal("local generator count of the zero ideal")
    ring = I.ring
    gens = [shift_to_origin(g, pt) for g in I.gens]
    m_times_I = Ideal(ring, [x * g for x in ring.gens() for g in gens])
    return gens, m_times_I


def mu_at_point(I: Ideal, pt: RationalPoint) -> int:
    """Minimal number of generators of I localized at the maximal ideal of ``pt``.

    Computed as ``dim_k(I/mI)``: the rank of the normal forms of I's generators
    modulo ``mI`` after moving ``pt`` to the origin.
    """
    gens, mI = _shifted(I, pt)
    ech = _Echelon(I.ring)
    return sum(ech.insert(mI.normal_form(g).term_dict) for g in gens)


def minimal_generators_at(I: Ideal, pt: RationalPoint) -> list:
    """Keep-first sublist of I's generators that minimally generates I at ``pt``."""
    gens, mI = _shifted(I, pt)
    ech = _Echelon(I.ring)
    return [orig for orig, g in zip(I.gens, gens) if ech.insert(mI.normal_form(g).term_dict)]


def locally_equal(I: Ideal, J: Ideal, pt: RationalPoint) -> bool:
    """For ``J`` inside ``I``: whether ``J`` and ``I`` agree after localizing at ``pt``.

    Uses the global criterion ``I ⊆ J + mI``, valid because ``I/(J + mI)`` is
    supported only at ``m``.
    """
    _same_ring(I, J)
    if not is_subideal(J, I):
        raise NotSubideal("locally_equal needs J inside I")
    m = Ideal(I.ring, pt.maximal_ideal_generators())
    return is_subideal(I, ideal_sum(J, ideal_product(m, I)))


def reduction_number(J: Ideal, I: Ideal, r_max: int):
    """Least ``r <= r_max`` with ``I**(r+1) == J * I**r``, else ``None``."""
    _same_ring(I, J)
    if not is_subideal(J, I):
        raise NotSubideal("reduction_number needs J inside I")
    Ic = I.compact()
    power = Ideal.unit(I.ring)
    for r in range(r_max + 1):
        # J*I^r is always inside I^(r+1), so one inclusion decides equality
        nxt = ideal_product(power, Ic).compact()
        if ideal_product(J, power).contains_ideal(nxt):
            return r
        power = nxt
    return None


def global_generator_bound(I: Ideal) -> int:
    """Size of a greedily inter-reduced generating set; bounds the local count everywhere."""
    kept = list(I.gens)
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1:]
        if rest and kept[i] in Ideal(I.ring, rest):
            kept.pop(i)
        else:
            i += 1
    return len(kept)


def fingerprint(I: Ideal) -> str:
    """Short stable hash of the reduced Groebner basis."""
    text = "\n".join(str(g) for g in I.groebner())
    head = f"{I.ring.field.name}|{','.join(I.ring.variables)}|{I.ring.order}\n"
    return hashlib.sha256((head + text).encode()).hexdigest()[:16]
