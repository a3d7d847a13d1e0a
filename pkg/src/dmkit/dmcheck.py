"""Certificates for the power-series Dedekind-Mertens identity

    c(f)^k c(g) = c(f)^(k-1) c(fg)

over R = k[x1..xn].  Contents of unit-tail series are exact; c(fg) is only
ever approached from below by truncated contents, so "verified" always rests
on a finite truncation depth ``d_cert`` and "refuted" is only issued when both
factors are polynomials and every coefficient of fg has been seen.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import QQ, Field, Polynomial, RationalPoint, RingSpec
from .errors import ContentNotUnit, NotVerified, PreconditionFailed, RingMismatch, ZeroSeries
from .groebner import (
    Ideal,
    MembershipCertificate,
    compact_power,
    fingerprint,
    global_generator_bound,
    ideal_equal,
    ideal_power,
    ideal_product,
    lift,
    locally_equal,
    mu_at_point,
    reduction_number,
)
from .series import (
    TruncatedSeries,
    UnitSeries,
    UnitTailSeries,
    content,
    expand,
    pdeg_upper_bound,
    series_mul,
    truncated_content,
)

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"
EXPONENT_SOURCES = ("user", "mu_at_point", "generator-count bound", "unit-content")


def _cert_to_dict(c: MembershipCertificate) -> dict:
    return {
        "target": str(c.target),
        "generators": [str(g) for g in c.generators],
        "cofactors": [str(q) for q in c.cofactors],
    }


def _cert_from_dict(ring, d) -> MembershipCertificate:
    return MembershipCertificate(
        ring.parse(d["target"]),
        tuple(ring.parse(s) for s in d["generators"]),
        tuple(ring.parse(s) for s in d["cofactors"]),
    )


@dataclass
class DMReport:
    """Outcome of one Dedekind-Mertens check."""

    ring: RingSpec
    k: int
    k_source: str
    verdict: str
    d_cert: int | None
    d_max: int
    lhs_fingerprint: str
    rhs_fingerprint: str
    min_exponent: int | None = None
    reduction_number: int | None = None
    generator_bound: int | None = None
    point: tuple | None = None
    witness: Polynomial | None = None
    certificates: list = field(default_factory=list)
    exponent_scan: list = field(default_factory=list)
    seed: int | None = None

    def __post_init__(self):
        if self.verdict not in (VERIFIED, REFUTED, INCONCLUSIVE):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == VERIFIED and self.d_cert is None:
            raise ValueError("a verified report needs a certification depth")

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    def to_dict(self) -> dict:
        return {
            "schema": "dm-report/1",
            "ring": self.ring.describe(),
            "k": self.k,
            "k_source": self.k_source,
            "verdict": self.verdict,
            "d_cert": self.d_cert,
            "d_max": self.d_max,
            "lhs_fingerprint": self.lhs_fingerprint,
            "rhs_fingerprint": self.rhs_fingerprint,
            "min_exponent": self.min_exponent,
            "reduction_number": self.reduction_number,
            "generator_bound": self.generator_bound,
            "point": None if self.point is None else [str(c) for c in self.point],
            "witness": None if self.witness is None else str(self.witness),
            "certificates": [_cert_to_dict(c) for c in self.certificates],
            "exponent_scan": [{"k": k, "verdict": v} for k, v in self.exponent_scan],
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DMReport":
        from fractions import Fraction

        ring = RingSpec.from_description(d["ring"])
        point = d.get("point")
        return cls(
            ring=ring,
            k=d["k"],
            k_source=d["k_source"],
            verdict=d["verdict"],
            d_cert=d["d_cert"],
            d_max=d["d_max"],
            lhs_fingerprint=d["lhs_fingerprint"],
            rhs_fingerprint=d["rhs_fingerprint"],
            min_exponent=d.get("min_exponent"),
            reduction_number=d.get("reduction_number"),
            generator_bound=d.get("generator_bound"),
            point=None if point is None else tuple(ring.field.convert(Fraction(c)) for c in point),
            witness=None if d.get("witness") is None else ring.parse(d["witness"]),
            certificates=[_cert_from_dict(ring, c) for c in d.get("certificates", [])],
            exponent_scan=[(e["k"], e["verdict"]) for e in d.get("exponent_scan", [])],
            seed=d.get("seed"),
        )


def default_dmax(f: UnitTailSeries, g: UnitTailSeries, k: int) -> int:
    return 4 * (k + pdeg_upper_bound(f) + pdeg_upper_bound(g)) + 8


def _pair_ring(f, g):
    if f.ring != g.ring:
        raise RingMismatch("series live over different rings")
    return f.ring


def _search_depth(f, g, d_max):
    """Top truncation depth to search and whether fg is fully known there."""
    top = d_max
    for s in (f, g):
        known = s.known_degree()
        if known is not None:
            top = min(top, known)
    if f.is_polynomial and g.is_polynomial:
        full = max(f.x_degree() + g.x_degree(), 0)
        if top >= full:
            return full, True
    return top, False


def _product_coefficients(f, g, d):
    return series_mul(expand(f, d), expand(g, d))


def dm_exponent(g: UnitTailSeries, pt: RationalPoint) -> int:
    """Local generator count of ``c(g)`` at ``pt``.

    This is the exponent of the main identity whenever the point dominates every
    maximal ideal, e.g. the origin for a homogeneous content; elsewhere pair it
    with :func:`global_generator_bound`.
    """
    if g.is_zero():
        raise ZeroSeries("exponent of the zero series")
    return mu_at_point(content(g), pt)


def choose_exponent(g: UnitTailSeries, pt: RationalPoint | None = None):
    """(k, source, generator bound) for ``g``.

    With no point, the origin is used when ``c(g)`` is homogeneous (its local
    count there dominates every maximal ideal); otherwise the global generator
    bound is the exponent.
    """
    if g.is_zero():
        raise ZeroSeries("exponent of the zero series")
    cg = content(g)
    bound = global_generator_bound(cg)
    if pt is not None:
        return mu_at_point(cg, pt), "mu_at_point", bound
    if cg.is_homogeneous():
        return mu_at_point(cg, RationalPoint.origin(g.ring)), "mu_at_point", bound
    return bound, "generator-count bound", bound


def _first_outside(gens, ideal):
    for p in gens:
        if p not in ideal:
            return p
    return None


def dm_check(f: UnitTailSeries, g: UnitTailSeries, k: int, d_max: int | None = None, *,
             k_source="user", certificates=False, point=None, generator_bound=None,
             seed=None) -> DMReport:
    """Decide ``c(f)^k c(g) = c(f)^(k-1) c(fg)`` by ascending truncations of fg."""
    if k < 1:
        raise ValueError("exponent k must be at least 1")
    ring = _pair_ring(f, g)
    if d_max is None:
        d_max = default_dmax(f, g, k)
    cf = content(f).compact()
    cg = content(g).compact()
    lhs = ideal_product(compact_power(cf, k), cg).compact()
    cf_low = compact_power(cf, k - 1)
    top, exact = _search_depth(f, g, d_max)

    def report(verdict, d_cert, rhs, witness=None, certs=()):
        return DMReport(
            ring=ring, k=k, k_source=k_source, verdict=verdict, d_cert=d_cert, d_max=top,
            lhs_fingerprint=fingerprint(lhs), rhs_fingerprint=fingerprint(rhs),
            generator_bound=generator_bound, point=None if point is None else tuple(point.coords),
            witness=witness, certificates=list(certs), seed=seed,
        )

    if lhs.is_zero():
        return report(VERIFIED, 0, Ideal(ring, []))

    fg = _product_coefficients(f, g, top)
    partial = Ideal(ring, [])
    rhs = Ideal(ring, [])
    witness = lhs.gens[0]
    for d in range(top + 1):
        a = fg[d]
        if not a or a in partial:
            # the right side is unchanged, so the last answer stands
            continue
        partial = Ideal(ring, partial.gens + (a,)).compact()
        rhs = ideal_product(cf_low, partial).compact()
        witness = _first_outside(lhs.gens, rhs)
        if witness is None:
            if not lhs.contains_ideal(rhs):
                raise AssertionError("c(fg) escaped c(f)c(g); the engine is inconsistent")
            certs = [lift(p, rhs) for p in lhs.gens] if certificates else []
            return report(VERIFIED, d, rhs, certs=certs)
    return report(REFUTED if exact else INCONCLUSIVE, None, rhs, witness=witness)


def exponent_scan(f, g, k_max: int, d_max: int | None = None) -> list:
    """``(k, verdict)`` for k = 1, 2, ... up to the first verified exponent or ``k_max``."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    scan = []
    for k in range(1, k_max + 1):
        verdict = dm_check(f, g, k, d_max).verdict
        scan.append((k, verdict))
        if verdict == VERIFIED:
            break
    return scan


def dm_min_exponent(f, g, k_max: int, d_max: int | None = None):
    """Least ``k <= k_max`` whose check verifies, else None."""
    k, verdict = exponent_scan(f, g, k_max, d_max)[-1]
    return k if verdict == VERIFIED else None


def unit_content_identity_check(f, g, d_max: int | None = None) -> DMReport:
    """Certify ``c(fg) = c(g)`` when ``c(f)`` is the unit ideal."""
    ring = _pair_ring(f, g)
    if not content(f).is_unit():
        raise ContentNotUnit("c(f) is not the unit ideal")
    if d_max is None:
        d_max = default_dmax(f, g, 1)
    cg = content(g).compact()
    top, exact = _search_depth(f, g, d_max)
    fg = _product_coefficients(f, g, top)
    for d in range(top + 1):
        if fg[d] not in cg:
            raise AssertionError(f"coefficient {d} of fg escaped c(g)")
    partial = Ideal(ring, [])
    for d in range(top + 1):
        a = fg[d]
        if not a or a in partial:
            continue
        partial = Ideal(ring, partial.gens + (a,)).compact()
        if partial.contains_ideal(cg):
            return DMReport(ring=ring, k=1, k_source="unit-content", verdict=VERIFIED, d_cert=d,
                            d_max=top, lhs_fingerprint=fingerprint(cg), rhs_fingerprint=fingerprint(partial))
    if cg.is_zero():
        return DMReport(ring=ring, k=1, k_source="unit-content", verdict=VERIFIED, d_cert=0,
                        d_max=top, lhs_fingerprint=fingerprint(cg), rhs_fingerprint=fingerprint(partial))
    return DMReport(ring=ring, k=1, k_source="unit-content", verdict=REFUTED if exact else INCONCLUSIVE,
                    d_cert=None, d_max=top, lhs_fingerprint=fingerprint(cg),
                    rhs_fingerprint=fingerprint(partial), witness=_first_outside(cg.gens, partial))


def mingen_perturbation_check(g: UnitTailSeries, b: Polynomial, i: int, u: UnitSeries,
                              pt: RationalPoint) -> bool:
    """Check that ``h = g + b u X^i`` has the same content as ``g`` near ``pt``.

    Requires ``b`` in ``m c(g)``.  Globally only ``c(h) ⊆ c(g)`` holds; equality
    is local, and is decided by ``c(g) ⊆ c(h) + m c(g)``.  Returns True or raises.
    """
    ring = g.ring
    if b.ring != ring or u.ring != ring or pt.ring != ring:
        raise RingMismatch("perturbation data from a different ring")
    cg = content(g)
    m = Ideal(ring, pt.maximal_ideal_generators())
    m_cg = ideal_product(m, cg)
    if b not in m_cg:
        raise PreconditionFailed(f"{b} is not in m*c(g) at {pt.coords}")
    if not b:
        return True
    if i not in {j for _, j, _ in g.terms}:
        ch = content(g.insert_term(b, i, u))
        if not cg.contains_ideal(ch) or not locally_equal(cg, ch, pt):
            raise AssertionError(f"perturbation changed the local content: c(g)={cg!r}, c(h)={ch!r}")
        return True
    # exponent i is taken: bound c(h) from below by truncated contents
    known = [d for d in (g.known_degree(), None if u.is_polynomial else i + u.precision) if d is not None]
    if g.is_polynomial and u.is_polynomial:
        top = max(g.x_degree(), i + len(u.coeffs) - 1)
    else:
        top = min(known) if known else g.precision
    coeffs = list(expand(g, top).coeffs)
    for n in range(i, top + 1):
        c = u.coefficient(n - i)
        if c:
            coeffs[n] = coeffs[n] + b * c
    h = TruncatedSeries(ring, tuple(coeffs))
    partial = Ideal(ring, [])
    for d in range(top + 1):
        if h[d] and h[d] not in partial:
            partial = Ideal(ring, partial.gens + (h[d],))
            if not cg.contains_ideal(partial):
                raise AssertionError("a coefficient of h escaped c(g)")
            if locally_equal(cg, partial, pt):
                return True
    raise AssertionError(f"local equality of contents not certified up to X^{top}")


def reduction_corollary_check(f, g, k: int, d_max: int | None = None) -> "ReductionReport":
    """Reduction number of ``c(fg)`` (or its certified truncation) in ``c(f)c(g)``."""
    rep = dm_check(f, g, k, d_max)
    if not rep.verified:
        raise NotVerified(rep)
    ring = f.ring
    top, exact = _search_depth(f, g, d_max if d_max is not None else default_dmax(f, g, k))
    depth = top if exact else rep.d_cert
    J = truncated_content(_product_coefficients(f, g, depth), depth)
    I = ideal_product(content(f), content(g))
    r = reduction_number(J, I, k - 1)
    return ReductionReport(k=k, d_cert=rep.d_cert, exact=exact, reduction_number=r,
                           holds=r is not None and r <= k - 1, ring=ring)


@dataclass
class ReductionReport:
    ring: RingSpec
    k: int
    d_cert: int
    exact: bool
    reduction_number: int | None
    holds: bool

    def to_dict(self):
        return {
            "schema": "dm-reduction/1",
            "ring": self.ring.describe(),
            "k": self.k,
            "d_cert": self.d_cert,
            "exact_content": self.exact,
            "reduction_number": self.reduction_number,
            "bound": self.k - 1,
            "holds": self.holds,
        }


# ---------------------------------------------------------------------------
# fixed constructions


@dataclass
class CounterexampleReport:
    ring: RingSpec
    k: int
    witness: Polynomial | None
    inequality_certified: bool
    mu: int
    contrast: DMReport

    @property
    def passed(self) -> bool:
        return self.inequality_certified and self.contrast.verified

    def to_dict(self):
        return {
            "schema": "dm-counterexample/1",
            "ring": self.ring.describe(),
            "k": self.k,
            "witness": None if self.witness is None else str(self.witness),
            "inequality_certified": self.inequality_certified,
            "mu_cg_at_origin": self.mu,
            "contrast": self.contrast.to_dict(),
            "passed": self.passed,
        }


def generic_pair(k: int, fld: Field = QQ):
    """Generic degree-k polynomials ``sum a_i X^i`` and ``sum b_i X^i`` over F[a0..ak, b0..bk]."""
    names = [f"a{i}" for i in range(k + 1)] + [f"b{i}" for i in range(k + 1)]
    ring = RingSpec(tuple(names), fld)
    gens = ring.gens()
    f = UnitTailSeries.polynomial(ring, gens[: k + 1])
    g = UnitTailSeries.polynomial(ring, gens[k + 1:])
    return ring, f, g


def generic_counterexample(k: int, fld: Field = QQ) -> CounterexampleReport:
    """Certify ``(c(f)c(g))^k != (c(f)c(g))^(k-1) c(fg)`` for generic degree-k f, g.

    Also checks the identity at the local exponent ``mu(c(g)) = k+1`` for contrast.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ring, f, g = generic_pair(k, fld)
    fg = _product_coefficients(f, g, 2 * k)
    I = ideal_product(content(f), content(g))
    lhs = ideal_power(I, k)
    rhs = ideal_product(ideal_power(I, k - 1), truncated_content(fg, 2 * k))
    witness = _first_outside(lhs.gens, rhs)
    mu = dm_exponent(g, RationalPoint.origin(ring))
    contrast = dm_check(f, g, k + 1, k_source="mu_at_point")
    return CounterexampleReport(ring=ring, k=k, witness=witness, inequality_certified=witness is not None,
                                mu=mu, contrast=contrast)


@dataclass
class RushReport:
    ring: RingSpec
    coefficients: list
    expected_coefficients: list
    content_fg: list
    content_g: list
    contents_equal: bool
    certificates: list
    printed_certificates: list
    proposition: DMReport

    @property
    def passed(self) -> bool:
        return (
            self.coefficients == self.expected_coefficients
            and self.contents_equal
            and all(c.is_valid() for c in self.certificates)
            and all(c.is_valid() for c in self.printed_certificates)
            and self.proposition.verified
        )

    def to_dict(self):
        return {
            "schema": "dm-rush/1",
            "ring": self.ring.describe(),
            "coefficients": [str(c) for c in self.coefficients],
            "content_fg_groebner": [str(c) for c in self.content_fg],
            "content_g_groebner": [str(c) for c in self.content_g],
            "contents_equal": self.contents_equal,
            "certificates": [_cert_to_dict(c) for c in self.certificates],
            "printed_certificates_valid": [c.is_valid() for c in self.printed_certificates],
            "proposition": self.proposition.to_dict(),
            "passed": self.passed,
        }


def rush_pair(fld: Field = QQ, precision: int = 16):
    """R = F[u,v], f = v + X, g = u + vX(1 + X + X^2 + ...)."""
    ring = RingSpec(("u", "v"), fld)
    u, v = ring.gens()
    one = UnitSeries.one(ring)
    f = UnitTailSeries(ring, ((v, 0, one), (ring.one(), 1, one)), precision)
    g = UnitTailSeries(ring, ((u, 0, one), (v, 1, UnitSeries.geometric(ring, precision - 1))), precision)
    return ring, f, g


def rush_example_check(depth: int = 4, fld: Field = QQ) -> RushReport:
    ring, f, g = rush_pair(fld)
    u, v = ring.gens()
    fg = _product_coefficients(f, g, depth)
    expected = [u * v, u + v ** 2] + [v + v ** 2] * (depth - 1)
    gens = (u * v, u + v ** 2, v + v ** 2)
    cfg = Ideal(ring, gens)
    cg = content(g)
    equal = ideal_equal(cfg, cg) and ideal_equal(cg, Ideal(ring, [u, v]))
    certs = [lift(v, cfg), lift(u - v, cfg)]
    printed = [
        MembershipCertificate(v, gens, (ring.constant(-1), v, 1 - v)),
        MembershipCertificate(u - v, gens, (ring.zero(), ring.one(), ring.constant(-1))),
    ]
    prop = unit_content_identity_check(f, g)
    return RushReport(ring=ring, coefficients=list(fg.coeffs), expected_coefficients=expected,
                      content_fg=list(cfg.groebner()), content_g=list(cg.groebner()),
                      contents_equal=equal, certificates=certs, printed_certificates=printed,
                      proposition=prop)
