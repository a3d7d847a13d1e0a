import random

import pytest

from dmkit.algebra import GF, QQ, RationalPoint, RingSpec
from dmkit.corpus import corpus_pairs, random_series
from dmkit.dmcheck import (
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    DMReport,
    choose_exponent,
    dm_check,
    dm_exponent,
    dm_min_exponent,
    exponent_scan,
    generic_counterexample,
    generic_pair,
    mingen_perturbation_check,
    reduction_corollary_check,
    rush_example_check,
    rush_pair,
    unit_content_identity_check,
)
from dmkit.errors import ContentNotUnit, NotVerified, PreconditionFailed, ZeroSeries
from dmkit.groebner import (
    Ideal,
    compact_power,
    ideal_equal,
    ideal_product,
    locally_equal,
    minimal_generators_at,
    mu_at_point,
)
from dmkit.series import UnitSeries, UnitTailSeries, content, expand, series_mul, truncated_content


def poly_series(R, coeffs):
    return UnitTailSeries.polynomial(R, coeffs)


@pytest.fixture
def gauss(R, uv):
    u, v = uv
    return poly_series(R, [u, v]), poly_series(R, [v, u])


# ---------------------------------------------------------------- exponents

def test_dm_exponent_examples(R, uv):
    u, v = uv
    _, f, g = rush_pair()
    assert dm_exponent(g, RationalPoint.origin(g.ring)) == 2
    assert dm_exponent(poly_series(R, [u * v, u**2 * v, u * v**3]), RationalPoint.origin(R)) == 1
    ring, _, gp = generic_pair(1)
    assert dm_exponent(gp, RationalPoint.origin(ring)) == 2
    with pytest.raises(ZeroSeries):
        dm_exponent(UnitTailSeries(R, ()), RationalPoint.origin(R))


def test_choose_exponent(R, uv):
    u, v = uv
    _, _, g = rush_pair()
    assert choose_exponent(g) == (2, "mu_at_point", 2)
    # not homogeneous: the origin does not dominate, fall back to the global bound
    h = poly_series(R, [u - 1, v])
    k, source, bound = choose_exponent(h)
    assert source == "generator-count bound" and k == bound == 2
    assert choose_exponent(h, RationalPoint(R, (1, 0)))[:2] == (2, "mu_at_point")
    assert choose_exponent(h, RationalPoint(R, (1, 1)))[:2] == (1, "mu_at_point")


# ---------------------------------------------------------------- dm_check

def test_rush_pair_verifies_at_two():
    _, f, g = rush_pair()
    rep = dm_check(f, g, 2)
    assert rep.verdict == VERIFIED and rep.d_cert <= 2
    assert rep.lhs_fingerprint == rep.rhs_fingerprint


def test_gauss_pair(gauss, uv):
    u, v = uv
    f, g = gauss
    rep = dm_check(f, g, 1)
    assert rep.verdict == REFUTED and rep.witness == u**2
    assert dm_check(f, g, 2).verdict == VERIFIED


def test_double_inclusion_for_gauss_at_two(R, gauss, uv):
    u, v = uv
    m = Ideal(R, [u, v])
    lhs = compact_power(m, 3)
    rhs = ideal_product(m, Ideal(R, [u * v, u**2 + v**2]))
    assert ideal_equal(lhs, rhs)


def test_k_zero_rejected(gauss):
    with pytest.raises(ValueError):
        dm_check(*gauss, 0)


def test_series_never_refuted(R, uv):
    u, v = uv
    f = UnitTailSeries(R, ((u, 0, UnitSeries.one(R)), (v, 1, UnitSeries.geometric(R, 16))))
    g = poly_series(R, [v, u])
    # with d_max too small to see the X^1 coefficient the answer must stay open
    rep = dm_check(f, g, 1, d_max=0)
    assert rep.verdict == INCONCLUSIVE and rep.d_cert is None


def test_min_exponent_examples(R, gauss, uv):
    u, v = uv
    _, f, g = rush_pair()
    assert dm_min_exponent(f, g, 3) == 1
    assert dm_min_exponent(*gauss, 3) == 2
    assert exponent_scan(*gauss, 3) == [(1, REFUTED), (2, VERIFIED)]
    h = poly_series(R, [u, v])
    assert dm_min_exponent(h, h, 3) == 1
    assert dm_min_exponent(*gauss, 1) is None


def test_verified_needs_depth(R):
    with pytest.raises(ValueError):
        DMReport(ring=R, k=1, k_source="user", verdict=VERIFIED, d_cert=None, d_max=3,
                 lhs_fingerprint="", rhs_fingerprint="")


def corpus_sample():
    out = []
    for fam in ("Q[u,v]", "F101[x,y,z]"):
        out += corpus_pairs(5, 25, fam)
    return out


def test_soundness_beyond_certification_depth():
    """Re-derive containment at depths past d_cert straight from ideal arithmetic."""
    for f, g in corpus_sample():
        k = dm_exponent(g, RationalPoint.origin(f.ring))
        rep = dm_check(f, g, k)
        assert rep.verified
        lhs = ideal_product(compact_power(content(f), k), content(g))
        low = compact_power(content(f), k - 1)
        fg = series_mul(expand(f, rep.d_cert + 3), expand(g, rep.d_cert + 3))
        for d in range(rep.d_cert, rep.d_cert + 4):
            rhs = ideal_product(low, truncated_content(fg, d))
            assert rhs.contains_ideal(lhs) and lhs.contains_ideal(rhs)


def test_exponent_monotone():
    for f, g in corpus_sample():
        k = dm_exponent(g, RationalPoint.origin(f.ring))
        for j in range(1, k + 1):
            if dm_check(f, g, j).verified:
                assert dm_check(f, g, j + 1).verified
                break


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_polynomial_g_of_degree_k_minus_one(k):
    ring = RingSpec(("x", "y", "z"), GF(101))
    rng = random.Random(100 + k)
    for _ in range(5):
        f = random_series(rng, ring)
        coeffs = [random_series(rng, ring, max_terms=1).terms[0][0] for _ in range(k)]
        g = poly_series(ring, coeffs)
        assert dm_check(f, g, k).verified


# ---------------------------------------------------------------- unit content

def test_unit_content_examples(R, uv):
    u, v = uv
    _, f, g = rush_pair()
    rep = unit_content_identity_check(f, g)
    assert rep.verified and rep.k_source == "unit-content"
    assert unit_content_identity_check(poly_series(R, [1]), poly_series(R, [u, v**2])).verified
    assert unit_content_identity_check(poly_series(R, [1, u]), poly_series(R, [u, v])).verified
    with pytest.raises(ContentNotUnit):
        unit_content_identity_check(poly_series(R, [u, v]), poly_series(R, [u]))


# ---------------------------------------------------------------- perturbation

def test_mingen_examples(R, uv):
    u, v = uv
    o = RationalPoint.origin(R)
    _, _, g = rush_pair()
    assert mingen_perturbation_check(g, u * v, 3, UnitSeries.one(R), o)
    assert mingen_perturbation_check(g, R.zero(), 2, UnitSeries.one(R), o)
    h = poly_series(R, [u, v])
    assert mingen_perturbation_check(h, u**2, 0, UnitSeries.polynomial(R, [1, -1]), o)
    with pytest.raises(PreconditionFailed):
        mingen_perturbation_check(h, u, 2, UnitSeries.one(R), o)


def test_mingen_equality_is_local(R, uv):
    u, v = uv
    # h = g + u^2 (1 - X) has content (u + u^2, v - u^2); it also vanishes at
    # (-1, 1), so it agrees with (u, v) only after localizing at the origin
    ch = Ideal(R, [u + u**2, v - u**2])
    assert not ideal_equal(ch, Ideal(R, [u, v]))
    assert locally_equal(Ideal(R, [u, v]), ch, RationalPoint.origin(R))
    assert not locally_equal(Ideal(R, [u, v]), ch, RationalPoint(R, (-1, 1)))


def test_mingen_random():
    rng = random.Random(21)
    ring = RingSpec(("x", "y", "z"), GF(101))
    o = RationalPoint.origin(ring)
    m = ring.gens()
    for _ in range(20):
        g = random_series(rng, ring, homogeneous=True)
        cg = content(g)
        b = rng.choice(m) * rng.choice(cg.gens) * rng.randint(1, 100)
        i = rng.randint(0, 5)
        unit = UnitSeries.polynomial(ring, [rng.randint(1, 100), rng.randint(0, 100)])
        assert mingen_perturbation_check(g, b, i, unit, o)


def test_minimal_generators_drop_criterion():
    """Removing any kept generator loses local generation; the dropped ones were redundant."""
    rng = random.Random(4)
    ring = RingSpec(("x", "y", "z"), GF(101))
    o = RationalPoint.origin(ring)
    for _ in range(20):
        I = content(random_series(rng, ring, homogeneous=True))
        kept = minimal_generators_at(I, o)
        assert locally_equal(I, Ideal(ring, kept), o)
        for c in kept:
            J = Ideal(ring, [p for p in kept if p != c])
            assert not locally_equal(I, J, o)
            if J.gens:
                assert mu_at_point(Ideal(ring, list(J.gens) + [c]), o) == len(kept)


# ---------------------------------------------------------------- corollary

def test_reduction_corollary_examples(R, gauss, uv):
    u, v = uv
    rep = reduction_corollary_check(*gauss, 2)
    assert rep.reduction_number == 1 and rep.holds and rep.exact
    _, f, g = rush_pair()
    assert reduction_corollary_check(f, g, 2).reduction_number == 0
    h = poly_series(R, [u, v])
    assert reduction_corollary_check(h, h, 2).reduction_number == 0
    with pytest.raises(NotVerified) as exc:
        reduction_corollary_check(*gauss, 1)
    assert exc.value.report.verdict == REFUTED


# ---------------------------------------------------------------- constructions

def test_generic_counterexample_k1():
    rep = generic_counterexample(1)
    a0, a1, b0, b1 = rep.ring.gens()
    assert rep.inequality_certified and rep.witness == a0 * b1
    fg = Ideal(rep.ring, [a0 * b0, a0 * b1 + a1 * b0, a1 * b1])
    assert a0 * b1 not in fg
    assert rep.mu == 2 and rep.contrast.k == 2 and rep.contrast.verified
    assert rep.passed


def test_generic_counterexample_k2_over_prime_field():
    rep = generic_counterexample(2, GF(101))
    assert rep.passed and rep.mu == 3


def test_rush_example():
    rep = rush_example_check()
    u, v = rep.ring.gens()
    assert rep.coefficients == [u * v, u + v**2, v + v**2, v + v**2, v + v**2]
    assert rep.contents_equal and set(rep.content_g) == {u, v}
    assert [c.cofactors for c in rep.printed_certificates] == [(-1, v, 1 - v), (0, 1, -1)]
    assert all(c.is_valid() for c in rep.printed_certificates + rep.certificates)
    assert rep.passed


def test_rush_example_mod_p():
    assert rush_example_check(6, GF(3)).passed
