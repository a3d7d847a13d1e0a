from fractions import Fraction

import pytest

from dmkit.algebra import GF, QQ, Field, Polynomial, RationalPoint, RingSpec, poly_add, poly_mul, shift_to_origin
from dmkit.errors import RingMismatch

from conftest import RINGS, random_poly


def test_field_elements_are_canonical():
    assert QQ.convert(Fraction(4, -6)) == Fraction(-2, 3)
    assert QQ.convert(Fraction(6, 3)) == 2
    assert GF(7).convert(-1) == 6
    assert GF(7).convert(Fraction(1, 3)) == 5
    assert GF(7).inv(3) == 5


def test_field_parse_and_prime_check():
    assert Field.parse("Q") == QQ
    assert Field.parse("Fp:101") == GF(101)
    with pytest.raises(ValueError):
        GF(100)
    with pytest.raises(ValueError):
        Field.parse("R")


def test_ring_rejects_series_variable_and_duplicates():
    with pytest.raises(ValueError):
        RingSpec(("u", "X"))
    with pytest.raises(ValueError):
        RingSpec(("u", "u"))


def test_mixed_rings_rejected(uv):
    u, v = uv
    other = RingSpec(("u", "v"), GF(5)).gens()[0]
    with pytest.raises(RingMismatch):
        poly_add(u, other)
    with pytest.raises(RingMismatch):
        poly_mul(u, other)


def test_add_examples(R, uv):
    u, v = uv
    assert poly_add(u + v**2, v + v**2) == u + v + 2 * v**2
    p = u * v - 3
    assert poly_add(p, R.zero()) == p
    assert poly_add(u + v, -u - v).is_zero()


def test_mul_examples(R, uv):
    u, v = uv
    assert poly_mul(v, u + v**2) == u * v + v**3
    p = u**2 - v + 7
    assert poly_mul(p, R.one()) == p
    assert poly_mul(u + v, u - v) == u**2 - v**2


def test_terms_sorted_without_zeros(R):
    p = Polynomial(R, {(0, 0): 0, (1, 0): 2, (0, 2): 1, (1, 1): -1})
    ms = [m for m, _ in p.terms()]
    assert ms == sorted(ms, key=R.key, reverse=True)
    assert all(c != 0 for _, c in p.terms())
    assert len(set(ms)) == len(ms)


def test_modular_coefficients_reduced():
    ring = RingSpec(("x",), GF(5))
    x = ring.gens()[0]
    assert (5 * x + 3).terms() == [((0,), 3)]
    assert ((x + 1) ** 5) == x**5 + 1


@pytest.mark.parametrize("ring", RINGS, ids=lambda r: r.describe()["field"] + r.order)
def test_ring_axioms(ring, rng):
    for _ in range(260):
        a, b, c = (random_poly(rng, ring) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == ring.zero()
        assert a * ring.one() == a


def test_shift_examples(R, uv):
    u, v = uv
    pt = RationalPoint(R, (1, 0))
    assert shift_to_origin(u, pt) == u + 1
    assert shift_to_origin(u**2, pt) == u**2 + 2 * u + 1
    p = u**3 * v - 2 * v + 5
    assert shift_to_origin(p, RationalPoint.origin(R)) == p


@pytest.mark.parametrize("ring", RINGS[:2], ids=["QQ", "F101"])
def test_shift_round_trip(ring, rng):
    for _ in range(100):
        p = random_poly(rng, ring)
        pt = RationalPoint(ring, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(ring.nvars)])
        q = shift_to_origin(p, pt)
        assert shift_to_origin(q, -pt) == p
        # evaluating the shift at the origin evaluates p at pt
        assert q.evaluate((0,) * ring.nvars) == p.evaluate(pt.coords)


def test_maximal_ideal_generators(R, uv):
    u, v = uv
    pt = RationalPoint(R, (2, Fraction(-1, 2)))
    assert pt.maximal_ideal_generators() == [u - 2, v + Fraction(1, 2)]
    with pytest.raises(ValueError):
        RationalPoint(R, (1,))


def test_homogeneity_and_degree(uv):
    u, v = uv
    assert (u * v + v**2).is_homogeneous()
    assert not (u + v**2).is_homogeneous()
    assert (u**2 * v + 1).total_degree() == 3


from hypothesis import given, settings, strategies as st

F7 = RingSpec(("s", "t"), GF(7))
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-20, 20), max_size=5).map(
    lambda d: Polynomial(F7, d))


@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_frobenius_is_additive(a, b):
    # in characteristic 7, (a + b)^7 = a^7 + b^7
    assert (a + b) ** 7 == a**7 + b**7
