import random

import pytest

from dmkit.algebra import GF, QQ, Polynomial, RingSpec


@pytest.fixture
def R():
    return RingSpec(("u", "v"), QQ)


@pytest.fixture
def uv(R):
    return R.gens()


def random_poly(rng, ring, terms=4, degree=3, coeff=5):
    d = {}
    for _ in range(rng.randint(0, terms)):
        m = tuple(rng.randint(0, degree) for _ in range(ring.nvars))
        d[m] = rng.randint(-coeff, coeff)
    return Polynomial(ring, d)


RINGS = [
    RingSpec(("u", "v"), QQ),
    RingSpec(("x", "y", "z"), GF(101)),
    RingSpec(("a", "b", "c"), QQ, "lex"),
    RingSpec(("s", "t"), GF(7)),
]


@pytest.fixture
def rng():
    return random.Random(20261016)


# acceptance criteria register here and are echoed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 10):
        ok, detail = ACCEPTANCE.get(n, (False, "did not finish (see the traceback above)"))
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
