"""Seeded random unit-tail pairs and the batch runner over them."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .algebra import GF, QQ, Polynomial, RationalPoint, RingSpec
from .dmcheck import VERIFIED, default_dmax, dm_check, dm_exponent, reduction_number
from .groebner import ideal_product
from .series import UnitSeries, UnitTailSeries, content, expand, series_mul, truncated_content

FAMILIES = {
    "Q[u,v]": RingSpec(("u", "v"), QQ),
    "F101[x,y,z]": RingSpec(("x", "y", "z"), GF(101)),
}
CORPUS_PRECISION = 16


def _scalar(rng, ring):
    p = ring.field.characteristic
    if p:
        return rng.randrange(1, p)
    return rng.choice([-3, -2, -1, 1, 2, 3])


def _monomial(rng, n, degree):
    m = [0] * n
    for _ in range(degree):
        m[rng.randrange(n)] += 1
    return tuple(m)


def random_poly(rng, ring, max_degree=2, homogeneous=False, max_terms=2) -> Polynomial:
    """Nonzero polynomial with at most ``max_terms`` terms of degree <= ``max_degree``.

    Homogeneous polynomials get a positive degree so the content sits inside the
    irrelevant ideal.
    """
    n = ring.nvars
    while True:
        fixed = rng.randint(1, max_degree) if homogeneous else None
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            deg = fixed if homogeneous else rng.choice([0] + [d for d in range(1, max_degree + 1) for _ in range(3)])
            terms[_monomial(rng, n, deg)] = _scalar(rng, ring)
        p = Polynomial(ring, terms)
        if p:
            return p


def random_unit(rng, ring, precision):
    """1 half the time, else 1/(1-X) or a random polynomial unit."""
    kind = rng.choice(["one", "one", "one", "geom", "poly", "poly"])
    if kind == "one":
        return UnitSeries.one(ring)
    if kind == "geom":
        return UnitSeries.geometric(ring, precision)
    tail = [random_poly(rng, ring, 1) if rng.random() < 0.7 else ring.zero() for _ in range(rng.randint(1, 2))]
    return UnitSeries(ring, (ring.constant(_scalar(rng, ring)),) + tuple(tail))


def random_series(rng, ring, homogeneous=False, max_terms=4, max_exponent=3, precision=CORPUS_PRECISION):
    """Up to ``max_terms`` unit-tail terms; exponents are consecutive 70% of the time.

    Gaps between exponents keep the partial products of fg apart, which often
    lets the identity hold already at k = 1, so overlapping exponents are favoured.
    """
    count = rng.randint(1, max_terms)
    if rng.random() < 0.7:
        js = list(range(count))
    else:
        js = sorted(rng.sample(range(max_exponent + 1), count))
    terms = []
    for j in js:
        a = random_poly(rng, ring, 2, homogeneous or rng.random() < 0.8)
        terms.append((a, j, random_unit(rng, ring, precision)))
    return UnitTailSeries(ring, tuple(terms), precision)


def corpus_pairs(seed: int, count: int, family: str):
    """``count`` pairs (f, g); every coefficient of g is homogeneous of positive degree.

    A homogeneous content makes the local generator count at the origin the
    maximum over all maximal ideals, so it is a legitimate exponent.
    """
    ring = FAMILIES[family]
    rng = random.Random(f"{family}:{seed}")
    return [(random_series(rng, ring), random_series(rng, ring, homogeneous=True)) for _ in range(count)]


@dataclass
class PairResult:
    family: str
    index: int
    k: int
    verdict: str
    d_cert: int | None
    d_max: int
    reduction_number: int | None

    @property
    def corollary_holds(self) -> bool:
        return self.reduction_number is not None and self.reduction_number <= self.k - 1

    def to_dict(self):
        return {
            "family": self.family,
            "index": self.index,
            "k": self.k,
            "verdict": self.verdict,
            "d_cert": self.d_cert,
            "d_max": self.d_max,
            "reduction_number": self.reduction_number,
            "corollary_holds": self.corollary_holds,
        }


def check_pair(family, index, f, g, seed=None) -> PairResult:
    """Main identity at ``k = mu(c(g))`` at the origin, plus the reduction number."""
    k = dm_exponent(g, RationalPoint.origin(f.ring))
    d_max = default_dmax(f, g, k)
    rep = dm_check(f, g, k, d_max, k_source="mu_at_point", seed=seed)
    r = None
    if rep.verdict == VERIFIED:
        depth = rep.d_cert
        J = truncated_content(series_mul(expand(f, depth), expand(g, depth)), depth)
        r = reduction_number(J, ideal_product(content(f), content(g)), k - 1)
    return PairResult(family, index, k, rep.verdict, rep.d_cert, d_max, r)


def _run_one(args):
    family, seed, index, count = args
    f, g = corpus_pairs(seed, count, family)[index]
    return check_pair(family, index, f, g, seed)


@dataclass
class CorpusReport:
    seed: int
    count: int
    results: list

    def summary(self):
        rows = {}
        for r in self.results:
            row = rows.setdefault(r.family, {"pairs": 0, "verified": 0, "corollary": 0, "max_k": 0, "max_d_cert": 0})
            row["pairs"] += 1
            row["verified"] += r.verdict == VERIFIED
            row["corollary"] += r.corollary_holds
            row["max_k"] = max(row["max_k"], r.k)
            if r.d_cert is not None:
                row["max_d_cert"] = max(row["max_d_cert"], r.d_cert)
        return rows

    @property
    def all_verified(self) -> bool:
        return all(r.verdict == VERIFIED for r in self.results)

    def to_dict(self):
        return {
            "schema": "dm-corpus/1",
            "seed": self.seed,
            "count": self.count,
            "summary": self.summary(),
            "results": [r.to_dict() for r in self.results],
        }


def run_corpus(seed: int, count: int, families=tuple(FAMILIES), jobs: int = 1) -> CorpusReport:
    """Check ``count`` pairs per family; results are ordered and independent of ``jobs``."""
    if jobs > 1:
        tasks = [(fam, seed, i, count) for fam in families for i in range(count)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=4))
    else:
        results = []
        for fam in families:
            for i, (f, g) in enumerate(corpus_pairs(seed, count, fam)):
                results.append(check_pair(fam, i, f, g, seed))
    return CorpusReport(seed, count, results)
