"""Seeded sample generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from veronese.germ import Germ, veronese
from veronese.jets import MJet, UJet, exponents_between
from veronese.reduction import profile_bound


def rand_q(rng: random.Random, m: int = 3) -> Fraction:
    return Fraction(rng.randint(-m, m), rng.randint(1, m))


def rand_jet(rng, n: int, T: int, lo: int = 0, hi: int | None = None, density: float = 0.4) -> MJet:
    hi = T if hi is None else hi
    terms = {e: rand_q(rng) for e in exponents_between(n, lo, hi) if rng.random() < density}
    if lo == 0:
        terms[(0,) * n] = terms.get((0,) * n) or rand_q(rng)
    return MJet(n, T, terms)


def rand_unit(rng, n: int, T: int) -> MJet:
    j = rand_jet(rng, n, T)
    if not j.constant_term():
        j = j + 1
    return j


def rand_substitution(rng, n: int, T: int) -> list:
    """Origin-preserving substitution with invertible (triangular) linear part."""
    out = []
    for i in range(n):
        lin = {tuple(int(k == i) for k in range(n)): rng.choice([1, 2, -1, Fraction(1, 2)])}
        for j in range(i + 1, n):
            lin[tuple(int(k == j) for k in range(n))] = rand_q(rng)
        out.append(MJet(n, T, lin) + rand_jet(rng, n, T, lo=2, density=0.3))
    return out


def rand_ujet(rng, T: int, lo: int = 0) -> UJet:
    return UJet(T, [0] * lo + [rand_q(rng) for _ in range(T + 1 - lo)])


def random_reduced_germ(n: int, q: int, T: int, r: int, seed, terms_per_component: int = 3) -> Germ:
    """Veronese plus random residual terms allowed by the order-r profile."""
    rng = random.Random(f"reduced:{n}:{q}:{T}:{r}:{seed}")
    base = veronese(n, q, T)
    comps = []
    for a, x in base.items():
        lo = profile_bound(sum(a), r, q) + 1
        pool = exponents_between(n, lo, T)
        extra = {e: rand_q(rng) for e in rng.sample(pool, min(terms_per_component, len(pool)))}
        # make sure the leading layer is usually populated
        lead = [e for e in pool if sum(e) == lo]
        if lead and rng.random() < 0.8:
            extra[rng.choice(lead)] = rand_q(rng)
        comps.append(x + MJet(n, T, extra))
    return Germ(n, q, T, comps)


def random_family_R(n: int, q: int, T: int, seed) -> dict:
    """Random ``R_k`` (k = 2..q) starting in degree q+3-k; at least one is nonzero."""
    rng = random.Random(f"family:{n}:{q}:{T}:{seed}")
    R = {}
    for k in range(2, q + 1):
        lo = q + 3 - k
        pool = exponents_between(n, lo, T - k)
        picks = rng.sample(pool, min(len(pool), rng.randint(0, 3)))
        R[k] = MJet(n, T - k, {e: rand_q(rng) for e in picks})
    if all(x.is_zero() for x in R.values()):
        k = rng.randint(2, q)
        e = rng.choice(exponents_between(n, q + 3 - k, T - k))
        R[k] = MJet(n, T - k, {e: rand_q(rng) or 1})
    return R


@pytest.fixture
def rng():
    return random.Random(20240917)
