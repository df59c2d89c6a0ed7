"""Shared deterministic generators for the test suite."""

import random
from fractions import Fraction

import pytest

from ultrawave import (GroupElement, PAdicNumber, ScaledScalar, StepFunction,
                       canonicalize, coset_reps, qpow)


def rand_padic(rng: random.Random, p: int, lo: int, hi: int) -> PAdicNumber:
    """Random element with digits in positions [lo, hi)."""
    n = rng.randrange(p ** (hi - lo))
    return PAdicNumber(p, n, -lo)


def rand_unit(rng: random.Random, p: int, digits: int = 5) -> PAdicNumber:
    n = rng.randrange(1, p**digits)
    while n % p == 0:
        n = rng.randrange(1, p**digits)
    if rng.random() < 0.3:
        n = -n
    return PAdicNumber(p, n)


def rand_group_element(rng: random.Random, p: int,
                       v_range: tuple[int, int] = (-2, 2)) -> GroupElement:
    x = rand_padic(rng, p, -2, 3)
    n = rng.randint(*v_range)
    h = PAdicNumber.p_power(p, n) * rand_unit(rng, p, 3)
    return GroupElement(x, h)


def rand_step(rng: random.Random, p: int, l: int, k: int,
              max_terms: int = 5) -> StepFunction:
    """Random nonzero function supported in P^l, constant mod P^k."""
    reps = coset_reps(p, l, k)
    count = min(len(reps), rng.randint(1, max_terms))
    centers = rng.sample(list(reps), count)
    pairs = []
    for c in centers:
        num = rng.choice([v for v in range(-4, 5) if v])
        den = rng.choice([1, 1, 2, 3])
        pairs.append(((c, k), Fraction(num, den)))
    f = canonicalize(p, pairs)
    return f


def rand_s0(rng: random.Random, p: int, l: int, k: int,
            max_terms: int = 5) -> StepFunction:
    """Random nonzero zero-integral function in the (l, k) class."""
    for _ in range(50):
        f = rand_step(rng, p, l, k, max_terms)
        mean = f.integral().as_fraction() / qpow(p, -l)
        g = f - StepFunction.indicator(p, PAdicNumber.zero(p), l) * mean
        if not g.is_zero():
            return g
    raise AssertionError("failed to draw a nonzero zero-integral function")


def class_pairs(p: int, max_spread: int):
    """(l, k) pairs with |l|, |k| <= 3 and 1 <= k - l <= max_spread."""
    out = []
    for l in range(-3, 4):
        for k in range(l + 1, 4):
            if k - l <= max_spread:
                out.append((l, k))
    return out


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260810)
