"""Exact Fourier transform on step functions.

For f supported on P^l and constant mod P^k, the transform
f^(xi) = integral f(y) chi(-xi y) dy is supported on P^-k and constant mod
P^-l, and its coefficients are finite character sums over the q**(k-l)
cosets involved.  All character values are exact roots of unity of
conductor dividing p**(k-l), so the transform, its inverse, Plancherel and
the convolution theorem hold as exact identities here.
"""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction

from .padic import PAdicNumber, char_phase, coset_reps, qpow
from .scalars import ScaledScalar, root_of_unity
from .stepfn import StepFunction


@lru_cache(maxsize=65536)
def _root(p: int, phase: Fraction) -> ScaledScalar:
    return root_of_unity(p, phase)


def fourier(f: StepFunction) -> StepFunction:
    """The exact Fourier transform f^(xi) = integral f(y) chi(-xi y) dy."""
    if f.is_zero():
        return StepFunction.zero(f.p)
    p = f.p
    g = f.coarsened()
    l, k = g.support_exponent, g.resolution
    mu = qpow(p, -k)
    out: dict[PAdicNumber, ScaledScalar] = {}
    items = list(g.terms.items())
    for xi in coset_reps(p, -k, -l):
        acc = ScaledScalar.zero(p)
        for c, v in items:
            acc = acc + v * _root(p, char_phase(-(xi * c)))
        if not acc.is_zero():
            out[xi] = acc.scaled(mu)
    return StepFunction(p, -l, out)


def inverse_fourier(f: StepFunction) -> StepFunction:
    """Exact inverse transform: inverse_fourier(fourier(f)) = f."""
    return fourier(f).reflect()
