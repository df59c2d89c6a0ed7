"""Step-function calculus: the machine form of the test functions on Q_p.

A StepFunction is a finite linear combination of indicators of balls, stored
at a single common resolution k: a map from canonical ball centers (all at
scale k) to nonzero exact scalars.  Balls at one scale are equal or disjoint,
so evaluation, integration, inner products and convolution all reduce to
finite exact sums.

Functions supported on P^l and constant on cosets of P^k form the class
(l, k); `membership_class` computes the maximal l and minimal k for a given
function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable

from .errors import ZeroDilationError, ZeroFunctionError
from .padic import INF, PAdicNumber, coset_reps, qpow
from .scalars import ScaledScalar

if TYPE_CHECKING:  # pragma: no cover
    from .affine import GroupElement


def _coerce_scalar(p: int, v) -> ScaledScalar:
    if isinstance(v, ScaledScalar):
        return v
    return ScaledScalar.from_fraction(p, v)


@dataclass(frozen=True, slots=True)
class Ball:
    """The coset center + P^scale; center canonical mod P^scale."""

    center: PAdicNumber
    scale: int

    def __post_init__(self) -> None:
        if self.center.canonical_rep(self.scale) != self.center:
            raise ValueError(f"center {self.center} not canonical at scale {self.scale}")

    @property
    def p(self) -> int:
        return self.center.p

    def measure(self) -> Fraction:
        return qpow(self.p, -self.scale)

    def contains(self, x: PAdicNumber) -> bool:
        return x.canonical_rep(self.scale) == self.center


class StepFunction:
    """Exact step function at a common resolution.

    Instances are immutable by convention; all operations return new objects.
    """

    __slots__ = ("p", "resolution", "terms", "_minimal")

    def __init__(self, p: int, resolution: int,
                 terms: dict[PAdicNumber, ScaledScalar] | None = None):
        self.p = p
        self.resolution = resolution
        self.terms: dict[PAdicNumber, ScaledScalar] = dict(terms or {})
        self._minimal: "StepFunction | None" = None

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, p: int) -> "StepFunction":
        return cls(p, 0)

    @classmethod
    def indicator(cls, p: int, center: PAdicNumber | int | Fraction,
                  scale: int) -> "StepFunction":
        """Indicator of the ball center + P^scale."""
        if not isinstance(center, PAdicNumber):
            center = PAdicNumber.from_fraction(p, Fraction(center))
        c = center.canonical_rep(scale)
        return cls(p, scale, {c: ScaledScalar.one(p)})

    def __repr__(self) -> str:
        return (f"StepFunction(p={self.p}, resolution={self.resolution}, "
                f"{len(self.terms)} terms)")

    # ------------------------------------------------------------------
    # structure

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support_exponent(self) -> int:
        """Maximal l with support contained in P^l; ZeroFunctionError if zero."""
        if self.is_zero():
            raise ZeroFunctionError("zero function has empty support")
        vals = [c.valuation for c in self.terms]
        return int(min(min(vals), self.resolution))

    def refined(self, scale: int) -> "StepFunction":
        """Rewrite at a finer common resolution >= the current one."""
        if scale < self.resolution:
            raise ValueError("refined() cannot coarsen")
        if scale == self.resolution:
            return self
        out: dict[PAdicNumber, ScaledScalar] = {}
        for c, v in self.terms.items():
            for t in coset_reps(self.p, self.resolution, scale):
                out[(c + t).canonical_rep(scale)] = v
        return StepFunction(self.p, scale, out)

    def coarsened(self) -> "StepFunction":
        """Canonical minimal-resolution form (merges equal-valued siblings)."""
        if self._minimal is not None:
            return self._minimal
        p = self.p
        k = self.resolution
        terms = dict(self.terms)
        while terms:
            groups: dict[PAdicNumber, list[ScaledScalar]] = {}
            for c, v in terms.items():
                groups.setdefault(c.canonical_rep(k - 1), []).append(v)
            if not all(len(vs) == p and all(v == vs[0] for v in vs)
                       for vs in groups.values()):
                break
            terms = {parent: vs[0] for parent, vs in groups.items()}
            k -= 1
        out = StepFunction(p, k if terms else 0, terms)
        out._minimal = out
        self._minimal = out
        return out

    def membership_class(self) -> tuple[int, int]:
        """(l, k): maximal support exponent and minimal constancy scale."""
        if self.is_zero():
            raise ZeroFunctionError("zero function has no membership class")
        g = self.coarsened()
        return (g.support_exponent, g.resolution)

    # ------------------------------------------------------------------
    # pointwise and integral calculus

    def evaluate(self, x: PAdicNumber) -> ScaledScalar:
        v = self.terms.get(x.canonical_rep(self.resolution))
        return v if v is not None else ScaledScalar.zero(self.p)

    def integral(self) -> ScaledScalar:
        acc = ScaledScalar.zero(self.p)
        for v in self.terms.values():
            acc = acc + v
        return acc.scaled(qpow(self.p, -self.resolution))

    def has_zero_integral(self) -> bool:
        return self.integral().is_zero()

    def inner(self, other: "StepFunction") -> ScaledScalar:
        """L2 inner product <self | other>, conjugate-linear in other."""
        if self.p != other.p:
            raise ValueError("mixed primes")
        acc = ScaledScalar.zero(self.p)
        if self.is_zero() or other.is_zero():
            return acc
        k = max(self.resolution, other.resolution)
        if self.resolution >= other.resolution:
            for c, v1 in self.terms.items():
                v2 = other.terms.get(c.canonical_rep(other.resolution))
                if v2 is not None:
                    acc = acc + v1 * v2.conj()
        else:
            for c, v2 in other.terms.items():
                v1 = self.terms.get(c.canonical_rep(self.resolution))
                if v1 is not None:
                    acc = acc + v1 * v2.conj()
        return acc.scaled(qpow(self.p, -k))

    def l2_norm_sq(self) -> ScaledScalar:
        acc = ScaledScalar.zero(self.p)
        for v in self.terms.values():
            acc = acc + v.abs_sq()
        return acc.scaled(qpow(self.p, -self.resolution))

    def l2_norm_sq_rational(self) -> Fraction:
        return self.l2_norm_sq().as_fraction()

    def lp_norm(self, s: float) -> float:
        """The L^s norm as a float; s = inf gives the essential sup."""
        if self.is_zero():
            return 0.0
        mags = [abs(v.to_complex()) for v in self.terms.values()]
        if s == INF:
            return max(mags)
        if s <= 0:
            raise ValueError("s must be positive")
        mu = float(qpow(self.p, -self.resolution))
        return (sum(mu * m**s for m in mags)) ** (1.0 / s)

    # ------------------------------------------------------------------
    # algebra

    def convolve(self, other: "StepFunction") -> "StepFunction":
        """Exact convolution via the ball rule.

        Indicators convolve as 1_{B(c1, q^-k1)} * 1_{B(c2, q^-k2)}
        = q^(-max(k1,k2)) 1_{B(c1+c2, q^-min(k1,k2))}.
        """
        if self.p != other.p:
            raise ValueError("mixed primes")
        if self.is_zero() or other.is_zero():
            return StepFunction.zero(self.p)
        out_scale = min(self.resolution, other.resolution)
        factor = qpow(self.p, -max(self.resolution, other.resolution))
        out: dict[PAdicNumber, ScaledScalar] = {}
        for c1, v1 in self.terms.items():
            for c2, v2 in other.terms.items():
                c = (c1 + c2).canonical_rep(out_scale)
                w = v1 * v2
                prev = out.get(c)
                out[c] = w if prev is None else prev + w
        out = {c: v.scaled(factor) for c, v in out.items() if not v.is_zero()}
        return StepFunction(self.p, out_scale, out)

    def multiply(self, other: "StepFunction") -> "StepFunction":
        """Pointwise product (support is the intersection)."""
        if self.p != other.p:
            raise ValueError("mixed primes")
        if self.is_zero() or other.is_zero():
            return StepFunction.zero(self.p)
        if self.resolution >= other.resolution:
            fine, coarse = self, other
        else:
            fine, coarse = other, self
        out = {}
        for c, v in fine.terms.items():
            w = coarse.terms.get(c.canonical_rep(coarse.resolution))
            if w is not None:
                prod = v * w
                if not prod.is_zero():
                    out[c] = prod
        return StepFunction(self.p, fine.resolution, out)

    def reflect(self) -> "StepFunction":
        """x -> f(-x)."""
        out = {(-c).canonical_rep(self.resolution): v for c, v in self.terms.items()}
        return StepFunction(self.p, self.resolution, out)

    def translate(self, y: PAdicNumber) -> "StepFunction":
        """x -> f(x - y)."""
        out = {(c + y).canonical_rep(self.resolution): v for c, v in self.terms.items()}
        return StepFunction(self.p, self.resolution, out)

    def __add__(self, other: "StepFunction") -> "StepFunction":
        if not isinstance(other, StepFunction):
            return NotImplemented
        if self.p != other.p:
            raise ValueError("mixed primes")
        k = max(self.resolution, other.resolution)
        a, b = self.refined(k), other.refined(k)
        out = dict(a.terms)
        for c, v in b.terms.items():
            prev = out.get(c)
            s = v if prev is None else prev + v
            if s.is_zero():
                out.pop(c, None)
            else:
                out[c] = s
        return StepFunction(self.p, k, out)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self + (-other)

    def __neg__(self) -> "StepFunction":
        return StepFunction(self.p, self.resolution,
                            {c: -v for c, v in self.terms.items()})

    def __mul__(self, scalar) -> "StepFunction":
        if isinstance(scalar, StepFunction):
            return NotImplemented
        s = _coerce_scalar(self.p, scalar)
        if s.is_zero():
            return StepFunction.zero(self.p)
        return StepFunction(self.p, self.resolution,
                            {c: v * s for c, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        if self.p != other.p:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        a, b = self.coarsened(), other.coarsened()
        return a.resolution == b.resolution and a.terms == b.terms

    __hash__ = None  # mutable-looking container; identity hashing would mislead


def canonicalize(p: int, pairs: Iterable[tuple[Ball | tuple, object]],
                 coarsen: bool = False) -> StepFunction:
    """Build a StepFunction from (ball, coefficient) pairs.

    Overlapping balls contribute additively (a finer ball adds its value on
    top of any coarser ball containing it).  The result is stored at the
    finest input scale; pass coarsen=True to merge equal-valued siblings
    down to the minimal resolution.
    """
    items: list[tuple[Ball, ScaledScalar]] = []
    for ball, coeff in pairs:
        if not isinstance(ball, Ball):
            center, scale = ball
            if not isinstance(center, PAdicNumber):
                center = PAdicNumber.from_fraction(p, Fraction(center))
            ball = Ball(center.canonical_rep(scale), scale)
        v = _coerce_scalar(p, coeff)
        if not v.is_zero():
            items.append((ball, v))
    if not items:
        return StepFunction.zero(p)
    k = max(ball.scale for ball, _ in items)
    out: dict[PAdicNumber, ScaledScalar] = {}
    for ball, v in items:
        for t in coset_reps(p, ball.scale, k):
            c = (ball.center + t).canonical_rep(k)
            prev = out.get(c)
            s = v if prev is None else prev + v
            if s.is_zero():
                out.pop(c, None)
            else:
                out[c] = s
    f = StepFunction(p, k, out)
    return f.coarsened() if coarsen else f


def pi_apply(f: StepFunction, u: "GroupElement") -> StepFunction:
    """The quasi-regular action: (pi(x,h) f)(y) = |h|**(-1/2) f(h^-1 (y-x)).

    Exact: the ball B(c, q^-k) maps to B(x + h c, q^-(k+v(h))) and the value
    picks up the factor q**(v(h)/2).
    """
    x, h = u.x, u.h
    if h.is_zero():
        raise ZeroDilationError("dilation component must be nonzero")
    if f.is_zero():
        return f
    v = int(h.valuation)
    new_res = f.resolution + v
    factor = ScaledScalar.q_half_power(f.p, v)
    out: dict[PAdicNumber, ScaledScalar] = {}
    for c, val in f.terms.items():
        c2 = (x + h * c).canonical_rep(new_res)
        out[c2] = val * factor
    return StepFunction(f.p, new_res, out)
