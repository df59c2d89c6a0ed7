"""The affine group G = K x| K* of the p-adic field.

Group law (x,h)(y,k) = (hy + x, hk); left Haar measure fixed globally as
d mu_G = dx * dh_add / |h|**2, which gives the box P^k x D_m* mass
q**(-k-m) (and q**(-k) (1 - 1/q) for the full unit group, m = 0).

Special compact open subgroups are boxes P^k x D_m*, with
D_m* = {h : |h - 1| <= q**(-m)} for m >= 1 and D_0* = D* the full units.
Their left cosets are enumerated by special representative systems
(p**n lam gam, p**n lam) with lam a unit representative and gam a coset
representative of the translation part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadWindowError, ZeroDilationError, ZeroFunctionError
from .padic import PAdicNumber, coset_reps, qpow, unit_inverse_mod, unit_reps
from .stepfn import StepFunction

DEFAULT_PRECISION = 16


@dataclass(frozen=True, slots=True)
class GroupElement:
    """Element (x, h) of G with h != 0; components canonical."""

    x: PAdicNumber
    h: PAdicNumber

    def __post_init__(self) -> None:
        if self.h.is_zero():
            raise ZeroDilationError("dilation component must be nonzero")
        if self.x.p != self.h.p:
            raise ValueError("mixed primes")

    @property
    def p(self) -> int:
        return self.x.p

    def __str__(self) -> str:
        return f"({self.x}, {self.h})"


def gidentity(p: int) -> GroupElement:
    return GroupElement(PAdicNumber.zero(p), PAdicNumber.one(p))


def gmul(u: GroupElement, w: GroupElement) -> GroupElement:
    """(x,h) * (y,k) = (h y + x, h k), exact."""
    return GroupElement(u.h * w.x + u.x, u.h * w.h)


def ginv(u: GroupElement, precision: int = DEFAULT_PRECISION) -> GroupElement:
    """Inverse (-h^-1 x, h^-1); exact when the unit part of h is +-1,
    otherwise the unit part is inverted modulo P^precision.
    """
    h = u.h
    p = h.p
    v = int(h.valuation)
    unit = h / PAdicNumber.p_power(p, v)
    if unit.numerator in (1, -1):
        h_inv = PAdicNumber(p, unit.numerator, v)
    else:
        w = unit_inverse_mod(unit, precision)
        h_inv = PAdicNumber(p, w.numerator, v)
    return GroupElement(-(h_inv * u.x), h_inv)


def modular(u: GroupElement) -> Fraction:
    """Modular function Delta_G(x,h) = 1/|h|."""
    return qpow(u.p, int(u.h.valuation))


@dataclass(frozen=True, slots=True)
class SpecialSubgroup:
    """The box P^k x D_m* (m = 0 encodes the full unit group D*)."""

    k: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("m must be >= 0")

    def haar_mass(self, p: int) -> Fraction:
        return haar_box(p, self.k, self.m)

    def mult_mass(self, p: int) -> Fraction:
        """Multiplicative Haar mass of the unit-group part (additive dh/|h|)."""
        if self.m == 0:
            return 1 - Fraction(1, p)
        return qpow(p, -self.m)

    def contains(self, u: GroupElement) -> bool:
        if u.x.valuation < self.k:
            return False
        if self.m == 0:
            return u.h.valuation == 0
        return (u.h - 1).valuation >= self.m and u.h.valuation == 0


def haar_box(p: int, k: int, m: int) -> Fraction:
    """Left Haar mass of P^k x D_m* under d mu_G = dx dh_add/|h|**2."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return qpow(p, -k) * (1 - Fraction(1, p))
    return qpow(p, -k - m)


def fixed_subgroup(g: StepFunction) -> SpecialSubgroup:
    """The box P^k x D_(k-l)* fixing g pointwise under the quasi-regular
    action, with (l, k) the membership class of g.
    """
    if g.is_zero():
        raise ZeroFunctionError("zero function has no fixed subgroup")
    l, k = g.membership_class()
    return SpecialSubgroup(k, k - l)


def in_same_left_coset(u: GroupElement, w: GroupElement,
                       subgroup: SpecialSubgroup) -> bool:
    """Whether u^-1 w lies in the subgroup; division-free and exact."""
    n = u.h.valuation
    if w.h.valuation != n:
        return False
    if subgroup.m > 0 and (w.h - u.h).valuation - n < subgroup.m:
        return False
    return (w.x - u.x).valuation - n >= subgroup.k


@dataclass(frozen=True, slots=True)
class RepSystem:
    """A finite window of a special representative system.

    Representatives are (p**n lam gam, p**n lam) for n in [n_lo, n_hi],
    lam in the unit representatives of D*/D_m*, and gam ranging over the
    coset representatives of P^gamma_lo / P^gamma_hi (gamma_hi defaults to
    the subgroup's translation scale k).
    """

    subgroup: SpecialSubgroup
    n_lo: int
    n_hi: int
    gamma_lo: int
    gamma_hi: int | None = None

    def gamma_scale(self) -> int:
        return self.subgroup.k if self.gamma_hi is None else self.gamma_hi

    def count(self, p: int) -> int:
        n = self.n_hi - self.n_lo + 1
        lam = len(unit_reps(p, self.subgroup.m))
        gam = p ** (self.gamma_scale() - self.gamma_lo)
        return n * lam * gam


def special_reps(p: int, rs: RepSystem) -> tuple[GroupElement, ...]:
    """Enumerate the representative window; elements lie in pairwise
    distinct left cosets of the subgroup.
    """
    if rs.n_lo > rs.n_hi:
        raise BadWindowError(f"empty scale window [{rs.n_lo}, {rs.n_hi}]")
    ghi = rs.gamma_scale()
    if rs.gamma_lo > ghi:
        raise BadWindowError(f"empty translation window [{rs.gamma_lo}, {ghi}]")
    out = []
    for n in range(rs.n_lo, rs.n_hi + 1):
        pn = PAdicNumber.p_power(p, n)
        for lam in unit_reps(p, rs.subgroup.m):
            h = pn * lam
            for gam in coset_reps(p, rs.gamma_lo, ghi):
                out.append(GroupElement(h * gam, h))
    return tuple(out)


def rep_decomposition(r: GroupElement,
                      subgroup: SpecialSubgroup) -> tuple[int, PAdicNumber, PAdicNumber]:
    """Recover (n, lam, gam) with r = (p**n lam gam, p**n lam), exactly."""
    p = r.p
    n = int(r.h.valuation)
    lam = r.h / PAdicNumber.p_power(p, n)
    gam_frac = r.x.as_fraction() / r.h.as_fraction() if not r.x.is_zero() else Fraction(0)
    gam = PAdicNumber.from_fraction(p, gam_frac)
    return n, lam, gam


def is_subgroup_box(h1_scale: int | None, h2_m: int | None) -> bool:
    """Whether the box H1 x H2 is a subgroup of G (the condition is
    H1 * H2 inside H1).

    h1_scale is the translation scale k of H1 = P^k, or None for the
    degenerate H1 = {0}; h2_m is the unit-group level m of H2 = D_m*, or
    None for the full multiplicative group K*.
    """
    if h1_scale is None:
        return True
    if h2_m is None:
        return False
    return True
