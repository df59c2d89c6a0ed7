"""Continuous wavelet transform W_g f(x,h) = <f | pi(x,h) g> and its exact
sampling.

For mean-zero test functions the transform is compactly supported and
right-invariant under the fixed subgroup of the wavelet, so it is fully
described by finitely many exact values on a special representative system.
Support is certified from Fourier supports through the convolution theorem:
the dilation valuation v(h) must be a difference of Fourier shell exponents
of f and g, and for each admissible h the translation part lies in
P^min(l_f, l_g + v(h)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .affine import (GroupElement, RepSystem, SpecialSubgroup, fixed_subgroup,
                     special_reps)
from .errors import DivergentError, NotS0Error, WindowTooSmallError, ZeroFunctionError
from .fourier import fourier
from .padic import PAdicNumber, coset_reps, qpow, unit_reps
from .scalars import ScaledScalar
from .stepfn import StepFunction, pi_apply


def transform_point(f: StepFunction, g: StepFunction,
                    u: GroupElement) -> ScaledScalar:
    """W_g f(u) = <f | pi(u) g>, exact."""
    return f.inner(pi_apply(g, u))


def admissibility(g: StepFunction) -> Fraction:
    """The admissibility constant C_g = integral |g^(xi)|**2 / |xi| d xi.

    Finite exactly when g has zero mean; DivergentError otherwise.
    """
    if g.is_zero():
        raise ZeroFunctionError("zero wavelet")
    p = g.p
    ghat = fourier(g)
    if not ghat.evaluate(PAdicNumber.zero(p)).is_zero():
        raise DivergentError("wavelet has nonzero mean; admissibility integral diverges")
    acc = ScaledScalar.zero(p)
    for c, v in ghat.terms.items():
        acc = acc + v.abs_sq().scaled(qpow(p, int(c.valuation)))
    return acc.scaled(qpow(p, -ghat.resolution)).as_fraction()


def _shells(f: StepFunction) -> frozenset[int]:
    """Exponents j of the shells |xi| = q**j meeting the Fourier support."""
    return frozenset(-int(c.valuation) for c in fourier(f).terms)


@dataclass(frozen=True, slots=True)
class SupportBounds:
    """Certified region outside which W_g f vanishes identically.

    v_min/v_max is the membership-class annulus bound on v(h); v_values is
    the exact set of admissible v(h) read off the Fourier shell supports.
    """

    v_min: int
    v_max: int
    v_values: frozenset[int]
    f_support: int
    g_support: int

    def x_scale(self, v: int) -> int:
        """Translation bound: W_g f(x, h) = 0 unless x lies in P^x_scale(v(h))."""
        return min(self.f_support, self.g_support + v)

    def contains(self, u: GroupElement) -> bool:
        v = u.h.valuation
        if v not in self.v_values:
            return False
        return u.x.valuation >= self.x_scale(int(v))


def _require_s0(f: StepFunction, name: str) -> None:
    if f.is_zero() or not f.has_zero_integral():
        raise NotS0Error(f"{name} must be a nonzero test function with zero integral")


def support_bounds(f: StepFunction, g: StepFunction) -> SupportBounds:
    """Compute the certified support region of W_g f for f, g mean-zero."""
    _require_s0(f, "f")
    _require_s0(g, "g")
    lf, kf = f.membership_class()
    lg, kg = g.membership_class()
    v_values = frozenset(jf - jg for jf in _shells(f) for jg in _shells(g))
    return SupportBounds(v_min=lf - kg, v_max=kf - lg, v_values=v_values,
                         f_support=lf, g_support=lg)


@dataclass(slots=True)
class SampledTransform:
    """A wavelet transform restricted to a representative window.

    Entries map (representative, wavelet index) to the exact coefficient
    value; indices are 1-based.  Values absent from the map are zero, and
    when `bounds` is set every representative outside the certified region
    is guaranteed (and, with guard verification, checked) to be zero.
    """

    p: int
    subgroup: SpecialSubgroup
    wavelet_count: int
    entries: dict[tuple[GroupElement, int], ScaledScalar]
    n_lo: int
    n_hi: int
    bounds: tuple[SupportBounds, ...] = ()

    def coefficient_sum_sq(self) -> ScaledScalar:
        acc = None
        for v in self.entries.values():
            term = v.abs_sq()
            acc = term if acc is None else acc + term
        return acc if acc is not None else ScaledScalar.zero(self.p)


def sample_transform(f: StepFunction, wavelets, subgroup: SpecialSubgroup | None = None,
                     rs: RepSystem | None = None,
                     verify_guard: bool = True) -> SampledTransform:
    """Sample W_{g_j} f on a representative system, capturing all nonzero
    coefficients.

    With rs=None the window is derived from certified support bounds plus a
    guard ring (requires mean-zero inputs); verify_guard additionally
    evaluates the guard cells and insists they vanish.  With an explicit rs
    the window must cover the certified region, otherwise
    WindowTooSmallError is raised.
    """
    wavelets = list(wavelets)
    p = f.p
    if subgroup is None:
        if rs is not None:
            subgroup = rs.subgroup
        elif len(wavelets) == 1:
            subgroup = fixed_subgroup(wavelets[0])
        else:
            raise ValueError("subgroup is required for multi-wavelet sampling")

    if rs is not None:
        return _sample_explicit(f, wavelets, subgroup, rs)

    bounds = tuple(support_bounds(f, g) for g in wavelets)
    v_all = sorted(set().union(*(b.v_values for b in bounds)))
    entries: dict[tuple[GroupElement, int], ScaledScalar] = {}
    if not v_all:
        return SampledTransform(p, subgroup, len(wavelets), entries, 0, -1, bounds)
    n_lo, n_hi = v_all[0] - 1, v_all[-1] + 1
    lams = unit_reps(p, subgroup.m)
    for n in range(n_lo, n_hi + 1):
        gamma_lo = min(b.x_scale(n) for b in bounds) - n - 1
        pn = PAdicNumber.p_power(p, n)
        for lam in lams:
            h = pn * lam
            for gam in coset_reps(p, gamma_lo, subgroup.k):
                r = GroupElement(h * gam, h)
                for j, g in enumerate(wavelets, start=1):
                    certified_zero = not bounds[j - 1].contains(r)
                    if certified_zero and not verify_guard:
                        continue
                    val = transform_point(f, g, r)
                    if val.is_zero():
                        continue
                    if certified_zero:
                        raise WindowTooSmallError(
                            f"nonzero coefficient at certified-zero cell {r}")
                    entries[(r, j)] = val
    return SampledTransform(p, subgroup, len(wavelets), entries, n_lo, n_hi, bounds)


def _sample_explicit(f, wavelets, subgroup, rs) -> SampledTransform:
    p = f.p
    try:
        bounds = tuple(support_bounds(f, g) for g in wavelets)
    except NotS0Error:
        bounds = ()
    if bounds:
        _check_window_covers(p, rs, bounds)
    entries: dict[tuple[GroupElement, int], ScaledScalar] = {}
    boundary_hit = None
    for r in special_reps(p, rs):
        n = int(r.h.valuation)
        for j, g in enumerate(wavelets, start=1):
            val = transform_point(f, g, r)
            if val.is_zero():
                continue
            entries[(r, j)] = val
            on_edge = (n in (rs.n_lo, rs.n_hi)
                       or (not r.x.is_zero()
                           and r.x.valuation - n <= rs.gamma_lo))
            if on_edge:
                boundary_hit = r
    if not bounds and boundary_hit is not None:
        raise WindowTooSmallError(
            f"nonzero coefficient on the window boundary at {boundary_hit}")
    return SampledTransform(p, subgroup, len(wavelets), entries,
                            rs.n_lo, rs.n_hi, bounds)


def _check_window_covers(p, rs: RepSystem, bounds) -> None:
    for b in bounds:
        for v in sorted(b.v_values):
            if v < rs.n_lo or v > rs.n_hi:
                raise WindowTooSmallError(
                    f"window misses certified dilation level v(h) = {v}")
            need_gamma = b.x_scale(v) - v
            if rs.gamma_lo > need_gamma:
                raise WindowTooSmallError(
                    f"window misses certified translation level {need_gamma} at v(h) = {v}")


def isometry_check(f: StepFunction, g: StepFunction,
                   verify_guard: bool = True) -> tuple[Fraction, Fraction]:
    """Return (mu_G(H_g) * sum |W_g f(r)|**2, C_g * ||f||**2) as exact
    rationals; the two sides agree for mean-zero f and g.
    """
    c_g = admissibility(g)
    subgroup = fixed_subgroup(g)
    st = sample_transform(f, [g], subgroup=subgroup, verify_guard=verify_guard)
    lhs = st.coefficient_sum_sq().scaled(subgroup.haar_mass(f.p)).as_fraction()
    rhs = c_g * f.l2_norm_sq().as_fraction()
    return lhs, rhs
