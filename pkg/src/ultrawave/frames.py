"""Tight wavelet frames and orthonormal bases: construction, exact
verification, analysis, reconstruction, kernel operator and finite synthesis.

Any nonzero mean-zero test function g generates a tight frame (pi(r) g) over
a representative system R of its fixed subgroup H.  The frame constant is
verified empirically as the exact ratio (sum of squared coefficients) /
||f||**2 over a family of test functions and cross-checked against the
prediction C_g / mu_G(H); the verifier also reports the alternative value
C_g / sqrt(mu_G(H)) for comparison, since only the empirical constant is
authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .affine import GroupElement, SpecialSubgroup, fixed_subgroup
from .cwt import admissibility, sample_transform
from .errors import BadParamError, NotS0Error, NotTightError, WindowNotClosedError
from .fourier import inverse_fourier
from .padic import PAdicNumber, qpow
from .scalars import ScaledScalar
from .stepfn import Ball, StepFunction, canonicalize, pi_apply

CoefficientMap = dict[tuple[GroupElement, int], ScaledScalar]


@dataclass(slots=True)
class FrameSpec:
    """A (multi-)wavelet discretization: wavelets, subgroup, and the frame
    constant once verified."""

    p: int
    wavelets: tuple[StepFunction, ...]
    subgroup: SpecialSubgroup
    constant: Fraction | None = None

    def predicted_constant(self) -> Fraction:
        """sum_j C_{g_j} / mu_G(H), the constant the sampling identities give."""
        total = sum(admissibility(g) for g in self.wavelets)
        return total / self.subgroup.haar_mass(self.p)

    def printed_constant(self):
        """sum_j C_{g_j} / sqrt(mu_G(H)): exact ScaledScalar when the mass is
        an integer power of q, float otherwise."""
        total = sum(admissibility(g) for g in self.wavelets)
        if self.subgroup.m >= 1:
            half = ScaledScalar.q_half_power(self.p, self.subgroup.k + self.subgroup.m)
            return half.scaled(total)
        return float(total) / float(self.subgroup.haar_mass(self.p)) ** 0.5

    def require_verified(self) -> Fraction:
        if self.constant is None:
            raise BadParamError("frame has not been verified; run frame_constant first")
        return self.constant


def build_frame(g: StepFunction) -> FrameSpec:
    """Frame from a single mean-zero wavelet over its fixed subgroup."""
    if g.is_zero() or not g.has_zero_integral():
        raise NotS0Error("wavelet must be nonzero with zero integral")
    return FrameSpec(g.p, (g,), fixed_subgroup(g))


def fourier_coset_frame(p: int, k: int) -> FrameSpec:
    """Frame whose wavelet is the inverse transform of the indicator of the
    Fourier-domain coset p**-k + D, over the subgroup P^k x D_k*."""
    if k < 1:
        raise BadParamError("k must be >= 1")
    ghat = StepFunction.indicator(p, PAdicNumber.p_power(p, -k), 0)
    g = inverse_fourier(ghat)
    return FrameSpec(p, (g,), SpecialSubgroup(k, k))


def benedetto_onb(p: int) -> FrameSpec:
    """The Benedetto-Benedetto wavelet system: q - 1 wavelets with Fourier
    transforms the indicators of the nonzero cosets sigma_i + D of
    p**-1 D / D, sampled over D x D*.  Forms an orthonormal basis."""
    wavelets = []
    for i in range(1, p):
        sigma = PAdicNumber(p, i, 1)  # i / p
        wavelets.append(inverse_fourier(StepFunction.indicator(p, sigma, 0)))
    return FrameSpec(p, tuple(wavelets), SpecialSubgroup(0, 0))


def analyze_coeffs(f: StepFunction, fs: FrameSpec,
                   verify_guard: bool = True) -> CoefficientMap:
    """All nonzero frame coefficients <f | pi(r) g_j>, complete by certified
    support bounds."""
    st = sample_transform(f, fs.wavelets, subgroup=fs.subgroup,
                          verify_guard=verify_guard)
    return st.entries


@dataclass(slots=True)
class FrameVerification:
    constant: Fraction
    predicted: Fraction
    printed: object  # ScaledScalar or float
    tight: bool
    n_functions: int


def frame_constant(fs: FrameSpec, test_functions,
                   verify_guard: bool = False) -> FrameVerification:
    """Empirical frame constant over a family of test functions.

    For each f the exact ratio (sum_{r,j} |<f|pi(r)g_j>|**2) / ||f||**2 is
    computed; the verdict is Tight(C) only if one constant fits the whole
    family exactly.  On success the constant is stored on the FrameSpec.
    """
    pairs = []
    for f in test_functions:
        coeffs = analyze_coeffs(f, fs, verify_guard=verify_guard)
        total = ScaledScalar.zero(fs.p)
        for v in coeffs.values():
            total = total + v.abs_sq()
        pairs.append((total, f.l2_norm_sq()))
    if not pairs:
        raise BadParamError("empty test family")

    candidate: Fraction | None = None
    for total, norm_sq in pairs:
        if total.is_rational() and norm_sq.is_rational() and not norm_sq.is_zero():
            candidate = total.as_fraction() / norm_sq.as_fraction()
            break
    if candidate is None:
        candidate = fs.predicted_constant()

    ratios = []
    tight = True
    for total, norm_sq in pairs:
        ok = total == norm_sq * candidate
        tight = tight and ok
        ratios.append((total, norm_sq, ok))
    if not tight:
        table = [(str(t), str(n), ok) for t, n, ok in ratios]
        raise NotTightError("frame-sum ratio is not constant across the family",
                            ratios=table)
    fs.constant = candidate
    return FrameVerification(constant=candidate,
                             predicted=fs.predicted_constant(),
                             printed=fs.printed_constant(),
                             tight=True,
                             n_functions=len(pairs))


def synthesize(alpha: CoefficientMap, fs: FrameSpec) -> StepFunction:
    """S(alpha) = sum alpha(r,j) pi(r) g_j, an exact finite synthesis."""
    pairs = []
    for (r, j), c in alpha.items():
        atom = pi_apply(fs.wavelets[j - 1], r)
        for center, val in atom.terms.items():
            pairs.append((Ball(center, atom.resolution), val * c))
    return canonicalize(fs.p, pairs)


def reconstruct(coeffs: CoefficientMap, fs: FrameSpec) -> StepFunction:
    """(1/C) sum coeffs(r,j) pi(r) g_j for a verified frame; inverts
    analyze_coeffs exactly.

    When coefficient and atom carry definite sqrt(q) parities the product
    parity is checked at runtime (it must land in the pure cyclotomic part
    whenever the analyzed function was sqrt(q)-free).
    """
    c_frame = fs.require_verified()
    pairs = []
    for (r, j), c in coeffs.items():
        atom = pi_apply(fs.wavelets[j - 1], r)
        for center, val in atom.terms.items():
            term = val * c
            cp, ap = c.sqrtq_parity(), val.sqrtq_parity()
            if cp is not None and ap is not None:
                expected = (cp + ap) % 2
                assert term.sqrtq_parity() in (expected, None) or term.is_zero()
            pairs.append((Ball(center, atom.resolution), term))
    return canonicalize(fs.p, pairs) * (Fraction(1) / c_frame)


@dataclass(slots=True)
class KernelMatrix:
    """The reproducing-kernel Gram matrix t[(r,j),(s,k)] = <pi(s) g_k | pi(r) g_j>
    restricted to a finite index window."""

    fs: FrameSpec
    indices: tuple[tuple[GroupElement, int], ...]
    entries: dict[tuple[tuple[GroupElement, int], tuple[GroupElement, int]], ScaledScalar]

    def entry(self, row, col) -> ScaledScalar:
        v = self.entries.get((row, col))
        return v if v is not None else ScaledScalar.zero(self.fs.p)

    def is_identity(self) -> bool:
        one = ScaledScalar.one(self.fs.p)
        for row in self.indices:
            for col in self.indices:
                expected = one if row == col else ScaledScalar.zero(self.fs.p)
                if self.entry(row, col) != expected:
                    return False
        return True


def kernel_matrix(fs: FrameSpec, indices) -> KernelMatrix:
    """Exact Gram matrix over the given (representative, wavelet) window."""
    indices = tuple(indices)
    entries = {}
    for col in indices:
        column = _kernel_column(fs, col)
        for row in indices:
            v = column.get(row)
            if v is not None and not v.is_zero():
                entries[(row, col)] = v
    return KernelMatrix(fs, indices, entries)


def _kernel_column(fs: FrameSpec, col: tuple[GroupElement, int]) -> CoefficientMap:
    """All nonzero t[(r,j), col] as a map over (r, j); a finite set by the
    compact support of the transform of a frame atom."""
    s, k = col
    atom = pi_apply(fs.wavelets[k - 1], s)
    st = sample_transform(atom, fs.wavelets, subgroup=fs.subgroup,
                          verify_guard=False)
    return st.entries


def kernel_apply(fs: FrameSpec, alpha: CoefficientMap,
                 _columns: dict | None = None) -> CoefficientMap:
    """T alpha, where (T alpha)(r,j) = sum t[(r,j),(s,k)] alpha(s,k); exact
    and finitely supported for finitely supported alpha."""
    out: CoefficientMap = {}
    for col, a in alpha.items():
        if a.is_zero():
            continue
        column = _columns[col] if _columns is not None and col in _columns \
            else _kernel_column(fs, col)
        if _columns is not None:
            _columns[col] = column
        for key, t in column.items():
            prev = out.get(key)
            s = t * a if prev is None else prev + t * a
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def kernel_idempotent_check(fs: FrameSpec, alpha: CoefficientMap,
                            window=None) -> bool:
    """Verify (1/C) T (1/C) T alpha = (1/C) T alpha exactly.

    The comparison set is the two-step dependency closure of the support of
    alpha; with an explicit window the closure must fit inside it, otherwise
    WindowNotClosedError is raised.
    """
    c_frame = fs.require_verified()
    columns: dict = {}
    t1 = kernel_apply(fs, alpha, columns)
    t2 = kernel_apply(fs, t1, columns)
    closure = set(alpha) | set(t1) | set(t2)
    if window is not None:
        window = set(window)
        if not closure <= window:
            raise WindowNotClosedError(
                "window does not contain the two-step dependency set")
    zero = ScaledScalar.zero(fs.p)
    for key in closure:
        lhs = t2.get(key, zero)
        rhs = t1.get(key, zero) * c_frame
        if lhs != rhs:
            return False
    return True
