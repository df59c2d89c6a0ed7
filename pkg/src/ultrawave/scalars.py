"""Exact scalar arithmetic: p-power-conductor cyclotomics with sqrt(q) adjoined.

CycloScalar is an element of Q(zeta), zeta a primitive p**N-th root of
unity, stored sparsely as {exponent: rational} over the power basis and kept
canonical in two ways: exponents are reduced below phi(p**N) via the
cyclotomic relation

    zeta**(p**(N-1)(p-1)) = -(1 + zeta**(p**(N-1)) + ... + zeta**((p-2) p**(N-1)))

and the conductor exponent N is demoted to the smallest field containing the
value.  Equality of canonical forms is equality of values.

ScaledScalar is the formal pair a + b*sqrt(q) with cyclotomic a, b and q = p.
sqrt(q) is adjoined as a symbol fixed by conjugation, which keeps the
|h|**(+-1/2) factors of the dilation action exact and uniform in p.  Scalars
produced by the engine track every sqrt(q) factor in the b component, so the
pair representation is faithful on all engine value flows.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadPhaseError, ConductorTooLargeError
from .padic import check_prime

_MAX_CONDUCTOR = 2**20

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _phi(p: int, n_exp: int) -> int:
    """phi(p**n_exp): degree of the conductor-p**n_exp cyclotomic field."""
    if n_exp == 0:
        return 1
    return p ** (n_exp - 1) * (p - 1)


def _reduce(p: int, n_exp: int, raw: dict[int, Fraction]) -> dict[int, Fraction]:
    """Fold arbitrary integer exponents into the power basis 0..phi(p**N)-1."""
    pn = p**n_exp
    d = _phi(p, n_exp)
    step = pn // p if n_exp > 0 else 1
    acc: dict[int, Fraction] = {}
    for t, c in raw.items():
        if not c:
            continue
        t %= pn
        if t < d:
            acc[t] = acc.get(t, _ZERO) + c
        else:
            s = t - d
            for i in range(p - 1):
                u = i * step + s
                acc[u] = acc.get(u, _ZERO) - c
    return {t: c for t, c in acc.items() if c}


def _demote(p: int, n_exp: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Lower the conductor exponent while all exponents are divisible by p."""
    while n_exp > 0 and all(t % p == 0 for t in coeffs):
        coeffs = {t // p: c for t, c in coeffs.items()}
        n_exp -= 1
    return n_exp, coeffs


@dataclass(frozen=True, slots=True)
class CycloScalar:
    """Canonical element of the p**n_exp-th cyclotomic field."""

    p: int
    n_exp: int
    coeffs: tuple[tuple[int, Fraction], ...]  # sorted sparse (exponent, coeff)

    @classmethod
    def make(cls, p: int, n_exp: int, raw: dict[int, Fraction]) -> "CycloScalar":
        reduced = _reduce(p, n_exp, raw)
        n_exp, reduced = _demote(p, n_exp, reduced)
        return cls(p, n_exp, tuple(sorted(reduced.items())))

    @classmethod
    def from_fraction(cls, p: int, value: Fraction | int) -> "CycloScalar":
        value = Fraction(value)
        return cls(p, 0, ((0, value),) if value else ())

    @classmethod
    def zero(cls, p: int) -> "CycloScalar":
        return cls(p, 0, ())

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.n_exp == 0

    def as_fraction(self) -> Fraction:
        if self.n_exp != 0:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0][1] if self.coeffs else _ZERO

    def promoted(self, n_exp: int) -> dict[int, Fraction]:
        """Coefficients over the redundant basis at a conductor >= self.n_exp."""
        shift = self.p ** (n_exp - self.n_exp)
        return {t * shift: c for t, c in self.coeffs}

    def __add__(self, other: "CycloScalar") -> "CycloScalar":
        n = max(self.n_exp, other.n_exp)
        raw = self.promoted(n)
        for t, c in other.promoted(n).items():
            raw[t] = raw.get(t, _ZERO) + c
        return CycloScalar.make(self.p, n, raw)

    def __neg__(self) -> "CycloScalar":
        return CycloScalar(self.p, self.n_exp, tuple((t, -c) for t, c in self.coeffs))

    def __sub__(self, other: "CycloScalar") -> "CycloScalar":
        return self + (-other)

    def __mul__(self, other: "CycloScalar") -> "CycloScalar":
        if self.is_zero() or other.is_zero():
            return CycloScalar.zero(self.p)
        if self.n_exp == 0:
            c0 = self.coeffs[0][1]
            return CycloScalar(other.p, other.n_exp,
                               tuple((t, c * c0) for t, c in other.coeffs))
        if other.n_exp == 0:
            return other * self
        n = max(self.n_exp, other.n_exp)
        pn = self.p**n
        a = self.promoted(n)
        b = other.promoted(n)
        raw: dict[int, Fraction] = {}
        for t1, c1 in a.items():
            for t2, c2 in b.items():
                t = (t1 + t2) % pn
                raw[t] = raw.get(t, _ZERO) + c1 * c2
        return CycloScalar.make(self.p, n, raw)

    def scaled(self, factor: Fraction) -> "CycloScalar":
        if not factor:
            return CycloScalar.zero(self.p)
        return CycloScalar(self.p, self.n_exp,
                           tuple((t, c * factor) for t, c in self.coeffs))

    def conj(self) -> "CycloScalar":
        """The automorphism zeta -> zeta**(-1) (complex conjugation)."""
        pn = self.p**self.n_exp
        return CycloScalar.make(self.p, self.n_exp,
                                {(-t) % pn: c for t, c in self.coeffs})

    def to_complex(self) -> complex:
        pn = self.p**self.n_exp
        if pn > _MAX_CONDUCTOR:
            raise ConductorTooLargeError(f"conductor {self.p}**{self.n_exp}")
        return sum((complex(c) * cmath.exp(2j * cmath.pi * t / pn)
                    for t, c in self.coeffs), complex(0))

    def dense(self, n_exp: int) -> list[Fraction]:
        """Dense power-basis vector at the given conductor exponent."""
        out = [_ZERO] * _phi(self.p, n_exp)
        for t, c in self.promoted(n_exp).items():
            out[t] = c
        return out

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for t, c in self.coeffs:
            parts.append(str(c) if t == 0 else f"{c}*z{self.p}^{self.n_exp}[{t}]")
        return " + ".join(parts)


@dataclass(frozen=True, slots=True)
class ScaledScalar:
    """a + b*sqrt(q), with a, b canonical CycloScalar values."""

    a: CycloScalar
    b: CycloScalar

    @property
    def p(self) -> int:
        return self.a.p

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_fraction(cls, p: int, value: Fraction | int) -> "ScaledScalar":
        return cls(CycloScalar.from_fraction(p, value), CycloScalar.zero(p))

    @classmethod
    def zero(cls, p: int) -> "ScaledScalar":
        return cls.from_fraction(p, 0)

    @classmethod
    def one(cls, p: int) -> "ScaledScalar":
        return cls.from_fraction(p, 1)

    @classmethod
    def sqrt_q(cls, p: int) -> "ScaledScalar":
        return cls(CycloScalar.zero(p), CycloScalar.from_fraction(p, 1))

    @classmethod
    def q_half_power(cls, p: int, j: int) -> "ScaledScalar":
        """q**(j/2): rational for even j, rational * sqrt(q) for odd j."""
        if j % 2 == 0:
            return cls.from_fraction(p, Fraction(p) ** (j // 2))
        return cls(CycloScalar.zero(p),
                   CycloScalar.from_fraction(p, Fraction(p) ** ((j - 1) // 2)))

    # ------------------------------------------------------------------
    # queries

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_rational(self) -> bool:
        return self.b.is_zero() and self.a.is_rational()

    def as_fraction(self) -> Fraction:
        if not self.b.is_zero():
            raise ValueError(f"{self} has a sqrt(q) component")
        return self.a.as_fraction()

    def sqrtq_parity(self) -> int | None:
        """0 for pure cyclotomic, 1 for pure sqrt(q) multiples, None if mixed."""
        if self.b.is_zero():
            return 0
        if self.a.is_zero():
            return 1
        return None

    def to_complex(self) -> complex:
        return self.a.to_complex() + self.b.to_complex() * (self.p**0.5)

    # ------------------------------------------------------------------
    # ring operations

    def _coerce(self, other) -> "ScaledScalar":
        if isinstance(other, ScaledScalar):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return ScaledScalar.from_fraction(self.p, other)
        return NotImplemented

    def __add__(self, other) -> "ScaledScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ScaledScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "ScaledScalar":
        return ScaledScalar(-self.a, -self.b)

    def __sub__(self, other) -> "ScaledScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ScaledScalar":
        return (-self) + other

    def __mul__(self, other) -> "ScaledScalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        q = Fraction(self.p)
        a = self.a * other.a + (self.b * other.b).scaled(q)
        b = self.a * other.b + self.b * other.a
        return ScaledScalar(a, b)

    __rmul__ = __mul__

    def scaled(self, factor: Fraction | int) -> "ScaledScalar":
        factor = Fraction(factor)
        return ScaledScalar(self.a.scaled(factor), self.b.scaled(factor))

    def conj(self) -> "ScaledScalar":
        """Complex conjugation; sqrt(q) is fixed."""
        return ScaledScalar(self.a.conj(), self.b.conj())

    def abs_sq(self) -> "ScaledScalar":
        """z * conj(z), exact."""
        return self * self.conj()

    def __str__(self) -> str:
        if self.b.is_zero():
            return str(self.a)
        if self.a.is_zero():
            return f"({self.b})*sqrt({self.p})"
        return f"({self.a}) + ({self.b})*sqrt({self.p})"


def root_of_unity(p: int, phase: Fraction) -> ScaledScalar:
    """exp(2 pi i phase) for a rational phase with p-power denominator."""
    check_prime(p)
    phase = Fraction(phase)
    den = phase.denominator
    n_exp = 0
    while den % p == 0:
        den //= p
        n_exp += 1
    if den != 1:
        raise BadPhaseError(f"phase denominator {phase.denominator} is not a power of {p}")
    t = phase.numerator % p**n_exp if n_exp else 0
    cyc = CycloScalar.make(p, n_exp, {t: _ONE})
    return ScaledScalar(cyc, CycloScalar.zero(p))


def abs_sq(z: ScaledScalar) -> ScaledScalar:
    return z.abs_sq()


def to_float(z: ScaledScalar) -> complex:
    return z.to_complex()
