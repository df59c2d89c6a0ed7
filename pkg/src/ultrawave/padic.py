"""Exact arithmetic in Q_p restricted to the dense subring Z[1/p].

Every quantity the engine manipulates lives in Z[1/p]: ball centers, coset
representatives, group coordinates.  Ring arithmetic there is exact, and the
residue field size is fixed to q = p, so absolute values are integer powers
of p.

Canonical form: value = numerator / p**denom_exp with denom_exp >= 0 and,
whenever denom_exp > 0, p not dividing the numerator.  Zero is 0 / p**0.
All values are immutable; operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadWindowError, NotAUnitError

INF = math.inf


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"residue characteristic must be prime, got {p}")


def qpow(p: int, e: int) -> Fraction:
    """p**e as an exact Fraction, e any integer."""
    return Fraction(p) ** e


def _strip_p(n: int, p: int) -> tuple[int, int]:
    """n = m * p**e with p not dividing m; requires n != 0."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return n, e


@dataclass(frozen=True, slots=True)
class PAdicNumber:
    """An element of Z[1/p] in canonical form (see module docstring)."""

    p: int
    numerator: int
    denom_exp: int = 0

    def __post_init__(self) -> None:
        p, n, e = self.p, self.numerator, self.denom_exp
        if e < 0:
            n *= p ** (-e)
            e = 0
        if n == 0:
            e = 0
        else:
            while e > 0 and n % p == 0:
                n //= p
                e -= 1
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "denom_exp", e)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, p: int) -> "PAdicNumber":
        return cls(p, 0)

    @classmethod
    def one(cls, p: int) -> "PAdicNumber":
        return cls(p, 1)

    @classmethod
    def p_power(cls, p: int, n: int) -> "PAdicNumber":
        """The element p**n."""
        return cls(p, 1, -n) if n < 0 else cls(p, p**n)

    @classmethod
    def from_fraction(cls, p: int, value: Fraction | int) -> "PAdicNumber":
        """Convert a rational with p-power denominator; ValueError otherwise."""
        value = Fraction(value)
        den = value.denominator
        if den == 1:
            return cls(p, value.numerator)
        m, e = _strip_p(den, p)
        if m != 1:
            raise ValueError(f"{value} is not in Z[1/{p}]")
        return cls(p, value.numerator, e)

    @classmethod
    def parse(cls, p: int, text: str) -> "PAdicNumber":
        """Parse the serialization form 'n' or 'n/p^e'."""
        text = text.strip()
        if "/" in text:
            num_s, den_s = text.split("/", 1)
            base_s, _, exp_s = den_s.partition("^")
            base = int(base_s)
            if base != p:
                raise ValueError(f"denominator base {base} does not match p={p}")
            return cls(p, int(num_s), int(exp_s) if exp_s else 1)
        return cls(p, int(text))

    # ------------------------------------------------------------------
    # queries

    @property
    def valuation(self) -> int | float:
        """v with |x| = q**(-v); +inf for zero."""
        if self.numerator == 0:
            return INF
        if self.denom_exp > 0:
            return -self.denom_exp
        return _strip_p(self.numerator, self.p)[1]

    def abs_value(self) -> Fraction:
        """|x| = q**(-v(x)) as an exact rational, 0 for x = 0."""
        if self.numerator == 0:
            return Fraction(0)
        return qpow(self.p, -self.valuation)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.p**self.denom_exp)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def is_unit(self) -> bool:
        return self.valuation == 0

    def canonical_rep(self, k: int) -> "PAdicNumber":
        """The representative of x + P^k whose digits at positions >= k vanish.

        Idempotent; x - x.canonical_rep(k) has valuation >= k.
        """
        if self.numerator == 0:
            return PAdicNumber(self.p, 0)
        window = k + self.denom_exp
        if window <= 0:
            return PAdicNumber(self.p, 0)
        m = self.numerator % self.p**window
        return PAdicNumber(self.p, m, self.denom_exp)

    def digit_window(self, lo: int, hi: int) -> tuple[int, ...]:
        """Base-p digits at positions lo..hi-1; requires v(x) >= lo."""
        if self.numerator != 0 and self.valuation < lo:
            raise ValueError("digit window starts above a nonzero digit")
        m = self.numerator * self.p ** (-lo - self.denom_exp) if -lo >= self.denom_exp \
            else self.numerator // self.p ** (lo + self.denom_exp)
        digits = []
        m %= self.p ** (hi - lo)
        for _ in range(hi - lo):
            digits.append(m % self.p)
            m //= self.p
        return tuple(digits)

    # ------------------------------------------------------------------
    # ring operations

    def _coerce(self, other) -> "PAdicNumber":
        if isinstance(other, PAdicNumber):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PAdicNumber(self.p, other)
        return NotImplemented

    def __add__(self, other) -> "PAdicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = max(self.denom_exp, other.denom_exp)
        n = (self.numerator * self.p ** (e - self.denom_exp)
             + other.numerator * self.p ** (e - other.denom_exp))
        return PAdicNumber(self.p, n, e)

    __radd__ = __add__

    def __neg__(self) -> "PAdicNumber":
        return PAdicNumber(self.p, -self.numerator, self.denom_exp)

    def __sub__(self, other) -> "PAdicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PAdicNumber":
        return (-self) + other

    def __mul__(self, other) -> "PAdicNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PAdicNumber(self.p, self.numerator * other.numerator,
                           self.denom_exp + other.denom_exp)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PAdicNumber":
        """Division, restricted to divisors of the form +-p**n."""
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.numerator == 0:
            raise ZeroDivisionError("division by zero in Z[1/p]")
        m, a = _strip_p(abs(other.numerator), self.p)
        if m != 1:
            raise ValueError(f"divisor {other} is not +-p**n; use unit_inverse_mod")
        sign = 1 if other.numerator > 0 else -1
        # other = sign * p**(a - other.denom_exp)
        return PAdicNumber(self.p, sign * self.numerator,
                           self.denom_exp + a - other.denom_exp)

    def __str__(self) -> str:
        if self.denom_exp == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.p}^{self.denom_exp}"

    def __repr__(self) -> str:
        return f"PAdicNumber(p={self.p}, {self})"


def valuation(x: PAdicNumber) -> int | float:
    return x.valuation


def unit_inverse_mod(u: PAdicNumber, precision: int) -> PAdicNumber:
    """Canonical w with digits in [0, precision) and u*w = 1 mod P^precision.

    Requires v(u) = 0.
    """
    if u.valuation != 0:
        raise NotAUnitError(f"{u} has valuation {u.valuation}, expected 0")
    if precision < 1:
        raise ValueError("precision must be >= 1")
    w = pow(u.numerator, -1, u.p**precision)
    return PAdicNumber(u.p, w)


def canonical_rep(x: PAdicNumber, k: int) -> PAdicNumber:
    return x.canonical_rep(k)


@lru_cache(maxsize=4096)
def coset_reps(p: int, l: int, k: int) -> tuple[PAdicNumber, ...]:
    """Canonical representatives of P^l / P^k: m * p**l for 0 <= m < q**(k-l)."""
    if l > k:
        raise BadWindowError(f"need l <= k, got l={l}, k={k}")
    return tuple(PAdicNumber(p, m, -l) for m in range(p ** (k - l)))


@lru_cache(maxsize=1024)
def unit_reps(p: int, m: int) -> tuple[PAdicNumber, ...]:
    """Representatives of D*/D_m*: the q**m - q**(m-1) integers in [1, p**m)
    coprime to p, in ascending order.  m = 0 yields (1,), representing D*
    itself as a single class.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m == 0:
        return (PAdicNumber.one(p),)
    return tuple(PAdicNumber(p, n) for n in range(1, p**m) if n % p != 0)


def char_phase(x: PAdicNumber) -> Fraction:
    """The p-adic fractional part of x in [0, 1).

    The standard additive character with kernel D is chi(x) = exp(2 pi i *
    char_phase(x)); the phase is additive mod 1 and vanishes exactly on
    D intersect Z[1/p].
    """
    if x.denom_exp == 0:
        return Fraction(0)
    den = x.p**x.denom_exp
    return Fraction(x.numerator % den, den)
