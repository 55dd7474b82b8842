"""Generalized Dedekind sums, exactly.

The sum phi_{h+dZ}(s) is defined over the nonzero residues k modulo d by

    sum_k e(ks/d) / ((1 - e(kh/d)) (1 - e(-k/d))),

a rational number even though no single term is.  The exact evaluator
uses the equivalent real form

    d * sum_{u=0}^{d-1} (u/d - (d-1)/(2d)) ({(hu+s)/d} - (d-1)/(2d)),

which clears denominators to the integer expression

    sum_{u=0}^{d-1} (2u - d + 1) (2 ((hu+s) mod d) - d + 1)   over   4d,

so the whole computation is integer arithmetic with a single Fraction at
the end.  The defining complex sum survives only as a floating point test
oracle.  Keys are normalized to 0 <= h, s < d with gcd(h, d) = 1 and the
values are memoized; d = 1 is allowed and gives phi identically zero.

Known laws, all exercised by the test suite: the shift law
phi(s+h) = phi(s) + s - (d-1)/2, the reciprocity recursion lowering d to
d mod h, the closed form (d^2 - 1 - 6s(d-s))/12 at h = 1, the zero sum
over s, the bridge phi(0) = d s(h,d) + (d-1)/4 to the classical Dedekind
sum, invariance under h -> h^{-1}, s -> -h^{-1} s, and the four-case
integrality pattern of phi modulo 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .errors import DomainError

__all__ = [
    "PhiKey",
    "phi_exact",
    "phi_numeric_oracle",
    "classical_dedekind_sum",
    "integrality_class",
]


@dataclass(frozen=True)
class PhiKey:
    """A normalized argument triple (d, h, s) with d >= 1, 0 <= h < d,
    0 <= s < d and gcd(h, d) = 1.  For d = 1 the key is (1, 0, 0)."""

    d: int
    h: int
    s: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DomainError(f"modulus d must be positive, got {self.d}")
        if not 0 <= self.h < self.d:
            raise DomainError(f"h={self.h} is not normalized modulo d={self.d}")
        if not 0 <= self.s < self.d:
            raise DomainError(f"s={self.s} is not normalized modulo d={self.d}")
        if gcd(self.h, self.d) != 1:
            raise DomainError(
                f"h={self.h} must be a unit modulo d={self.d}")

    @classmethod
    def of(cls, d: int, h: int, s: int) -> "PhiKey":
        """Normalize arbitrary integers h, s modulo d."""
        if d < 1:
            raise DomainError(f"modulus d must be positive, got {d}")
        return cls(d, h % d, s % d)


@lru_cache(maxsize=None)
def _phi_core(d: int, h: int, s: int) -> Fraction:
    shift = d - 1
    total = 0
    for u in range(d):
        total += (2 * u - shift) * (2 * ((h * u + s) % d) - shift)
    return Fraction(total, 4 * d)


def phi_exact(key: PhiKey) -> Fraction:
    """The exact rational value of phi_{h+dZ}(s)."""
    return _phi_core(key.d, key.h, key.s)


@lru_cache(maxsize=None)
def _unit_roots(d: int, prec: int):
    with mpmath.workprec(prec):
        return tuple(mpmath.expjpi(mpmath.mpf(2 * j) / d) for j in range(d))


def phi_numeric_oracle(key: PhiKey, precision_bits: int = 64) -> mpmath.mpc:
    """The defining root-of-unity sum, evaluated in floating point.

    Intended only as a test oracle against phi_exact; the imaginary part
    of the result must vanish up to roundoff.  Requires d >= 2 because
    the defining sum is empty for d = 1.
    """
    if key.d < 2:
        raise DomainError("the defining sum needs d >= 2")
    prec = max(precision_bits + 12, 32)
    with mpmath.workprec(prec):
        roots = _unit_roots(key.d, prec)
        d, h, s = key.d, key.h, key.s
        total = mpmath.mpc(0)
        for k in range(1, d):
            total += roots[(k * s) % d] / (
                (1 - roots[(k * h) % d]) * (1 - roots[d - k]))
        return total


def classical_dedekind_sum(h: int, d: int) -> Fraction:
    """The classical Dedekind sum s(h, d) = sum_{k=1}^{d-1} ((k/d))((hk/d)).

    (( )) is the sawtooth, x - floor(x) - 1/2 away from integers and 0 on
    them.  With gcd(h, d) = 1 no interior term hits an integer, so the sum
    clears to sum_k (2k - d)(2 (hk mod d) - d) over 4 d^2.
    """
    if d < 1:
        raise DomainError(f"modulus d must be positive, got {d}")
    if gcd(h, d) != 1:
        raise DomainError(f"h={h} must be coprime to d={d}")
    total = 0
    for k in range(1, d):
        total += (2 * k - d) * (2 * ((h * k) % d) - d)
    return Fraction(total, 4 * d * d)


def integrality_class(key: PhiKey) -> Fraction:
    """The predicted value of phi modulo 1, as a representative in [0, 1).

    Four cases:  phi is an integer when d is coprime to 6; it lies in
    -h/3 + Z when d is odd and divisible by 3; in (1+2s)/4 + Z when d is
    even and coprime to 3; and in (1+2s)/4 - h/3 + Z when 6 divides d.
    """
    if key.d < 2:
        raise DomainError("integrality classes are stated for d >= 2")
    rep = Fraction(0)
    if key.d % 2 == 0:
        rep += Fraction(1 + 2 * key.s, 4)
    if key.d % 3 == 0:
        rep -= Fraction(key.h, 3)
    return rep % 1
