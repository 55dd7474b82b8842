"""Thomae exponent tables for non-special divisors.

For a non-special divisor D and a pair of branch sites a = (sigma, j),
b = (rho, i), the quantity q_D(a, b) is the product of the two centered
weights (beta/o - (o-1)/(2o)).  Summing q over the full dual-group orbit
of D gives q_e(a, b), which collapses to the closed form

    q_e(a, b) = (n / (o(sigma) o(rho))) phi_{h+dZ}(beta_b - h beta_a mod d)

with (d, h) the intersection data of the two monodromies.  The character
average

    gamma(sigma, rho) = (1/n) sum over chi of
                            u_{chi,sigma} u_{chi,rho} / (o(sigma) o(rho))

likewise collapses to phi_{h+dZ}(0)/(o o') + (o-1)(o'-1)/(4 o o').  The
exponent attached to the factor (lambda_a - lambda_b) is then

    4 m (2 q_e(a, b) + n gamma(sigma, rho)),

always an even integer; the full table over unordered pairs, together
with the det C exponent 4m and the theta exponent 8m, is what this
module assembles.  Both q_e and gamma are provided in their definitional
brute-force form and in closed form so they can be played against each
other in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cover import CoverInvariants, CoverSpec
from .dedekind import PhiKey, phi_exact
from .divisors import InvariantDivisor, is_nonspecial, orbit
from .errors import ConsistencyError, DomainError, MalformedDataError
from .group_core import (AbelianGroup, GroupElement, IntersectionData,
                         dual_group, element_order, intersection_data,
                         pairing_u)

__all__ = [
    "PairKey",
    "ExponentTable",
    "q_delta",
    "q_e",
    "q_e_closed_form",
    "gamma",
    "gamma_closed_form",
    "thomae_exponent",
    "exponent_table",
    "relabel_equivalent",
]


@dataclass(frozen=True, order=True)
class PairKey:
    """An unordered pair of site positions, stored with first < second."""

    first: int
    second: int

    def __post_init__(self) -> None:
        if not 0 <= self.first < self.second:
            raise DomainError(
                f"pair ({self.first}, {self.second}) is not an ordered pair "
                f"of distinct nonnegative positions")

    @classmethod
    def of(cls, a: int, b: int) -> "PairKey":
        if a == b:
            raise DomainError("a pair needs two distinct sites")
        return cls(min(a, b), max(a, b))


@dataclass
class ExponentTable:
    """The assembled table: one even integer per unordered site pair, the
    det C exponent 4m, the theta exponent 8m, and a fingerprint naming the
    source divisor orbit."""

    entries: dict[PairKey, int]
    detC_exponent: int
    theta_exponent: int
    divisor_fingerprint: str


@lru_cache(maxsize=None)
def _intersection(group: AbelianGroup, a: GroupElement,
                  b: GroupElement) -> IntersectionData:
    return intersection_data(group, a, b)


def _centered(o: int, b: int) -> Fraction:
    return Fraction(2 * b - o + 1, 2 * o)


def q_delta(spec: CoverSpec, D: InvariantDivisor, a: int, b: int) -> Fraction:
    """The product of the centered weights of D at sites a and b."""
    _check_positions(spec, D, a, b)
    oa, ob = spec.site_orders[a], spec.site_orders[b]
    return _centered(oa, D.beta[a]) * _centered(ob, D.beta[b])


def q_e(spec: CoverSpec, inv: CoverInvariants, D: InvariantDivisor,
        a: int, b: int) -> Fraction:
    """Orbit sum of q_delta: the definitional, brute-force route."""
    return sum(
        (q_delta(spec, member, a, b) for member in orbit(spec, inv, D)),
        Fraction(0))


def q_e_closed_form(spec: CoverSpec, inv: CoverInvariants,
                    D: InvariantDivisor, a: int, b: int) -> Fraction:
    """The Dedekind-sum closed form of the orbit sum.

    Any member of the orbit of D gives the same value, because the
    argument beta_b - h beta_a is constant modulo d along the orbit.
    """
    _check_positions(spec, D, a, b)
    group = spec.group
    oa, ob = spec.site_orders[a], spec.site_orders[b]
    data = _intersection(group, spec.sites[a].element, spec.sites[b].element)
    s = (D.beta[b] - data.h * D.beta[a]) % data.d
    return Fraction(group.order, oa * ob) * \
        phi_exact(PhiKey.of(data.d, data.h, s))


def gamma(group: AbelianGroup, s: GroupElement,
          r: GroupElement) -> Fraction:
    """The definitional character average
    (1/n) sum over chi of u_{chi,s} u_{chi,r} / (o(s) o(r))."""
    if s.is_identity() or r.is_identity():
        raise DomainError("gamma requires nontrivial elements")
    o_s = element_order(group, s)
    o_r = element_order(group, r)
    total = sum(pairing_u(group, chi, s) * pairing_u(group, chi, r)
                for chi in dual_group(group))
    return Fraction(total, group.order * o_s * o_r)


def gamma_closed_form(group: AbelianGroup, s: GroupElement,
                      r: GroupElement) -> Fraction:
    """gamma via intersection data:
    phi_{h+dZ}(0)/(o o') + (o-1)(o'-1)/(4 o o')."""
    if s.is_identity() or r.is_identity():
        raise DomainError("gamma requires nontrivial elements")
    o_s = element_order(group, s)
    o_r = element_order(group, r)
    data = _intersection(group, s, r)
    phi0 = phi_exact(PhiKey.of(data.d, data.h, 0))
    return (phi0 + Fraction((o_s - 1) * (o_r - 1), 4)) / (o_s * o_r)


def thomae_exponent(spec: CoverSpec, inv: CoverInvariants,
                    D: InvariantDivisor, pair: PairKey) -> int:
    """The exponent of (lambda_a - lambda_b):  4m (2 q_e + n gamma).

    Assembled in exact rational arithmetic and only then converted; a
    non-integral or odd result is an internal error, never silently
    truncated.
    """
    if not is_nonspecial(spec, inv, D):
        raise DomainError("exponents are defined for non-special divisors")
    a, b = pair.first, pair.second
    _check_positions(spec, D, a, b)
    value = 4 * inv.m * (
        2 * q_e_closed_form(spec, inv, D, a, b)
        + inv.n * gamma_closed_form(spec.group, spec.sites[a].element,
                                    spec.sites[b].element))
    if value.denominator != 1:
        raise ConsistencyError(
            f"exponent for pair ({a}, {b}) is non-integral: {value}")
    result = int(value)
    if result % 2 != 0:
        raise ConsistencyError(
            f"exponent for pair ({a}, {b}) is odd: {result}")
    return result


def exponent_table(spec: CoverSpec, inv: CoverInvariants,
                   D: InvariantDivisor) -> ExponentTable:
    """The full table over unordered site pairs, in ascending pair order."""
    if not is_nonspecial(spec, inv, D):
        raise DomainError("exponents are defined for non-special divisors")
    rep = min(member.beta for member in orbit(spec, inv, D))
    entries: dict[PairKey, int] = {}
    B = len(spec.sites)
    for a in range(B):
        for b in range(a + 1, B):
            key = PairKey(a, b)
            entries[key] = thomae_exponent(spec, inv, D, key)
    return ExponentTable(
        entries=entries,
        detC_exponent=4 * inv.m,
        theta_exponent=8 * inv.m,
        divisor_fingerprint=f"{spec.fingerprint}:orbit{list(rep)}")


def relabel_equivalent(spec: CoverSpec, inv: CoverInvariants,
                       D1: InvariantDivisor,
                       D2: InvariantDivisor) -> tuple[int, ...] | None:
    """A site permutation carrying the weights of D1 to those of D2, if
    the two divisors have identical weight-level cardinalities within
    every monodromy block; None otherwise.

    The permutation acts within each block, and position a of D1 maps to
    position perm[a] of D2 with D2.beta[perm[a]] = D1.beta[a].  When it
    exists, the two exponent tables agree up to relabeling pairs by it.
    """
    for D in (D1, D2):
        if not is_nonspecial(spec, inv, D):
            raise DomainError(
                "relabel equivalence is defined for non-special divisors")
    B = len(spec.sites)
    blocks: dict[int, list[int]] = {}
    for k, site in enumerate(spec.sites):
        blocks.setdefault(site.element_rank, []).append(k)
    perm: list[int | None] = [None] * B
    for positions in blocks.values():
        by_value_1: dict[int, list[int]] = {}
        by_value_2: dict[int, list[int]] = {}
        for k in positions:
            by_value_1.setdefault(D1.beta[k], []).append(k)
            by_value_2.setdefault(D2.beta[k], []).append(k)
        if {v: len(ks) for v, ks in by_value_1.items()} != \
                {v: len(ks) for v, ks in by_value_2.items()}:
            return None
        for v, ks in by_value_1.items():
            for src, dst in zip(ks, by_value_2[v]):
                perm[src] = dst
    out = tuple(perm)  # type: ignore[arg-type]
    for a in range(B):
        if D2.beta[out[a]] != D1.beta[a]:
            raise ConsistencyError("relabeling permutation failed to verify")
    return out


def _check_positions(spec: CoverSpec, D: InvariantDivisor,
                     a: int, b: int) -> None:
    if D.cover_fingerprint != spec.fingerprint:
        raise MalformedDataError(
            "divisor belongs to a different cover than the one given")
    B = len(spec.sites)
    for k in (a, b):
        if not 0 <= k < B:
            raise MalformedDataError(
                f"site position {k} out of range for {B} branch sites")
