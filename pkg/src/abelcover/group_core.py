"""Finite abelian groups given as explicit products of cyclic factors.

A group is described by its factor orders (m_1, ..., m_q); elements and
characters are both residue vectors taken modulo those orders.  A
character chi = (e_1, ..., e_q) pairs with an element s = (d_1, ..., d_q)
through the rational number

    sum_l e_l d_l / m_l   (mod 1),

which is always a multiple of 1/o(s), where o(s) is the order of s.  The
integer u with 0 <= u < o(s) and pairing value u/o(s) drives every later
construction, so it is computed here once and exactly.  Floating point is
banned from this module; everything is integer and Fraction arithmetic.

The factor list is kept exactly as given.  No normalization to invariant
factors is performed, so Z_2 x Z_4 and Z_4 x Z_2 are distinct (isomorphic)
presentations and inputs match their fibered-product descriptions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, lcm, prod
from typing import Iterator, Sequence

from .errors import ConsistencyError, DomainError, MalformedDataError

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "Character",
    "IntersectionData",
    "element_order",
    "pairing_u",
    "dual_group",
    "intersection_data",
    "cyclic_subgroup",
]


@dataclass(frozen=True)
class AbelianGroup:
    """The product Z_{m_1} x ... x Z_{m_q}.

    The empty product is the trivial group.  Each factor order must be at
    least 2.
    """

    factor_orders: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = tuple(int(m) for m in self.factor_orders)
        object.__setattr__(self, "factor_orders", orders)
        for m in orders:
            if m < 2:
                raise MalformedDataError(
                    f"cyclic factor orders must be at least 2, got {m}")

    @property
    def order(self) -> int:
        """The number of elements n."""
        return prod(self.factor_orders)

    @property
    def exponent(self) -> int:
        """The exponent m, the lcm of the factor orders (1 for the trivial
        group)."""
        return lcm(*self.factor_orders) if self.factor_orders else 1

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.factor_orders))

    def element(self, residues: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(residues))

    def character(self, residues: Sequence[int]) -> "Character":
        return Character(self, tuple(residues))

    def elements(self) -> Iterator["GroupElement"]:
        """All n elements in lexicographic residue order."""
        for residues in product(*(range(m) for m in self.factor_orders)):
            yield GroupElement(self, residues)

    def __repr__(self) -> str:
        if not self.factor_orders:
            return "AbelianGroup(trivial)"
        return "AbelianGroup(%s)" % " x ".join(
            f"Z{m}" for m in self.factor_orders)


def _check_residues(group: AbelianGroup, residues: tuple[int, ...],
                    kind: str) -> None:
    if len(residues) != len(group.factor_orders):
        raise MalformedDataError(
            f"{kind} has {len(residues)} residues for a group with "
            f"{len(group.factor_orders)} factors")
    for r, m in zip(residues, group.factor_orders):
        if not 0 <= r < m:
            raise MalformedDataError(
                f"{kind} residue {r} out of range [0, {m})")


@dataclass(frozen=True)
class GroupElement:
    """An element of an AbelianGroup, stored as one residue per factor."""

    group: AbelianGroup
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "residues",
                           tuple(int(r) for r in self.residues))
        _check_residues(self.group, self.residues, "element")

    def is_identity(self) -> bool:
        return all(r == 0 for r in self.residues)

    @property
    def order(self) -> int:
        return element_order(self.group, self)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise MalformedDataError("cannot add elements of different groups")
        return GroupElement(self.group, tuple(
            (a + b) % m for a, b, m in
            zip(self.residues, other.residues, self.group.factor_orders)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(
            (-r) % m for r, m in
            zip(self.residues, self.group.factor_orders)))

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, tuple(
            (r * k) % m for r, m in
            zip(self.residues, self.group.factor_orders)))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Character:
    """A character of an AbelianGroup.

    The residue vector (e_1, ..., e_q) represents the homomorphism sending
    the l-th standard generator to e(e_l / m_l).  The conjugate character
    negates every residue.
    """

    group: AbelianGroup
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "residues",
                           tuple(int(r) for r in self.residues))
        _check_residues(self.group, self.residues, "character")

    def is_trivial(self) -> bool:
        return all(r == 0 for r in self.residues)

    def conjugate(self) -> "Character":
        return Character(self.group, tuple(
            (-r) % m for r, m in
            zip(self.residues, self.group.factor_orders)))


@dataclass(frozen=True)
class IntersectionData:
    """The invariants (d, h) of a pair of nontrivial elements (s, r):
    d is the size of the intersection of the cyclic subgroups they
    generate, and h is the unit modulo d with r^(o(r)/d) = (s^(o(s)/d))^h.
    """

    d: int
    h: int


@lru_cache(maxsize=None)
def element_order(group: AbelianGroup, s: GroupElement) -> int:
    """The order o(s), the least k >= 1 with k * s equal to the identity.

    Computed factorwise: o(s) = lcm_l(m_l / gcd(m_l, d_l)).  Divides the
    group exponent.
    """
    _require_membership(group, s)
    factors = [m // gcd(m, r)
               for m, r in zip(group.factor_orders, s.residues)]
    return lcm(*factors) if factors else 1


@lru_cache(maxsize=None)
def pairing_u(group: AbelianGroup, chi: Character, s: GroupElement) -> int:
    """The integer u with 0 <= u < o(s) and chi(s) = e(u / o(s)).

    The pairing value sum_l e_l d_l / m_l is reduced modulo 1 in exact
    fraction arithmetic and then scaled by o(s); the result is an integer
    because chi(s) is an o(s)-th root of unity.
    """
    _require_membership(group, s)
    if chi.group != group:
        raise MalformedDataError("character does not belong to this group")
    total = sum(
        (Fraction(e * r, m) for e, r, m in
         zip(chi.residues, s.residues, group.factor_orders)),
        Fraction(0)) % 1
    scaled = total * element_order(group, s)
    if scaled.denominator != 1:
        raise ConsistencyError(
            f"pairing of {chi.residues} with {s.residues} is not a root of "
            f"unity of order dividing o(s)")
    return int(scaled)


def dual_group(group: AbelianGroup) -> list[Character]:
    """All n characters, the trivial one first, then lexicographic order
    on residue vectors."""
    return [Character(group, residues) for residues in
            product(*(range(m) for m in group.factor_orders))]


def cyclic_subgroup(group: AbelianGroup, s: GroupElement) -> list[GroupElement]:
    """The powers 0*s, 1*s, ..., (o(s)-1)*s in that order."""
    _require_membership(group, s)
    return [s * k for k in range(element_order(group, s))]


@lru_cache(maxsize=None)
def intersection_data(group: AbelianGroup, s: GroupElement,
                      r: GroupElement) -> IntersectionData:
    """The pair (d, h) for two nontrivial elements.

    d is found by brute-force intersection of the two cyclic subgroups;
    the subgroups in scope are tiny, so no discrete-log machinery is
    warranted.  h is then the discrete logarithm of r^(o(r)/d) with
    respect to s^(o(s)/d), which generates the intersection; gcd(h, d) = 1
    is automatic since r^(o(r)/d) generates the same subgroup.  For equal
    inputs the result is (o(s), 1); h = 0 occurs only when d = 1.
    """
    _require_membership(group, s)
    _require_membership(group, r)
    if s.is_identity() or r.is_identity():
        raise DomainError("intersection data requires nontrivial elements")
    o_s = element_order(group, s)
    o_r = element_order(group, r)
    inter = set(cyclic_subgroup(group, s)) & set(cyclic_subgroup(group, r))
    d = len(inter)
    if o_s % d or o_r % d:
        raise ConsistencyError("intersection size does not divide both orders")
    gen = s * (o_s // d)
    target = r * (o_r // d)
    for h in range(d):
        if gen * h == target:
            if gcd(h, d) != 1:
                raise ConsistencyError(
                    f"discrete log h={h} is not a unit modulo d={d}")
            return IntersectionData(d, h)
    raise ConsistencyError(
        "no discrete log found; the intersection is not cyclic as expected")


def _require_membership(group: AbelianGroup, x: GroupElement) -> None:
    if x.group != group:
        raise MalformedDataError("element does not belong to this group")
