"""Branching data for an abelian cover of the sphere.

A cover is described by its deck group A and a list of branch points,
each carrying a nontrivial element of A (the local monodromy generator)
and an exact rational branch value.  Infinity is assumed unramified, so
every branch value is finite and they must be pairwise distinct.

Validation checks three things and then derives the numeric invariants:

  * distinctness of the branch values,
  * monodromy closure, i.e. the branch elements sum to the identity,
    which is equivalent to every character integer t_chi being integral,
  * connectedness, i.e. the branch elements generate A.

The genus comes from Riemann-Hurwitz,

    g = 1 - n + (1/2) sum over branch points of (n / o(sigma)) (o(sigma) - 1),

and the integers t_chi = sum over branch points of u_{chi,sigma} / o(sigma)
are computed exactly for every character.  Both are cross-checked against
the dimension identity sum over nontrivial chi of (t_{conj(chi)} - 1) = g
before anything is returned.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import (ConsistencyError, DisconnectedCoverError,
                     InvalidCoverError, MalformedDataError)
from .group_core import (AbelianGroup, Character, GroupElement, dual_group,
                         element_order, pairing_u)

__all__ = [
    "BranchPoint",
    "BranchSite",
    "CoverSpec",
    "CoverInvariants",
    "validate",
    "differential_basis_descriptor",
]


@dataclass(frozen=True)
class BranchPoint:
    """One branch point: a nontrivial monodromy element and a finite
    rational branch value."""

    element: GroupElement
    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class BranchSite:
    """A branch point in canonical position.

    Sites are ordered by (element_rank, occurrence), where element_rank is
    the lexicographic rank of the monodromy element among the cover's
    distinct branch elements and occurrence is the 0-based index j among
    the points sharing that element, in document order.  All divisor
    weight vectors are aligned with this order.
    """

    position: int
    element: GroupElement
    element_rank: int
    occurrence: int
    value: Fraction


@dataclass(frozen=True)
class CoverSpec:
    """The raw branching data, prior to validation."""

    group: AbelianGroup
    branch_points: tuple[BranchPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "branch_points", tuple(self.branch_points))
        for k, bp in enumerate(self.branch_points):
            if bp.element.group != self.group:
                raise MalformedDataError(
                    f"branch point {k} carries an element of a different group")
            if bp.element.is_identity():
                raise MalformedDataError(
                    f"branch point {k} carries the identity; branch elements "
                    f"must be nontrivial")

    @cached_property
    def sites(self) -> tuple[BranchSite, ...]:
        """The branch points in canonical order."""
        distinct = sorted({bp.element.residues for bp in self.branch_points})
        rank = {res: i for i, res in enumerate(distinct)}
        occurrence: dict[tuple[int, ...], int] = {}
        keyed = []
        for bp in self.branch_points:
            j = occurrence.get(bp.element.residues, 0)
            occurrence[bp.element.residues] = j + 1
            keyed.append((rank[bp.element.residues], j, bp))
        keyed.sort(key=lambda t: (t[0], t[1]))
        return tuple(
            BranchSite(position=pos, element=bp.element, element_rank=er,
                       occurrence=j, value=bp.value)
            for pos, (er, j, bp) in enumerate(keyed))

    @cached_property
    def site_orders(self) -> tuple[int, ...]:
        return tuple(element_order(self.group, site.element)
                     for site in self.sites)

    @cached_property
    def fingerprint(self) -> str:
        """A short stable digest of the canonical branching data, used to
        keep divisors from different covers apart."""
        text = repr((self.group.factor_orders,
                     tuple((s.element.residues, str(s.value))
                           for s in self.sites)))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class CoverInvariants:
    """Validated numeric invariants of a cover: group order n, exponent m,
    genus g, and the character integers t_chi."""

    group: AbelianGroup
    n: int
    m: int
    g: int
    t: dict[Character, int] = field(repr=False)

    def t_of(self, chi: Character) -> int:
        return self.t[chi]


def validate(spec: CoverSpec) -> CoverInvariants:
    """Check every cover invariant and compute (n, m, g, t).

    Raises MalformedDataError on duplicate branch values,
    InvalidCoverError (reason "monodromy") when the branch elements do not
    sum to the identity, and DisconnectedCoverError when they fail to
    generate the group.  Non-integral genus or t_chi raise
    ConsistencyError; they are unreachable once monodromy closure holds.
    """
    group = spec.group
    n = group.order
    m = group.exponent

    seen: set[Fraction] = set()
    for bp in spec.branch_points:
        if bp.value in seen:
            raise MalformedDataError(f"duplicate branch value {bp.value}")
        seen.add(bp.value)

    total = group.identity()
    for bp in spec.branch_points:
        total = total + bp.element
    if not total.is_identity():
        raise InvalidCoverError(
            "monodromy",
            f"branch monodromies sum to {total.residues} instead of the "
            f"identity")

    generated = _generated_subgroup(group, [bp.element for bp in
                                            spec.branch_points])
    if len(generated) != n:
        raise DisconnectedCoverError(
            f"branch elements generate a subgroup of order {len(generated)} "
            f"inside a group of order {n}")

    t: dict[Character, int] = {}
    for chi in dual_group(group):
        value = sum(
            (Fraction(pairing_u(group, chi, site.element), o)
             for site, o in zip(spec.sites, spec.site_orders)),
            Fraction(0))
        if value.denominator != 1:
            raise ConsistencyError(
                f"t for character {chi.residues} is non-integral ({value}) "
                f"despite monodromy closure")
        t[chi] = int(value)
        if chi.is_trivial():
            if t[chi] != 0:
                raise ConsistencyError("t at the trivial character is nonzero")
        elif t[chi] <= 0:
            raise ConsistencyError(
                f"t for nontrivial character {chi.residues} is {t[chi]}, "
                f"expected positive on a connected cover")

    ramification = sum(
        (Fraction(n, o) * (o - 1) for o in spec.site_orders), Fraction(0))
    genus = 1 - n + Fraction(1, 2) * ramification
    if genus.denominator != 1 or genus < 0:
        raise ConsistencyError(f"genus came out as {genus}")
    g = int(genus)

    dimension = sum(max(t[chi.conjugate()] - 1, 0)
                    for chi in dual_group(group) if not chi.is_trivial())
    if dimension != g:
        raise ConsistencyError(
            f"differential dimension count {dimension} disagrees with "
            f"genus {g}")

    return CoverInvariants(group=group, n=n, m=m, g=g, t=t)


def differential_basis_descriptor(
        inv: CoverInvariants) -> list[tuple[Character, int]]:
    """Basis markers (chi, k) for the holomorphic differentials z^k psi_chi.

    One pair for each nontrivial chi and each 0 <= k <= t_{conj(chi)} - 2,
    characters in dual-group order with k ascending; the list has length g.
    """
    out: list[tuple[Character, int]] = []
    for chi in dual_group(inv.group):
        if chi.is_trivial():
            continue
        for k in range(inv.t[chi.conjugate()] - 1):
            out.append((chi, k))
    if len(out) != inv.g:
        raise ConsistencyError(
            f"differential basis has {len(out)} entries for genus {inv.g}")
    return out


def _generated_subgroup(group: AbelianGroup,
                        gens: list[GroupElement]) -> set[GroupElement]:
    closure = {group.identity()}
    frontier = [group.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for gen in gens:
                y = x + gen
                if y not in closure:
                    closure.add(y)
                    nxt.append(y)
        frontier = nxt
    return closure
