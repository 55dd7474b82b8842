"""Invariant divisors supported over the branch fibers.

A divisor is a vector of integer weights beta, one per branch site, with
0 <= beta < o(sigma) at a site whose monodromy is sigma, plus a pole
multiplicity p over infinity.  Its degree is

    sum over sites of beta * n / o(sigma)  -  p * n.

The non-special divisors are exactly those with p = 1 whose weights meet,
for every character chi, the counting condition

    #{ sites with beta >= o(sigma) - u_{chi,sigma} } = t_chi;

such a divisor automatically has degree g - 1.  This module decides the
condition, enumerates all solutions by pruned depth-first backtracking,
and implements the dual-group action

    beta -> beta + u            when beta < o - u,
    beta -> beta + u - o        otherwise,

the negation involution beta -> o - 1 - beta, orbits under the action,
the support sets of the associated polynomials, and the half-form
exponent vectors beta/o - (o-1)/(2o).

Enumeration order is lexicographic in the canonical site order.  The
search may be partitioned by the first weight across worker threads; the
merged output is sorted back to the same order, so results do not depend
on the worker count.  A configurable node cap bounds the search.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .cover import CoverInvariants, CoverSpec
from .errors import (ConsistencyError, DomainError, MalformedDataError,
                     ResourceCapError)
from .group_core import Character, dual_group, pairing_u

__all__ = [
    "InvariantDivisor",
    "HalfFormExponents",
    "make_divisor",
    "degree",
    "is_nonspecial",
    "enumerate_nonspecial",
    "chi_action",
    "negation_N",
    "orbit",
    "support_p",
    "half_form_exponents",
    "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 100_000_000


@dataclass(frozen=True)
class InvariantDivisor:
    """Weights in canonical site order, the pole multiplicity p, and the
    fingerprint of the cover the weights refer to.  Equality includes the
    fingerprint, so divisors of different covers never compare equal."""

    beta: tuple[int, ...]
    p: int
    cover_fingerprint: str


@dataclass(frozen=True)
class HalfFormExponents:
    """Exact exponents beta/o - (o-1)/(2o) per site.  carries_half_dz
    records the fixed square root of dz that completes the half-form;
    it is constant and kept only so the object states what it describes."""

    exps: tuple[Fraction, ...]
    carries_half_dz: bool = True


def make_divisor(spec: CoverSpec, beta, p: int = 1) -> InvariantDivisor:
    """Build a divisor for this cover, checking every weight range."""
    weights = tuple(int(b) for b in beta)
    if len(weights) != len(spec.sites):
        raise MalformedDataError(
            f"divisor has {len(weights)} weights for a cover with "
            f"{len(spec.sites)} branch sites")
    for b, o in zip(weights, spec.site_orders):
        if not 0 <= b < o:
            raise MalformedDataError(
                f"weight {b} out of range [0, {o})")
    return InvariantDivisor(weights, int(p), spec.fingerprint)


def degree(spec: CoverSpec, D: InvariantDivisor) -> int:
    _require_same_cover(spec, D)
    n = spec.group.order
    return sum(b * (n // o) for b, o in zip(D.beta, spec.site_orders)) \
        - D.p * n


def is_nonspecial(spec: CoverSpec, inv: CoverInvariants,
                  D: InvariantDivisor) -> bool:
    """Decide the per-character counting condition (with p = 1).

    When the answer is true the degree is additionally asserted to be
    g - 1; that is a consequence of the condition, so a mismatch is an
    internal error rather than a veto.
    """
    _require_same_cover(spec, D)
    if D.p != 1:
        return False
    group = spec.group
    for chi in dual_group(group):
        if chi.is_trivial():
            continue
        count = 0
        for site, o, b in zip(spec.sites, spec.site_orders, D.beta):
            if b >= o - pairing_u(group, chi, site.element):
                count += 1
        if count != inv.t[chi]:
            return False
    if degree(spec, D) != inv.g - 1:
        raise ConsistencyError(
            "divisor meets the counting condition but has degree "
            f"{degree(spec, D)} instead of g - 1 = {inv.g - 1}")
    return True


class _NodeBudget:
    """Shared node counter for the enumeration, safe across threads."""

    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, amount: int = 1) -> None:
        with self._lock:
            self.used += amount
            if self.used > self.cap:
                raise ResourceCapError(self.cap)


def enumerate_nonspecial(spec: CoverSpec, inv: CoverInvariants, *,
                         cap: int = DEFAULT_NODE_CAP,
                         workers: int = 1) -> list[InvariantDivisor]:
    """All non-special divisors, each exactly once, in lexicographic
    weight order.  May be empty; emptiness is a result, not an error.

    Backtracking assigns weights site by site and keeps one running count
    per nontrivial character.  A branch dies as soon as some count
    overshoots its target t_chi or can no longer reach it with the sites
    that remain.  Every attempted assignment costs one node against the
    cap; exceeding the cap raises ResourceCapError.
    """
    group = spec.group
    sites = spec.sites
    orders = spec.site_orders
    B = len(sites)
    chars = [chi for chi in dual_group(group) if not chi.is_trivial()]
    targets = [inv.t[chi] for chi in chars]
    C = len(chars)
    # thresholds[c][k]: the weight at site k counts for character c
    # exactly when beta >= thresholds[c][k]; u = 0 gives o, never reached
    thresholds = [
        [orders[k] - pairing_u(group, chars[c], sites[k].element)
         for k in range(B)]
        for c in range(C)]
    # remaining[c][k]: sites at position >= k that can still contribute
    remaining = [[0] * (B + 1) for _ in range(C)]
    for c in range(C):
        for k in range(B - 1, -1, -1):
            remaining[c][k] = remaining[c][k + 1] + \
                (1 if thresholds[c][k] < orders[k] else 0)

    budget = _NodeBudget(cap)

    def search(prefix: tuple[int, ...]) -> list[tuple[int, ...]]:
        if prefix:
            budget.spend(len(prefix))
        counts = [0] * C
        for k, v in enumerate(prefix):
            for c in range(C):
                if v >= thresholds[c][k]:
                    counts[c] += 1
        start = len(prefix)
        for c in range(C):
            if counts[c] > targets[c] or \
                    counts[c] + remaining[c][start] < targets[c]:
                return []
        found: list[tuple[int, ...]] = []
        beta = list(prefix) + [0] * (B - start)

        def dfs(k: int) -> None:
            if k == B:
                found.append(tuple(beta))
                return
            for v in range(orders[k]):
                budget.spend()
                ok = True
                bumped = []
                for c in range(C):
                    if v >= thresholds[c][k]:
                        counts[c] += 1
                        bumped.append(c)
                for c in range(C):
                    if counts[c] > targets[c] or \
                            counts[c] + remaining[c][k + 1] < targets[c]:
                        ok = False
                        break
                if ok:
                    beta[k] = v
                    dfs(k + 1)
                for c in bumped:
                    counts[c] -= 1
            beta[k] = 0

        dfs(start)
        return found

    if B == 0:
        results = [()]
    elif workers <= 1:
        results = search(())
    else:
        first_values = [(v,) for v in range(orders[0])]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(search, prefix) for prefix in first_values]
            chunks = [f.result() for f in futures]
        results = [beta for chunk in chunks for beta in chunk]
        results.sort()

    return [InvariantDivisor(beta, 1, spec.fingerprint) for beta in results]


def chi_action(spec: CoverSpec, inv: CoverInvariants, D: InvariantDivisor,
               chi: Character) -> InvariantDivisor:
    """The divisor chi . D.  Requires a non-special input and produces a
    non-special output with the same p."""
    _require_nonspecial(spec, inv, D)
    group = spec.group
    new = []
    for site, o, b in zip(spec.sites, spec.site_orders, D.beta):
        u = pairing_u(group, chi, site.element)
        new.append(b + u if b < o - u else b + u - o)
    result = InvariantDivisor(tuple(new), D.p, D.cover_fingerprint)
    if not is_nonspecial(spec, inv, result):
        raise ConsistencyError(
            "dual-group action left the non-special set; this contradicts "
            "its defining property")
    return result


def negation_N(spec: CoverSpec, inv: CoverInvariants,
               D: InvariantDivisor) -> InvariantDivisor:
    """The negation involution, sitewise beta -> o - 1 - beta with p = 1."""
    _require_nonspecial(spec, inv, D)
    new = tuple(o - 1 - b for o, b in zip(spec.site_orders, D.beta))
    result = InvariantDivisor(new, 1, D.cover_fingerprint)
    if not is_nonspecial(spec, inv, result):
        raise ConsistencyError("negation left the non-special set")
    return result


def orbit(spec: CoverSpec, inv: CoverInvariants,
          D: InvariantDivisor) -> list[InvariantDivisor]:
    """The full dual-group orbit of D, in dual-group order.

    The action is free on non-special divisors, so the orbit always has
    exactly n distinct members; a repeat is an internal error.
    """
    members = [chi_action(spec, inv, D, chi) for chi in dual_group(spec.group)]
    if len(set(members)) != spec.group.order:
        raise ConsistencyError(
            "dual-group orbit has repeats; the action should be free")
    return members


def support_p(spec: CoverSpec, D: InvariantDivisor,
              chi: Character) -> frozenset[int]:
    """Positions of the sites with beta >= o - u_{chi,sigma}, the root set
    of the support polynomial for chi.  Its size equals t_chi whenever D
    is non-special."""
    _require_same_cover(spec, D)
    group = spec.group
    return frozenset(
        k for k, (site, o, b) in
        enumerate(zip(spec.sites, spec.site_orders, D.beta))
        if b >= o - pairing_u(group, chi, site.element))


def half_form_exponents(spec: CoverSpec,
                        D: InvariantDivisor) -> HalfFormExponents:
    """The exponent vector beta/o - (o-1)/(2o) per site.

    Each entry times 2m is an integer, and the entries sum to zero when
    the divisor has degree g - 1.
    """
    _require_same_cover(spec, D)
    exps = tuple(Fraction(2 * b - o + 1, 2 * o)
                 for o, b in zip(spec.site_orders, D.beta))
    return HalfFormExponents(exps=exps)


def _require_same_cover(spec: CoverSpec, D: InvariantDivisor) -> None:
    if D.cover_fingerprint != spec.fingerprint:
        raise MalformedDataError(
            "divisor belongs to a different cover than the one given")
    if len(D.beta) != len(spec.sites):
        raise MalformedDataError("divisor length does not match the cover")


def _require_nonspecial(spec: CoverSpec, inv: CoverInvariants,
                        D: InvariantDivisor) -> None:
    if not is_nonspecial(spec, inv, D):
        raise DomainError("operation requires a non-special divisor")
