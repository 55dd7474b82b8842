"""Shared cover fixtures and the acceptance summary hook.

The battery fixture is the fixed list of covers used by the equivalence,
identity, and determinism acceptance tests: the genus 2 hyperelliptic
cover, a cyclic triple cover of genus 1, a cyclic quadruple cover of
genus 3, the Klein cover with two points on each involution, and a
cyclic sextic cover of genus 10.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import pytest

from abelcover import (AbelianGroup, BranchPoint, CoverInvariants, CoverSpec,
                       validate)


def build_cover(factors, points) -> CoverSpec:
    """points: list of (residues, lambda) pairs."""
    group = AbelianGroup(tuple(factors))
    return CoverSpec(group, tuple(
        BranchPoint(group.element(residues), Fraction(value))
        for residues, value in points))


@dataclass(frozen=True)
class Cover:
    name: str
    spec: CoverSpec
    inv: CoverInvariants
    genus: int


def _make(name, factors, points, genus) -> Cover:
    spec = build_cover(factors, points)
    return Cover(name=name, spec=spec, inv=validate(spec), genus=genus)


@pytest.fixture(scope="session")
def hyperelliptic() -> Cover:
    return _make("hyperelliptic", [2], [([1], v) for v in range(6)], 2)


@pytest.fixture(scope="session")
def cyclic3() -> Cover:
    return _make("cyclic3", [3], [([1], v) for v in range(3)], 1)


@pytest.fixture(scope="session")
def cyclic4() -> Cover:
    return _make("cyclic4", [4], [([1], v) for v in range(4)], 3)


@pytest.fixture(scope="session")
def klein() -> Cover:
    return _make("klein", [2, 2], [
        ([1, 0], 0), ([1, 0], 1),
        ([0, 1], 2), ([0, 1], 3),
        ([1, 1], 4), ([1, 1], 5)], 3)


@pytest.fixture(scope="session")
def cyclic6() -> Cover:
    return _make("cyclic6", [6], [([1], v) for v in range(6)], 10)


@pytest.fixture(scope="session")
def battery(hyperelliptic, cyclic3, cyclic4, klein, cyclic6) -> list[Cover]:
    return [hyperelliptic, cyclic3, cyclic4, klein, cyclic6]


@pytest.fixture(scope="session")
def mixed4() -> Cover:
    """Z4 cover with sites of different local orders (4, 4, 2): exercises
    nontrivial intersection data and inequivalent weight multisets."""
    return _make("mixed4", [4], [
        ([1], 0), ([1], 1), ([3], 2), ([3], 3), ([2], 4), ([2], 5)], 5)


@pytest.fixture(scope="session")
def sparse6() -> Cover:
    """Z6 cover whose non-special divisor set is empty; a valid cover for
    which enumeration legitimately returns nothing."""
    return _make("sparse6", [6], [([2], 0), ([3], 1), ([1], 2)], 1)


_ACCEPTANCE_LINES: list[tuple[int, str]] = []


@pytest.fixture(scope="session")
def acceptance_record():
    def record(number: int, description: str, passed: bool,
               elapsed: float, limit: float | None) -> None:
        verdict = "PASS" if passed else "FAIL"
        if limit is not None:
            timing = f" ({elapsed:.2f}s < {limit:.0f}s)"
            if elapsed >= limit:
                verdict = "FAIL"
                timing = f" ({elapsed:.2f}s, over the {limit:.0f}s limit)"
        else:
            timing = f" ({elapsed:.2f}s)"
        _ACCEPTANCE_LINES.append(
            (number, f"ACCEPTANCE {number} {verdict}: {description}{timing}"))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
