"""Non-special divisors: the counting criterion against a brute-force
filter, pruned enumeration, the dual-group action, negation, orbits,
support sets, and half-form exponent vectors."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from abelcover import (DisconnectedCoverError, DomainError,
                       MalformedDataError, ResourceCapError, chi_action,
                       degree, dual_group, enumerate_nonspecial,
                       half_form_exponents, is_nonspecial, make_divisor,
                       negation_N, orbit, pairing_u, support_p, validate)
from conftest import build_cover


def brute_force_nonspecial(cover):
    """Independent reimplementation of the counting criterion: try every
    weight vector, keep those meeting the per-character counts."""
    spec, inv = cover.spec, cover.inv
    group = spec.group
    out = []
    for beta in product(*(range(o) for o in spec.site_orders)):
        ok = True
        for chi in dual_group(group):
            if chi.is_trivial():
                continue
            hits = sum(
                1 for site, o, b in
                zip(spec.sites, spec.site_orders, beta)
                if b >= o - pairing_u(group, chi, site.element))
            if hits != inv.t[chi]:
                ok = False
                break
        if ok:
            out.append(beta)
    return sorted(out)


class TestMakeDivisor:
    def test_range_checked(self, hyperelliptic):
        with pytest.raises(MalformedDataError):
            make_divisor(hyperelliptic.spec, [0, 0, 0, 0, 0, 2])
        with pytest.raises(MalformedDataError):
            make_divisor(hyperelliptic.spec, [0, 0, 0, 0, 0, -1])

    def test_length_checked(self, hyperelliptic):
        with pytest.raises(MalformedDataError):
            make_divisor(hyperelliptic.spec, [0, 0, 0])

    def test_cross_cover_divisor_rejected(self, hyperelliptic, cyclic3):
        D = make_divisor(cyclic3.spec, [2, 1, 0])
        with pytest.raises(MalformedDataError):
            is_nonspecial(hyperelliptic.spec, hyperelliptic.inv, D)


class TestDegree:
    def test_hyperelliptic(self, hyperelliptic):
        spec = hyperelliptic.spec
        assert degree(spec, make_divisor(spec, [1, 1, 1, 0, 0, 0])) == 1
        assert degree(spec, make_divisor(spec, [1] * 6)) == 4
        assert degree(spec, make_divisor(spec, [0] * 6)) == -2

    def test_mixed_orders(self, mixed4):
        spec = mixed4.spec
        D = make_divisor(spec, [3, 0, 1, 0, 1, 0])
        # site orders (4,4,2,2,4,4); n = 4
        assert degree(spec, D) == 3 + 0 + 2 + 0 + 1 + 0 - 4


class TestIsNonspecial:
    def test_known_positive(self, hyperelliptic):
        D = make_divisor(hyperelliptic.spec, [0, 0, 0, 1, 1, 1])
        assert is_nonspecial(hyperelliptic.spec, hyperelliptic.inv, D)

    def test_known_negative(self, hyperelliptic):
        spec, inv = hyperelliptic.spec, hyperelliptic.inv
        assert not is_nonspecial(spec, inv, make_divisor(spec, [1] * 6))
        assert not is_nonspecial(spec, inv, make_divisor(spec, [0] * 6))

    def test_pole_multiplicity_must_be_one(self, hyperelliptic):
        spec, inv = hyperelliptic.spec, hyperelliptic.inv
        D = make_divisor(spec, [0, 0, 0, 1, 1, 1], p=2)
        assert not is_nonspecial(spec, inv, D)

    def test_matches_brute_force(self, cyclic3, cyclic4, klein):
        for cover in (cyclic3, cyclic4, klein):
            expected = set(brute_force_nonspecial(cover))
            for beta in product(*(range(o)
                                  for o in cover.spec.site_orders)):
                D = make_divisor(cover.spec, beta)
                assert is_nonspecial(cover.spec, cover.inv, D) == \
                    (beta in expected)


class TestEnumerate:
    def test_counts(self, battery):
        expected = {"hyperelliptic": 20, "cyclic3": 6, "cyclic4": 24,
                    "klein": 8, "cyclic6": 720}
        for cover in battery:
            divisors = enumerate_nonspecial(cover.spec, cover.inv)
            assert len(divisors) == expected[cover.name]

    def test_agrees_with_brute_force(self, cyclic3, cyclic4, klein, mixed4):
        for cover in (cyclic3, cyclic4, klein, mixed4):
            divisors = enumerate_nonspecial(cover.spec, cover.inv)
            assert [D.beta for D in divisors] == brute_force_nonspecial(cover)

    def test_lexicographic_order_no_duplicates(self, battery):
        for cover in battery:
            betas = [D.beta for D in
                     enumerate_nonspecial(cover.spec, cover.inv)]
            assert betas == sorted(set(betas))

    def test_every_result_is_nonspecial_of_degree_g_minus_1(self, battery):
        for cover in battery:
            for D in enumerate_nonspecial(cover.spec, cover.inv):
                assert D.p == 1
                assert is_nonspecial(cover.spec, cover.inv, D)
                assert degree(cover.spec, D) == cover.inv.g - 1

    def test_empty_enumeration_is_valid(self, sparse6):
        assert enumerate_nonspecial(sparse6.spec, sparse6.inv) == []
        # confirmed against the brute-force filter
        assert brute_force_nonspecial(sparse6) == []

    def test_cap_enforced(self, cyclic6):
        with pytest.raises(ResourceCapError) as info:
            enumerate_nonspecial(cyclic6.spec, cyclic6.inv, cap=10)
        assert info.value.cap == 10
        assert "10" in str(info.value)

    def test_worker_counts_agree(self, battery):
        for cover in battery:
            base = enumerate_nonspecial(cover.spec, cover.inv, workers=1)
            for workers in (2, 3, 8):
                assert enumerate_nonspecial(
                    cover.spec, cover.inv, workers=workers) == base

    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_random_cyclic_covers(self, data):
        order = data.draw(st.integers(min_value=2, max_value=5))
        count = data.draw(st.integers(min_value=2, max_value=4))
        residues = [data.draw(st.integers(min_value=1, max_value=order - 1))
                    for _ in range(count)]
        total = sum(residues) % order
        if total:
            residues.append(order - total)
        spec = build_cover([order], [([r], i)
                                     for i, r in enumerate(residues)])
        try:
            inv = validate(spec)
        except DisconnectedCoverError:
            return
        divisors = enumerate_nonspecial(spec, inv)
        for D in divisors:
            assert is_nonspecial(spec, inv, D)
            assert degree(spec, D) == inv.g - 1


class TestActions:
    def test_chi_action_is_modular_translation(self, battery):
        for cover in battery:
            spec, inv = cover.spec, cover.inv
            group = spec.group
            divisors = enumerate_nonspecial(spec, inv)
            for D in divisors[:6]:
                for chi in dual_group(group):
                    moved = chi_action(spec, inv, D, chi)
                    for k, site in enumerate(spec.sites):
                        o = spec.site_orders[k]
                        u = pairing_u(group, chi, site.element)
                        assert moved.beta[k] == (D.beta[k] + u) % o

    def test_requires_nonspecial(self, hyperelliptic):
        spec, inv = hyperelliptic.spec, hyperelliptic.inv
        bad = make_divisor(spec, [1] * 6)
        chi = spec.group.character([1])
        with pytest.raises(DomainError):
            chi_action(spec, inv, bad, chi)
        with pytest.raises(DomainError):
            negation_N(spec, inv, bad)

    def test_negation_is_an_involution(self, battery):
        for cover in battery:
            spec, inv = cover.spec, cover.inv
            for D in enumerate_nonspecial(spec, inv)[:10]:
                N = negation_N(spec, inv, D)
                assert N.beta == tuple(
                    o - 1 - b for o, b in zip(spec.site_orders, D.beta))
                assert negation_N(spec, inv, N) == D

    def test_closure_and_dihedral(self, hyperelliptic, cyclic3, cyclic4,
                                  klein):
        for cover in (hyperelliptic, cyclic3, cyclic4, klein):
            spec, inv = cover.spec, cover.inv
            group = spec.group
            divisors = enumerate_nonspecial(spec, inv)
            universe = {D.beta for D in divisors}
            for D in divisors:
                assert negation_N(spec, inv, D).beta in universe
                for chi in dual_group(group):
                    moved = chi_action(spec, inv, D, chi)
                    assert moved.beta in universe
                    lhs = negation_N(spec, inv, moved)
                    rhs = chi_action(spec, inv, negation_N(spec, inv, D),
                                     chi.conjugate())
                    assert lhs == rhs

    def test_orbit_is_free_of_size_n(self, battery):
        for cover in battery:
            spec, inv = cover.spec, cover.inv
            divisors = enumerate_nonspecial(spec, inv)
            for D in divisors[:8]:
                members = orbit(spec, inv, D)
                assert len(members) == inv.n
                assert len({m.beta for m in members}) == inv.n
                assert D in members

    def test_orbits_partition_the_set(self, hyperelliptic, cyclic3):
        for cover, orbits_expected in ((hyperelliptic, 10), (cyclic3, 2)):
            spec, inv = cover.spec, cover.inv
            divisors = enumerate_nonspecial(spec, inv)
            reps = {min(m.beta for m in orbit(spec, inv, D))
                    for D in divisors}
            assert len(reps) == orbits_expected
            assert len(divisors) == orbits_expected * inv.n


class TestSupport:
    def test_sizes_match_counts(self, battery):
        for cover in battery:
            spec, inv = cover.spec, cover.inv
            for D in enumerate_nonspecial(spec, inv)[:8]:
                for chi in dual_group(spec.group):
                    expected = 0 if chi.is_trivial() else inv.t[chi]
                    assert len(support_p(spec, D, chi)) == expected

    def test_hyperelliptic_support_is_the_selected_set(self, hyperelliptic):
        spec = hyperelliptic.spec
        D = make_divisor(spec, [0, 1, 0, 1, 0, 1])
        chi = spec.group.character([1])
        assert support_p(spec, D, chi) == frozenset({1, 3, 5})

    def test_complementary_under_negation(self, battery):
        # support of p for (D, chi) and for (ND, conj chi) tile the sites
        # where chi is nontrivial, without overlap
        for cover in battery:
            spec, inv = cover.spec, cover.inv
            group = spec.group
            for D in enumerate_nonspecial(spec, inv)[:6]:
                ND = negation_N(spec, inv, D)
                for chi in dual_group(group):
                    outside_kernel = frozenset(
                        k for k, site in enumerate(spec.sites)
                        if pairing_u(group, chi, site.element) != 0)
                    left = support_p(spec, D, chi)
                    right = support_p(spec, ND, chi.conjugate())
                    assert left & right == frozenset()
                    assert left | right == outside_kernel


class TestHalfForm:
    def test_values(self, hyperelliptic):
        spec = hyperelliptic.spec
        D = make_divisor(spec, [0, 0, 0, 1, 1, 1])
        h = half_form_exponents(spec, D)
        assert h.exps == (Fraction(-1, 4),) * 3 + (Fraction(1, 4),) * 3
        assert h.carries_half_dz

    def test_scaled_integrality_and_zero_sum(self, battery):
        for cover in battery:
            spec, inv = cover.spec, cover.inv
            for D in enumerate_nonspecial(spec, inv)[:8]:
                exps = half_form_exponents(spec, D).exps
                assert sum(exps) == 0
                for e in exps:
                    assert (2 * inv.m * e).denominator == 1

    def test_negation_flips_signs(self, battery):
        for cover in battery:
            spec, inv = cover.spec, cover.inv
            for D in enumerate_nonspecial(spec, inv)[:6]:
                plus = half_form_exponents(spec, D).exps
                minus = half_form_exponents(
                    spec, negation_N(spec, inv, D)).exps
                assert minus == tuple(-e for e in plus)

    def test_action_shifts_by_pairing_mod_one(self, battery):
        for cover in battery:
            spec, inv = cover.spec, cover.inv
            group = spec.group
            for D in enumerate_nonspecial(spec, inv)[:6]:
                base = half_form_exponents(spec, D).exps
                for chi in dual_group(group):
                    moved = half_form_exponents(
                        spec, chi_action(spec, inv, D, chi)).exps
                    for k, site in enumerate(spec.sites):
                        u = pairing_u(group, chi, site.element)
                        o = spec.site_orders[k]
                        shift = moved[k] - base[k] - Fraction(u, o)
                        assert shift.denominator == 1
