from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from hurwitzlab.errors import DomainError, ResourceLimitError
from hurwitzlab.hurwitz import (
    HurwitzSeries,
    canonical_representative,
    compose,
    connected_dfs,
    connected_from_disconnected,
    connected_via_transform,
    conjugate_perm,
    cycle_type,
    disconnected_burnside,
    disconnected_dp,
    disconnected_series,
    estimate_dfs_nodes,
    identity_perm,
    invert_perm,
    phi_series,
    transpositions,
)
from hurwitzlab.partitions import Partition, aut_size, partitions_of, z

F = Fraction


# --- permutation plumbing ---------------------------------------------------


def test_compose_is_right_to_left():
    # a sends 0->1, b sends 1->2; (a o b)(1) = a(2)
    a = (1, 2, 0)
    b = (0, 2, 1)
    assert compose(a, b) == (1, 0, 2)


def test_inverse_and_cycle_type():
    p = (1, 2, 0, 4, 3)
    assert compose(p, invert_perm(p)) == identity_perm(5)
    assert cycle_type(p) == Partition([3, 2])


def test_canonical_representative_cycles_in_order():
    rep = canonical_representative(Partition([3, 2]))
    assert rep == (1, 2, 0, 4, 3)
    assert cycle_type(rep) == Partition([3, 2])


def test_transpositions_count():
    assert len(transpositions(5)) == 10


# --- brute-force oracle for tuple counts ------------------------------------


def brute_counts(d, r, sigma):
    """Count r-tuples of transpositions with product sigma, with and without
    the transitivity requirement, by raw product enumeration."""
    trans = transpositions(d)
    total = transitive = 0
    for tup in product(trans, repeat=r):
        prod_perm = identity_perm(d)
        for t, _ in tup:
            prod_perm = compose(prod_perm, t)
        if prod_perm != sigma:
            continue
        total += 1
        parent = list(range(d))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        comps = d
        for _, (i, j) in tup:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                comps -= 1
        if comps == 1:
            transitive += 1
    return total, transitive


@pytest.mark.parametrize(
    "g,mu",
    [(0, [3]), (0, [2, 1]), (0, [1, 1, 1]), (1, [2]), (1, [1, 1]), (1, [3])],
)
def test_connected_dfs_matches_brute_force(g, mu):
    mu = Partition(mu)
    r = 2 * g - 2 + mu.size + mu.length
    _, transitive = brute_counts(mu.size, r, canonical_representative(mu))
    assert connected_dfs(g, mu) == F(transitive, z(mu))


def test_connected_dfs_known_values():
    assert connected_dfs(0, Partition([1])) == 1
    assert connected_dfs(0, Partition([3])) == 1
    assert connected_dfs(1, Partition([1])) == 0
    assert connected_dfs(0, Partition([1, 1, 1])) == 4


def test_connected_genus_zero_closed_form():
    # classical count for the sphere: r!/aut * prod(m^m/m!) * d^(h-3)
    for size in range(1, 6):
        for mu in partitions_of(size):
            d, h = mu.size, mu.length
            r = d + h - 2
            if r < 0 or r > 6:
                continue
            expected = F(factorial(r), aut_size(mu)) * F(d) ** (h - 3)
            for p in mu.parts:
                expected *= F(p**p, factorial(p))
            assert connected_dfs(0, mu) == expected, mu


def test_connected_dfs_invalid_and_budget():
    with pytest.raises(DomainError):
        connected_dfs(0, Partition())  # r = -2
    with pytest.raises(ResourceLimitError):
        connected_dfs(0, Partition([2, 2, 1]), node_budget=10)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_dfs_independent_of_class_representative(data):
    size = data.draw(st.integers(min_value=2, max_value=4))
    mu = data.draw(st.sampled_from(partitions_of(size)))
    g = data.draw(st.integers(min_value=0, max_value=1))
    perm = tuple(data.draw(st.permutations(tuple(range(size)))))
    sigma = conjugate_perm(canonical_representative(mu), perm)
    assert cycle_type(sigma) == mu
    assert connected_dfs(g, mu, sigma_inf=sigma) == connected_dfs(g, mu)


@pytest.mark.parametrize("size", range(1, 5))
def test_composition_convention_invariance(size):
    for mu in partitions_of(size):
        d, h = mu.size, mu.length
        for g in range(0, 2):
            r = 2 * g - 2 + d + h
            if r < 0 or r > 6:
                continue
            assert connected_dfs(g, mu, composition="rl") == connected_dfs(
                g, mu, composition="lr"
            )
        for r in range(0, 7):
            if (r - d - h) % 2:
                continue
            chi = d + h - r
            assert disconnected_dp(chi, mu, composition="rl") == disconnected_dp(
                chi, mu, composition="lr"
            )


# --- disconnected engines ---------------------------------------------------


def test_disconnected_dp_known_values():
    assert disconnected_dp(4, Partition([1, 1])) == F(1, 2)
    assert disconnected_dp(2, Partition([2])) == F(1, 2)
    assert disconnected_dp(-2, Partition([3])) == 81


def test_disconnected_burnside_known_values():
    assert disconnected_burnside(2, Partition([2])) == F(1, 2)
    assert disconnected_burnside(-2, Partition([3])) == 81
    assert disconnected_burnside(4, Partition([1, 1])) == F(1, 2)


def test_disconnected_matches_brute_force():
    for mu, r in [(Partition([2, 1]), 3), (Partition([1, 1, 1]), 4)]:
        total, _ = brute_counts(mu.size, r, canonical_representative(mu))
        chi = mu.size + mu.length - r
        assert disconnected_dp(chi, mu) == F(total, z(mu))
        assert disconnected_burnside(chi, mu) == F(total, z(mu))


def test_odd_euler_characteristic_gives_zero():
    assert disconnected_dp(1, Partition([2])) == 0
    assert disconnected_burnside(1, Partition([2])) == 0


def test_parity_vanishing():
    # counts vanish whenever (-1)^r differs from the sign of the class
    for size in range(1, 5):
        for mu in partitions_of(size):
            d, h = mu.size, mu.length
            for r in range(0, 6):
                if (r - d + h) % 2 == 0:
                    continue  # admissible parity, covered elsewhere
                chi = d + h - r
                assert disconnected_dp(chi, mu) == 0


def test_disconnected_budget_and_domain_errors():
    with pytest.raises(DomainError):
        disconnected_dp(10, Partition([2]))  # r < 0
    with pytest.raises(ResourceLimitError):
        disconnected_dp(0, Partition([4, 4]), max_d=7)
    with pytest.raises(ResourceLimitError):
        disconnected_burnside(0, Partition([2, 2]), max_d=3)


def test_empty_profile_edges():
    # the empty cover is disconnected data (one cover at chi = 0), never
    # a connected one
    assert connected_dfs(1, Partition()) == 0
    assert disconnected_dp(0, Partition()) == 1
    assert disconnected_burnside(0, Partition()) == 1
    assert disconnected_dp(-2, Partition()) == 0


def test_dp_equals_burnside_small():
    for size in range(1, 6):
        for mu in partitions_of(size):
            d, h = mu.size, mu.length
            for r in range(0, 9):
                if (r - d - h) % 2:
                    continue
                chi = d + h - r
                assert disconnected_dp(chi, mu) == disconnected_burnside(chi, mu)


def test_estimate_monotone_in_r():
    assert estimate_dfs_nodes(4, 4) <= estimate_dfs_nodes(4, 6)
    assert estimate_dfs_nodes(1, 0) == 1


# --- generating series ------------------------------------------------------


def test_series_monomial_bookkeeping():
    s = HurwitzSeries(6, 6)
    s.set_coefficient((2,), 0, 1)
    t = HurwitzSeries(6, 6)
    t.set_coefficient((3, 1), 1, 2)
    prod_series = s * t
    # r values are 2 and 5, so the interleaving factor is binom(7, 2)
    assert prod_series.coefficient((3, 2, 1), 1) == 2 * 21


def test_series_truncation_drops_terms():
    s = HurwitzSeries(3, 2)
    s.set_coefficient((2,), 1, 1)
    assert (s * s).coefficient((2, 2), 2) == 0  # size 4 > 3 truncated


def test_series_rejects_impossible_exponent():
    s = HurwitzSeries(4, 4)
    with pytest.raises(DomainError):
        s.set_coefficient((2,), -3, 1)


def test_log_requires_unit_constant_term():
    s = HurwitzSeries(3, 3)
    with pytest.raises(DomainError):
        connected_from_disconnected(s)


def test_log_of_one_is_zero():
    assert HurwitzSeries.one(4, 4).log().is_zero()


def test_transform_trivial_covers():
    # disconnected data of the trivial covers only
    s = HurwitzSeries.one(2, 0)
    s.set_coefficient((1,), -1, 1)
    s.set_coefficient((1, 1), -2, F(1, 2))
    logged = connected_from_disconnected(s)
    assert logged.coefficient((1,), -1) == 1
    assert logged.coefficient((1, 1), -2) == 0


def test_exp_log_round_trip():
    s = disconnected_series("dp", max_size=4, max_exp=4)
    again = s.log().exp()
    assert again == s


@st.composite
def unit_series(draw):
    """Random series with constant term 1 and only admissible exponents."""
    s = HurwitzSeries.one(4, 4)
    n_terms = draw(st.integers(min_value=1, max_value=6))
    for _ in range(n_terms):
        size = draw(st.integers(min_value=1, max_value=4))
        mu = draw(st.sampled_from(partitions_of(size)))
        e = draw(st.integers(min_value=-size, max_value=4))
        num = draw(st.integers(min_value=-6, max_value=6))
        den = draw(st.integers(min_value=1, max_value=4))
        s.set_coefficient(mu, e, F(num, den))
    return s


@settings(max_examples=40, deadline=None)
@given(unit_series())
def test_log_exp_round_trip_random_series(s):
    assert s.log().exp() == s


def test_log_exp_round_trip_other_direction():
    s = disconnected_series("burnside", max_size=3, max_exp=5)
    logged = s.log()
    assert logged.exp().log() == logged


def test_transform_cross_engine_small():
    # connected values extracted from the disconnected engine match the
    # direct backtracking count for every d <= 3, r <= 6
    for size in range(1, 4):
        for mu in partitions_of(size):
            d, h = mu.size, mu.length
            for g in range(0, 4):
                r = 2 * g - 2 + d + h
                if r < 0 or r > 6:
                    continue
                expected = connected_dfs(g, mu)
                assert connected_via_transform(g, mu, "dp") == expected
                assert connected_via_transform(g, mu, "burnside") == expected


def test_transform_rejects_empty_partition():
    with pytest.raises(DomainError):
        connected_via_transform(1, Partition())


# --- one-variable series ----------------------------------------------------


def test_phi_series_trivial_profile():
    assert phi_series(Partition([1]), "dfs", max_r=4) == {-1: F(1)}


def test_phi_series_disconnected_exponents():
    # exponent convention e = -chi + len(mu) = r - |mu|
    terms = phi_series(Partition([2]), "dp", max_r=3)
    assert terms == {-1: F(1, 2), 1: F(1, 2)}


def test_phi_series_contains_genus_two_term():
    terms = phi_series(Partition([3]), "burnside", max_r=6)
    assert terms[3] == 81  # chi = -2 cover, e = -chi + 1
    assert terms[-1] == 1 and terms[1] == 9


def test_phi_series_unknown_engine():
    with pytest.raises(DomainError):
        phi_series(Partition([2]), "nope")
