"""Tests for signed permutations, subgroups, fixed points, and root data."""

import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from orbitcalc.clans import CaseId, ClanError, enumerate_case_clans, parse_clan
from orbitcalc.weyl import (
    WeylError,
    ambient_weyl,
    apply_weyl_to_root,
    closed_clans,
    closed_orbit_fixed_points,
    distinguished_representative,
    embed_in_ambient,
    fixed_point_to_clan,
    fixed_points_by_clan,
    identity_weyl,
    is_closed_clan,
    neg_set,
    parse_weyl,
    positive_roots,
    restriction_weights,
    simple_reflection,
    stat_lp,
    stat_phip,
    stat_psi,
    stat_sigma,
    stat_tau,
    subgroup_roots,
    validate_weyl,
    weyl_abs,
    weyl_compose,
    weyl_elements,
    weyl_inverse,
    weyl_text,
    wk_member,
    wk_order,
)

DESK_CASES = [
    CaseId("a", 2, 2),
    CaseId("b-so", 2, 1),
    CaseId("c-spxsp", 2, 1),
    CaseId("c-sp-gl", 2, 2),
    CaseId("d-oxo-even", 2, 1),
    CaseId("d-so-gl", 3, 3),
    CaseId("d-oxo-odd", 1, 2),
]


# ---------------------------------------------------------------------------
# Element basics
# ---------------------------------------------------------------------------


def test_text_and_parse():
    w = (-2, -4, 1, 3, -5)
    assert weyl_text(w) == "-2,-4,1,3,-5"
    assert parse_weyl("-2,-4,1,3,-5") == w
    assert parse_weyl("-2-413-5") == w
    assert parse_weyl("132") == (1, 3, 2)
    with pytest.raises(WeylError):
        parse_weyl("")
    with pytest.raises(WeylError):
        parse_weyl("1,1,2")
    with pytest.raises(WeylError):
        parse_weyl("abc")


def test_validate_types():
    validate_weyl((1, 2, 3), "A")
    with pytest.raises(WeylError):
        validate_weyl((-1, 2, 3), "A")
    validate_weyl((-1, -2), "D")
    with pytest.raises(WeylError):
        validate_weyl((-1, 2), "D")
    validate_weyl((-1, 2), "B")


def test_abs_neg_inverse_compose():
    w = (-2, -4, 1, 3, -5)
    assert weyl_abs(w) == (2, 4, 1, 3, 5)
    assert neg_set(w) == {1, 2, 5}
    assert weyl_compose(w, weyl_inverse(w)) == identity_weyl(5)
    assert weyl_compose(weyl_inverse(w), w) == identity_weyl(5)
    u = (-2, 1, 3)
    v = (3, -1, 2)
    assert weyl_compose(u, v) == (3, 2, 1)


def test_weyl_group_sizes():
    assert len(weyl_elements("A", 4)) == 24
    assert len(weyl_elements("B", 3)) == 48
    assert len(weyl_elements("C", 2)) == 8
    assert len(weyl_elements("D", 3)) == 24
    assert len(weyl_elements("D", 4)) == 192


def test_simple_reflections():
    assert simple_reflection("A", 3, 1) == (2, 1, 3)
    assert simple_reflection("B", 3, 3) == (1, 2, -3)
    assert simple_reflection("C", 2, 2) == (1, -2)
    assert simple_reflection("D", 3, 3) == (1, -3, -2)
    with pytest.raises(WeylError):
        simple_reflection("A", 3, 3)
    for lie_type, n in [("A", 3), ("B", 3), ("C", 3), ("D", 3)]:
        top = n - 1 if lie_type == "A" else n
        for i in range(1, top + 1):
            s = simple_reflection(lie_type, n, i)
            assert s in weyl_elements(lie_type, n)
            assert weyl_compose(s, s) == identity_weyl(n)


# ---------------------------------------------------------------------------
# Embedding
# ---------------------------------------------------------------------------


def test_embed_examples():
    sigma = embed_in_ambient((-2, -4, 1, 3, -5), "even")
    assert sigma[:5] == (9, 7, 1, 3, 6)
    assert all(sigma[9 - i] == 11 - sigma[i] for i in range(5))
    assert embed_in_ambient((1, 2, 3), "even") == (1, 2, 3, 4, 5, 6)
    assert embed_in_ambient((-1,), "odd") == (3, 2, 1)
    with pytest.raises(WeylError):
        embed_in_ambient((1, 2), "sideways")


@pytest.mark.parametrize("parity", ["even", "odd"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_embed_is_homomorphism(parity, n):
    elements = weyl_elements("B", n)
    for u in elements:
        su = embed_in_ambient(u, parity)
        for w in elements:
            sw = embed_in_ambient(w, parity)
            combined = embed_in_ambient(weyl_compose(u, w), parity)
            composed = tuple(su[sw[i] - 1] for i in range(len(sw)))
            assert combined == composed


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------


def test_stat_examples():
    assert stat_lp((1, 2, 3, 4), 2) == 0
    assert stat_lp((3, 4, 1, 2), 2) == 4
    assert stat_lp((3, 1, 4, 2), 2) == 3
    with pytest.raises(WeylError):
        stat_lp((-1, 2), 1)
    assert stat_phip((-2, -4, 1, 3, -5), 3) == 1
    assert stat_psi(identity_weyl(3)) == 0
    assert stat_sigma(identity_weyl(3)) == 0
    assert stat_psi((-1, 2, -3)) == 2
    assert stat_sigma((-2, 1)) == 1
    assert stat_sigma((1, -2)) == 0
    assert stat_tau((1, 2, 5, 3, 6, 4), 2) == 0
    assert stat_tau((1, 3, 2), 1) == 0
    assert stat_tau((3, 1, 2), 1) == 1


def test_stat_lp_coset_invariance_case_a():
    for p in range(0, 5):
        for q in range(0, 5 - p):
            if p + q < 1 or p + q > 5:
                continue
            case = CaseId("a", p, q)
            members = [u for u in ambient_weyl(case) if wk_member(case, u)]
            for w in ambient_weyl(case):
                base = stat_lp(w, p)
                for u in members:
                    assert stat_lp(weyl_compose(u, w), p) == base


@pytest.mark.parametrize("shape", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)])
def test_case2_coset_constancy(shape):
    case = CaseId("b-so", *shape)
    p = case.p
    members = [u for u in ambient_weyl(case) if wk_member(case, u)]
    for w in ambient_weyl(case):
        phi0 = stat_phip(w, p) % 2
        lp0 = stat_lp(weyl_abs(w), p)
        for u in members:
            uw = weyl_compose(u, w)
            assert stat_phip(uw, p) % 2 == phi0
            assert stat_lp(weyl_abs(uw), p) == lp0


# ---------------------------------------------------------------------------
# Subgroups
# ---------------------------------------------------------------------------


def test_wk_member_examples():
    case1 = CaseId("a", 2, 2)
    assert wk_member(case1, (2, 1, 3, 4))
    assert not wk_member(case1, (1, 3, 2, 4))
    case4 = CaseId("c-sp-gl", 2, 2)
    assert wk_member(case4, (2, 1))
    assert not wk_member(case4, (-1, 2))
    case2 = CaseId("b-so", 1, 1)
    assert not wk_member(case2, (-1, 2))
    assert wk_member(case2, (1, -2))


@pytest.mark.parametrize("case", DESK_CASES, ids=lambda c: c.tag)
def test_wk_is_a_subgroup_of_predicted_order(case):
    members = [w for w in ambient_weyl(case) if wk_member(case, w)]
    assert len(members) == wk_order(case)
    member_set = set(members)
    assert identity_weyl(case.grank) in member_set
    for u in members:
        assert weyl_inverse(u) in member_set
        for v in members:
            assert weyl_compose(u, v) in member_set


# ---------------------------------------------------------------------------
# Fixed-point dictionary
# ---------------------------------------------------------------------------


def test_fixed_point_to_clan_examples():
    case1 = CaseId("a", 2, 2)
    assert fixed_point_to_clan(case1, (1, 3, 2, 4)).to_text() == "+-+-"
    assert fixed_point_to_clan(case1, (1, 2, 3, 4)).to_text() == "++--"
    case4 = CaseId("c-sp-gl", 2, 2)
    assert fixed_point_to_clan(case4, (1, 2)).to_text() == "++--"
    case2 = CaseId("b-so", 2, 1)
    assert fixed_point_to_clan(case2, (1, 2, 3)).to_text() == "++---++"
    with pytest.raises(WeylError):
        fixed_point_to_clan(CaseId("d-oxo-odd", 1, 2), (1, 2, 3))


@pytest.mark.parametrize("case", DESK_CASES[:-1], ids=lambda c: c.tag)
def test_fixed_points_partition_ambient_group(case):
    groups = fixed_points_by_clan(case)
    seen = [w for pts in groups.values() for w in pts]
    assert len(seen) == len(set(seen)) == len(ambient_weyl(case))
    for c, pts in groups.items():
        assert is_closed_clan(case, c)
        assert closed_orbit_fixed_points(case, c) == pts
    assert set(groups) == set(closed_clans(case))


def test_case1_closed_orbit_counts():
    for p in range(0, 4):
        for q in range(0, 4 - p):
            if p + q < 1:
                continue
            case = CaseId("a", p, q)
            groups = fixed_points_by_clan(case)
            assert len(groups) == math.comb(p + q, p)
            for pts in groups.values():
                assert len(pts) == math.factorial(p) * math.factorial(q)


def test_closed_orbit_examples():
    case1 = CaseId("a", 2, 2)
    pts = closed_orbit_fixed_points(case1, parse_clan("++--", 2, 2))
    assert set(pts) == {(1, 2, 3, 4), (2, 1, 3, 4), (1, 2, 4, 3), (2, 1, 4, 3)}
    with pytest.raises(ClanError):
        closed_orbit_fixed_points(case1, parse_clan("11--++", 3, 3))
    with pytest.raises(ClanError):
        closed_orbit_fixed_points(case1, parse_clan("1+1-", 2, 2))


@pytest.mark.parametrize("case", DESK_CASES, ids=lambda c: c.tag)
def test_closed_fixed_points_are_wk_stable(case):
    members = [u for u in ambient_weyl(case) if wk_member(case, u)]
    for c in closed_clans(case):
        pts = set(closed_orbit_fixed_points(case, c))
        assert pts
        assert len(pts) % wk_order(case) == 0
        for w in pts:
            for u in members:
                assert weyl_compose(u, w) in pts


def test_case2_closed_orbit_has_two_components():
    case = CaseId("b-so", 2, 1)
    c = parse_clan("++---++", 4, 3)
    pts = closed_orbit_fixed_points(case, c)
    assert len(pts) == 2 * wk_order(case) == 16


def test_case7_closed_structure():
    for p, q in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (1, 4), (4, 1), (2, 3), (3, 2)]:
        case = CaseId("d-oxo-odd", p, q)
        n = case.grank
        if n > 5:
            continue
        clans = closed_clans(case)
        assert len(clans) == math.comb(n - 1, p)
        covered = set()
        for c in clans:
            pts = closed_orbit_fixed_points(case, c)
            assert len(pts) == wk_order(case)
            covered.update(pts)
        predicted = {w for w in ambient_weyl(case) if abs(w[n - 1]) == p + 1}
        assert covered == predicted


def test_distinguished_representatives_pinned():
    case2 = CaseId("b-so", 2, 1)
    reps2 = {c.to_text(): distinguished_representative(case2, c)
             for c in closed_clans(case2)}
    assert reps2 == {
        "++---++": (-2, -1, -3),
        "+-+-+-+": (-2, -3, -1),
        "-++-++-": (-3, -2, -1),
    }
    case5 = CaseId("d-oxo-even", 2, 1)
    reps5 = sorted(distinguished_representative(case5, c) for c in closed_clans(case5))
    assert reps5 == sorted([(-2, -1, 3), (-2, -3, 1), (-3, -2, 1)])
    case7 = CaseId("d-oxo-odd", 1, 2)
    assert distinguished_representative(case7, parse_clan("+-11-+", 3, 3)) == (1, 3, 2)
    assert distinguished_representative(case7, parse_clan("-+11+-", 3, 3)) == (3, 1, 2)
    case6 = CaseId("d-so-gl", 3, 3)
    assert distinguished_representative(case6, parse_clan("+++---", 3, 3)) == (1, 2, 3)
    # the standard representative never has negative entries and ends in p+1
    for p, q in [(1, 2), (2, 1), (2, 2)]:
        case = CaseId("d-oxo-odd", p, q)
        for c in closed_clans(case):
            w = distinguished_representative(case, c)
            assert all(v > 0 for v in w)
            assert w[case.grank - 1] == case.p + 1


# ---------------------------------------------------------------------------
# Root data
# ---------------------------------------------------------------------------


def test_positive_root_counts():
    assert len(positive_roots(CaseId("a", 2, 2))) == 6
    assert len(positive_roots(CaseId("b-so", 2, 1))) == 9
    assert len(positive_roots(CaseId("c-spxsp", 2, 1))) == 9
    assert len(positive_roots(CaseId("c-sp-gl", 2, 2))) == 4
    assert len(positive_roots(CaseId("d-oxo-even", 2, 1))) == 6
    assert len(positive_roots(CaseId("d-so-gl", 3, 3))) == 6
    assert len(positive_roots(CaseId("d-oxo-odd", 1, 2))) == 6


def test_subgroup_root_counts():
    assert len(subgroup_roots(CaseId("a", 2, 2))) == 4
    assert len(subgroup_roots(CaseId("b-so", 2, 1))) == 6
    assert len(subgroup_roots(CaseId("c-spxsp", 2, 1))) == 10
    assert len(subgroup_roots(CaseId("c-sp-gl", 2, 2))) == 2
    assert len(subgroup_roots(CaseId("d-oxo-even", 2, 1))) == 4
    assert len(subgroup_roots(CaseId("d-so-gl", 3, 3))) == 6
    assert len(subgroup_roots(CaseId("d-oxo-odd", 1, 2))) == 4
    assert len(subgroup_roots(CaseId("d-oxo-odd", 2, 2))) == 10


def test_apply_weyl_to_root():
    assert apply_weyl_to_root((2, -1, 3), (1, -1, 0)) == (1, 1, 0)
    assert apply_weyl_to_root((-1, 2), (2, 0)) == (-2, 0)


def test_restriction_weights_spot_checks():
    case2 = CaseId("b-so", 2, 1)
    assert Counter(restriction_weights(case2, (1, 2, 3))) == Counter(
        [(1, 0, -1), (0, 1, -1), (1, 0, 1), (0, 1, 1), (1, 0, 0), (0, 1, 0)]
    )
    case4 = CaseId("c-sp-gl", 2, 2)
    assert Counter(restriction_weights(case4, (1, 2))) == Counter(
        [(1, 1), (2, 0), (0, 2)]
    )
    case6 = CaseId("d-so-gl", 3, 3)
    assert Counter(restriction_weights(case6, (1, 2, 3))) == Counter(
        [(1, 1, 0), (1, 0, 1), (0, 1, 1)]
    )
    case7 = CaseId("d-oxo-odd", 1, 2)
    assert Counter(restriction_weights(case7, (1, 3, 2))) == Counter(
        [(1, 0, -1), (1, 0, 1), (1, 0, 0), (0, 0, 1)]
    )


def test_restriction_weight_count_matches_closed_class_degree():
    # every closed orbit of a case has the same codimension-style weight count
    for case in DESK_CASES:
        counts = set()
        for c in closed_clans(case):
            for w in closed_orbit_fixed_points(case, c):
                counts.add(len(restriction_weights(case, w)))
        assert len(counts) == 1, (case.tag, counts)
