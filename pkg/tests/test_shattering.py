import pytest
from hypothesis import given

import brute
from cubekit import caps_override, debug_asserts
from cubekit.errors import DomainTooLarge
from cubekit.oracle import enumerate_systems
from cubekit.oneinclusion import is_well_graded
from cubekit.setsystem import additionality, power_set, trace
from cubekit.shattering import (
    check_sandwich,
    is_extremal,
    is_maximum,
    sauer_shelah_bound,
    shatter_report,
    shattered_sets,
    strongly_shattered_sets,
    vc_dimension,
)
from helpers import S, systems, worked_example


def named(s, masks):
    return {frozenset(s.names_of(m)) for m in masks}


def test_power_set_report():
    s = power_set("12")
    rep = shatter_report(s)
    assert named(s, rep.shattered) == named(s, range(4))
    assert named(s, rep.strongly_shattered) == named(s, range(4))
    assert rep.vc_dim == 2


def test_empty_and_full_on_two_points():
    s = S("12", "", "12")
    rep = shatter_report(s)
    assert named(s, rep.shattered) == {frozenset(), frozenset("1"), frozenset("2")}
    # no member pair differs in exactly one element, so only ∅ is strongly shattered
    assert named(s, rep.strongly_shattered) == {frozenset()}
    assert rep.vc_dim == 1
    assert check_sandwich(s) == (1, 2, 3)
    assert not is_extremal(s)


def test_worked_example_vc():
    assert vc_dimension(worked_example()) == 2


def test_worked_example_extremal_matches_brute_force():
    s = worked_example()
    expected = brute.shattered(s) == brute.strongly_shattered(s)
    assert is_extremal(s) == expected
    assert expected is True


def test_family_of_only_empty_has_vc_zero():
    assert vc_dimension(S("xy", "")) == 0
    assert shatter_report(S("", "")).vc_dim == 0


def test_maximum_examples():
    assert is_maximum(S("123", "", "1", "12", "123"))
    assert is_maximum(S("1", "", "1"))
    assert not is_maximum(S("123", "1", "12", "13"))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_empty_and_full_is_not_maximum_beyond_one_point(n):
    domain = "1234"[:n]
    s = S(domain, "", domain)
    assert vc_dimension(s) == 1
    # at Y = X the trace has 2 members while the bound is 1 + n
    assert len(trace(s, s.full_mask)) == 2 < sauer_shelah_bound(n, 1)
    assert not is_maximum(s)


def test_small_system_decided_by_brute_force():
    s = S("123", "", "1", "2", "12", "123")
    assert is_extremal(s) == (brute.shattered(s) == brute.strongly_shattered(s))
    assert is_maximum(s) == brute.is_maximum(s)


def test_sandwich_examples():
    assert check_sandwich(power_set("12")) == (4, 4, 4)
    lo, size, hi = check_sandwich(S("123", "1", "12", "13"))
    assert lo <= size == 3 <= hi


def test_sandwich_on_every_three_point_system():
    count = 0
    for s in enumerate_systems(3):
        lo, size, hi = check_sandwich(s)
        assert lo <= size <= hi
        count += 1
    assert count == 255


@given(systems(max_n=4))
def test_shattering_matches_brute_force(s):
    assert named(s, shattered_sets(s)) == brute.shattered(s)
    assert named(s, strongly_shattered_sets(s)) == brute.strongly_shattered(s)
    assert vc_dimension(s) == brute.vc(s)
    assert is_maximum(s) == brute.is_maximum(s)


@given(systems(max_n=4))
def test_report_invariants(s):
    rep = shatter_report(s)
    sht = set(rep.shattered)
    ssht = set(rep.strongly_shattered)
    assert ssht <= sht
    assert 0 in ssht
    for family in (sht, ssht):
        for y in family:
            for i in range(s.n):
                assert y & ~(1 << i) in family
    assert rep.vc_dim == max(y.bit_count() for y in sht)


def test_extremal_three_way_agreement_and_consequences():
    for n in range(4):
        for s in enumerate_systems(n):
            sht = shattered_sets(s)
            ssht = strongly_shattered_sets(s)
            assert (set(sht) == set(ssht)) == (len(s) == len(sht)) == (len(s) == len(ssht))
            if is_maximum(s):
                assert is_extremal(s)
            if is_extremal(s):
                assert is_well_graded(s)
            if vc_dimension(s) <= 1:
                assert additionality(s) <= 1


def test_sauer_shelah_on_every_trace():
    for s in enumerate_systems(3):
        d = vc_dimension(s)
        for y in range(1 << s.n):
            assert len(trace(s, y)) <= sauer_shelah_bound(y.bit_count(), d)


def test_debug_cross_check_runs_clean():
    with debug_asserts():
        for s in enumerate_systems(3):
            is_extremal(s)


def test_shattering_cap():
    with caps_override(max_shatter_domain=3):
        with pytest.raises(DomainTooLarge):
            shatter_report(S("abcd", ""))
