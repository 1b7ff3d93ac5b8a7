"""Fan validation, Betti numbers, equal-sign search, subfans."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wondertoric.errors import ValidationError
from wondertoric.fans import (
    Fan,
    all_cones,
    betti_numbers,
    equal_sign_basis,
    equal_sign_holds,
    extend_equal_sign_basis,
    f_vector,
    orthant_fan,
    pairings,
    subfan,
    validate,
    weyl_fan_A,
)
from wondertoric.files import fixture_path, load_fan
from wondertoric.lattice import Sublattice

P2 = Fan.make(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])


@pytest.fixture(scope="module")
def big_fan():
    return load_fan(fixture_path("good_fan_3d.json"))


def test_p2_report():
    report = validate(P2)
    assert report.simplicial and report.smooth and report.complete
    assert report.f_vector == (1, 3, 3)
    assert betti_numbers(P2) == (1, 1, 1)


def test_product_of_lines():
    fan = orthant_fan(4)
    report = validate(fan)
    assert report.smooth and report.complete
    assert report.f_vector == (1, 8, 24, 32, 16)
    assert betti_numbers(fan) == (1, 4, 6, 4, 1)


def test_single_cone_not_smooth():
    fan = Fan.make(2, [(1, 0), (1, 2)], [(0, 1)])
    report = validate(fan)
    assert report.simplicial
    assert not report.smooth
    assert not report.complete
    with pytest.raises(ValidationError):
        betti_numbers(fan)


def test_validate_rejects_bad_rays():
    with pytest.raises(ValidationError, match="not primitive"):
        validate(Fan.make(2, [(2, 0), (0, 1)], [(0, 1)]))
    with pytest.raises(ValidationError, match="duplicate"):
        validate(Fan.make(2, [(1, 0), (1, 0)], [(0, 1)]))
    with pytest.raises(ValidationError, match="not used"):
        validate(Fan.make(2, [(1, 0), (0, 1), (-1, 0)], [(0, 1)]))
    with pytest.raises(ValidationError, match="out of range"):
        Fan.make(2, [(1, 0)], [(0, 3)])


def test_all_cones_counts():
    cones = all_cones(P2)
    assert () in cones
    assert len(cones) == 1 + 3 + 3
    assert f_vector(P2) == (1, 3, 3)


def test_big_fan_report(big_fan):
    report = validate(big_fan)
    assert report.smooth and report.complete
    assert report.f_vector == (1, 72, 210, 140)
    assert betti_numbers(big_fan) == (1, 69, 69, 1)


def test_pairing_example(big_fan):
    # ray indices are 1-based in human output, 0-based here
    cone = (5, 52, 68)
    assert cone in big_fan.maximal_cones
    assert big_fan.rays[5] == (0, 1, 0)
    assert big_fan.rays[52] == (1, 0, 0)
    assert big_fan.rays[68] == (2, 3, 1)
    assert pairings(big_fan, (1, 0, 2), cone) == (0, 1, 4)


def test_equal_sign_examples(big_fan):
    for chi in [(1, 0, 2), (1, 1, -1), (1, 2, 0), (0, 1, -1)]:
        assert equal_sign_holds(big_fan, chi)
    # (1,0) separates two maximal cones of P^2
    assert not equal_sign_holds(P2, (1, 0))
    assert equal_sign_holds(P2, (0, 0))


def test_equal_sign_basis_search(big_fan):
    lat = Sublattice.from_rows(3, [(1, 0, 2), (0, 1, -1)])
    assert equal_sign_basis(big_fan, lat) == ((1, 0, 2), (0, 1, -1))
    rows = equal_sign_basis(big_fan, Sublattice.full(3))
    assert rows is not None
    assert Sublattice.from_rows(3, rows) == Sublattice.full(3)
    assert all(equal_sign_holds(big_fan, chi) for chi in rows)
    # no equal-sign basis exists for <(1,0)> on P^2
    assert equal_sign_basis(P2, Sublattice.from_rows(2, [(1, 0)])) is None


def test_extend_equal_sign_basis(big_fan):
    lat = Sublattice.from_rows(3, [(1, 1, -1)])
    assert extend_equal_sign_basis(big_fan, lat) == ((1, 1, -1),)
    outer = Sublattice.from_rows(3, [(1, 0, 2), (0, 1, -1)])
    rows = extend_equal_sign_basis(big_fan, outer, ((1, 0, 2),))
    assert rows is not None and rows[0] == (1, 0, 2)
    assert Sublattice.from_rows(3, rows) == outer
    assert all(equal_sign_holds(big_fan, chi) for chi in rows)


def test_subfan_line_in_big_fan(big_fan):
    sub = subfan(big_fan, Sublattice.from_rows(3, [(1, 0, 2), (0, 1, -1)]))
    assert sub.parent_rays == (6, 14)
    assert sub.fan.ambient_dim == 1
    assert betti_numbers(sub.fan) == (1, 1)


def test_subfan_degenerate_cases(big_fan):
    full = subfan(big_fan, Sublattice.full(3))
    assert full.fan.ambient_dim == 0
    assert full.fan.maximal_cones == ((),)
    assert betti_numbers(full.fan) == (1,)
    zero = subfan(big_fan, Sublattice.zero(3))
    assert zero.fan.rays == big_fan.rays
    assert set(zero.fan.maximal_cones) == set(big_fan.maximal_cones)
    assert zero.parent_rays == tuple(range(72))


def test_subfan_requires_equal_sign():
    with pytest.raises(ValidationError, match="equal-sign"):
        subfan(P2, Sublattice.from_rows(2, [(1, 0)]))


def test_subfan_rejects_nonsplit(big_fan):
    with pytest.raises(ValidationError, match="split"):
        subfan(big_fan, Sublattice.from_rows(3, [(2, 0, 0)]))


def test_subfan_of_orthant_fan():
    fan = orthant_fan(3)
    sub = subfan(fan, Sublattice.from_rows(3, [(0, 1, 0), (0, 0, 1)]))
    assert sub.fan.ambient_dim == 1
    assert betti_numbers(sub.fan) == (1, 1)
    assert sub.parent_rays == (0, 1)


def test_weyl_fans():
    assert betti_numbers(weyl_fan_A(1)) == (1,)
    assert betti_numbers(weyl_fan_A(2)) == (1, 1)
    assert betti_numbers(weyl_fan_A(3)) == (1, 4, 1)
    fan4 = weyl_fan_A(4)
    assert len(fan4.rays) == 14
    assert len(fan4.maximal_cones) == 24
    report = validate(fan4)
    assert report.smooth and report.complete
    assert betti_numbers(fan4) == (1, 11, 11, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 5))
def test_weyl_fan_betti_properties(n):
    betti = betti_numbers(weyl_fan_A(n))
    assert betti == betti[::-1]
    assert sum(betti) == len(weyl_fan_A(n).maximal_cones) if n > 1 else True
