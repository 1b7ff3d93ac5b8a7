"""Layers, intersections with torsion components, the layer poset, goodness."""

from __future__ import annotations

from fractions import Fraction

import pytest

from wondertoric.errors import ValidationError
from wondertoric.fans import orthant_fan
from wondertoric.files import fixture_path, load_arrangement, load_fan
from wondertoric.lattice import Sublattice
from wondertoric.layers import (
    Layer,
    extend_basis_equal_sign,
    goodness_check,
    intersect,
    mod1,
    poset_of_layers,
)

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def big_fan():
    return load_fan(fixture_path("good_fan_3d.json"))


@pytest.fixture(scope="module")
def main_arr():
    return load_arrangement(fixture_path("example_main.arrangement.json"))


def test_mod1():
    assert mod1(Fraction(7, 2)) == HALF
    assert mod1(Fraction(-1, 4)) == Fraction(3, 4)
    assert mod1(3) == 0


def test_from_generators_reexpresses_phi():
    # redundant generators with compatible values; the relation
    # (2,0) - 2*(1,1) + 2*(0,1) = 0 maps to 1/2 - 1/2 + 0 = 0 mod 1
    layer = Layer.from_generators(
        2, [[2, 0], [1, 1], [0, 1]], [HALF, Fraction(1, 4), 0]
    )
    assert layer.gamma.basis == ((1, 0), (0, 1))
    assert layer.phi == (Fraction(1, 4), Fraction(0))
    assert layer.value_on((2, 0)) == HALF
    assert layer.value_on((1, 1)) == Fraction(1, 4)


def test_inconsistent_values_rejected():
    with pytest.raises(ValidationError, match="inconsistent"):
        Layer.from_generators(2, [[1, 0], [2, 0]], [0, Fraction(1, 3)])


def test_nonsplit_gamma_rejected():
    with pytest.raises(ValidationError, match="split"):
        Layer.from_generators(2, [[2, 0]], [HALF])


def test_contains():
    k1 = Layer.from_generators(3, [[1, 0, 2]], [0])
    point = Layer.from_generators(
        3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, HALF, HALF]
    )
    assert k1.contains(point)  # phi(1,0,2) = 0 + 2*(1/2) = 1 = 0 mod 1
    assert not point.contains(k1)
    assert Layer.torus(3).contains(k1)
    assert k1.contains(k1)


def test_intersect_two_components():
    k1 = Layer.from_generators(3, [[1, 0, 2]], [0])
    k3 = Layer.from_generators(3, [[1, 2, 0]], [0])
    comps = intersect(k1, k3)
    assert len(comps) == 2
    for comp in comps:
        assert comp.gamma == Sublattice.from_rows(3, [[1, 0, 2], [0, 1, -1]])
    assert comps[0].phi == (Fraction(0), Fraction(0))
    assert comps[1].phi == (Fraction(0), HALF)


def test_intersect_empty():
    a = Layer.from_generators(1, [[1]], [0])
    b = Layer.from_generators(1, [[1]], [HALF])
    assert intersect(a, b) == ()


def test_intersect_with_torus():
    k1 = Layer.from_generators(3, [[1, 0, 2]], [0])
    assert intersect(Layer.torus(3), k1) == (k1,)


def test_poset_a2():
    layers = [
        Layer.from_generators(2, [[1, 0]], [0]),
        Layer.from_generators(2, [[0, 1]], [0]),
        Layer.from_generators(2, [[1, 1]], [0]),
    ]
    poset = poset_of_layers(2, layers)
    assert len(poset.elements) == 5
    ranks = sorted(el.rank for el in poset.elements)
    assert ranks == [0, 1, 1, 1, 2]
    # three atoms under the torus, all containing the single point
    point = poset.elements[-1]
    assert point.rank == 2
    for el in poset.elements:
        if el.rank == 1:
            assert el.contains(point)


def test_poset_main_example(main_arr, big_fan):
    poset = poset_of_layers(main_arr.torus_dim, main_arr.layers)
    assert len(poset.elements) == 12
    ranks = sorted(el.rank for el in poset.elements)
    assert ranks == [0, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3]
    points = [el for el in poset.elements if el.rank == 3]
    assert [el.phi for el in points] == [
        (Fraction(0), Fraction(0), Fraction(0)),
        (Fraction(0), HALF, HALF),
        (HALF, Fraction(1, 4), Fraction(3, 4)),
        (HALF, Fraction(3, 4), Fraction(1, 4)),
    ]
    # two of the four rank-2 layers share a lattice and differ by a half
    # twist; the other two are the connected pairwise intersections
    curve_lattice = Sublattice.from_rows(3, [[1, 0, 2], [0, 1, -1]])
    l2, l3 = [el for el in poset.elements if el.gamma == curve_lattice]
    assert l2.phi == (Fraction(0), Fraction(0))
    assert l3.phi == (Fraction(0), HALF)
    others = [
        el for el in poset.elements if el.rank == 2 and el.gamma != curve_lattice
    ]
    assert {el.gamma for el in others} == {
        Sublattice.from_rows(3, [[1, 0, -2], [0, 1, 1]]),
        Sublattice.from_rows(3, [[1, 0, 2], [0, 1, -3]]),
    }
    # first two points lie on l2, last two on l3, and all four on the
    # middle rank-1 layer
    assert l2.contains(points[0]) and l2.contains(points[1])
    assert l3.contains(points[2]) and l3.contains(points[3])
    k2 = Layer.from_generators(3, [[1, 1, -1]], [0])
    assert all(k2.contains(p) for p in points)


def test_goodness_main_example(main_arr, big_fan):
    poset = poset_of_layers(main_arr.torus_dim, main_arr.layers)
    report = goodness_check(big_fan, poset, supplied_bases=main_arr.equal_sign_bases)
    assert report.ok
    assert not report.failures
    # and without any supplied bases the bounded search still succeeds
    report2 = goodness_check(big_fan, poset)
    assert report2.ok
    assert {lat for lat, _ in report2.bases} == {lat for lat, _ in report.bases}


def test_goodness_failure():
    # P^2 is not good for the arrangement {x = 1} in its own torus
    from wondertoric.fans import Fan

    p2 = Fan.make(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    poset = poset_of_layers(2, [Layer.from_generators(2, [[1, 0]], [0])])
    report = goodness_check(p2, poset)
    assert not report.ok
    assert report.failures == (Sublattice.from_rows(2, [[1, 0]]),)


def test_extend_basis_equal_sign_layers(big_fan):
    k1 = Layer.from_generators(3, [[1, 0, 2]], [0])
    l2 = Layer.from_generators(3, [[1, 0, 2], [0, 1, -1]], [0, 0])
    rows = extend_basis_equal_sign(big_fan, inner=l2, outer=k1)
    assert rows[0] == (1, 0, 2)
    assert Sublattice.from_rows(3, rows) == l2.gamma
    with pytest.raises(ValidationError, match="does not contain"):
        extend_basis_equal_sign(big_fan, inner=k1, outer=l2)


def test_goodness_orthant_fan():
    arr = load_arrangement(fixture_path("example_lines.arrangement.json"))
    poset = poset_of_layers(arr.torus_dim, arr.layers)
    report = goodness_check(orthant_fan(4), poset)
    assert report.ok
