"""Presentation generators, monomial bases, lifted subfan bases."""

from __future__ import annotations

import pytest

from wondertoric.fans import Fan, orthant_fan
from wondertoric.files import fixture_path, load_arrangement, load_fan
from wondertoric.layers import poset_of_layers
from wondertoric.models import (
    bases_by_lattice,
    build_building_set,
    subfan_for_support,
)
from wondertoric.presentation import (
    cohomology_basis_monomials,
    character_linear_forms,
    emit_presentation,
    minimal_nonfaces,
    mono_mul,
    monomial_basis,
    poly_add,
    poly_freeze,
    poly_mul,
    poly_var,
    render_terms,
    subfan_basis_in_parent_labels,
)

P2 = Fan.make(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (0, 2), (1, 2)))


@pytest.fixture(scope="module")
def big_fan():
    return load_fan(fixture_path("good_fan_3d.json"))


@pytest.fixture(scope="module")
def main_arr():
    return load_arrangement(fixture_path("example_main.arrangement.json"))


@pytest.fixture(scope="module")
def main_building(main_arr):
    poset = poset_of_layers(main_arr.torus_dim, main_arr.layers)
    return build_building_set(poset, main_arr.building)


@pytest.fixture(scope="module")
def main_presentation(main_building, big_fan, main_arr):
    return emit_presentation(main_building, big_fan, main_arr.equal_sign_bases)


def test_poly_arithmetic_and_render():
    c1 = poly_var(("C", 0))
    t1 = poly_var(("T", 0), -1)
    prod = poly_mul(poly_add(c1, t1), poly_add(c1, t1))
    # (C1 - T1)^2 = C1^2 - 2 C1 T1 + T1^2
    assert render_terms(poly_freeze(prod)) == "C1^2 - 2*C1*T1 + T1^2"
    assert mono_mul(((("C", 0), 1),), ((("C", 0), 2),)) == ((("C", 0), 3),)
    assert render_terms(()) == "0"


def test_minimal_nonfaces_projective_plane():
    assert minimal_nonfaces(P2) == ((0, 1, 2),)


def test_minimal_nonfaces_product_of_lines():
    fan = orthant_fan(2)
    # rays ordered (1,0),(-1,0),(0,1),(0,-1): opposite pairs never span a cone
    assert minimal_nonfaces(fan) == ((0, 1), (2, 3))


def test_linear_forms_projective_plane():
    forms = character_linear_forms(P2)
    assert render_terms(forms[0]) == "C1 - C3"
    assert render_terms(forms[1]) == "C2 - C3"


def test_cohomology_basis_projective_plane():
    basis = cohomology_basis_monomials(P2)
    assert basis == (((),), ((0,),), ((0, 0),))


def test_cohomology_basis_product_of_lines():
    basis = cohomology_basis_monomials(orthant_fan(2))
    assert [len(level) for level in basis] == [1, 2, 1]
    assert basis[1] == ((0,), (2,))


def test_curve_subfan_lift_prefers_low_parent_label(main_building, big_fan, main_arr):
    bases = bases_by_lattice(main_arr.equal_sign_bases, 3)
    sub = subfan_for_support(main_building, big_fan, (3,), bases)
    assert sub.parent_rays == (6, 14)
    assert subfan_basis_in_parent_labels(sub) == (((),), ((6,),))


def test_monomial_basis_main(main_building, big_fan, main_arr):
    mb = monomial_basis(main_building, big_fan, main_arr.equal_sign_bases)
    assert mb.graded_counts(4) == (1, 75, 75, 1)
    curve_elements = [
        el for el in mb.elements if el.function.support == (3,)
    ]
    assert [(el.monomial, el.cohomology_degree) for el in curve_elements] == [
        ((), 0),
        ((6,), 1),
    ]
    ambient = [el for el in mb.elements if el.function.support == ()]
    assert all(el.monomial is None for el in ambient)
    assert len(ambient) == 1 + 69 + 69 + 1


def test_presentation_shape(main_presentation):
    pres = main_presentation
    assert pres.variable_count == 81
    assert pres.ray_count == 72 and pres.member_count == 9
    a, b, c, d, e = pres.class_sizes()
    assert b == 3
    assert d == 75
    # pair non-faces are exactly the ray pairs that span no cone
    assert a == 72 * 71 // 2 - 210
    # every member appears with the empty superset choice
    assert {(r.member, r.above) for r in pres.member_relations} >= {
        (g, ()) for g in range(9)
    }


def test_presentation_frozen_class_sizes(main_presentation):
    assert main_presentation.class_sizes() == (2346, 3, 606, 75, 424)


def test_relation_with_full_chain_has_trivial_cofactor(main_presentation):
    # a point below four members: when all four are selected the enclosing
    # component is the point itself, so the relation is the plain product
    rel = next(
        r
        for r in main_presentation.member_relations
        if r.member == 5 and r.above == (0, 1, 2, 3)
    )
    assert rel.terms == (
        (((("T", 0), 1), (("T", 1), 1), (("T", 2), 1), (("T", 3), 1)), 1),
    )


def test_relation_t_and_c_content(main_presentation):
    rel = next(
        r for r in main_presentation.member_relations if (r.member, r.above) == (0, ())
    )
    terms = dict(rel.terms)
    # ray 0 pairs to -2 against the member character, so C1 gets +2
    assert terms[((("C", 0), 1),)] == 2
    # the member variable itself enters through the summed class
    assert terms[((("T", 0), 1),)] == -1


def test_power_variant_same_shape(main_building, big_fan, main_arr):
    pres = emit_presentation(
        main_building, big_fan, main_arr.equal_sign_bases, variant="power"
    )
    assert pres.class_sizes() == (2346, 3, 606, 75, 424)
    assert pres.variant == "power"


def test_presentation_a2_has_no_empty_intersections():
    fan = load_fan(fixture_path("weyl_a3_fan.json"))
    arr = load_arrangement(fixture_path("example_a2.arrangement.json"))
    poset = poset_of_layers(arr.torus_dim, arr.layers)
    building = build_building_set(poset)
    pres = emit_presentation(building, fan)
    assert pres.variable_count == 6 + 4
    assert len(pres.member_relations) == 3 + 8
    assert pres.empty_intersection_products == ()
