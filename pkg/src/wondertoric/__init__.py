"""Exact combinatorial invariants of compactified toric arrangement complements."""

from __future__ import annotations

from .errors import (
    FileFormatError,
    MathAssertionError,
    ValidationError,
    WondertoricError,
)
from .fans import (
    Fan,
    FanReport,
    betti_numbers,
    f_vector,
    orthant_fan,
    subfan,
    validate,
    weyl_fan_A,
)
from .files import Arrangement, fixture_path, load_arrangement, load_fan
from .lattice import SmithForm, Sublattice, smith_normal_form
from .layers import (
    GoodnessReport,
    Layer,
    LayerPoset,
    goodness_check,
    poset_of_layers,
)
from .models import (
    AdmissibleFunction,
    BuildingSet,
    PoincareResult,
    build_building_set,
    building_set_from_arrangement,
    enumerate_admissible,
    enumerate_nested_sets,
    is_well_connected,
    poincare,
    rank_via_blowup_recursion,
)
from .presentation import (
    ModelBasis,
    PresentationIdeal,
    emit_presentation,
    monomial_basis,
)
from .series import (
    TruncatedSeries,
    eulerian_series,
    forest_series,
    lec_series,
    toric_poincare_series,
    tree_series,
    verify_lambda_recurrence,
    verify_main_identity,
)
from .typea import (
    AdmissibleForest,
    TreeNode,
    chain_monomial_to_permutation,
    des,
    enumerate_forests,
    eulerian,
    hook_factorize,
    lec,
    make_forest,
    minimal_equal_coordinate_building,
    permutation_to_chain_monomial,
    psi,
    psi_inverse,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleForest",
    "AdmissibleFunction",
    "Arrangement",
    "BuildingSet",
    "Fan",
    "FanReport",
    "FileFormatError",
    "GoodnessReport",
    "Layer",
    "LayerPoset",
    "MathAssertionError",
    "ModelBasis",
    "PoincareResult",
    "PresentationIdeal",
    "SmithForm",
    "Sublattice",
    "TreeNode",
    "TruncatedSeries",
    "ValidationError",
    "WondertoricError",
    "betti_numbers",
    "build_building_set",
    "building_set_from_arrangement",
    "chain_monomial_to_permutation",
    "des",
    "emit_presentation",
    "enumerate_admissible",
    "enumerate_forests",
    "enumerate_nested_sets",
    "eulerian",
    "eulerian_series",
    "f_vector",
    "fixture_path",
    "forest_series",
    "goodness_check",
    "hook_factorize",
    "is_well_connected",
    "lec",
    "lec_series",
    "load_arrangement",
    "load_fan",
    "make_forest",
    "minimal_equal_coordinate_building",
    "monomial_basis",
    "orthant_fan",
    "permutation_to_chain_monomial",
    "poincare",
    "poset_of_layers",
    "psi",
    "psi_inverse",
    "rank_via_blowup_recursion",
    "smith_normal_form",
    "subfan",
    "toric_poincare_series",
    "tree_series",
    "validate",
    "verify_lambda_recurrence",
    "verify_main_identity",
    "weyl_fan_A",
]
