"""Command-line interface: fan and arrangement checks, model computations,
permutation statistics, and golden-output reproduction."""

from __future__ import annotations

import argparse
import difflib
import json
import os
import sys
from collections import Counter

from .errors import FileFormatError, MathAssertionError, ValidationError
from .fans import Fan, betti_numbers, validate
from .files import Arrangement, fixture_path, load_arrangement, load_fan
from .layers import goodness_check, poset_of_layers
from .models import (
    BuildingSet,
    build_building_set,
    enumerate_admissible,
    enumerate_nested_sets,
    is_well_connected,
    poincare,
    rank_via_blowup_recursion,
)
from .presentation import emit_presentation, monomial_basis, render_terms
from .series import (
    eulerian_series,
    lec_series,
    verify_lambda_recurrence,
    verify_main_identity,
)
from .typea import (
    AdmissibleForest,
    TreeNode,
    eulerian,
    hook_factorize,
    inversions,
    lec,
    make_forest,
    psi,
    psi_inverse,
)

JSON_SCHEMA_VERSION = 1
THREAD_ENV = "WONDERTORIC_THREADS"

EXAMPLES = {
    "example-main": ("example_main.arrangement.json", "good_fan_3d.json"),
    "example-lines": ("example_lines.arrangement.json", "p1x4_fan.json"),
    "example-a2": ("example_a2.arrangement.json", "weyl_a3_fan.json"),
}


def thread_count() -> int:
    """Worker count requested via the environment (reserved; all current
    computations run sequentially)."""
    raw = os.environ.get(THREAD_ENV, "1")
    try:
        count = int(raw)
    except ValueError:
        raise ValidationError(f"{THREAD_ENV} must be an integer, got {raw!r}")
    if count < 1:
        raise ValidationError(f"{THREAD_ENV} must be positive, got {count}")
    return count


def _fmt(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _fmt_rows(rows) -> str:
    return "[" + ", ".join(_fmt(r) for r in rows) + "]"


def _fmt_word(word) -> str:
    return "[" + ", ".join(str(x) for x in word) + "]"


def _poly_text(coeffs, var: str = "q") -> str:
    """Render a coefficient tuple ascending in the variable."""
    parts = []
    for power, c in enumerate(coeffs):
        if c == 0:
            continue
        if power == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            tail = var if power == 1 else f"{var}^{power}"
            parts.append(head + tail)
    return " + ".join(parts) if parts else "0"


def _support_text(building: BuildingSet, support) -> str:
    return "{" + ", ".join(building.label(i) for i in support) + "}"


def _emit(args, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        body = {"formatVersion": JSON_SCHEMA_VERSION}
        body.update(payload)
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _building_from(arr: Arrangement) -> tuple:
    poset = poset_of_layers(arr.torus_dim, arr.layers)
    building = build_building_set(poset, arr.building)
    return poset, building


def _check_dims(arr: Arrangement, fan: Fan) -> None:
    if arr.torus_dim != fan.ambient_dim:
        raise ValidationError("arrangement and fan dimensions differ")


# per-command report builders, shared by the direct commands and `reproduce`


def _fan_report(fan: Fan):
    report = validate(fan)
    betti = betti_numbers(fan) if report.smooth and report.complete else None
    lines = [
        f"rays: {len(fan.rays)}",
        f"maximal cones: {len(fan.maximal_cones)}",
        f"simplicial: {'yes' if report.simplicial else 'no'}",
        f"smooth: {'yes' if report.smooth else 'no'}",
        f"complete: {'yes' if report.complete else 'no'}",
        f"f-vector: {_fmt(report.f_vector)}",
    ]
    if betti is None:
        lines.append("Betti numbers: unavailable (requires a smooth complete fan)")
    else:
        lines.append(f"Betti numbers: {_fmt(betti)}")
    payload = {
        "rays": len(fan.rays),
        "maximalCones": len(fan.maximal_cones),
        "simplicial": report.simplicial,
        "smooth": report.smooth,
        "complete": report.complete,
        "fVector": list(report.f_vector),
        "betti": None if betti is None else list(betti),
    }
    ok = report.smooth and report.complete
    return ok, payload, lines


def _poset_report(arr: Arrangement):
    poset = poset_of_layers(arr.torus_dim, arr.layers)
    lines = [
        f"torus dimension: {poset.torus_dim}",
        f"elements: {len(poset.elements)}",
    ]
    elements = []
    for i, el in enumerate(poset.elements):
        phi = "[" + ", ".join(str(v) for v in el.phi) + "]"
        lines.append(
            f"L{i + 1}: codim {el.rank}, gamma {_fmt_rows(el.gamma.basis)}, phi {phi}"
        )
        elements.append(
            {
                "codim": el.rank,
                "gamma": [list(r) for r in el.gamma.basis],
                "phi": [str(v) for v in el.phi],
            }
        )
    edges = poset.covers()
    lines.append("covers (containing layer -> contained layer):")
    for i, j in edges:
        lines.append(f"  L{i + 1} -> L{j + 1}")
    payload = {
        "torusDim": poset.torus_dim,
        "elements": elements,
        "covers": [[i, j] for i, j in edges],
    }
    return payload, lines


def _goodness_report(arr: Arrangement, fan: Fan, bound: int):
    _check_dims(arr, fan)
    poset = poset_of_layers(arr.torus_dim, arr.layers)
    report = goodness_check(fan, poset, bound, arr.equal_sign_bases)
    lines = [f"character lattices checked: {len(report.bases) + len(report.failures)}"]
    found = []
    for lat, rows in report.bases:
        lines.append(f"gamma {_fmt_rows(lat.basis)}: equal-sign basis {_fmt_rows(rows)}")
        found.append(
            {"gamma": [list(r) for r in lat.basis], "basis": [list(r) for r in rows]}
        )
    missing = []
    for lat in report.failures:
        lines.append(
            f"gamma {_fmt_rows(lat.basis)}: no equal-sign basis within bound {bound}"
        )
        missing.append([list(r) for r in lat.basis])
    lines.append(f"good: {'yes' if report.ok else 'no'}")
    payload = {"good": report.ok, "bases": found, "failures": missing, "bound": bound}
    return report.ok, payload, lines


def _nested_report(building: BuildingSet):
    connect = is_well_connected(building)
    nested = enumerate_nested_sets(building)
    lines = [
        f"building set: {len(building.members)} members",
        f"well-connected: {'yes' if connect.ok else 'no'}",
        f"nested sets: {len(nested)}",
    ]
    lines.extend(_support_text(building, s) for s in nested)
    payload = {
        "members": len(building.members),
        "wellConnected": connect.ok,
        "nestedSets": [list(s) for s in nested],
    }
    return payload, lines


def _admissible_report(building: BuildingSet):
    funcs = enumerate_admissible(building)
    lines = [f"admissible functions: {len(funcs)}"]
    for k, f in enumerate(funcs, start=1):
        lines.append(
            f"{k}: support {_support_text(building, f.support)}, "
            f"values {_fmt(f.values)}, degree {f.degree}"
        )
    payload = {
        "functions": [
            {"support": list(f.support), "values": list(f.values)} for f in funcs
        ]
    }
    return payload, lines


def _ray_product_text(monomial) -> str:
    if not monomial:
        return "1"
    counts = Counter(monomial)
    parts = []
    for ray in sorted(counts):
        exp = counts[ray]
        parts.append(f"C{ray + 1}" + (f"^{exp}" if exp > 1 else ""))
    return "*".join(parts)


def _function_text(building: BuildingSet, func) -> str:
    if not func.support:
        return "1"
    parts = []
    for member, value in zip(func.support, func.values):
        parts.append(building.label(member) + (f"^{value}" if value > 1 else ""))
    return "*".join(parts)


def _basis_report(building: BuildingSet, fan: Fan, bases, bound: int):
    basis = monomial_basis(building, fan, bases, bound)
    graded = basis.graded_counts(fan.ambient_dim + 1)
    lines = [f"basis elements: {len(basis.elements)}"]
    ambient_seen: Counter = Counter()
    entries = []
    for el in basis.elements:
        func = _function_text(building, el.function)
        if el.monomial is None:
            ambient_seen[(el.function, el.cohomology_degree)] += 1
            j = ambient_seen[(el.function, el.cohomology_degree)]
            lift = f"ambient class {j} of degree {el.cohomology_degree}"
            mono = None
        else:
            lift = _ray_product_text(el.monomial)
            mono = list(el.monomial)
        lines.append(f"deg {el.degree}: function {func}, lift {lift}")
        entries.append(
            {
                "support": list(el.function.support),
                "values": list(el.function.values),
                "monomial": mono,
                "cohomologyDegree": el.cohomology_degree,
                "degree": el.degree,
            }
        )
    lines.append(f"graded counts: {_fmt(graded)}")
    payload = {"elements": entries, "graded": list(graded)}
    return payload, lines


def _poincare_report(building: BuildingSet, fan: Fan, bases, bound: int):
    result = poincare(building, fan, bases, bound)
    oracle = rank_via_blowup_recursion(building, fan, bases, bound)
    lines = []
    for row in result.rows:
        values = ", ".join(_fmt(f.values) for f in row.functions) or "-"
        lines.append(
            f"support {_support_text(building, row.support)} | "
            f"subfan Betti {_fmt(row.subfan_betti)} | values {values} | "
            f"contribution {_fmt(row.contribution)}"
        )
    agree = result.total == oracle
    lines.append(f"Poincare coefficients: {_fmt(result.total)}")
    lines.append(f"polynomial: {_poly_text(result.total)}")
    lines.append(f"blowup recursion: {_fmt(oracle)}")
    lines.append(f"oracle agreement: {'yes' if agree else 'no'}")
    payload = {
        "rows": [
            {
                "support": list(row.support),
                "subfanBetti": list(row.subfan_betti),
                "values": [list(f.values) for f in row.functions],
                "contribution": list(row.contribution),
            }
            for row in result.rows
        ],
        "total": list(result.total),
        "blowupRecursion": list(oracle),
        "agreement": agree,
    }
    return agree, payload, lines


def _presentation_report(
    building: BuildingSet, fan: Fan, bases, bound: int, variant: str, full: bool
):
    ideal = emit_presentation(building, fan, bases, bound, variant)
    a, b, c, d, e = ideal.class_sizes()
    lines = [
        f"variables: {ideal.variable_count} "
        f"({ideal.ray_count} ray classes, {ideal.member_count} member classes)",
        f"variant: {ideal.variant}",
        f"class (a) nonface monomials: {a}",
        f"class (b) linear forms: {b}",
        f"class (c) ray-member products: {c}",
        f"class (d) member relations: {d}",
        f"class (e) empty-intersection products: {e}",
    ]
    if full:
        for mono in ideal.nonface_monomials:
            lines.append("nonface: " + _ray_product_text(mono))
        for form in ideal.linear_forms:
            lines.append("linear: " + render_terms(form))
        for ray, member in ideal.ray_member_products:
            lines.append(f"product: C{ray + 1}*{building.label(member)}")
        for rel in ideal.member_relations:
            above = _support_text(building, rel.above)
            lines.append(
                f"relation {building.label(rel.member)} above {above}: "
                + render_terms(rel.terms)
            )
        for subset in ideal.empty_intersection_products:
            prod = "*".join(building.label(i) for i in subset)
            lines.append(f"empty intersection: {prod}")
    payload = {
        "variables": ideal.variable_count,
        "rayCount": ideal.ray_count,
        "memberCount": ideal.member_count,
        "variant": ideal.variant,
        "nonfaceMonomials": [list(m) for m in ideal.nonface_monomials],
        "linearForms": [
            [[list(map(list, mono)), coeff] for mono, coeff in form]
            for form in ideal.linear_forms
        ],
        "rayMemberProducts": [list(p) for p in ideal.ray_member_products],
        "memberRelations": [
            {
                "member": rel.member,
                "above": list(rel.above),
                "terms": [[list(map(list, mono)), coeff] for mono, coeff in rel.terms],
            }
            for rel in ideal.member_relations
        ],
        "emptyIntersectionProducts": [
            list(s) for s in ideal.empty_intersection_products
        ],
    }
    return payload, lines


# forest text form: leaf label, or (q^i: child, child, ...); components by ";"


def forest_to_text(forest: AdmissibleForest) -> str:
    return "; ".join(_tree_to_text(t) for t in forest.trees)


def _tree_to_text(node: TreeNode) -> str:
    if node.is_leaf:
        return str(node.leaf_label)
    inner = ", ".join(_tree_to_text(c) for c in node.children)
    return f"(q^{node.exponent}: {inner})"


def forest_from_text(text: str) -> AdmissibleForest:
    """Parse the textual forest form produced by forest_to_text."""
    trees = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise FileFormatError("empty forest component")
        node, rest = _parse_tree(chunk)
        if rest.strip():
            raise FileFormatError(f"trailing input after tree: {rest!r}")
        trees.append(node)
    return make_forest(trees)


def _parse_tree(text: str) -> tuple[TreeNode, str]:
    text = text.lstrip()
    if text.startswith("("):
        body = text[1:].lstrip()
        if not body.startswith("q^"):
            raise FileFormatError("expected q^<exponent> after '('")
        body = body[2:]
        digits = _take_digits(body)
        exponent, body = int(digits), body[len(digits) :].lstrip()
        if not body.startswith(":"):
            raise FileFormatError("expected ':' after the exponent")
        body = body[1:]
        children = []
        while True:
            child, body = _parse_tree(body)
            children.append(child)
            body = body.lstrip()
            if body.startswith(","):
                body = body[1:]
                continue
            if body.startswith(")"):
                return TreeNode.branch(exponent, children), body[1:]
            raise FileFormatError("expected ',' or ')' in a branch")
    digits = _take_digits(text)
    return TreeNode.leaf(int(digits)), text[len(digits) :]


def _take_digits(text: str) -> str:
    digits = ""
    for ch in text:
        if ch.isdigit():
            digits += ch
        else:
            break
    if not digits:
        raise FileFormatError(f"expected a number at {text[:12]!r}")
    return digits


# subcommand handlers


def _cmd_fan_check(args) -> int:
    ok, payload, lines = _fan_report(load_fan(args.fanfile))
    _emit(args, payload, lines)
    return 0 if ok else 3


def _cmd_arr_poset(args) -> int:
    payload, lines = _poset_report(load_arrangement(args.arrfile))
    _emit(args, payload, lines)
    return 0


def _cmd_arr_goodness(args) -> int:
    ok, payload, lines = _goodness_report(
        load_arrangement(args.arrfile), load_fan(args.fanfile), args.bound
    )
    _emit(args, payload, lines)
    return 0 if ok else 3


def _load_model_inputs(args):
    arr = load_arrangement(args.arrfile)
    fan = load_fan(args.fanfile)
    _check_dims(arr, fan)
    poset, building = _building_from(arr)
    return arr, fan, building


def _cmd_model(args) -> int:
    arr, fan, building = _load_model_inputs(args)
    if args.what == "nested":
        payload, lines = _nested_report(building)
    elif args.what == "admissible":
        payload, lines = _admissible_report(building)
    elif args.what == "basis":
        payload, lines = _basis_report(building, fan, arr.equal_sign_bases, args.bound)
    else:
        agree, payload, lines = _poincare_report(
            building, fan, arr.equal_sign_bases, args.bound
        )
        _emit(args, payload, lines)
        return 0 if agree else 4
    _emit(args, payload, lines)
    return 0


def _cmd_model_presentation(args) -> int:
    arr, fan, building = _load_model_inputs(args)
    payload, lines = _presentation_report(
        building, fan, arr.equal_sign_bases, args.bound, args.variant, args.full
    )
    _emit(args, payload, lines)
    return 0


def _cmd_typea_eulerian(args) -> int:
    coeffs = eulerian(args.n)
    lines = [
        f"A_{args.n}(q) = {_poly_text(coeffs)}",
        f"coefficients: {_fmt(coeffs)}",
    ]
    _emit(args, {"n": args.n, "coefficients": list(coeffs)}, lines)
    return 0


def _cmd_typea_lec(args) -> int:
    fact = hook_factorize(args.word)
    lines = [
        f"word: {_fmt_word(args.word)}",
        f"prefix: {_fmt_word(fact.prefix)}",
    ]
    for k, hook in enumerate(fact.hooks, start=1):
        lines.append(f"hook {k}: {_fmt_word(hook)}, inversions {inversions(hook)}")
    total = lec(args.word)
    lines.append(f"lec: {total}")
    payload = {
        "word": list(args.word),
        "prefix": list(fact.prefix),
        "hooks": [list(h) for h in fact.hooks],
        "lec": total,
    }
    _emit(args, payload, lines)
    return 0


def _cmd_typea_psi(args) -> int:
    if args.invert:
        if args.sigma:
            raise ValidationError("--invert takes only --forest, not a permutation")
        if args.forest is None:
            raise ValidationError("--invert requires --forest")
        forest = forest_from_text(args.forest)
        small, word = psi_inverse(forest)
        lines = [
            f"forest: {forest_to_text(forest)}",
            f"smaller forest: {forest_to_text(small)}",
            f"permutation: {_fmt_word(word)}",
        ]
        payload = {
            "forest": forest_to_text(forest),
            "smallerForest": forest_to_text(small),
            "permutation": list(word),
        }
        _emit(args, payload, lines)
        return 0
    if not args.sigma:
        raise ValidationError("a permutation of the components is required")
    if args.forest is None:
        forest = make_forest([TreeNode.leaf(i) for i in range(1, len(args.sigma) + 1)])
    else:
        forest = forest_from_text(args.forest)
    grown = psi(forest, args.sigma)
    lines = [
        f"forest: {forest_to_text(forest)}",
        f"permutation: {_fmt_word(args.sigma)}",
        f"result: {forest_to_text(grown)}",
        f"degree: {forest.degree} + {lec(args.sigma)} = {grown.degree}",
    ]
    payload = {
        "forest": forest_to_text(forest),
        "permutation": list(args.sigma),
        "result": forest_to_text(grown),
        "degree": grown.degree,
    }
    _emit(args, payload, lines)
    return 0


def _cmd_typea_verify(args) -> int:
    order = args.order
    recurrence = verify_lambda_recurrence(order)
    identity = verify_main_identity(order)
    stat_order = min(order, 8)
    equidistributed = lec_series(stat_order) == eulerian_series(stat_order)
    checks = [
        (f"tree-series recurrence through t^{order}", recurrence),
        (f"statistic composite identity through t^{order}", identity),
        (f"hook/descent equidistribution through t^{stat_order}", equidistributed),
    ]
    lines = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in checks]
    payload = {"order": order, "checks": {name: ok for name, ok in checks}}
    _emit(args, payload, lines)
    return 0 if all(ok for _, ok in checks) else 4


def reproduction_text(example_id: str) -> str:
    """Deterministic end-to-end report for a bundled example."""
    if example_id not in EXAMPLES:
        raise ValidationError(
            f"unknown example {example_id!r}; choose from {sorted(EXAMPLES)}"
        )
    arr_name, fan_name = EXAMPLES[example_id]
    arr = load_arrangement(fixture_path(arr_name))
    fan = load_fan(fixture_path(fan_name))
    _check_dims(arr, fan)
    poset, building = _building_from(arr)
    lines = [f"example: {example_id}", "", "== fan =="]
    lines.extend(_fan_report(fan)[2])
    lines.extend(["", "== poset =="])
    lines.append(f"elements: {len(poset.elements)}")
    by_codim = Counter(el.rank for el in poset.elements)
    lines.append(
        "by codimension: "
        + ", ".join(f"{r}: {by_codim[r]}" for r in sorted(by_codim))
    )
    lines.extend(["", "== nested sets =="])
    lines.extend(_nested_report(building)[1])
    lines.extend(["", "== admissible functions =="])
    lines.extend(_admissible_report(building)[1])
    lines.extend(["", "== poincare =="])
    lines.extend(_poincare_report(building, fan, arr.equal_sign_bases, 8)[2])
    lines.extend(["", "== presentation =="])
    lines.extend(
        _presentation_report(building, fan, arr.equal_sign_bases, 8, "product", False)[1]
    )
    return "\n".join(lines) + "\n"


def _cmd_reproduce(args) -> int:
    text = reproduction_text(args.example)
    golden = fixture_path("golden") / f"{args.example}.txt"
    if args.update_golden:
        golden.write_text(text)
        print(f"wrote {golden}")
        return 0
    if not golden.exists():
        raise FileFormatError(f"no golden output bundled for {args.example!r}")
    recorded = golden.read_text()
    if text == recorded:
        print(f"{args.example}: reproduction matches the recorded output")
        return 0
    diff = difflib.unified_diff(
        recorded.splitlines(keepends=True),
        text.splitlines(keepends=True),
        fromfile="recorded",
        tofile="computed",
    )
    print("".join(diff), end="")
    return 1


def _add_output_flags(parser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="machine-readable output")
    group.add_argument(
        "--table", action="store_true", help="human-readable output (default)"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wondertoric",
        description=(
            "Combinatorial invariants of compactified toric arrangements: "
            "fans, layer posets, nested sets, graded bases, and the "
            "permutation statistics they encode."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fan = sub.add_parser("fan", help="fan file operations").add_subparsers(
        dest="sub", required=True
    )
    check = fan.add_parser("check", help="validate a fan and report invariants")
    check.add_argument("fanfile")
    _add_output_flags(check)
    check.set_defaults(handler=_cmd_fan_check)

    arr = sub.add_parser("arr", help="arrangement file operations").add_subparsers(
        dest="sub", required=True
    )
    poset = arr.add_parser("poset", help="poset of layers with cover relations")
    poset.add_argument("arrfile")
    _add_output_flags(poset)
    poset.set_defaults(handler=_cmd_arr_poset)
    good = arr.add_parser("goodness", help="equal-sign bases for every layer")
    good.add_argument("arrfile")
    good.add_argument("fanfile")
    good.add_argument("--bound", type=int, default=8, help="search bound")
    _add_output_flags(good)
    good.set_defaults(handler=_cmd_arr_goodness)

    model = sub.add_parser("model", help="compactified model computations")
    model_sub = model.add_subparsers(dest="sub", required=True)
    for what in ("nested", "admissible", "basis", "poincare"):
        p = model_sub.add_parser(what, help=f"enumerate {what}")
        p.add_argument("arrfile")
        p.add_argument("fanfile")
        p.add_argument("--bound", type=int, default=8, help="equal-sign search bound")
        _add_output_flags(p)
        p.set_defaults(handler=_cmd_model, what=what)
    pres = model_sub.add_parser("presentation", help="cohomology presentation dump")
    pres.add_argument("arrfile")
    pres.add_argument("fanfile")
    pres.add_argument("--bound", type=int, default=8, help="equal-sign search bound")
    pres.add_argument(
        "--variant",
        choices=("product", "power"),
        default="product",
        help="shape of the restriction factors in class (d)",
    )
    pres.add_argument(
        "--full", action="store_true", help="list every generator, not just counts"
    )
    _add_output_flags(pres)
    pres.set_defaults(handler=_cmd_model_presentation)

    typea = sub.add_parser("typea", help="permutation statistics and forests")
    typea_sub = typea.add_subparsers(dest="sub", required=True)
    eul = typea_sub.add_parser("eulerian", help="descent polynomial")
    eul.add_argument("n", type=int)
    _add_output_flags(eul)
    eul.set_defaults(handler=_cmd_typea_eulerian)
    lec_p = typea_sub.add_parser("lec", help="hook factorization and statistic")
    lec_p.add_argument("word", type=int, nargs="+")
    _add_output_flags(lec_p)
    lec_p.set_defaults(handler=_cmd_typea_lec)
    psi_p = typea_sub.add_parser("psi", help="leaf-insertion bijection")
    psi_p.add_argument("sigma", type=int, nargs="*")
    psi_p.add_argument("--forest", help="textual forest, e.g. '(q^1: 1, 2, 3); 4'")
    psi_p.add_argument(
        "--invert", action="store_true", help="recover (forest, permutation)"
    )
    _add_output_flags(psi_p)
    psi_p.set_defaults(handler=_cmd_typea_psi)
    ver = typea_sub.add_parser("verify", help="exact series identity checks")
    ver.add_argument("--order", type=int, default=8)
    _add_output_flags(ver)
    ver.set_defaults(handler=_cmd_typea_verify)

    rep = sub.add_parser("reproduce", help="re-run a bundled example and diff")
    rep.add_argument("example", choices=sorted(EXAMPLES))
    rep.add_argument(
        "--update-golden", action="store_true", help="rewrite the recorded output"
    )
    rep.set_defaults(handler=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        thread_count()
        return args.handler(args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MathAssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
