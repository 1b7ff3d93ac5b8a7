"""Cohomology presentation of a model: ray and member variables, generator
classes, and explicit monomial bases lifted from subfans.

Polynomials here are sparse integer maps from monomials to coefficients.  A
variable is ("C", i) for the divisor class of ray i or ("T", j) for the class
of building-set member j, both 0-based; rendering is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import MathAssertionError, ValidationError
from .fans import Fan, Subfan, all_cones, betti_numbers, equal_sign_basis, extend_equal_sign_basis
from .lattice import IntMatrix, Sublattice, smith_normal_form
from .layers import Layer, intersect
from .models import (
    AdmissibleFunction,
    BuildingSet,
    bases_by_lattice,
    enumerate_admissible,
    subfan_for_support,
)

Var = tuple[str, int]
Monomial = tuple[tuple[Var, int], ...]
PolyTerms = tuple[tuple[Monomial, int], ...]
Poly = dict[Monomial, int]


def poly_freeze(p: Poly) -> PolyTerms:
    return tuple(sorted(((m, c) for m, c in p.items() if c)))


def poly_var(v: Var, coeff: int = 1) -> Poly:
    return {((v, 1),): coeff} if coeff else {}


def poly_const(c: int) -> Poly:
    return {(): c} if c else {}


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        c2 = out.get(m, 0) + c
        if c2:
            out[m] = c2
        else:
            out.pop(m, None)
    return out


def poly_neg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps: dict[Var, int] = {}
    for v, e in m1 + m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            c = out.get(m, 0) + c1 * c2
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def mono_degree(m: Monomial, kind: str | None = None) -> int:
    return sum(e for v, e in m if kind is None or v[0] == kind)


def poly_degree(p: Poly, kind: str | None = None) -> int:
    return max((mono_degree(m, kind) for m in p), default=0)


def _var_label(v: Var) -> str:
    return f"{v[0]}{v[1] + 1}"


def render_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(
        _var_label(v) + (f"^{e}" if e > 1 else "") for v, e in m
    )


def _mono_flat(m: Monomial) -> tuple[Var, ...]:
    return tuple(v for v, e in m for _ in range(e))


def render_terms(terms: PolyTerms) -> str:
    """Deterministic human form, highest total degree first."""
    if not terms:
        return "0"
    ordered = sorted(terms, key=lambda mc: (-mono_degree(mc[0]), _mono_flat(mc[0])))
    pieces = []
    for m, c in ordered:
        mag = abs(c)
        if not m:
            body = str(mag)
        elif mag == 1:
            body = render_monomial(m)
        else:
            body = f"{mag}*{render_monomial(m)}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


def minimal_nonfaces(fan: Fan) -> tuple[tuple[int, ...], ...]:
    """Smallest ray sets spanning no cone; all proper subsets span one."""
    faces_by_size: dict[int, set[frozenset[int]]] = {}
    for cone in all_cones(fan):
        faces_by_size.setdefault(len(cone), set()).add(frozenset(cone))
    out = []
    n = fan.ambient_dim
    ray_count = len(fan.rays)
    for size in range(2, n + 2):
        smaller = faces_by_size.get(size - 1, set())
        found = set()
        for face in smaller:
            top = max(face)
            for r in range(top + 1, ray_count):
                cand = face | {r}
                if cand in found or cand in faces_by_size.get(size, set()):
                    continue
                if all(cand - {x} in smaller for x in cand):
                    found.add(cand)
        out.extend(sorted(tuple(sorted(c)) for c in found))
    return tuple(sorted(out, key=lambda t: (len(t), t)))


def character_linear_forms(fan: Fan) -> tuple[PolyTerms, ...]:
    """One linear relation per ambient coordinate: its pairing against every
    ray, as a form in the C variables."""
    out = []
    for j in range(fan.ambient_dim):
        form: Poly = {}
        for i, ray in enumerate(fan.rays):
            if ray[j]:
                form = poly_add(form, poly_var(("C", i), ray[j]))
        out.append(poly_freeze(form))
    return tuple(out)


def _face_monomials(fan: Fan, degree: int) -> tuple[tuple[int, ...], ...]:
    """Degree-k monomials in ray variables whose support spans a cone, as
    sorted ray-index tuples with repetition."""
    if degree == 0:
        return ((),)
    faces = sorted(
        {cone for cone in all_cones(fan) if 1 <= len(cone) <= degree}
    )
    out = []
    for face in faces:
        slots = len(face)
        for split in combinations(range(degree - 1), slots - 1):
            counts = []
            prev = -1
            for s in split + (degree - 1,):
                counts.append(s - prev)
                prev = s
            mono = []
            for ray, count in zip(face, counts):
                mono.extend([ray] * count)
            out.append(tuple(mono))
    return tuple(sorted(out))


def _relation_rows(
    fan: Fan, degree: int, cols: dict[tuple[int, ...], int]
) -> list[tuple[int, ...]]:
    faces = {frozenset(c) for c in all_cones(fan)}
    rows = []
    for mono in _face_monomials(fan, degree - 1):
        support = frozenset(mono)
        for j in range(fan.ambient_dim):
            row = [0] * len(cols)
            nonzero = False
            for i, ray in enumerate(fan.rays):
                c = ray[j]
                if not c or support | {i} not in faces:
                    continue
                key = tuple(sorted(mono + (i,)))
                row[cols[key]] += c
                nonzero = True
            if nonzero:
                rows.append(tuple(row))
    return rows


def _stack_is_split(rows: list[tuple[int, ...]], expected_rank: int) -> bool:
    if not rows:
        return expected_rank == 0
    sf = smith_normal_form(tuple(rows))
    return sf.rank == expected_rank and all(d == 1 for d in sf.diagonal if d)


def cohomology_basis_monomials(
    fan: Fan,
) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Per degree, monomials in ray indices whose classes form a Z-basis of
    the fan's even cohomology; the first admissible choice in sorted monomial
    order is taken, so output is deterministic."""
    betti = betti_numbers(fan)
    out: list[tuple[tuple[int, ...], ...]] = []
    for degree, rank_needed in enumerate(betti):
        if degree == 0:
            out.append(((),))
            continue
        monomials = _face_monomials(fan, degree)
        cols = {m: i for i, m in enumerate(monomials)}
        relations = _relation_rows(fan, degree, cols)
        base_rank = (
            smith_normal_form(tuple(relations)).rank if relations else 0
        )
        if len(cols) - base_rank != rank_needed:
            raise MathAssertionError(
                "relation rank disagrees with the Betti number"
            )
        chosen: list[tuple[int, ...]] = []
        chosen_rows: list[tuple[int, ...]] = []
        for mono in monomials:
            if len(chosen) == rank_needed:
                break
            indicator = tuple(
                1 if i == cols[mono] else 0 for i in range(len(cols))
            )
            stack = relations + chosen_rows + [indicator]
            if _stack_is_split(stack, base_rank + len(chosen) + 1):
                chosen.append(mono)
                chosen_rows.append(indicator)
        if len(chosen) != rank_needed:
            raise MathAssertionError(
                f"no split monomial basis found in degree {degree}"
            )
        out.append(tuple(chosen))
    return tuple(out)


def subfan_basis_in_parent_labels(
    sub: Subfan,
) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Monomial basis of the subfan cohomology, each monomial a sorted tuple
    of parent ray indices with repetition."""
    order = sorted(range(len(sub.fan.rays)), key=lambda i: sub.parent_rays[i])
    rays = tuple(sub.fan.rays[i] for i in order)
    back = {old: new for new, old in enumerate(order)}
    cones = tuple(
        tuple(sorted(back[i] for i in cone)) for cone in sub.fan.maximal_cones
    )
    relabeled = Fan.make(sub.fan.ambient_dim, rays, cones)
    parents = tuple(sub.parent_rays[i] for i in order)
    basis = cohomology_basis_monomials(relabeled)
    return tuple(
        tuple(tuple(parents[i] for i in mono) for mono in level)
        for level in basis
    )


@dataclass(frozen=True)
class BasisElement:
    """One graded basis element: an admissible function together with a
    lifted subfan monomial.

    `monomial` is None for classes of the ambient fan left unexpanded (the
    empty support); `cohomology_degree` always records the lift degree."""

    function: AdmissibleFunction
    monomial: tuple[int, ...] | None
    cohomology_degree: int

    @property
    def degree(self) -> int:
        return self.function.degree + self.cohomology_degree


@dataclass(frozen=True)
class ModelBasis:
    elements: tuple[BasisElement, ...]

    def graded_counts(self, length: int) -> tuple[int, ...]:
        out = [0] * length
        for el in self.elements:
            out[el.degree] += 1
        return tuple(out)


def monomial_basis(
    building: BuildingSet,
    fan: Fan,
    supplied_bases=(),
    bound: int = 8,
    expand_ambient: bool = False,
) -> ModelBasis:
    """Explicit graded basis: every admissible function paired with every
    lifted basis monomial of its support's subfan.

    The empty support contributes one element per ambient cohomology class;
    those stay symbolic unless `expand_ambient` forces an explicit monomial
    basis of the whole fan (feasible for small fans only)."""
    bases = bases_by_lattice(supplied_bases, building.torus_dim)
    lift_cache: dict[tuple[int, ...], tuple[tuple[tuple[int, ...], ...] | None, ...]] = {}
    elements = []
    for f in enumerate_admissible(building):
        if f.support not in lift_cache:
            if f.support == () and not expand_ambient:
                lift_cache[()] = tuple(
                    (None,) * count for count in betti_numbers(fan)
                )
            else:
                sub = subfan_for_support(building, fan, f.support, bases, bound)
                lift_cache[f.support] = subfan_basis_in_parent_labels(sub)
        for deg, level in enumerate(lift_cache[f.support]):
            for mono in level:
                elements.append(BasisElement(f, mono, deg))
    elements.sort(
        key=lambda el: (
            el.degree,
            el.function.support,
            el.function.values,
            el.cohomology_degree,
            el.monomial if el.monomial is not None else (),
        )
    )
    return ModelBasis(tuple(elements))


@dataclass(frozen=True)
class MemberRelation:
    """Generator tied to a member and a set of strictly larger members."""

    member: int
    above: tuple[int, ...]
    terms: PolyTerms


@dataclass(frozen=True)
class PresentationIdeal:
    """Generators of the model's cohomology presentation, by class."""

    ray_count: int
    member_count: int
    nonface_monomials: tuple[tuple[int, ...], ...]
    linear_forms: tuple[PolyTerms, ...]
    ray_member_products: tuple[tuple[int, int], ...]
    member_relations: tuple[MemberRelation, ...]
    empty_intersection_products: tuple[tuple[int, ...], ...]
    variant: str

    @property
    def variable_count(self) -> int:
        return self.ray_count + self.member_count

    def class_sizes(self) -> tuple[int, int, int, int, int]:
        return (
            len(self.nonface_monomials),
            len(self.linear_forms),
            len(self.ray_member_products),
            len(self.member_relations),
            len(self.empty_intersection_products),
        )


def _direction_form(chi, rays) -> Poly:
    """Sum of min(0, pairing) C_r over all rays, for one character."""
    form: Poly = {}
    for i, ray in enumerate(rays):
        val = sum(c * x for c, x in zip(chi, ray))
        if val < 0:
            form = poly_add(form, poly_var(("C", i), val))
    return form


def _restriction_factors(
    z: Poly, chars: IntMatrix, rays, variant: str
) -> Poly:
    if variant == "product":
        acc = poly_const(1)
        for chi in chars:
            acc = poly_mul(acc, poly_add(z, poly_neg(_direction_form(chi, rays))))
        return acc
    if variant == "power":
        power = poly_const(1)
        for _ in chars:
            power = poly_mul(power, z)
        prod = poly_const(1)
        for chi in chars:
            prod = poly_mul(prod, poly_neg(_direction_form(chi, rays)))
        return poly_add(power, prod) if chars else poly_const(1)
    raise ValidationError(f"unknown restriction variant {variant!r}")


def emit_presentation(
    building: BuildingSet,
    fan: Fan,
    supplied_bases=(),
    bound: int = 8,
    variant: str = "product",
) -> PresentationIdeal:
    """All generator classes of the cohomology presentation.

    Class list: (a) square-free non-face monomials, (b) one linear form per
    ambient coordinate, (c) C_r T_G for rays outside the member's span,
    (d) one relation per (member, set of strictly larger members), with the
    product expanded over an equal-sign basis extension, (e) products over
    member sets with empty total intersection.
    """
    if fan.ambient_dim != building.torus_dim:
        raise ValidationError("fan and arrangement dimensions differ")
    members = building.members
    m = len(members)
    bases = bases_by_lattice(supplied_bases, building.torus_dim)

    def basis_rows(lat: Sublattice) -> IntMatrix:
        if lat not in bases:
            rows = equal_sign_basis(fan, lat, bound)
            if rows is None:
                raise ValidationError(
                    "missing equal-sign basis for a member lattice"
                )
            bases[lat] = rows
        return bases[lat]

    nonfaces = minimal_nonfaces(fan)
    linear = character_linear_forms(fan)

    ray_products = []
    for g, layer in enumerate(members):
        for i, ray in enumerate(fan.rays):
            if any(
                sum(c * x for c, x in zip(chi, ray)) for chi in layer.gamma.basis
            ):
                ray_products.append((i, g))

    strictly_above = [
        tuple(
            h
            for h in range(m)
            if h != g and members[h].contains(members[g])
        )
        for g in range(m)
    ]
    below_or_equal = [
        tuple(h for h in range(m) if members[g].contains(members[h]))
        for g in range(m)
    ]

    relations = []
    char_cache: dict[tuple[int, Layer], IntMatrix] = {}
    for g in range(m):
        z: Poly = {}
        for h in below_or_equal[g]:
            z = poly_add(z, poly_var(("T", h), -1))
        for size in range(len(strictly_above[g]) + 1):
            for above in combinations(strictly_above[g], size):
                if above:
                    comps = _member_intersection(members, above)
                    containing = [
                        c for c in comps if c.contains(members[g])
                    ]
                    if len(containing) != 1:
                        raise MathAssertionError(
                            "enclosing intersection component is not unique"
                        )
                    enclosing = containing[0]
                else:
                    enclosing = Layer.torus(building.torus_dim)
                chars = char_cache.get((g, enclosing))
                if chars is None:
                    inner = basis_rows(enclosing.gamma)
                    full = extend_equal_sign_basis(
                        fan, members[g].gamma, inner, bound
                    )
                    if full is None:
                        raise ValidationError(
                            "missing equal-sign extension for a member pair"
                        )
                    chars = full[len(inner):]
                    char_cache[(g, enclosing)] = chars
                poly = _restriction_factors(z, chars, fan.rays, variant)
                for h in above:
                    poly = poly_mul(poly, poly_var(("T", h)))
                expected = (members[g].rank - enclosing.rank) + len(above)
                if poly_degree(poly, "T") != expected:
                    raise MathAssertionError(
                        "member relation has unexpected degree"
                    )
                relations.append(
                    MemberRelation(g, above, poly_freeze(poly))
                )

    empties = []
    for size in range(2, m + 1):
        for subset in combinations(range(m), size):
            if not _member_intersection(members, subset):
                empties.append(subset)

    return PresentationIdeal(
        ray_count=len(fan.rays),
        member_count=m,
        nonface_monomials=nonfaces,
        linear_forms=linear,
        ray_member_products=tuple(ray_products),
        member_relations=tuple(relations),
        empty_intersection_products=tuple(empties),
        variant=variant,
    )


@lru_cache(maxsize=None)
def _member_intersection(
    members: tuple[Layer, ...], subset: tuple[int, ...]
) -> tuple[Layer, ...]:
    if not subset:
        return (Layer.torus(members[0].ambient_rank),)
    comps = _member_intersection(members, subset[:-1])
    last = members[subset[-1]]
    return tuple(out for c in comps for out in intersect(c, last))
