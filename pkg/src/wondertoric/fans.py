"""Simplicial rational fans: validation, face counts, Betti numbers, subfans.

A fan is stored as primitive integer rays plus maximal cones given by 0-based
ray index tuples.  All fans in this package are simplicial; smoothness and
completeness are checked, not assumed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb

from .errors import MathAssertionError, ValidationError
from .lattice import (
    IntMatrix,
    Sublattice,
    dot,
    express_in_rows,
    is_primitive,
    smith_normal_form,
    vector_gcd,
)


@dataclass(frozen=True)
class Fan:
    ambient_dim: int
    rays: tuple[tuple[int, ...], ...]
    maximal_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise ValidationError("ambient dimension must be nonnegative")
        for ray in self.rays:
            if len(ray) != self.ambient_dim:
                raise ValidationError("ray length differs from ambient dimension")
        for cone in self.maximal_cones:
            if list(cone) != sorted(set(cone)):
                raise ValidationError("cone indices must be strictly increasing")
            for i in cone:
                if not 0 <= i < len(self.rays):
                    raise ValidationError(f"ray index {i} out of range")

    @classmethod
    def make(cls, ambient_dim, rays, maximal_cones) -> Fan:
        """Build a fan, canonicalizing cone order (ray order is preserved:
        ray indices are meaningful labels)."""
        cones = sorted(set(tuple(sorted(set(c))) for c in maximal_cones))
        return cls(
            ambient_dim,
            tuple(tuple(int(x) for x in r) for r in rays),
            tuple(cones),
        )


@dataclass(frozen=True)
class FanReport:
    simplicial: bool
    smooth: bool
    complete: bool
    f_vector: tuple[int, ...]


@lru_cache(maxsize=None)
def all_cones(fan: Fan) -> frozenset[tuple[int, ...]]:
    """Every face of every maximal cone, as sorted ray index tuples.

    Includes the zero cone ().  Requires the fan to be simplicial so that
    faces are exactly the subsets of each maximal cone's ray set.
    """
    if not _simplicial(fan):
        raise ValidationError("fan is not simplicial; face lattice unsupported")
    faces: set[tuple[int, ...]] = set()
    for cone in fan.maximal_cones:
        for k in range(len(cone) + 1):
            faces.update(combinations(cone, k))
    return frozenset(faces)


@lru_cache(maxsize=None)
def _simplicial(fan: Fan) -> bool:
    for cone in fan.maximal_cones:
        rows = [fan.rays[i] for i in cone]
        if rows and smith_normal_form(rows).rank != len(cone):
            return False
    return True


@lru_cache(maxsize=None)
def _smooth(fan: Fan) -> bool:
    for cone in fan.maximal_cones:
        rows = [fan.rays[i] for i in cone]
        if rows:
            snf = smith_normal_form(rows)
            if snf.rank != len(cone) or any(d != 1 for d in snf.diagonal[: len(cone)]):
                return False
    return True


@lru_cache(maxsize=None)
def _complete(fan: Fan) -> bool:
    n = fan.ambient_dim
    if n == 0:
        return fan.maximal_cones == ((),)
    if not _simplicial(fan):
        return False
    if any(len(c) != n for c in fan.maximal_cones):
        return False
    ridges = Counter()
    for cone in fan.maximal_cones:
        for ridge in combinations(cone, n - 1):
            ridges[ridge] += 1
    if any(count != 2 for count in ridges.values()):
        return False
    # dual graph connectivity
    neighbors: dict[tuple[int, ...], list[int]] = {}
    for idx, cone in enumerate(fan.maximal_cones):
        for ridge in combinations(cone, n - 1):
            neighbors.setdefault(ridge, []).append(idx)
    seen = {0}
    stack = [0]
    while stack:
        cur = stack.pop()
        for ridge in combinations(fan.maximal_cones[cur], n - 1):
            for other in neighbors[ridge]:
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
    return len(seen) == len(fan.maximal_cones)


def validate(fan: Fan) -> FanReport:
    """Structural checks plus a smooth/complete/f-vector report.

    Raises ValidationError for non-primitive rays, duplicate rays, or rays
    that no maximal cone uses.  Smoothness and completeness are reported, not
    required.
    """
    for i, ray in enumerate(fan.rays):
        if not is_primitive(ray):
            raise ValidationError(
                f"ray {i} = {ray} is not primitive (gcd {vector_gcd(ray)})"
            )
    if len(set(fan.rays)) != len(fan.rays):
        raise ValidationError("duplicate rays")
    used = set()
    for cone in fan.maximal_cones:
        used.update(cone)
    missing = sorted(set(range(len(fan.rays))) - used)
    if missing:
        raise ValidationError(f"rays {missing} are not used by any maximal cone")
    return FanReport(
        simplicial=_simplicial(fan),
        smooth=_smooth(fan),
        complete=_complete(fan),
        f_vector=f_vector(fan),
    )


def f_vector(fan: Fan) -> tuple[int, ...]:
    """(f_0, f_1, ..., f_d): number of cones of each dimension, f_0 = 1."""
    counts = Counter(len(c) for c in all_cones(fan))
    top = max(counts) if counts else 0
    return tuple(counts.get(k, 0) for k in range(top + 1))


@lru_cache(maxsize=None)
def betti_numbers(fan: Fan) -> tuple[int, ...]:
    """Even Betti numbers (b_0, b_2, ..., b_2n) of the smooth complete toric
    variety of the fan; odd ones vanish."""
    if not _smooth(fan):
        raise ValidationError("Betti numbers require a smooth fan")
    if not _complete(fan):
        raise ValidationError("Betti numbers require a complete fan")
    n = fan.ambient_dim
    f = f_vector(fan)
    f = f + (0,) * (n + 1 - len(f))
    betti = tuple(
        sum((-1) ** (i - k) * comb(i, k) * f[n - i] for i in range(k, n + 1))
        for k in range(n + 1)
    )
    if sum(betti) != f[n]:
        raise MathAssertionError("Betti numbers do not sum to the top face count")
    if betti != betti[::-1]:
        raise MathAssertionError(f"Betti numbers {betti} are not palindromic")
    return betti


def pairings(fan: Fan, chi, cone) -> tuple[int, ...]:
    """<chi, r> for each ray r of the given cone (cone = ray index tuple)."""
    return tuple(dot(chi, fan.rays[i]) for i in cone)


def equal_sign_holds(fan: Fan, chi) -> bool:
    """True if on every maximal cone the pairings of chi with the cone's rays
    are all >= 0 or all <= 0."""
    values = [dot(chi, r) for r in fan.rays]
    for cone in fan.maximal_cones:
        pos = neg = False
        for i in cone:
            if values[i] > 0:
                pos = True
            elif values[i] < 0:
                neg = True
        if pos and neg:
            return False
    return True


@lru_cache(maxsize=None)
def _equal_sign_level(fan: Fan, basis: IntMatrix, height: int):
    """Equal-sign integer combinations of the basis rows whose primitive
    coefficient vectors have max |entry| exactly `height` (one sign
    representative each), with ray pairings checked incrementally."""
    s = len(basis)
    ray_values = [tuple(dot(row, r) for r in fan.rays) for row in basis]
    out = []
    for coeffs in _coeff_vectors(s, height):
        if vector_gcd(coeffs) != 1:
            continue
        values = [
            sum(coeffs[i] * ray_values[i][j] for i in range(s))
            for j in range(len(fan.rays))
        ]
        ok = True
        for cone in fan.maximal_cones:
            pos = neg = False
            for i in cone:
                if values[i] > 0:
                    pos = True
                elif values[i] < 0:
                    neg = True
            if pos and neg:
                ok = False
                break
        if ok:
            chi = tuple(
                sum(coeffs[i] * basis[i][j] for i in range(s))
                for j in range(len(basis[0]))
            )
            out.append((coeffs, chi))
    return tuple(out)


def _coeff_vectors(s: int, height: int):
    """Coefficient vectors with max |entry| exactly `height`, first nonzero
    entry positive, in lexicographic order."""

    def rec(prefix, seen_height, seen_nonzero):
        if len(prefix) == s:
            if seen_height:
                yield tuple(prefix)
            return
        for v in range(-height, height + 1):
            if not seen_nonzero and v < 0:
                continue
            yield from rec(
                prefix + [v],
                seen_height or abs(v) == height,
                seen_nonzero or v != 0,
            )

    yield from rec([], False, False)


def _extends_to_unimodular(rows: list[tuple[int, ...]]) -> bool:
    snf = smith_normal_form(rows)
    return snf.rank == len(rows) and all(d == 1 for d in snf.diagonal[: len(rows)])


def extend_equal_sign_basis(
    fan: Fan,
    outer: Sublattice,
    inner_rows: IntMatrix = (),
    bound: int = 8,
) -> IntMatrix | None:
    """Ordered basis of `outer` whose first vectors are `inner_rows` and whose
    members all satisfy the equal-sign condition on `fan`.

    Searches integer combinations of the canonical basis of `outer` with
    coefficient height up to `bound`, backtracking with a split test so every
    prefix still extends to a basis.  Returns None when the search space is
    exhausted.  `inner_rows` are trusted to be equal-sign and part of a basis
    of `outer`; pass () to search from scratch.
    """
    s = outer.rank
    coeff_rows = [outer.coordinates_of(v) for v in inner_rows]
    if coeff_rows and not _extends_to_unimodular(coeff_rows):
        raise ValidationError("inner vectors do not split off in the outer lattice")

    pool: list = []

    def search(start: int, chosen_coeffs, chosen) -> IntMatrix | None:
        if len(chosen) == s:
            return tuple(chosen)
        for idx in range(start, len(pool)):
            coeffs, chi = pool[idx]
            if _extends_to_unimodular(chosen_coeffs + [coeffs]):
                found = search(
                    idx + 1, chosen_coeffs + [coeffs], chosen + [chi]
                )
                if found is not None:
                    return found
        return None

    # grow the candidate pool one coefficient height at a time so easy
    # lattices never pay for the full bound
    for height in range(1, bound + 1):
        level = _equal_sign_level(fan, outer.basis, height)
        pool.extend(level)
        if len(pool) + len(coeff_rows) < s or (height > 1 and not level):
            continue
        found = search(0, list(coeff_rows), list(inner_rows))
        if found is not None:
            return found
    return None


def equal_sign_basis(fan: Fan, lat: Sublattice, bound: int = 8) -> IntMatrix | None:
    """Basis of `lat` all of whose members are equal-sign on `fan`, found by
    bounded search; None if none exists within the bound."""
    if lat.rank == 0:
        return ()
    # cheap path: the canonical basis often works as-is
    if _extends_to_unimodular(list(lat.basis)) and all(
        equal_sign_holds(fan, row) for row in lat.basis
    ):
        return lat.basis
    return extend_equal_sign_basis(fan, lat, (), bound)


@dataclass(frozen=True)
class Subfan:
    """Fan induced on the subspace orthogonal to a character sublattice.

    `fan` lives in coordinates of `kernel_basis` (rows, in parent
    coordinates); `parent_rays[i]` is the parent index of ray i.
    """

    fan: Fan
    parent_rays: tuple[int, ...]
    kernel_basis: IntMatrix
    basis_used: IntMatrix


def subfan(fan: Fan, gamma: Sublattice, equal_sign_rows: IntMatrix | None = None,
           bound: int = 8) -> Subfan:
    """Restrict `fan` to the faces lying in the annihilator of `gamma`.

    Requires `gamma` split in Z^n and an equal-sign basis of `gamma` (faces
    then meet the annihilator in faces).  Supply `equal_sign_rows` to skip the
    bounded search for one.
    """
    if gamma.ambient_rank != fan.ambient_dim:
        raise ValidationError("character lattice has wrong ambient rank")
    if not gamma.is_split_summand():
        raise ValidationError("character lattice is not a split summand")
    if equal_sign_rows is None:
        rows = equal_sign_basis(fan, gamma, bound)
        if rows is None:
            raise ValidationError(
                f"no equal-sign basis found within coefficient height {bound}"
            )
    else:
        rows = tuple(tuple(int(x) for x in r) for r in equal_sign_rows)
        if Sublattice.from_rows(gamma.ambient_rank, rows) != gamma:
            raise ValidationError("supplied rows do not generate the lattice")
        if not _extends_to_unimodular(list(rows)):
            raise ValidationError("supplied rows are not a basis")
        for chi in rows:
            if not equal_sign_holds(fan, chi):
                raise ValidationError(f"character {chi} violates the equal-sign condition")

    kernel = gamma.kernel_lattice()
    m = kernel.rank
    flagged = [
        i
        for i, ray in enumerate(fan.rays)
        if all(dot(g, ray) == 0 for g in gamma.basis)
    ]
    flag_set = set(flagged)
    new_rays = []
    for i in flagged:
        coords = express_in_rows(kernel.basis, fan.ambient_dim, fan.rays[i])
        if coords is None:
            raise MathAssertionError("ray in annihilator missed the kernel lattice")
        if not is_primitive(coords):
            raise MathAssertionError("restricted ray lost primitivity")
        new_rays.append(coords)
    reindex = {old: new for new, old in enumerate(flagged)}
    kept = set()
    for cone in fan.maximal_cones:
        kept.add(tuple(i for i in cone if i in flag_set))
    maximal = [
        c for c in kept if not any(c != d and set(c) <= set(d) for d in kept)
    ]
    new_cones = [tuple(reindex[i] for i in c) for c in maximal]
    sub = Fan.make(m, new_rays, new_cones)
    return Subfan(
        fan=sub,
        parent_rays=tuple(flagged),
        kernel_basis=kernel.basis,
        basis_used=rows,
    )


def weyl_fan_A(n: int) -> Fan:
    """Complete smooth fan in Z^(n-1) whose maximal cones are indexed by
    permutations of {1,...,n} and whose rays are indexed by proper nonempty
    subsets S, with ray coordinates (chi_S(i) - chi_S(n))_{i<n}."""
    if n < 1:
        raise ValidationError("n must be at least 1")
    if n == 1:
        return Fan.make(0, (), ((),))
    subsets = []
    for size in range(1, n):
        subsets.extend(
            frozenset(c) for c in combinations(range(1, n + 1), size)
        )
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    index = {s: i for i, s in enumerate(subsets)}

    def ray_of(s: frozenset) -> tuple[int, ...]:
        shift = 1 if n in s else 0
        return tuple((1 if i in s else 0) - shift for i in range(1, n))

    cones = []
    for perm in permutations(range(1, n + 1)):
        chain = [frozenset(perm[:k]) for k in range(1, n)]
        cones.append(tuple(index[s] for s in chain))
    return Fan.make(n - 1, [ray_of(s) for s in subsets], cones)


def orthant_fan(n: int) -> Fan:
    """Fan of a product of n projective lines: rays ±e_i, cones the orthants."""
    if n < 1:
        raise ValidationError("n must be at least 1")
    rays = []
    for i in range(n):
        for sign in (1, -1):
            rays.append(tuple(sign * int(j == i) for j in range(n)))
    cones = [
        tuple(sorted(2 * i + s for i, s in enumerate(signs)))
        for signs in product((0, 1), repeat=n)
    ]
    return Fan.make(n, rays, cones)
