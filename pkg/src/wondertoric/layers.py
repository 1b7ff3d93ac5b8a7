"""Layers of a toric arrangement and their intersection poset.

A layer is the solution set of chi(t) = e^(2 pi i phi(chi)) for chi in a split
character sublattice Gamma and phi: Gamma -> Q/Z.  Split Gamma makes the layer
a nonempty connected translate of a subtorus.  Intersections of layers split
into finitely many such components; enumerating them is exact Smith-form
arithmetic on the character data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import MathAssertionError, ValidationError
from .fans import Fan, equal_sign_basis, equal_sign_holds, extend_equal_sign_basis
from .lattice import (
    IntMatrix,
    Sublattice,
    express_in_rows,
    smith_normal_form,
)


def mod1(x: Fraction | int) -> Fraction:
    """Representative of x in [0, 1)."""
    f = Fraction(x)
    return f - (f.numerator // f.denominator)


@dataclass(frozen=True)
class Layer:
    """Connected layer: canonical (Hermite) basis of Gamma plus the character
    value at each basis row.  Equal layers compare equal structurally."""

    gamma: Sublattice
    phi: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.gamma.is_split_summand():
            raise ValidationError(
                "layer character lattice must be a split summand"
            )
        if len(self.phi) != self.gamma.rank:
            raise ValidationError("one character value per basis row required")
        for v in self.phi:
            if not isinstance(v, Fraction) or not 0 <= v < 1:
                raise ValidationError("character values must be Fractions in [0,1)")

    @classmethod
    def from_generators(
        cls,
        ambient_rank: int,
        rows: Sequence[Sequence[int]],
        values: Sequence[Fraction | int | str],
    ) -> Layer:
        """Layer from arbitrary generators with their character values.

        The values must be consistent on every integer relation among the
        generators; the stored phi is re-expressed on the canonical basis.
        """
        if len(rows) != len(values):
            raise ValidationError("one character value per generator required")
        vals = [mod1(Fraction(v)) for v in values]
        gamma = Sublattice.from_rows(ambient_rank, rows)
        frozen = tuple(tuple(int(x) for x in r) for r in rows)
        _check_consistency(frozen, vals)
        phi = []
        for b in gamma.basis:
            coeffs = express_in_rows(frozen, ambient_rank, b)
            if coeffs is None:
                raise MathAssertionError("basis row escaped the generator lattice")
            phi.append(mod1(sum(Fraction(c) * v for c, v in zip(coeffs, vals))))
        return cls(gamma, tuple(phi))

    @classmethod
    def torus(cls, ambient_rank: int) -> Layer:
        return cls(Sublattice.zero(ambient_rank), ())

    @property
    def ambient_rank(self) -> int:
        return self.gamma.ambient_rank

    @property
    def rank(self) -> int:
        return self.gamma.rank

    @property
    def dim(self) -> int:
        return self.ambient_rank - self.rank

    def value_on(self, v: Sequence[int]) -> Fraction:
        """phi at a vector of Gamma."""
        coeffs = self.gamma.coordinates_of(v)
        return mod1(sum(Fraction(c) * p for c, p in zip(coeffs, self.phi)))

    def contains(self, other: Layer) -> bool:
        """True if this layer contains `other` as a subvariety (so this
        layer's equations are among the other's)."""
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient ranks differ")
        for g, val in zip(self.gamma.basis, self.phi):
            if not other.gamma.contains_vector(g) or other.value_on(g) != val:
                return False
        return True

    def sort_key(self):
        return (self.rank, self.gamma.basis, self.phi)


def _check_consistency(rows: IntMatrix, vals: list[Fraction]) -> None:
    """Every integer relation among the rows must kill the values mod 1."""
    if not rows:
        return
    snf = smith_normal_form(rows)
    for i in range(snf.rank, len(rows)):
        rel = snf.left[i]
        if mod1(sum(Fraction(c) * v for c, v in zip(rel, vals))) != 0:
            raise ValidationError(
                "character values are inconsistent on a relation among generators"
            )


def intersect(a: Layer, b: Layer) -> tuple[Layer, ...]:
    """Connected components of the intersection of two layers, canonically
    ordered; () when the intersection is empty."""
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient ranks differ")
    n = a.ambient_rank
    rows = a.gamma.basis + b.gamma.basis
    vals = list(a.phi) + list(b.phi)
    joined = Sublattice.from_rows(n, rows)
    sat = joined.saturation()
    # express each generator in the saturation's basis
    coeff_rows = tuple(sat.coordinates_of(r) for r in rows)
    if not coeff_rows:
        return (Layer.torus(n),)
    snf = smith_normal_form(coeff_rows)
    lv = [
        mod1(sum(Fraction(c) * v for c, v in zip(snf.left[i], vals)))
        for i in range(len(rows))
    ]
    r = sat.rank
    # rows of the diagonal beyond its rank are relations: values must vanish
    for i in range(len(rows)):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d == 0 and lv[i] != 0:
            return ()
    if snf.rank != r:
        raise MathAssertionError("saturation changed the rank")
    components = []
    for choice in _torsion_choices(snf.diagonal[:r], lv[:r]):
        y = [
            mod1(sum(Fraction(snf.right[j][i]) * choice[i] for i in range(r)))
            for j in range(r)
        ]
        components.append(Layer(sat, tuple(y)))
    components.sort(key=Layer.sort_key)
    return tuple(components)


def _torsion_choices(diag, values):
    """All z with diag[i] * z[i] = values[i] mod 1, one layer per solution."""
    if not diag:
        yield ()
        return
    d = diag[0]
    head = values[0]
    for t in range(d):
        z0 = Fraction(head + t, d)
        for rest in _torsion_choices(diag[1:], values[1:]):
            yield (z0,) + rest


@dataclass(frozen=True)
class LayerPoset:
    """All connected components of intersections of an arrangement's layers,
    closed under pairwise intersection, with containment precomputed."""

    torus_dim: int
    elements: tuple[Layer, ...]
    contains_matrix: tuple[tuple[bool, ...], ...]

    def index(self, layer: Layer) -> int:
        return self.elements.index(layer)

    def contains(self, i: int, j: int) -> bool:
        """elements[i] contains elements[j] as a subvariety."""
        return self.contains_matrix[i][j]

    @property
    def torus_index(self) -> int:
        return self.index(Layer.torus(self.torus_dim))

    def covers(self) -> tuple[tuple[int, int], ...]:
        """Pairs (i, j): elements[i] covers elements[j] under containment,
        i.e. i properly contains j with nothing strictly between."""
        out = []
        m = len(self.elements)
        for i in range(m):
            for j in range(m):
                if i == j or not self.contains(i, j):
                    continue
                if any(
                    k not in (i, j) and self.contains(i, k) and self.contains(k, j)
                    for k in range(m)
                ):
                    continue
                out.append((i, j))
        return tuple(out)


def poset_of_layers(torus_dim: int, layers: Sequence[Layer]) -> LayerPoset:
    """Close the arrangement under pairwise component-wise intersection."""
    for layer in layers:
        if layer.ambient_rank != torus_dim:
            raise ValidationError("layer ambient rank differs from torus dimension")
    elements: set[Layer] = {Layer.torus(torus_dim)}
    elements.update(layers)
    frontier = list(elements)
    while frontier:
        cur = frontier.pop()
        for other in list(elements):
            for comp in intersect(cur, other):
                if comp not in elements:
                    elements.add(comp)
                    frontier.append(comp)
    ordered = tuple(sorted(elements, key=Layer.sort_key))
    matrix = tuple(
        tuple(x.contains(y) for y in ordered) for x in ordered
    )
    return LayerPoset(torus_dim, ordered, matrix)


@dataclass(frozen=True)
class GoodnessReport:
    ok: bool
    bases: tuple[tuple[Sublattice, IntMatrix], ...]
    failures: tuple[Sublattice, ...]


def goodness_check(
    fan: Fan,
    poset: LayerPoset,
    bound: int = 8,
    supplied_bases: Sequence[IntMatrix] = (),
) -> GoodnessReport:
    """Check the fan is good for the arrangement: every layer's character
    lattice has an equal-sign basis.  Supplied bases are verified and used
    before searching."""
    if fan.ambient_dim != poset.torus_dim:
        raise ValidationError("fan and arrangement dimensions differ")
    supplied: dict[Sublattice, IntMatrix] = {}
    for rows in supplied_bases:
        frozen = tuple(tuple(int(x) for x in r) for r in rows)
        lat = Sublattice.from_rows(fan.ambient_dim, frozen)
        if len(frozen) != lat.rank:
            raise ValidationError("supplied equal-sign rows are not a basis")
        bad = [chi for chi in frozen if not equal_sign_holds(fan, chi)]
        if bad:
            raise ValidationError(
                f"supplied basis row {bad[0]} violates the equal-sign condition"
            )
        supplied[lat] = frozen
    bases = []
    failures = []
    for lat in sorted(
        {el.gamma for el in poset.elements}, key=lambda g: (g.rank, g.basis)
    ):
        if lat.rank == 0:
            continue
        rows = supplied.get(lat)
        if rows is None:
            rows = equal_sign_basis(fan, lat, bound)
        if rows is None:
            failures.append(lat)
        else:
            bases.append((lat, rows))
    return GoodnessReport(
        ok=not failures, bases=tuple(bases), failures=tuple(failures)
    )


def extend_basis_equal_sign(
    fan: Fan,
    inner: Layer,
    outer: Layer,
    bound: int = 8,
    outer_rows: IntMatrix | None = None,
) -> IntMatrix:
    """Equal-sign basis of the inner (smaller) layer's character lattice whose
    first vectors are an equal-sign basis of the outer (containing) layer's."""
    if not outer.contains(inner):
        raise ValidationError("outer layer does not contain inner layer")
    if outer_rows is None:
        outer_rows = equal_sign_basis(fan, outer.gamma, bound)
        if outer_rows is None:
            raise ValidationError(
                "no equal-sign basis for the outer layer within the bound"
            )
    rows = extend_equal_sign_basis(fan, inner.gamma, outer_rows, bound)
    if rows is None:
        raise ValidationError(
            "no equal-sign extension found within the coefficient bound"
        )
    return rows
