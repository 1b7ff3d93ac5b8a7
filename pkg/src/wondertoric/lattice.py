"""Exact integer linear algebra: Smith and Hermite normal forms, sublattices of Z^n.

Everything here is plain Python ints, no floats.  Matrices are sequences of
rows.  Sublattices are stored via their row Hermite normal form, which makes
equality of lattices structural equality of the dataclass.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import ValidationError

IntMatrix = tuple[tuple[int, ...], ...]


def _freeze(rows: Iterable[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    """Matrix product a @ b over Z."""
    if a and b and len(a[0]) != len(b):
        raise ValueError("inner dimensions differ")
    cols = list(zip(*b)) if b else []
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a
    )


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_mat(v: Sequence[int], a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    if len(v) != len(a):
        raise ValueError("shape mismatch")
    width = len(a[0]) if a else 0
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(width))


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v, strict=True))


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return vector_gcd(v) == 1


@dataclass(frozen=True)
class SmithForm:
    """Decomposition left @ a @ right = diag(diagonal), transforms unimodular.

    diagonal has length min(m, n), entries nonnegative, each dividing the next.
    """

    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with deterministic pivoting.

    The pivot at each stage is the smallest nonzero |entry| of the working
    submatrix, ties broken row-major, so the transforms (not just the
    diagonal) are reproducible across runs.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    for row in a:
        if len(row) != n:
            raise ValueError("ragged matrix")
    mat = [list(map(int, row)) for row in a]
    left = [list(row) for row in identity_matrix(m)]
    right = [list(row) for row in identity_matrix(n)]

    def swap_rows(i, j):
        if i != j:
            mat[i], mat[j] = mat[j], mat[i]
            left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for row in mat:
                row[i], row[j] = row[j], row[i]
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        mat[dst] = [x + q * y for x, y in zip(mat[dst], mat[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, q):
        for row in mat:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    def negate_row(i):
        mat[i] = [-x for x in mat[i]]
        left[i] = [-x for x in left[i]]

    steps = min(m, n)
    for s in range(steps):
        while True:
            pivot = None
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    v = abs(mat[i][j])
                    if v and (best is None or v < best):
                        best = v
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(pivot[0], s)
            swap_cols(pivot[1], s)
            dirty = False
            for i in range(s + 1, m):
                if mat[i][s]:
                    add_row(s, i, -(mat[i][s] // mat[s][s]))
                    dirty = dirty or bool(mat[i][s])
            for j in range(s + 1, n):
                if mat[s][j]:
                    add_col(s, j, -(mat[s][j] // mat[s][s]))
                    dirty = dirty or bool(mat[s][j])
            if dirty:
                continue
            d = mat[s][s]
            culprit = None
            for i in range(s + 1, m):
                for j in range(s + 1, n):
                    if mat[i][j] % d:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(culprit, s, 1)
        if mat[s][s] < 0:
            negate_row(s)

    diag = tuple(mat[i][i] for i in range(steps))
    return SmithForm(diagonal=diag, left=_freeze(left), right=_freeze(right))


def hermite_form(rows: Sequence[Sequence[int]], width: int | None = None) -> IntMatrix:
    """Canonical row Hermite normal form, zero rows dropped.

    Pivots are positive and strictly to the right as rows descend; entries
    above a pivot are reduced into [0, pivot).  Two row sets generate the same
    sublattice of Z^n iff their Hermite forms are equal.
    """
    if width is None:
        if not rows:
            raise ValueError("width required for an empty generating set")
        width = len(rows[0])
    mat = [list(map(int, r)) for r in rows]
    for r in mat:
        if len(r) != width:
            raise ValueError("ragged matrix")
    row = 0
    for col in range(width):
        while True:
            nonzero = [i for i in range(row, len(mat)) if mat[i][col]]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: (abs(mat[i][col]), i))
            mat[row], mat[p] = mat[p], mat[row]
            done = True
            for i in range(row + 1, len(mat)):
                if mat[i][col]:
                    q = mat[i][col] // mat[row][col]
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[row])]
                    done = done and not mat[i][col]
            if done:
                break
        if row < len(mat) and mat[row][col]:
            if mat[row][col] < 0:
                mat[row] = [-x for x in mat[row]]
            for i in range(row):
                q = mat[i][col] // mat[row][col]
                if q:
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[row])]
            row += 1
    return _freeze(mat[:row])


@lru_cache(maxsize=None)
def _smith_of(frozen: IntMatrix, width: int) -> SmithForm:
    if not frozen:
        return SmithForm(diagonal=(), left=(), right=identity_matrix(width))
    return smith_normal_form(frozen)


def express_in_rows(
    rows: IntMatrix, width: int, v: Sequence[int]
) -> tuple[int, ...] | None:
    """Integer x with x @ rows == v, or None if v is not in the row lattice."""
    if len(v) != width:
        raise ValueError("vector has wrong length")
    if not rows:
        return () if not any(v) else None
    snf = _smith_of(rows, width)
    t = vec_mat(v, snf.right)
    k = len(rows)
    y = [0] * k
    for i in range(width):
        d = snf.diagonal[i] if i < len(snf.diagonal) else 0
        if d:
            if t[i] % d:
                return None
            y[i] = t[i] // d
        elif t[i]:
            return None
    return vec_mat(y, snf.left)


@dataclass(frozen=True)
class Sublattice:
    """Sublattice of Z^n in canonical form: basis is the Hermite form of the
    generators, so equal lattices compare equal."""

    ambient_rank: int
    basis: IntMatrix

    def __post_init__(self):
        if self.ambient_rank < 0:
            raise ValidationError("ambient rank must be nonnegative")
        for row in self.basis:
            if len(row) != self.ambient_rank:
                raise ValidationError("generator length differs from ambient rank")
        if self.basis != hermite_form(self.basis, self.ambient_rank):
            raise ValidationError("basis rows are not in Hermite normal form")

    @classmethod
    def from_rows(cls, ambient_rank: int, rows: Sequence[Sequence[int]]) -> Sublattice:
        for row in rows:
            if len(row) != ambient_rank:
                raise ValidationError("generator length differs from ambient rank")
        return cls(ambient_rank, hermite_form(rows, ambient_rank))

    @classmethod
    def zero(cls, ambient_rank: int) -> Sublattice:
        return cls(ambient_rank, ())

    @classmethod
    def full(cls, ambient_rank: int) -> Sublattice:
        return cls(ambient_rank, identity_matrix(ambient_rank))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return express_in_rows(self.basis, self.ambient_rank, v) is not None

    def coordinates_of(self, v: Sequence[int]) -> tuple[int, ...]:
        x = express_in_rows(self.basis, self.ambient_rank, v)
        if x is None:
            raise ValidationError(f"{tuple(v)} is not in the sublattice")
        return x

    def contains(self, other: Sublattice) -> bool:
        return all(self.contains_vector(row) for row in other.basis)

    def sum(self, other: Sublattice) -> Sublattice:
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient ranks differ")
        return Sublattice.from_rows(self.ambient_rank, self.basis + other.basis)

    def smith(self) -> SmithForm:
        return _smith_of(self.basis, self.ambient_rank)

    def quotient_torsion_order(self) -> int:
        """Order of the torsion subgroup of Z^n modulo this lattice."""
        out = 1
        for d in self.smith().diagonal:
            if d:
                out *= d
        return out

    def is_split_summand(self) -> bool:
        return self.quotient_torsion_order() == 1

    def kernel_lattice(self) -> Sublattice:
        """{v in Z^n : <g, v> = 0 for every generator g}; always saturated."""
        snf = self.smith()
        n = self.ambient_rank
        cols = [
            i
            for i in range(n)
            if i >= len(snf.diagonal) or snf.diagonal[i] == 0
        ]
        rows = [tuple(snf.right[r][c] for r in range(n)) for c in cols]
        return Sublattice.from_rows(n, rows)

    def saturation(self) -> Sublattice:
        """Smallest split summand of Z^n containing this lattice."""
        return self.kernel_lattice().kernel_lattice()
