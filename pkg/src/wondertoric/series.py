"""Exact truncated exponential generating series over polynomials in the
grading variable q, plus the tree/permutation series they connect."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb
from typing import Iterable, Sequence

from .errors import MathAssertionError, ValidationError
from .typea import admissible_trees, lec

QPoly = tuple[Fraction, ...]


def qpoly(values: Iterable[Fraction | int | str] | Fraction | int) -> QPoly:
    """Dense q-polynomial, ascending powers, trailing zeros trimmed."""
    if isinstance(values, (int, Fraction)):
        values = (values,)
    out = [Fraction(v) for v in values]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _qp_add(a: QPoly, b: QPoly) -> QPoly:
    n = max(len(a), len(b))
    return qpoly(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _qp_mul(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return qpoly(out)


def _qp_divexact(num: QPoly, den: QPoly) -> QPoly:
    """Polynomial quotient, failing loudly on a nonzero remainder."""
    if not den:
        raise MathAssertionError("division by the zero polynomial")
    rem = list(num)
    out = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for top in range(len(rem) - 1, len(den) - 2, -1):
        c = rem[top] / lead
        out[top - len(den) + 1] = c
        for k, d in enumerate(den):
            rem[top - len(den) + 1 + k] -= c * d
    if any(r != 0 for r in rem):
        raise MathAssertionError("polynomial division left a remainder")
    return qpoly(out)


@dataclass(frozen=True)
class TruncatedSeries:
    """Sum of a_n t^n/n! kept through a fixed order, a_n polynomials in q."""

    order: int
    coefficients: tuple[QPoly, ...]

    def __post_init__(self):
        if self.order < 0 or len(self.coefficients) != self.order + 1:
            raise ValidationError("one coefficient per power through the order")
        object.__setattr__(
            self, "coefficients", tuple(qpoly(c) for c in self.coefficients)
        )

    def coefficient(self, n: int) -> QPoly:
        if not 0 <= n <= self.order:
            raise ValidationError("coefficient index beyond the truncation order")
        return self.coefficients[n]

    def integer_coefficient(self, n: int) -> tuple[int, ...]:
        poly = self.coefficient(n)
        if any(c.denominator != 1 for c in poly):
            raise MathAssertionError("coefficient is not integral")
        return tuple(int(c) for c in poly)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValidationError("cannot extend a truncated series")
        return TruncatedSeries(order, self.coefficients[: order + 1])

    def add(self, other: TruncatedSeries) -> TruncatedSeries:
        a, b = _common(self, other)
        return TruncatedSeries(
            a.order,
            tuple(_qp_add(x, y) for x, y in zip(a.coefficients, b.coefficients)),
        )

    def sub(self, other: TruncatedSeries) -> TruncatedSeries:
        return self.add(other.scale(-1))

    def scale(self, poly: Iterable[Fraction | int] | Fraction | int) -> TruncatedSeries:
        p = qpoly(poly)
        return TruncatedSeries(
            self.order, tuple(_qp_mul(c, p) for c in self.coefficients)
        )

    def mul(self, other: TruncatedSeries) -> TruncatedSeries:
        a, b = _common(self, other)
        out = []
        for n in range(a.order + 1):
            acc: QPoly = ()
            for k in range(n + 1):
                term = _qp_mul(a.coefficients[k], b.coefficients[n - k])
                acc = _qp_add(acc, qpoly(comb(n, k) * c for c in term))
            out.append(acc)
        return TruncatedSeries(a.order, tuple(out))

    def derivative_t(self) -> TruncatedSeries:
        if self.order < 1:
            raise ValidationError("derivative needs a positive truncation order")
        return TruncatedSeries(self.order - 1, self.coefficients[1:])

    def exp(self) -> TruncatedSeries:
        if self.coefficients[0]:
            raise ValidationError("exp needs a zero constant term")
        coeffs = [qpoly(1)]
        for n in range(1, self.order + 1):
            acc: QPoly = ()
            for k in range(n):
                term = _qp_mul(self.coefficients[k + 1], coeffs[n - 1 - k])
                acc = _qp_add(acc, qpoly(comb(n - 1, k) * c for c in term))
            coeffs.append(acc)
        return TruncatedSeries(self.order, tuple(coeffs))

    def compose_in_t(self, inner: TruncatedSeries) -> TruncatedSeries:
        if inner.coefficients[0]:
            raise ValidationError("composition needs a zero inner constant term")
        order = min(self.order, inner.order)
        f_ord = [
            tuple(c / _factorial(n) for c in self.coefficients[n])
            for n in range(order + 1)
        ]
        g_ord = [
            tuple(c / _factorial(n) for c in inner.coefficients[n])
            for n in range(order + 1)
        ]
        acc: list[QPoly] = [f_ord[order]] + [()] * order
        for k in range(order - 1, -1, -1):
            nxt: list[QPoly] = []
            for i in range(order + 1):
                total: QPoly = ()
                for j in range(i + 1):
                    total = _qp_add(total, _qp_mul(acc[j], g_ord[i - j]))
                nxt.append(total)
            nxt[0] = _qp_add(nxt[0], f_ord[k])
            acc = nxt
        return TruncatedSeries(
            order, tuple(qpoly(c * _factorial(n) for c in acc[n]) for n in range(order + 1))
        )


def _factorial(n: int) -> Fraction:
    out = Fraction(1)
    for k in range(2, n + 1):
        out *= k
    return out


def _common(a: TruncatedSeries, b: TruncatedSeries):
    order = min(a.order, b.order)
    return a.truncate(order), b.truncate(order)


def make_series(order: int, polys: Sequence[Iterable[Fraction | int]]) -> TruncatedSeries:
    """Series from explicit coefficient polynomials, padded with zeros."""
    if len(polys) > order + 1:
        raise ValidationError("more coefficients than the truncation order allows")
    rows = [qpoly(p) for p in polys] + [()] * (order + 1 - len(polys))
    return TruncatedSeries(order, tuple(rows))


def series_one(order: int) -> TruncatedSeries:
    return make_series(order, [(1,)])


def tree_series(order: int) -> TruncatedSeries:
    """Leaf-count series of admissible trees graded by total exponent."""
    polys: list[QPoly] = [()]
    for n in range(1, order + 1):
        counts = Counter(t.degree for t in admissible_trees(tuple(range(1, n + 1))))
        top = max(counts, default=0)
        polys.append(qpoly(counts.get(d, 0) for d in range(top + 1)))
    return make_series(order, polys)


def forest_series(order: int) -> TruncatedSeries:
    """Leaf-count series of admissible forests graded by total exponent."""
    return tree_series(order).exp().sub(series_one(order))


def lec_series(order: int) -> TruncatedSeries:
    """Hook-inversion statistic summed over every permutation, by size."""
    polys: list[QPoly] = [()]
    for n in range(1, order + 1):
        counts = Counter(lec(p) for p in permutations(range(1, n + 1)))
        top = max(counts)
        polys.append(qpoly(counts.get(d, 0) for d in range(top + 1)))
    return make_series(order, polys)


def eulerian_series(order: int) -> TruncatedSeries:
    """Descent-statistic series extracted from its closed exponential form."""
    # solve S * (1 - q e^{t(1-q)}) = 1 - q, then strip the leading 1 and a q
    one_minus_q = qpoly((1, -1))
    d = [one_minus_q] + [
        qpoly(-Fraction(c) for c in _qp_mul((0, 1), _qp_pow(one_minus_q, n)))
        for n in range(1, order + 1)
    ]
    s: list[QPoly] = [qpoly(1)]
    for n in range(1, order + 1):
        acc: QPoly = ()
        for k in range(n):
            term = _qp_mul(s[k], d[n - k])
            acc = _qp_add(acc, qpoly(comb(n, k) * c for c in term))
        s.append(_qp_divexact(qpoly(-c for c in acc), one_minus_q))
    polys = [()] + [_qp_shift_down(p) for p in s[1:]]
    return make_series(order, polys)


def _qp_pow(p: QPoly, n: int) -> QPoly:
    out = qpoly(1)
    for _ in range(n):
        out = _qp_mul(out, p)
    return out


def _qp_shift_down(p: QPoly) -> QPoly:
    if p and p[0] != 0:
        raise MathAssertionError("polynomial has no factor q to remove")
    return qpoly(p[1:])


def toric_poincare_series(order: int) -> TruncatedSeries:
    """Composite series whose n-th coefficient grades the rank n-1 model of
    the equal-coordinate arrangement on the permutation-chamber fan."""
    return eulerian_series(order).compose_in_t(tree_series(order))


def verify_lambda_recurrence(order: int) -> bool:
    """Check the tree series against its defining differential recurrence."""
    lam = tree_series(order + 1)
    lhs = lam.derivative_t()
    lam_n = lam.truncate(order)
    den = lam_n.scale((0, 1)).exp().sub(lam_n.exp().scale((0, 1)))
    return lhs.mul(den) == series_one(order).scale((1, -1))


def verify_main_identity(order: int) -> bool:
    """Check that hook-statistic, descent, and forest-derivative series all
    agree after substituting the tree series."""
    lam = tree_series(order + 1)
    direct = forest_series(order + 1).derivative_t().sub(series_one(order))
    left = lec_series(order).compose_in_t(lam.truncate(order))
    right = eulerian_series(order).compose_in_t(lam.truncate(order))
    return left == direct == right
