"""Directions, points and the line-intersection operator in n dimensions.

A direction is an element of the unit sphere modulo +-1.  Because the
intersection point of two lines does not change when a direction vector
is rescaled (only the line parameters do), directions are stored as a
canonical primitive vector instead of a unit vector.  That keeps every
coordinate exact: ``(i - 1)/sqrt(2)`` becomes ``(1, -1)``.

Points are plain tuples of scalars.  "No intersection" is ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence, Union

from .errors import DimensionMismatch, SameDirection, ZeroVectorError
from .scalar import (
    RationalFunction,
    Scalar,
    as_parts,
    format_scalar,
    is_zero,
    parse_scalar,
    poly_divmod,
    poly_gcd,
    poly_mul,
    to_scalar,
)

Point = tuple  # tuple[Scalar, ...]


def as_point(coords) -> Point:
    return tuple(to_scalar(c) for c in coords)


def origin(n: int) -> Point:
    return (Fraction(0),) * n


def unit_point(n: int) -> Point:
    return (Fraction(1),) + (Fraction(0),) * (n - 1)


def add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def scale(k, p: Point) -> Point:
    return tuple(k * a for a in p)


def is_rational_point(p) -> bool:
    return not any(isinstance(c, RationalFunction) for c in p)


def format_point(p) -> list[str]:
    return [format_scalar(c) for c in p]


def parse_point(items) -> Point:
    return tuple(parse_scalar(s) if isinstance(s, str) else to_scalar(s) for s in items)


@dataclass(frozen=True)
class Direction:
    """A line direction, stored as its canonical representative.

    Build instances through :func:`canonicalize_direction` (or
    :meth:`of`); the constructor trusts its input.
    """

    coords: tuple

    @classmethod
    def of(cls, *coords) -> "Direction":
        if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction, RationalFunction)):
            coords = tuple(coords[0])
        return canonicalize_direction(coords)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def is_rational(self) -> bool:
        return is_rational_point(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def to_json(self) -> list[str]:
        return format_point(self.coords)

    def __str__(self):
        return "(" + ", ".join(format_point(self.coords)) + ")"


def unit_direction(n: int) -> Direction:
    """The distinguished direction 1 = (1, 0, ..., 0)."""
    return Direction(tuple(Fraction(int(i == 0)) for i in range(n)))


def canonicalize_direction(v) -> Direction:
    """Canonical representative of the line direction spanned by ``v``.

    Rational input: clear denominators, divide by the gcd, make the first
    nonzero entry positive.  Input involving ``x``: clear polynomial
    denominators, divide out the polynomial gcd and the integer content,
    and make the leading coefficient of the first nonzero entry positive.
    """
    if isinstance(v, Direction):
        return v
    v = tuple(to_scalar(c) for c in v)
    if len(v) < 2:
        raise DimensionMismatch("directions need dimension n >= 2")
    if all(is_zero(c) for c in v):
        raise ZeroVectorError("the zero vector is not a direction")
    if is_rational_point(v):
        den = lcm(*(c.denominator for c in v))
        ints = [c.numerator * (den // c.denominator) for c in v]
        g = gcd(*ints)
        ints = [x // g for x in ints]
        first = next(x for x in ints if x)
        if first < 0:
            ints = [-x for x in ints]
        return Direction(tuple(Fraction(x) for x in ints))
    parts = [as_parts(c) for c in v]
    den = (Fraction(1),)
    for _, d in parts:
        g = poly_gcd(den, d)
        den = poly_mul(den, poly_divmod(d, g)[0])
    nums = [poly_mul(n, poly_divmod(den, d)[0]) for n, d in parts]
    g = ()
    for n in nums:
        if n:
            g = poly_gcd(g, n) if g else n
    nums = [poly_divmod(n, g)[0] if n else () for n in nums]
    # integer content across all entries
    flat_den = lcm(*(Fraction(c).denominator for n in nums for c in n))
    ints = [tuple(int(c * flat_den) for c in n) for n in nums]
    content = gcd(*(c for n in ints for c in n))
    ints = [tuple(c // content for c in n) for n in ints]
    first = next(n for n in ints if n)
    if first[-1] < 0:
        ints = [tuple(-c for c in n) for n in ints]
    return Direction(tuple(RationalFunction.polynomial(n) if n else Fraction(0) for n in ints))


def _vec(x) -> tuple:
    if isinstance(x, Direction):
        return x.coords
    return tuple(to_scalar(c) for c in x)


# line relations ------------------------------------------------------------


@dataclass(frozen=True)
class Identical:
    pass


@dataclass(frozen=True)
class ParallelDistinct:
    pass


@dataclass(frozen=True)
class Skew:
    pass


@dataclass(frozen=True)
class Intersecting:
    point: Point
    r: Scalar
    s: Scalar


LineRelation = Union[Identical, ParallelDistinct, Intersecting, Skew]


def _check_dims(*vectors):
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch(f"dimensions differ: {[len(v) for v in vectors]}")
    if n < 2:
        raise DimensionMismatch("dimension must be at least 2")


def line_relation(p, alpha, q, beta) -> LineRelation:
    """Classify the lines ``p + r*alpha`` and ``q + s*beta``.

    ``r`` and ``s`` of an :class:`Intersecting` result are measured in units
    of the representatives passed in (raw vectors are accepted as well as
    :class:`Direction` values).

    Solved fraction-free: Cramer's rule on the first nonsingular 2x2 minor,
    then every remaining equation is checked in cross-multiplied form, so
    the only divisions are the two final ones.
    """
    p, q = _vec(p), _vec(q)
    a, b = _vec(alpha), _vec(beta)
    _check_dims(p, a, q, b)
    n = len(p)
    d = tuple(qi - pi for qi, pi in zip(q, p))
    pivot = None
    for u in range(n):
        if is_zero(a[u]) and is_zero(b[u]):
            continue
        for v in range(u + 1, n):
            det = a[u] * b[v] - a[v] * b[u]
            if not is_zero(det):
                pivot = (u, v, det)
                break
        if pivot:
            break
    if pivot is None:
        for u in range(n):
            for v in range(u + 1, n):
                if not is_zero(d[u] * a[v] - d[v] * a[u]):
                    return ParallelDistinct()
        return Identical()
    u, v, det = pivot
    nr = d[u] * b[v] - b[u] * d[v]
    ns = a[v] * d[u] - a[u] * d[v]
    for w in range(n):
        if w == u or w == v:
            continue
        if not is_zero(nr * a[w] - ns * b[w] - det * d[w]):
            return Skew()
    r = nr / det
    s = ns / det
    point = tuple(pi + r * ai for pi, ai in zip(p, a))
    return Intersecting(point, r, s)


def intersect(p, q, alpha, beta) -> Optional[Point]:
    """The point ``[[p, q]]_{alpha, beta}``, or ``None`` when it does not exist."""
    rel = line_relation(p, alpha, q, beta)
    if isinstance(rel, Intersecting):
        return rel.point
    return None


# complex closed form (dimension 2) -----------------------------------------


def _cmul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def _csub(z, w):
    return (z[0] - w[0], z[1] - w[1])


def _cconj(z):
    return (z[0], -z[1])


def _cdiv(z, w):
    norm = w[0] * w[0] + w[1] * w[1]
    num = _cmul(z, _cconj(w))
    return (num[0] / norm, num[1] / norm)


def intersect_complex(p, q, alpha, beta) -> Point:
    """Planar intersection via the complex-number closed form.

    Points and directions are read as complex numbers ``x + y i``.  Raises
    :class:`SameDirection` when the lines are parallel (the denominator
    ``alpha*conj(beta) - conj(alpha)*beta`` vanishes).
    """
    p, q = _vec(p), _vec(q)
    a, b = _vec(alpha), _vec(beta)
    _check_dims(p, a, q, b)
    if len(p) != 2:
        raise DimensionMismatch("the complex form is only defined in the plane")
    den = _csub(_cmul(a, _cconj(b)), _cmul(_cconj(a), b))
    if is_zero(den[0]) and is_zero(den[1]):
        raise SameDirection("parallel directions have no intersection")
    t1 = _cdiv(_csub(_cmul(a, _cconj(p)), _cmul(_cconj(a), p)), den)
    t2 = _cdiv(_csub(_cmul(b, _cconj(q)), _cmul(_cconj(b), q)), (-den[0], -den[1]))
    z1 = _cmul(t1, b)
    z2 = _cmul(t2, a)
    return (z1[0] + z2[0], z1[1] + z2[1])


# exact linear algebra helpers ----------------------------------------------


def rank(vectors: Sequence[Sequence]) -> int:
    """Exact rank of a list of scalar vectors (Gaussian elimination)."""
    rows = [list(_vec(v)) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(r + 1, len(rows)):
            if is_zero(rows[i][c]):
                continue
            f = rows[i][c] / pr[c]
            rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        r += 1
        if r == len(rows):
            break
    return r


def solve(columns: Sequence[Sequence], target: Sequence) -> Optional[tuple]:
    """Solve ``sum_j x_j * columns[j] = target`` for a square independent system.

    Returns ``None`` when the columns are singular.
    """
    n = len(target)
    m = [[_vec(col)[i] for col in columns] + [to_scalar(target[i])] for i in range(n)]
    k = len(columns)
    for c in range(k):
        piv = next((i for i in range(c, n) if not is_zero(m[i][c])), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    for i in range(k, n):
        if not is_zero(m[i][k]):
            return None
    return tuple(m[i][k] for i in range(k))
