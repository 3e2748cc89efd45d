"""Hamilton quaternions over exact scalars and the closed-form intersection.

For invertible direction quaternions ``alpha, beta`` the line parameter is

    r = [beta * conj(p - q) - (p - q) * conj(beta)] * (alpha*conj(beta) - beta*conj(alpha))^-1

and the intersection is ``p + r*alpha`` provided ``r`` is real.  The
expression is invariant under real rescaling of either direction, so integer
representatives are used as they are.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ZeroQuaternion
from .geometry import Direction, Point, canonicalize_direction
from .scalar import Scalar, format_scalar, is_zero, to_scalar

EMPTY = "∅"


@dataclass(frozen=True)
class Quaternion:
    a: Scalar = Fraction(0)
    b: Scalar = Fraction(0)
    c: Scalar = Fraction(0)
    d: Scalar = Fraction(0)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, to_scalar(getattr(self, name)))

    @classmethod
    def of(cls, v) -> "Quaternion":
        if isinstance(v, Quaternion):
            return v
        if isinstance(v, Direction):
            v = v.coords
        if isinstance(v, (int, Fraction, str)):
            return cls(v)
        return cls(*v)

    @property
    def coords(self) -> Point:
        return (self.a, self.b, self.c, self.d)

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, o):
        o = Quaternion.of(o)
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, o):
        return self + (-Quaternion.of(o))

    def __rsub__(self, o):
        return Quaternion.of(o) - self

    def __mul__(self, o):
        if isinstance(o, Quaternion):
            return qmul(self, o)
        k = to_scalar(o)
        return Quaternion(self.a * k, self.b * k, self.c * k, self.d * k)

    def __rmul__(self, k):
        k = to_scalar(k)
        return Quaternion(k * self.a, k * self.b, k * self.c, k * self.d)

    def __truediv__(self, k):
        k = to_scalar(k)
        return Quaternion(self.a / k, self.b / k, self.c / k, self.d / k)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> Scalar:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def is_real(self) -> bool:
        return is_zero(self.b) and is_zero(self.c) and is_zero(self.d)

    def is_zero(self) -> bool:
        return all(is_zero(x) for x in self.coords)

    def __str__(self):
        return format_quaternion(self)


def qmul(x: Quaternion, y: Quaternion) -> Quaternion:
    """Hamilton product (i^2 = j^2 = k^2 = ijk = -1)."""
    a1, b1, c1, d1 = x.coords
    a2, b2, c2, d2 = y.coords
    return Quaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def qinv(x: Quaternion) -> Quaternion:
    n = x.norm()
    if is_zero(n):
        raise ZeroQuaternion("zero quaternion has no inverse")
    return x.conj() / n


def quat_intersect(p, q, alpha, beta) -> Optional[Quaternion]:
    """``[[p, q]]_{alpha, beta}`` in the quaternions, ``None`` if it does not exist.

    ``None`` covers both parallel directions (vanishing denominator) and
    skew lines (``r`` not real, or the point fails the second line).
    """
    p, q = Quaternion.of(p), Quaternion.of(q)
    alpha, beta = Quaternion.of(alpha), Quaternion.of(beta)
    if alpha.is_zero() or beta.is_zero():
        raise ZeroQuaternion("directions must be invertible")
    den = alpha * beta.conj() - beta * alpha.conj()
    if den.is_zero():
        return None
    diff = p - q
    r = (beta * diff.conj() - diff * beta.conj()) * qinv(den)
    if not r.is_real():
        return None
    z = p + alpha * r.a
    # s = (z - q) beta^-1 must be real as well
    s = (z - q) * qinv(beta)
    if not s.is_real():
        return None
    if q + beta * s.a != z:
        return None
    return z


def order_table(U: Sequence) -> list[list[Optional[Quaternion]]]:
    """``table[i][j] = [[0, 1]]_{U[i], U[j]}``.

    Row index is the first direction, column index the second; this is the
    layout under which the Lipschitz and Hurwitz tables read ``[[0,1]]_{1,i} = 1``
    in the first row and ``[[0,1]]_{i,1} = 0`` in the first column.
    """
    qs = [Quaternion.of(u) for u in U]
    zero, one = Quaternion(), Quaternion(1)
    return [[quat_intersect(zero, one, a, b) for b in qs] for a in qs]


def format_quaternion(x: Quaternion) -> str:
    """Compact ``a + b i + c j + d k`` form with zero terms omitted."""
    parts = []
    for coef, unit in zip(x.coords, ("", "i", "j", "k")):
        if is_zero(coef):
            continue
        text = format_scalar(coef)
        if " " in text:  # eta-dependent coefficient
            neg, mag = False, f"({text})"
        else:
            neg = text.startswith("-")
            mag = text[1:] if neg else text
        if not unit:
            body = mag
        else:
            body = unit if mag == "1" else f"{mag} {unit}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts) or "0"


def _cell(v: Optional[Quaternion]) -> str:
    return EMPTY if v is None else format_quaternion(v)


def _header(U) -> list[str]:
    return [format_quaternion(Quaternion.of(u)) for u in U]


def table_markdown(U, table=None) -> str:
    table = order_table(U) if table is None else table
    head = _header(U)
    rows = [["α \\ β"] + head]
    for h, row in zip(head, table):
        rows.append([h] + [_cell(v) for v in row])
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = []
    for idx, r in enumerate(rows):
        lines.append("| " + " | ".join(s.ljust(w) for s, w in zip(r, widths)) + " |")
        if idx == 0:
            lines.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
    return "\n".join(lines) + "\n"


def table_csv(U, table=None) -> str:
    table = order_table(U) if table is None else table
    head = _header(U)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha\\beta"] + head)
    for h, row in zip(head, table):
        w.writerow([h] + [_cell(v) for v in row])
    return buf.getvalue()


def as_directions(U) -> list[Direction]:
    return [canonicalize_direction(Quaternion.of(u).coords) for u in U]
