"""Exact scalars: rationals and rational functions in a formal indeterminate.

Rationals are plain :class:`fractions.Fraction` values.  Anything that
depends on the indeterminate (written ``x`` in text, playing the role of a
transcendental real) is a :class:`RationalFunction`.  Arithmetic that
cancels every occurrence of ``x`` collapses back to a ``Fraction``, so a
value is eta-free exactly when it is a ``Fraction``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Union

from .errors import EtaDegreeCapExceeded, NonRationalScalar

# Coefficient tuples, lowest degree first, no trailing zeros; () is zero.
Poly = tuple

DEGREE_CAP = 64

VARIABLE = "x"

_ZERO = Fraction(0)
_ONE = Fraction(1)
_ONE_POLY = (_ONE,)


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_deg(a: Poly) -> int:
    return len(a) - 1


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def poly_neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def poly_sub(a: Poly, b: Poly) -> Poly:
    return poly_add(a, poly_neg(b))


def poly_scale(a: Poly, k) -> Poly:
    if k == 0:
        return ()
    return tuple(c * k for c in a)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) <= db:
        return (), tuple(rem)
    quot = [_ZERO] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = c / lead
        quot[k - db] = c
        for j in range(db + 1):
            rem[k - db + j] -= c * b[j]
    return _trim(quot), _trim(rem[:db])


def poly_monic(a: Poly) -> Poly:
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(c / lead for c in a)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_eval(a: Poly, at):
    acc = _ZERO
    for c in reversed(a):
        acc = acc * at + c
    return acc


def poly_primitive(a: Poly) -> tuple[int, ...]:
    """Integer coefficients with content 1 and the same roots as ``a``."""
    if not a:
        return ()
    den = lcm(*(Fraction(c).denominator for c in a))
    ints = [int(c * den) for c in a]
    g = gcd(*ints)
    return tuple(v // g for v in ints)


class RationalFunction:
    """Quotient of two polynomials in ``x`` over the rationals.

    Stored in lowest terms with a monic denominator.  Do not call the
    constructor with unreduced data; use :meth:`make`, which also collapses
    constants to ``Fraction``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly = _ONE_POLY):
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def make(cls, num: Poly, den: Poly = _ONE_POLY) -> "Scalar":
        num = _trim(num)
        den = _trim(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return _ZERO
        if len(den) > 1:
            g = poly_gcd(num, den)
            if len(g) > 1:
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        if len(num) == 1 and len(den) == 1:
            return Fraction(num[0])
        if max(len(num), len(den)) - 1 > DEGREE_CAP:
            raise EtaDegreeCapExceeded(
                f"degree {max(len(num), len(den)) - 1} exceeds cap {DEGREE_CAP}"
            )
        return cls(num, den)

    @classmethod
    def polynomial(cls, coeffs) -> "Scalar":
        return cls.make(tuple(Fraction(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return max(len(self.num), len(self.den)) - 1

    @property
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def evaluate(self, at) -> Fraction:
        d = poly_eval(self.den, at)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {at}")
        return poly_eval(self.num, at) / d

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _parts(other):
        if isinstance(other, RationalFunction):
            return other.num, other.den
        if isinstance(other, (int, Fraction)):
            return ((Fraction(other),) if other else ()), _ONE_POLY
        return None

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        on, od = o
        if self.den == od:
            if len(od) == 1:
                return RationalFunction.make(poly_add(self.num, on))
            return RationalFunction.make(poly_add(self.num, on), od)
        return RationalFunction.make(
            poly_add(poly_mul(self.num, od), poly_mul(on, self.den)),
            poly_mul(self.den, od),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(poly_neg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return self + RationalFunction._from_parts(poly_neg(o[0]), o[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        on, od = o
        if len(self.den) == 1 and len(od) == 1:
            return RationalFunction.make(poly_mul(self.num, on))
        return RationalFunction.make(poly_mul(self.num, on), poly_mul(self.den, od))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        on, od = o
        if not on:
            raise ZeroDivisionError("division by zero scalar")
        return RationalFunction.make(poly_mul(self.num, od), poly_mul(self.den, on))

    def __rtruediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        on, od = o
        return RationalFunction.make(poly_mul(on, self.den), poly_mul(od, self.num))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @staticmethod
    def _from_parts(num, den):
        if not num:
            return _ZERO
        if len(num) == 1 and len(den) == 1:
            return Fraction(num[0])
        return RationalFunction(num, den)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return False  # constants are always stored as Fraction
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("rf", self.num, self.den))
        return self._hash

    def __bool__(self):
        return True

    def __repr__(self):
        return f"RationalFunction({format_scalar(self)!r})"

    __str__ = lambda self: format_scalar(self)  # noqa: E731


Scalar = Union[Fraction, RationalFunction]

ETA = RationalFunction((_ZERO, _ONE))


def to_scalar(value) -> Scalar:
    if isinstance(value, (Fraction, RationalFunction)):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def is_zero(a: Scalar) -> bool:
    return not isinstance(a, RationalFunction) and a == 0


def is_rational(a) -> bool:
    return isinstance(a, (int, Fraction))


def require_rational(a) -> Fraction:
    if isinstance(a, RationalFunction):
        raise NonRationalScalar(f"{format_scalar(a)} depends on {VARIABLE}")
    return Fraction(a)


def promote(a: Scalar) -> RationalFunction:
    """Rational -> rational function with the same value (constant numerator).

    The result is deliberately not collapsed, so it is only useful for
    evaluation and display; arithmetic on it re-canonicalizes.
    """
    if isinstance(a, RationalFunction):
        return a
    a = Fraction(a)
    return RationalFunction(((a,) if a else ()), _ONE_POLY)


def evaluate(a: Scalar, at) -> Fraction:
    if isinstance(a, RationalFunction):
        return a.evaluate(Fraction(at))
    return Fraction(a)


def as_parts(a: Scalar) -> tuple[Poly, Poly]:
    if isinstance(a, RationalFunction):
        return a.num, a.den
    a = Fraction(a)
    return ((a,) if a else ()), _ONE_POLY


# text form --------------------------------------------------------------


def _format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_poly(p: Poly, var: str = VARIABLE) -> str:
    if not p:
        return "0"
    out = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if k == 0:
            body = _format_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{_format_rational(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_scalar(a) -> str:
    """Canonical text: ``p/q`` or ``c0 + c1*x + ...``, ``(num) / (den)``."""
    if isinstance(a, RationalFunction):
        if len(a.den) == 1:
            return format_poly(a.num)
        return f"({format_poly(a.num)}) / ({format_poly(a.den)})"
    return _format_rational(Fraction(a))


_TERM = re.compile(
    r"^(?P<coef>\d+(?:/\d+)?)?(?:\*?(?P<var>[a-z]+)(?:\^(?P<exp>\d+))?)?$"
)


def parse_poly(text: str, var: str = VARIABLE) -> Poly:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"malformed polynomial {text!r}")
    coeffs: dict[int, Fraction] = {}
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"malformed term {term!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else _ONE
        if m.group("var") is not None:
            if m.group("var") not in (var, "eta"):
                raise ValueError(f"unknown variable {m.group('var')!r}")
            exp = int(m.group("exp")) if m.group("exp") else 1
        else:
            if m.group("exp"):
                raise ValueError(f"malformed term {term!r}")
            exp = 0
        coeffs[exp] = coeffs.get(exp, _ZERO) + sign * coef
    top = max(coeffs)
    return _trim(coeffs.get(k, _ZERO) for k in range(top + 1))


_QUOTIENT = re.compile(r"^\((?P<num>[^()]*)\)/\((?P<den>[^()]*)\)$")


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`format_scalar` (also accepts looser spacing)."""
    s = text.strip().replace(" ", "")
    m = _QUOTIENT.match(s)
    if m:
        return RationalFunction.make(parse_poly(m.group("num")), parse_poly(m.group("den")))
    if re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        return Fraction(s)
    return RationalFunction.make(parse_poly(s))
