"""Iterated origami construction M_0 ⊆ M_1 ⊆ ... from the seeds {0, 1}.

The fast engine never enumerates point pairs.  For an (unordered) pair of
directions ``alpha, beta`` the lines ``p + r*alpha`` and ``q + s*beta`` meet
iff ``p`` and ``q`` lie in a common affine plane ``c + span(alpha, beta)``.
Writing each point of such a plane as ``c + a*alpha + b*beta``, the
intersections available inside the plane are exactly ``A x B`` where ``A``
and ``B`` are the sets of ``a``- and ``b``-coordinates already present.
Each plane keeps those two sets, so every product is formed once over the
whole run and a depth only pays for the coordinates it adds.

Internally a rational point is an integer tuple ``(den, n_0, ..., n_{n-1})``
in lowest terms with ``den > 0``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional

from .errors import (
    DepthOutOfRange,
    DimensionMismatch,
    DuplicateAngles,
    MissingUnitDirection,
    NonRationalScalar,
    TooFewAngles,
)
from .geometry import (
    Direction,
    Point,
    as_point,
    canonicalize_direction,
    format_point,
    intersect,
    origin,
    unit_direction,
    unit_point,
)
from .scalar import format_scalar

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenerationConfig:
    max_depth: int = 3
    retention_box: Optional[tuple[Point, Point]] = None
    margin_factor: Fraction = Fraction(2)
    max_points: int = 10**6

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be nonnegative")
        if self.max_points < 1:
            raise ValueError("max_points must be positive")
        object.__setattr__(self, "margin_factor", Fraction(self.margin_factor))
        if self.margin_factor < 1:
            raise ValueError("margin_factor must be at least 1")
        if self.retention_box is not None:
            lo, hi = (as_point(c) for c in self.retention_box)
            if len(lo) != len(hi):
                raise DimensionMismatch("retention box corners differ in dimension")
            if any(a > b for a, b in zip(lo, hi)):
                raise ValueError("retention box corners must be ordered componentwise")
            object.__setattr__(self, "retention_box", (lo, hi))

    @property
    def margin_box(self) -> Optional[tuple[Point, Point]]:
        if self.retention_box is None:
            return None
        lo, hi = self.retention_box
        m = self.margin_factor
        center = [(a + b) / 2 for a, b in zip(lo, hi)]
        half = [(b - a) / 2 * m for a, b in zip(lo, hi)]
        return (
            tuple(c - h for c, h in zip(center, half)),
            tuple(c + h for c, h in zip(center, half)),
        )


def box(lo, hi) -> tuple[Point, Point]:
    """Axis-aligned box from two corners (accepts scalars for a cube)."""
    return as_point(lo), as_point(hi)


def cube(n: int, radius) -> tuple[Point, Point]:
    r = Fraction(radius)
    return (-r,) * n, (r,) * n


def in_box(p: Point, bounds) -> bool:
    lo, hi = bounds
    return all(a <= x <= b for x, a, b in zip(p, lo, hi))


@dataclass
class GenerationState:
    """Everything produced by :func:`generate`.

    ``birth`` maps each retained point to the first depth at which it
    appeared; ``M_k`` is the set of points with birth <= k.
    """

    dimension: int
    angles: tuple[Direction, ...]
    config: GenerationConfig
    birth: dict = field(default_factory=dict)
    depth: int = 0
    box_truncated: bool = False
    cap_truncated: bool = False
    witnesses: dict = field(default_factory=dict)
    counts: list = field(default_factory=list)

    @property
    def truncated(self) -> bool:
        return self.box_truncated or self.cap_truncated

    @property
    def points(self) -> frozenset:
        return frozenset(self.birth)

    def points_at_depth(self, k: int) -> frozenset:
        return points_at_depth(self, k)

    def new_at_depth(self, k: int) -> frozenset:
        if not 0 <= k <= self.depth:
            raise DepthOutOfRange(f"depth {k} not in 0..{self.depth}")
        return frozenset(p for p, d in self.birth.items() if d == k)

    @property
    def points_by_depth(self) -> list[frozenset]:
        return [self.points_at_depth(k) for k in range(self.depth + 1)]

    def retained(self, k: Optional[int] = None) -> frozenset:
        """M_k restricted to the retention box (all of M_k without a box)."""
        pts = self.points if k is None else self.points_at_depth(k)
        if self.config.retention_box is None:
            return pts
        return frozenset(p for p in pts if in_box(p, self.config.retention_box))

    def to_json(self) -> dict:
        layers = [sort_points(self.new_at_depth(k)) for k in range(self.depth + 1)]
        return {
            "dimension": self.dimension,
            "angles": [a.to_json() for a in self.angles],
            "depths": [[format_point(p) for p in layer] for layer in layers],
            "counts": list(self.counts),
            "truncated": {"box": self.box_truncated, "cap": self.cap_truncated},
        }


def points_at_depth(state: GenerationState, k: int) -> frozenset:
    if not 0 <= k <= state.depth:
        raise DepthOutOfRange(f"depth {k} not in 0..{state.depth}")
    return frozenset(p for p, d in state.birth.items() if d <= k)


def point_sort_key(p: Point):
    return tuple(format_scalar(c) for c in p)


def sort_points(points: Iterable[Point]) -> list[Point]:
    """Deterministic output order: lexicographic on canonical scalar strings."""
    return sorted(points, key=point_sort_key)


# validation ----------------------------------------------------------------


def normalize_angles(angles) -> tuple[Direction, ...]:
    dirs = tuple(canonicalize_direction(a) for a in angles)
    if not dirs:
        raise TooFewAngles("empty angle set")
    n = dirs[0].dimension
    if any(d.dimension != n for d in dirs):
        raise DimensionMismatch("angles have different dimensions")
    if len(set(dirs)) != len(dirs):
        raise DuplicateAngles("angle set contains the same direction twice")
    return dirs


def validate_angle_set(angles) -> tuple[Direction, ...]:
    dirs = normalize_angles(angles)
    if unit_direction(dirs[0].dimension) not in dirs:
        raise MissingUnitDirection("the angle set must contain 1 = (1, 0, ..., 0)")
    if len(dirs) < 2:
        raise TooFewAngles("at least two angles are needed")
    return dirs


# integer point representation ----------------------------------------------


def _to_int(p: Point) -> tuple:
    den = lcm(*(c.denominator for c in p))
    return _norm(den, [c.numerator * (den // c.denominator) for c in p])


def _norm(den: int, nums) -> tuple:
    g = gcd(den, *nums)
    if den < 0:
        g = -g
    return (den // g, *(x // g for x in nums))


def _from_int(ip: tuple) -> Point:
    den = ip[0]
    return tuple(Fraction(x, den) for x in ip[1:])


def _frac(num: int, den: int) -> tuple:
    g = gcd(num, den)
    if den < 0:
        g = -g
    return (num // g, den // g)


class _PairPlanes:
    """Plane bookkeeping for one unordered direction pair."""

    __slots__ = ("alpha", "beta", "u", "v", "det", "others", "planes")

    def __init__(self, alpha: Direction, beta: Direction):
        a = [int(c) for c in alpha.coords]
        b = [int(c) for c in beta.coords]
        n = len(a)
        for u, v in itertools.combinations(range(n), 2):
            det = a[u] * b[v] - a[v] * b[u]
            if det:
                break
        else:  # pragma: no cover - distinct canonical directions are never parallel
            raise ValueError("parallel directions")
        self.alpha, self.beta = a, b
        self.u, self.v, self.det = u, v, det
        self.others = [w for w in range(n) if w != u and w != v]
        # plane key -> (dict a -> owner point, dict b -> owner point)
        self.planes: dict = {}

    def project(self, ip: tuple):
        a, b, u, v, det = self.alpha, self.beta, self.u, self.v, self.det
        den = ip[0]
        nu, nv = ip[1 + u], ip[1 + v]
        A = nu * b[v] - nv * b[u]
        B = a[u] * nv - a[v] * nu
        E = den * det
        key = _norm(E, [det * ip[1 + w] - A * a[w] - B * b[w] for w in self.others])
        return key, _frac(A, E), _frac(B, E)

    def rebuild(self, key: tuple, ca: tuple, cb: tuple) -> tuple:
        a, b = self.alpha, self.beta
        kd, ad, bd = key[0], ca[1], cb[1]
        m = lcm(kd, ad, bd)
        fk, fa, fb = m // kd, m // ad, m // bd
        an, bn = ca[0] * fa, cb[0] * fb
        nums = [an * a[w] + bn * b[w] for w in range(len(a))]
        for idx, w in enumerate(self.others):
            nums[w] += key[1 + idx] * fk
        return _norm(m, nums)


def generate(angles, cfg: Optional[GenerationConfig] = None, **overrides) -> GenerationState:
    """Generate M_0, ..., M_{max_depth} for the angle set ``angles``.

    Points outside the margin box are dropped when created (and flagged via
    ``box_truncated``).  When the point count would exceed ``max_points`` the
    current depth is cut to a deterministic prefix (sorted order), the state
    is flagged ``cap_truncated`` and generation stops.
    """
    if cfg is None:
        cfg = GenerationConfig(**overrides)
    elif overrides:
        raise TypeError("pass either a config or keyword overrides, not both")
    dirs = validate_angle_set(angles)
    n = dirs[0].dimension
    if not all(d.is_rational for d in dirs):
        raise NonRationalScalar("generation needs rational directions")
    state = GenerationState(dimension=n, angles=dirs, config=cfg)

    mbox = cfg.margin_box
    if mbox is not None and len(mbox[0]) != n:
        raise DimensionMismatch("retention box dimension differs from the angle set")
    if mbox is not None:
        lo_den = lcm(*(c.denominator for c in mbox[0] + mbox[1]))
        lo_i = [int(c * lo_den) for c in mbox[0]]
        hi_i = [int(c * lo_den) for c in mbox[1]]

        def inside(ip):
            d = ip[0]
            return all(
                lo_i[w] * d <= ip[1 + w] * lo_den <= hi_i[w] * d for w in range(n)
            )
    else:

        def inside(ip):
            return True

    seeds = [_to_int(origin(n)), _to_int(unit_point(n))]
    known: dict = {}
    for s in seeds:
        if inside(s):
            known[s] = 0
        else:
            state.box_truncated = True
    frontier = sorted(known)
    state.counts.append(len(known))

    # fixed internal order makes witnesses independent of the input order
    ordered = sorted(dirs, key=lambda d: tuple(d.coords))
    pairs = [_PairPlanes(x, y) for x, y in itertools.combinations(ordered, 2)]
    witnesses: dict = {}

    for k in range(1, cfg.max_depth + 1):
        fresh: dict = {}
        for pp in pairs:
            touched: dict = {}
            planes = pp.planes
            for ip in frontier:
                key, ca, cb = pp.project(ip)
                slot = planes.get(key)
                if slot is None:
                    slot = planes[key] = ({}, {})
                new = touched.get(key)
                if new is None:
                    new = touched[key] = ({}, {})
                if ca not in slot[0] and ca not in new[0]:
                    new[0][ca] = ip
                if cb not in slot[1] and cb not in new[1]:
                    new[1][cb] = ip
            for key, (new_a, new_b) in touched.items():
                old_a, old_b = planes[key]
                combos = []
                if new_a:
                    combos.append((new_a, old_b))
                    combos.append((new_a, new_b))
                if new_b:
                    combos.append((old_a, new_b))
                for side_a, side_b in combos:
                    for ca, pa in side_a.items():
                        for cb, pb in side_b.items():
                            ip = pp.rebuild(key, ca, cb)
                            if ip in known or ip in fresh:
                                continue
                            if not inside(ip):
                                state.box_truncated = True
                                continue
                            # alpha-line through the owner of cb, beta-line through the owner of ca
                            fresh[ip] = (pb, pp, pa)
                old_a.update(new_a)
                old_b.update(new_b)
        new_points = sorted(fresh)
        room = cfg.max_points - len(known)
        if len(new_points) > room:
            new_points = sorted(new_points, key=lambda ip: point_sort_key(_from_int(ip)))[:room]
            state.cap_truncated = True
        for ip in new_points:
            known[ip] = k
            witnesses[ip] = fresh[ip]
        state.depth = k
        state.counts.append(len(known))
        log.debug("depth %d: %d points (+%d)", k, len(known), len(new_points))
        frontier = new_points
        if state.cap_truncated or not frontier:
            # nothing new: later depths equal this one
            if not state.cap_truncated:
                for kk in range(k + 1, cfg.max_depth + 1):
                    state.counts.append(len(known))
                state.depth = cfg.max_depth
            break

    state.birth = {_from_int(ip): d for ip, d in known.items()}
    state.witnesses = {
        _from_int(ip): (
            _from_int(pb),
            Direction(tuple(Fraction(c) for c in pp.alpha)),
            _from_int(pa),
            Direction(tuple(Fraction(c) for c in pp.beta)),
        )
        for ip, (pb, pp, pa) in witnesses.items()
    }
    return state


def generate_reference(angles, max_depth: int, bounds=None) -> list[frozenset]:
    """Literal reading of the recursive definition, for cross-checking.

    Enumerates every ordered point pair of M_{k-1} with every ordered pair
    of distinct angles through :func:`geometry.intersect`.  Quadratic in the
    number of points; only for small cases.
    """
    dirs = validate_angle_set(angles)
    n = dirs[0].dimension
    current = {origin(n), unit_point(n)}
    if bounds is not None:
        current = {p for p in current if in_box(p, bounds)}
    layers = [frozenset(current)]
    for _ in range(max_depth):
        nxt = set(current)
        pts = list(current)
        for p in pts:
            for q in pts:
                for al in dirs:
                    for be in dirs:
                        if al == be:
                            continue
                        z = intersect(p, q, al, be)
                        if z is not None and (bounds is None or in_box(z, bounds)):
                            nxt.add(z)
        current = nxt
        layers.append(frozenset(current))
    return layers
