"""Density evidence, origami polynomials, irrelevant angles and origami bases."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .construction import GenerationConfig, GenerationState, generate, normalize_angles
from .errors import CannotTriangularize, RankDeficient
from .geometry import (
    Direction,
    Point,
    canonicalize_direction,
    format_point,
    intersect,
    is_rational_point,
    origin,
    rank,
    solve,
    sub,
    unit_direction,
)
from .lattice import LatticeBasis, member
from .scalar import ETA, format_poly, to_scalar


def _rep(a) -> tuple:
    """Representative vector of an angle: a Direction's canonical coords, or
    the raw vector as given (so callers can pin a particular scaling)."""
    if isinstance(a, Direction):
        return a.coords
    return tuple(to_scalar(c) for c in a)


# coplanar quadruples -----------------------------------------------------------


@dataclass(frozen=True)
class CoplanarReport:
    indices: Optional[tuple]
    spans_space: bool

    @property
    def found(self) -> bool:
        return self.indices is not None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "indices": list(self.indices) if self.indices else None,
            "spans_space": self.spans_space,
        }


def coplanar_quadruple(U) -> CoplanarReport:
    """First (lexicographic) four angles spanning only a plane, if any.

    Also reports whether the angles span the whole space, the other
    hypothesis of the density criterion.
    """
    dirs = [canonicalize_direction(a) for a in U]
    n = dirs[0].dimension if dirs else 0
    spans = bool(dirs) and rank([d.coords for d in dirs]) == n
    for quad in itertools.combinations(range(len(dirs)), 4):
        if rank([dirs[i].coords for i in quad]) == 2:
            return CoplanarReport(quad, spans)
    return CoplanarReport(None, spans)


# density probe -----------------------------------------------------------------


@dataclass
class DensityEvidence:
    """Per-depth maximum gap between constructed points on a segment.

    ``kind`` is ``"shrinking_gap"`` when the gaps strictly decrease over at
    least three consecutive depths, otherwise ``"inconclusive"``.  Gaps are
    measured in the segment parameter ``t`` in [0, 1].
    """

    kind: str
    segment: tuple
    gaps: list
    on_segment: list
    run: Optional[tuple] = None

    @property
    def shrinking(self) -> bool:
        return self.kind == "shrinking_gap"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "segment": [format_point(p) for p in self.segment],
            "gaps": [None if g is None else str(g) for g in self.gaps],
            "points_on_segment": self.on_segment,
            "run": list(self.run) if self.run else None,
        }


def segment_parameter(p: Point, a: Point, b: Point) -> Optional[Fraction]:
    """``t`` with ``p = a + t (b - a)`` and ``0 <= t <= 1``, else ``None``."""
    d = sub(b, a)
    w = sub(p, a)
    k = next(i for i, x in enumerate(d) if x != 0)
    t = w[k] / d[k]
    if not 0 <= t <= 1:
        return None
    if any(wi != t * di for wi, di in zip(w, d)):
        return None
    return t


def density_probe(state: GenerationState, segment, min_run: int = 3) -> DensityEvidence:
    a, b = (tuple(Fraction(c) for c in p) for p in segment)
    ts: dict = {}
    for p, d in state.birth.items():
        t = segment_parameter(p, a, b)
        if t is not None:
            ts[t] = min(d, ts.get(t, d))
    gaps = []
    counts = []
    for k in range(state.depth + 1):
        vals = sorted({Fraction(0), Fraction(1)} | {t for t, d in ts.items() if d <= k})
        gaps.append(max(y - x for x, y in zip(vals, vals[1:])))
        counts.append(len(vals) - 2 + sum(1 for t in (0, 1) if ts.get(Fraction(t), k + 1) <= k))
    best = None
    start = 0
    for k in range(1, len(gaps) + 1):
        if k == len(gaps) or not gaps[k] < gaps[k - 1]:
            if k - start >= min_run and (best is None or k - start >= best[1] - best[0] + 1):
                best = (start, k - 1)
            start = k
    return DensityEvidence(
        kind="shrinking_gap" if best else "inconclusive",
        segment=(a, b),
        gaps=gaps,
        on_segment=counts,
        run=best,
    )


# origami polynomials -------------------------------------------------------------


@dataclass
class OrigamiPolynomialMatrix:
    """Rows are angles, columns basis elements: ``alpha_i = sum_j a_ij tau_j``.

    ``polynomials[j]`` holds the coefficients of ``p_j(x) = sum_i a_ij x^i``
    (index 0 is the constant term, always 0).  The zero polynomial has
    degree -1.
    """

    matrix: tuple
    basis: tuple
    angles: tuple
    angle_order: tuple
    polynomials: tuple
    degrees: tuple

    def to_json(self) -> dict:
        return {
            "matrix": [format_point(r) for r in self.matrix],
            "basis": [format_point(t) for t in self.basis],
            "angles": [format_point(a) for a in self.angles],
            "angle_order": list(self.angle_order),
            "polynomials": [format_poly(p) for p in self.polynomials],
            "degrees": list(self.degrees),
        }

    def text(self) -> str:
        cells = [[str(x) for x in row] for row in self.matrix]
        w = max((len(c) for row in cells for c in row), default=1)
        lines = ["[" + "  ".join(c.rjust(w) for c in row) + "]" for row in cells]
        for j, (p, d) in enumerate(zip(self.polynomials, self.degrees), 1):
            lines.append(f"p_{j}(x) = {format_poly(p)}   (degree {d})")
        return "\n".join(lines) + "\n"


def _poly_columns(matrix) -> tuple:
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    polys, degs = [], []
    for j in range(n):
        coeffs = [Fraction(0)] + [matrix[i][j] for i in range(m)]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        polys.append(tuple(coeffs))
        degs.append(len(coeffs) - 1)
    return tuple(polys), tuple(degs)


def origami_polynomials(U, tau, order: Optional[Sequence[int]] = None) -> OrigamiPolynomialMatrix:
    reps = [_rep(a) for a in U]
    basis = tuple(tuple(to_scalar(c) for c in t) for t in tau)
    n = len(basis)
    if n == 0 or rank(basis) < n or any(len(t) != n for t in basis):
        raise RankDeficient("tau is not a basis of the ambient space")
    rows = []
    for r in reps:
        x = solve(basis, r)
        assert x is not None
        rows.append(tuple(x))
    polys, degs = _poly_columns(rows)
    return OrigamiPolynomialMatrix(
        matrix=tuple(rows),
        basis=basis,
        angles=tuple(reps),
        angle_order=tuple(order) if order is not None else tuple(range(len(reps))),
        polynomials=polys,
        degrees=degs,
    )


def _integer_unimodular_inverse(W: list[list[int]]) -> list[list[int]]:
    from .lattice import _inverse

    inv = _inverse([[Fraction(x) for x in row] for row in W])
    assert all(x.denominator == 1 for row in inv for x in row)
    return [[int(x) for x in row] for row in inv]


def distinct_degree_basis(U, tau):
    """Reorder angles and change the Z-basis so origami degrees are distinct.

    Returns ``(new_basis, reordered_angles, matrix)``.  Input whose degrees
    are already pairwise distinct is returned unchanged.  Otherwise ``n``
    independent rows go to the bottom and integer-invertible column
    operations (a Euclidean sweep) make that ``n x n`` block upper
    triangular with nonzero diagonal.
    """
    M = origami_polynomials(U, tau)
    if len(set(M.degrees)) == len(M.degrees):
        return M.basis, list(U), M
    rows = [list(r) for r in M.matrix]
    m, n = len(rows), len(M.basis)
    chosen: list[int] = []
    for i in range(m):
        if rank([rows[j] for j in chosen] + [rows[i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == n:
                break
    if len(chosen) < n:
        raise CannotTriangularize(f"only {len(chosen)} independent angle rows, need {n}")
    order = [i for i in range(m) if i not in chosen] + chosen
    rows = [rows[i] for i in order]
    W = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst, src, k):  # col_dst -= k * col_src
        for r in rows:
            r[dst] -= k * r[src]
        for r in W:
            r[dst] -= k * r[src]

    def swap(c1, c2):
        for r in rows:
            r[c1], r[c2] = r[c2], r[c1]
        for r in W:
            r[c1], r[c2] = r[c2], r[c1]

    for t in range(n - 1, -1, -1):
        row = rows[m - n + t]
        while True:
            live = [c for c in range(t + 1) if row[c] != 0]
            if not live:
                raise CannotTriangularize("zero diagonal entry")
            piv = min(live, key=lambda c: abs(row[c]))
            if piv != t:
                swap(piv, t)
            others = [c for c in range(t) if row[c] != 0]
            if not others:
                break
            for c in others:
                q = row[c] // row[t]
                colop(c, t, q)
    # alpha = M tau = (M W)(W^-1 tau)
    Winv = _integer_unimodular_inverse(W)
    new_basis = tuple(
        tuple(sum((Winv[k][j] * M.basis[j][c] for j in range(n)), Fraction(0)) for c in range(n))
        for k in range(n)
    )
    reordered = [U[i] for i in order]
    new_M = origami_polynomials(reordered, new_basis, order=order)
    return new_basis, reordered, new_M


# irrelevant angles ---------------------------------------------------------------


def irrelevant_vector(U) -> tuple:
    """``sum_i x^i alpha_i`` over the representatives, in the given order."""
    reps = [_rep(a) for a in U]
    n = len(reps[0])
    out = [Fraction(0)] * n
    power = Fraction(1)
    for r in reps:
        power = power * ETA
        for j in range(n):
            if r[j] != 0:
                out[j] = out[j] + power * r[j]
    return tuple(out)


def irrelevant_angle(U) -> Direction:
    """Direction of ``sum_i x^i alpha_i`` with ``x`` a formal indeterminate."""
    return canonicalize_direction(irrelevant_vector(U))


@dataclass
class IrrelevantReport:
    depth: int
    points: int
    differences: int
    checked_pairs: int
    nonexistent: int = 0
    in_lattice: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "depth": self.depth,
            "points": self.points,
            "differences": self.differences,
            "checked_pairs": self.checked_pairs,
            "nonexistent": self.nonexistent,
            "in_lattice": self.in_lattice,
            "violations": [
                {k: (format_point(v) if isinstance(v, tuple) else str(v)) for k, v in viol.items()}
                for viol in self.violations[:50]
            ],
            "violation_count": len(self.violations),
        }


def verify_irrelevant(U, beta, L: LatticeBasis, depth: int) -> IrrelevantReport:
    """Check that adding ``beta`` creates no new points from ``M_depth(U)``.

    Every ordered point pair ``(p, q)`` and every ordering of ``(alpha_i, beta)``
    is covered through the exact identities
    ``[[p, q]]_{a,b} = p + [[0, q - p]]_{a,b}`` and
    ``[[p, q]]_{b,a} = [[q, p]]_{a,b}``, so one solve per distinct difference
    and angle suffices.  A result is fine when it does not exist or is an
    x-free member of ``L``.
    """
    dirs = normalize_angles(U)
    beta = canonicalize_direction(beta)
    state = generate(dirs, GenerationConfig(max_depth=depth))
    pts = sorted(state.points)
    report = IrrelevantReport(
        depth=depth, points=len(pts), differences=0, checked_pairs=2 * len(pts) ** 2 * len(dirs)
    )
    for p in pts:
        if member(L, p) is None:
            report.violations.append({"kind": "generated_not_in_lattice", "point": p})
    diffs: dict = {}
    for p in pts:
        for q in pts:
            diffs.setdefault(sub(q, p), (p, q))
    report.differences = len(diffs)
    zero = origin(dirs[0].dimension)
    for d, (p, q) in diffs.items():
        for a in dirs:
            z = intersect(zero, d, a, beta)
            if z is None:
                report.nonexistent += 1
                continue
            if is_rational_point(z) and member(L, z) is not None:
                report.in_lattice += 1
                continue
            report.violations.append(
                {"kind": "new_point", "p": p, "q": q, "alpha": a.coords, "offset": z}
            )
    return report


# origami bases -------------------------------------------------------------------


@dataclass
class BasisSearchResult:
    lattice: LatticeBasis
    size: Optional[int]
    bases: list
    candidates_checked: int
    complete: bool

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "size": self.size,
            "bases": [[d.to_json() for d in b] for b in self.bases],
            "candidates_checked": self.candidates_checked,
            "complete": self.complete,
            "evidence": "bounded depth and box; not a proof",
        }


def reproduces_lattice(U, L: LatticeBasis, cfg: GenerationConfig) -> bool:
    """Bounded check that ``M(U)`` equals ``L``: every generated point is in
    ``L`` and every point of ``L`` in the retention box has been generated."""
    state = generate(U, cfg)
    if state.cap_truncated:
        return False
    if any(member(L, p) is None for p in state.points):
        return False
    bounds = cfg.retention_box
    return L.points_in_box(bounds) <= state.points


MAX_SUBSETS = 10**5


def origami_basis_search(
    U, cfg: GenerationConfig, lattice: Optional[LatticeBasis] = None, seed: int = 0
) -> BasisSearchResult:
    """All smallest subsets of ``U`` (containing 1) whose bounded construction
    reproduces the lattice of ``U``."""
    from .lattice import LatticeVerdict, lattice_hypothesis_test

    dirs = normalize_angles(U)
    n = dirs[0].dimension
    if cfg.retention_box is None:
        raise ValueError("basis search needs a retention box")
    if lattice is None:
        verdict = lattice_hypothesis_test(dirs, cfg)
        if not isinstance(verdict, LatticeVerdict):
            raise ValueError(f"angle set does not yield a lattice: {verdict.to_json()}")
        lattice = verdict.basis
    one = unit_direction(n)
    rest = [d for d in dirs if d != one]
    checked = 0
    complete = True
    for size in range(2 * n - 1, len(dirs) + 1):
        total = comb(len(rest), size - 1)
        if total > MAX_SUBSETS:
            complete = False
            rng = random.Random(seed)
            picks = set()
            while len(picks) < MAX_SUBSETS:
                picks.add(tuple(sorted(rng.sample(range(len(rest)), size - 1))))
            subsets = [tuple(rest[i] for i in s) for s in sorted(picks)]
        else:
            subsets = list(itertools.combinations(rest, size - 1))
        found = []
        for sub_ in subsets:
            cand = (one,) + sub_
            checked += 1
            if reproduces_lattice(cand, lattice, cfg):
                found.append(cand)
        if found:
            return BasisSearchResult(lattice, size, found, checked, complete)
    return BasisSearchResult(lattice, None, [], checked, complete)
