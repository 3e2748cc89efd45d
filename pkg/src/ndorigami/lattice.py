"""Full lattices containing 1: canonical form, membership, angle synthesis,
closure audits, the pairing scan and lattice/dense verdicts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, lcm
from typing import Optional, Sequence, Union

from .errors import (
    CollidingDirections,
    DegenerateTau,
    DimensionMismatch,
    NonRationalScalar,
    RankDeficient,
)
from .geometry import (
    Direction,
    Point,
    as_point,
    canonicalize_direction,
    format_point,
    intersect,
    origin,
    rank,
    sub,
    unit_direction,
    unit_point,
)
from .scalar import RationalFunction


# integer column Hermite normal form ------------------------------------------


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_hnf(columns: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Lower-triangular column Hermite normal form of an integer lattice.

    Returns the nonzero HNF columns.  For a full-rank input these are ``n``
    columns ``h_j`` with ``h_j[i] = 0`` for ``i < j``, ``h_j[j] > 0`` and
    ``0 <= h_j[i] < h_i[i]`` for ``j < i``.
    """
    cols = [list(c) for c in columns if any(c)]
    r = 0
    pivots = []
    for i in range(n):
        # combine everything from position r on into one column with a gcd in row i
        piv = None
        for j in range(r, len(cols)):
            if cols[j][i] == 0:
                continue
            if piv is None:
                piv = j
                continue
            a, b = cols[piv][i], cols[j][i]
            g, x, y = _xgcd(a, b)
            ca, cb = cols[piv], cols[j]
            fa, fb = a // g, b // g
            cols[piv] = [x * s + y * t for s, t in zip(ca, cb)]
            cols[j] = [fa * t - fb * s for s, t in zip(ca, cb)]
        if piv is None:
            continue
        cols[r], cols[piv] = cols[piv], cols[r]
        if cols[r][i] < 0:
            cols[r] = [-x for x in cols[r]]
        p = cols[r][i]
        for j in range(r):
            f = cols[j][i] // p
            if f:
                cols[j] = [x - f * y for x, y in zip(cols[j], cols[r])]
        pivots.append(i)
        r += 1
        cols = cols[:r] + [c for c in cols[r:] if any(c)]
    return cols[:r]


def _clear(points: Sequence[Point]) -> tuple[int, list[list[int]]]:
    for p in points:
        for c in p:
            if isinstance(c, RationalFunction):
                raise NonRationalScalar("lattice generators must be rational")
    den = lcm(1, *(Fraction(c).denominator for p in points for c in p))
    return den, [[int(Fraction(c) * den) for c in p] for p in points]


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(m[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


@dataclass(frozen=True, eq=False)
class LatticeBasis:
    """A full lattice given by ``dimension`` generators.

    Two instances are equal when they describe the same lattice, i.e. when
    their ``(denominator, hnf)`` pairs agree; ``generators`` keeps the basis
    the caller chose (typically ``1, tau_1, ..., tau_{n-1}``).
    """

    dimension: int
    generators: tuple
    denominator: int
    hnf: tuple
    _inverse: tuple = field(repr=False, compare=False)

    @classmethod
    def from_generators(cls, generators) -> "LatticeBasis":
        return hnf_canonicalize(generators)

    @classmethod
    def from_points(cls, points) -> "LatticeBasis":
        """The lattice spanned over Z by an arbitrary finite point set."""
        pts = [as_point(p) for p in points]
        if not pts:
            raise RankDeficient("no points")
        n = len(pts[0])
        den, ints = _clear(pts)
        cols = column_hnf(ints, n)
        if len(cols) < n:
            raise RankDeficient(f"points span rank {len(cols)} < {n}")
        gens = [tuple(Fraction(x, den) for x in c) for c in cols]
        return hnf_canonicalize(gens)

    @property
    def key(self):
        return (self.denominator, self.hnf)

    def __eq__(self, other):
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def covolume(self) -> Fraction:
        d = Fraction(self.denominator)
        vol = Fraction(1)
        for i in range(self.dimension):
            vol *= self.hnf[i][i] / d
        return vol

    def hnf_basis(self) -> list[Point]:
        d = self.denominator
        return [tuple(Fraction(x, d) for x in col) for col in self.hnf]

    def coordinates(self, p) -> tuple:
        p = as_point(p)
        if len(p) != self.dimension:
            raise DimensionMismatch("point and lattice dimensions differ")
        return tuple(sum((row[j] * p[j] for j in range(len(p))), Fraction(0)) for row in self._inverse)

    def contains(self, p) -> bool:
        return member(self, p) is not None

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def contains_lattice(self, other: "LatticeBasis") -> bool:
        return all(member(self, g) is not None for g in other.generators)

    def index_of(self, sub_lattice: "LatticeBasis") -> int:
        """[self : sub_lattice]; raises ValueError if it is not a sublattice."""
        if not self.contains_lattice(sub_lattice):
            raise ValueError("not a sublattice")
        idx = sub_lattice.covolume / self.covolume
        assert idx.denominator == 1
        return int(idx)

    def points_in_box(self, bounds) -> set:
        """All lattice points inside an axis-aligned box (exact enumeration)."""
        lo, hi = (as_point(c) for c in bounds)
        n, d = self.dimension, self.denominator
        h = self.hnf
        out = set()

        def rec(i, partial, coeffs):
            if i == n:
                out.add(tuple(Fraction(x, d) for x in partial))
                return
            piv = h[i][i]
            base = partial[i]
            # lo*d <= base + piv*x <= hi*d
            x_lo = ceil((lo[i] * d - base) / piv)
            x_hi = floor((hi[i] * d - base) / piv)
            for x in range(x_lo, x_hi + 1):
                nxt = [partial[r] + x * h[i][r] for r in range(n)]
                rec(i + 1, nxt, coeffs + (x,))

        rec(0, [0] * n, ())
        return out

    def with_unit_first(self) -> "LatticeBasis":
        """Equivalent basis whose first generator is 1 (requires 1 primitive)."""
        n = self.dimension
        one = unit_point(n)
        if self.generators and tuple(self.generators[0]) == one:
            return self
        x = member(self, one)
        if x is None:
            raise ValueError("1 is not in the lattice")
        x = list(x)
        if gcd(*x) != 1:
            raise ValueError("1 is not primitive in the lattice")
        # unimodular V with V x = e_1, tracked as row operations on [x | I]
        V = [[int(i == j) for j in range(n)] for i in range(n)]
        vec = x[:]
        for j in range(1, n):
            if vec[j] == 0:
                continue
            g, s, t = _xgcd(vec[0], vec[j])
            a, b = vec[0] // g, vec[j] // g
            r0, rj = V[0], V[j]
            V[0] = [s * u + t * w for u, w in zip(r0, rj)]
            V[j] = [-b * u + a * w for u, w in zip(r0, rj)]
            vec[0], vec[j] = g, 0
        if vec[0] < 0:
            V[0] = [-u for u in V[0]]
        W = _inverse([[Fraction(c) for c in row] for row in V])
        gens = self.generators
        new = []
        for j in range(n):
            col = [int(W[i][j]) for i in range(n)]
            new.append(tuple(sum((col[i] * gens[i][k] for i in range(n)), Fraction(0)) for k in range(n)))
        assert new[0] == one
        return hnf_canonicalize(new)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "generators": [format_point(g) for g in self.generators],
            "denominator": self.denominator,
            "hnf": [list(c) for c in self.hnf],
        }

    def __str__(self):
        gens = ", ".join("(" + ", ".join(format_point(g)) + ")" for g in self.generators)
        return f"Lattice[{gens}]"


def hnf_canonicalize(generators) -> LatticeBasis:
    """Canonical (denominator, HNF) description of the lattice spanned by
    ``generators`` (exactly ``dimension`` linearly independent points)."""
    gens = tuple(as_point(g) for g in generators)
    if not gens:
        raise RankDeficient("no generators")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise DimensionMismatch("generators differ in dimension")
    if len(gens) != n:
        raise RankDeficient(f"need exactly {n} generators, got {len(gens)}")
    den, ints = _clear(gens)
    cols = column_hnf(ints, n)
    if len(cols) < n:
        raise RankDeficient("generators are linearly dependent")
    # the lcm of a basis' denominators is the smallest d with d*L integral,
    # so (den, cols) is already canonical
    mat = [[Fraction(gens[j][i]) for j in range(n)] for i in range(n)]
    inv = _inverse(mat)
    return LatticeBasis(
        dimension=n,
        generators=gens,
        denominator=den,
        hnf=tuple(tuple(c) for c in cols),
        _inverse=tuple(tuple(r) for r in inv),
    )


def member(L: LatticeBasis, p) -> Optional[tuple]:
    """Integer coordinates of ``p`` in ``L.generators``, or ``None``."""
    p = as_point(p)
    if any(isinstance(c, RationalFunction) for c in p):
        return None
    x = L.coordinates(p)
    if all(c.denominator == 1 for c in x):
        return tuple(int(c) for c in x)
    return None


# angle synthesis -------------------------------------------------------------


def tau_from_pair(alpha, alpha_prime) -> Optional[Point]:
    """``[[0, 1]]_{alpha, alpha'}``: the lattice generator a pair contributes."""
    a = canonicalize_direction(alpha)
    n = a.dimension
    return intersect(origin(n), unit_point(n), alpha, alpha_prime)


def angles_for_lattice(L: LatticeBasis) -> list[Direction]:
    """Angle set ``{1} ∪ {tau_i, tau_i - 1}`` whose construction is ``L``.

    Ordered ``1, alpha_1, alpha_1', ..., alpha_{n-1}, alpha_{n-1}'``.
    """
    L = L.with_unit_first()
    n = L.dimension
    one = unit_point(n)
    out = [unit_direction(n)]
    for tau in L.generators[1:]:
        if rank([one, tau]) < 2:
            raise DegenerateTau(f"tau = {format_point(tau)} is parallel to 1")
        out.append(canonicalize_direction(tau))
        out.append(canonicalize_direction(sub(tau, one)))
    if len(set(out)) < 2 * n - 1:
        raise CollidingDirections("synthesized directions coincide")
    return out


# closure audit ---------------------------------------------------------------


@dataclass
class ClosureReport:
    checked: int = 0
    defined: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "defined": self.defined,
            "violations": [
                {
                    "q": format_point(q),
                    "xi": xi.to_json(),
                    "phi": phi.to_json(),
                    "point": format_point(z),
                }
                for q, xi, phi, z in self.violations
            ],
        }


def verify_closure_table(U, L: LatticeBasis, coeff_range: int = 3) -> ClosureReport:
    """Check ``[[0, q]]_{xi, phi}`` lies in ``L`` (or does not exist) for every
    ``q = a_0 + sum a_i tau_i`` with ``|a_i| <= coeff_range`` and every ordered
    pair of distinct angles."""
    dirs = [canonicalize_direction(a) for a in U]
    n = L.dimension
    zero = origin(n)
    report = ClosureReport()
    gens = L.generators
    rng = range(-coeff_range, coeff_range + 1)
    for coeffs in itertools.product(rng, repeat=n):
        q = tuple(sum((c * g[k] for c, g in zip(coeffs, gens)), Fraction(0)) for k in range(n))
        for xi in dirs:
            for phi in dirs:
                if xi == phi:
                    continue
                report.checked += 1
                z = intersect(zero, q, xi, phi)
                if z is None:
                    continue
                report.defined += 1
                if member(L, z) is None:
                    report.violations.append((q, xi, phi, z))
    return report


# pairing scan ----------------------------------------------------------------


@dataclass
class PairingReport:
    pairs: list
    independent_subset: list
    leftover: list
    xis: list
    ells: list

    ok = True

    def to_json(self) -> dict:
        return {
            "ok": True,
            "pairs": [[a.to_json(), b.to_json()] for a, b in self.pairs],
            "independent_subset": [a.to_json() for a in self.independent_subset],
            "leftover": [a.to_json() for a in self.leftover],
            "xi": [format_point(x) for x in self.xis],
            "ell": [format_point(x) for x in self.ells],
        }


@dataclass
class ScanFailure:
    reason: str
    stage: int
    pairs: list = field(default_factory=list)

    ok = False

    def to_json(self) -> dict:
        return {
            "ok": False,
            "reason": self.reason,
            "stage": self.stage,
            "pairs": [[a.to_json(), b.to_json()] for a, b in self.pairs],
        }


def _ell_candidates(gens: list[Point], bound: int = 2) -> list[Point]:
    """1 first, then small integer combinations of the known generators."""
    n = len(gens[0])
    out = [gens[0]]
    seen = {gens[0], origin(n)}
    combos = sorted(
        itertools.product(range(-bound, bound + 1), repeat=len(gens)),
        key=lambda c: (sum(abs(x) for x in c), [abs(x) for x in c], [-x for x in c]),
    )
    for c in combos:
        p = tuple(sum((k * g[i] for k, g in zip(c, gens)), Fraction(0)) for i in range(n))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def structural_scan(U) -> Union[PairingReport, ScanFailure]:
    """Greedy flag-of-subspaces pairing of an angle set.

    Stage ``i`` looks for an ordered pair of angles outside the current
    subspace ``V`` and a small lattice element ``l`` (``l = 1`` first) whose
    intersection ``[[0, l]]`` leaves ``V``; ``V`` then grows by that point.
    Success after ``n - 1`` stages yields the pairs ``(alpha_i, alpha_i')``.
    The stage index runs over ``1 < i <= n - 1`` after the first stage.
    """
    dirs = [canonicalize_direction(a) for a in U]
    if not dirs:
        return ScanFailure("empty angle set", 0)
    n = dirs[0].dimension
    one_dir = unit_direction(n)
    if one_dir not in dirs:
        return ScanFailure("angle set does not contain 1", 0)
    if rank([d.coords for d in dirs]) < n:
        return ScanFailure("span deficient", 0)
    zero = origin(n)
    V = [unit_point(n)]
    gens = [unit_point(n)]
    pairs, xis, ells = [], [], []
    for stage in range(1, n):
        rest = [d for d in dirs if rank(V + [d.coords]) > len(V)]
        found = None
        for ell in _ell_candidates(gens):
            for a, b in itertools.permutations(rest, 2):
                z = intersect(zero, ell, a, b)
                if z is not None and rank(V + [z]) > len(V):
                    found = (a, b, z, ell)
                    break
            if found:
                break
        if found is None:
            return ScanFailure(
                "span deficient" if len(rest) < 2 else "no pairing leaves the subspace",
                stage,
                pairs,
            )
        a, b, z, ell = found
        pairs.append((a, b))
        xis.append(z)
        ells.append(ell)
        V.append(z)
        gens.append(z)
    used = {one_dir} | {d for pr in pairs for d in pr}
    return PairingReport(
        pairs=pairs,
        independent_subset=[one_dir] + [a for a, _ in pairs],
        leftover=[d for d in dirs if d not in used],
        xis=xis,
        ells=ells,
    )


# verdicts --------------------------------------------------------------------


@dataclass
class LatticeVerdict:
    """Bounded evidence that ``M(U)`` is the lattice ``basis``.

    Holds for the generated depth and box only: every constructed point is a
    member and every lattice point of the box was constructed.
    """

    basis: LatticeBasis
    verified_depth: int
    box: tuple
    refined: bool = False
    candidate: Optional[LatticeBasis] = None
    closure_checked: int = 0

    kind = "lattice"

    def to_json(self) -> dict:
        out = {
            "verdict": "lattice",
            "basis": self.basis.to_json(),
            "verified_depth": self.verified_depth,
            "box": [format_point(c) for c in self.box],
            "refined": self.refined,
            "closure_spot_checks": self.closure_checked,
            "evidence": "bounded depth and box; not a proof",
        }
        if self.candidate is not None:
            out["structural_candidate"] = self.candidate.to_json()
        return out


@dataclass
class DenseEvidence:
    reason: str  # "coplanar" or "gap_shrinking"
    data: dict = field(default_factory=dict)

    kind = "dense_evidence"

    def to_json(self) -> dict:
        return {"verdict": "dense_evidence", "reason": self.reason, "data": self.data}


@dataclass
class UnknownVerdict:
    reason: str
    diagnostics: dict = field(default_factory=dict)

    kind = "unknown"

    def to_json(self) -> dict:
        return {"verdict": "unknown", "reason": self.reason, "diagnostics": self.diagnostics}


Verdict = Union[LatticeVerdict, DenseEvidence, UnknownVerdict]

DEFAULT_VERDICT_RADIUS = 1
DEFAULT_VERDICT_DEPTH = 6


def lattice_hypothesis_test(U, cfg=None) -> Verdict:
    """Decide, on bounded evidence, whether ``M(U)`` looks like a full lattice.

    Coplanar quadruple first (dense), then the pairing scan supplies a
    candidate lattice from ``1`` and the scan points.  If some constructed
    point falls outside the candidate, the candidate is replaced by the span
    of everything constructed and retested.  Without a retention box in
    ``cfg`` the cube of radius 1 is used, and without ``cfg`` depth 6.
    """
    from .analysis import coplanar_quadruple
    from .construction import GenerationConfig, cube, generate, normalize_angles, sort_points

    dirs = normalize_angles(U)
    n = dirs[0].dimension
    cfg = cfg or GenerationConfig(max_depth=DEFAULT_VERDICT_DEPTH)
    if cfg.retention_box is None:
        cfg = GenerationConfig(
            max_depth=cfg.max_depth,
            retention_box=cube(n, DEFAULT_VERDICT_RADIUS),
            margin_factor=cfg.margin_factor,
            max_points=cfg.max_points,
        )
    cop = coplanar_quadruple(dirs)
    if cop.found:
        return DenseEvidence(
            "coplanar",
            {
                "indices": list(cop.indices),
                "angles": [dirs[i].to_json() for i in cop.indices],
                "spans_space": cop.spans_space,
            },
        )
    scan = structural_scan(dirs)
    if not scan.ok:
        reason = "span_deficient" if scan.reason == "span deficient" else "no_pairing"
        return UnknownVerdict(reason, {"message": scan.reason, "scan": scan.to_json()})
    try:
        candidate = hnf_canonicalize([unit_point(n)] + list(scan.xis))
    except NonRationalScalar:
        return UnknownVerdict("non_rational", {"scan": scan.to_json()})
    state = generate(dirs, cfg)
    if state.cap_truncated:
        return UnknownVerdict("cap_truncated", {"points": len(state.birth), "depth": state.depth})
    outside = [p for p in state.points if member(candidate, p) is None]
    basis, refined = candidate, False
    if outside:
        basis = LatticeBasis.from_points(state.points)
        try:
            basis = basis.with_unit_first()
        except ValueError:
            pass
        refined = True
    missing = basis.points_in_box(cfg.retention_box) - state.points
    if missing:
        return UnknownVerdict(
            "coverage_incomplete",
            {
                "candidate": basis.to_json(),
                "refined": refined,
                "missing": len(missing),
                "sample": [format_point(p) for p in sort_points(missing)[:5]],
                "depth": state.depth,
            },
        )
    closure = verify_closure_table(dirs, basis, coeff_range=1)
    if not closure.ok:
        return UnknownVerdict(
            "not_closed", {"candidate": basis.to_json(), "violations": len(closure.violations)}
        )
    return LatticeVerdict(
        basis=basis,
        verified_depth=state.depth,
        box=cfg.retention_box,
        refined=refined,
        candidate=candidate if refined else None,
        closure_checked=closure.checked,
    )
