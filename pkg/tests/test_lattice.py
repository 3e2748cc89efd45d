import random
from fractions import Fraction as F

import pytest

from helpers import random_lattice
from ndorigami.construction import GenerationConfig, cube
from ndorigami.errors import NonRationalScalar, RankDeficient
from ndorigami.lattice import (
    DenseEvidence,
    LatticeBasis,
    LatticeVerdict,
    UnknownVerdict,
    angles_for_lattice,
    column_hnf,
    hnf_canonicalize,
    lattice_hypothesis_test,
    member,
    structural_scan,
    verify_closure_table,
)
from ndorigami.presets import COPLANAR_R4, CUBE, GAUSSIAN, HURWITZ_TABLE, LIPSCHITZ, NINE
from ndorigami.scalar import ETA

E4 = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
HALF = F(1, 2)
HURWITZ = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (HALF, HALF, HALF, HALF)]


def test_column_hnf_shape():
    cols = column_hnf([[2, 4], [0, 6]], 2)
    assert cols == [[2, 4], [0, 6]] or cols == [[2, 0], [0, 6]]
    # lower triangular, positive pivots, reduced off-diagonals
    (a, b), (c, e) = cols
    assert c == 0 and a > 0 and e > 0 and 0 <= b < e


def test_hurwitz_canonical_form():
    L = hnf_canonicalize(HURWITZ)
    assert L.denominator == 2
    assert L.hnf == ((1, 1, 1, 1), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2))
    assert L.covolume == HALF
    assert L.index_of(hnf_canonicalize(E4)) == 2


def test_hnf_invariant_under_unimodular_change():
    rng = random.Random(3)
    for n in (2, 3, 4):
        L = random_lattice(rng, n)
        gens = list(L.generators)
        for _ in range(10):
            i, j = rng.sample(range(n), 2)
            k = rng.randint(-3, 3)
            gens[i] = tuple(a + k * b for a, b in zip(gens[i], gens[j]))
            if rng.random() < 0.3:
                gens[j] = tuple(-x for x in gens[j])
        assert hnf_canonicalize(gens) == L


def test_member_of_generators_is_unit_vector():
    L = hnf_canonicalize(HURWITZ)
    for i, g in enumerate(L.generators):
        assert member(L, g) == tuple(int(i == j) for j in range(4))
    assert member(L, (HALF, 0, 0, 0)) is None
    assert member(L, (ETA, 0, 0, 0)) is None


def test_points_in_box_matches_brute_force():
    L = hnf_canonicalize([(1, 0), (F(1, 2), F(1, 3))])
    box = cube(2, 1)
    got = L.points_in_box(box)
    brute = {
        (a + F(b, 2), F(b, 3))
        for a in range(-4, 5)
        for b in range(-4, 5)
        if abs(a + F(b, 2)) <= 1 and abs(F(b, 3)) <= 1
    }
    assert got == brute


def test_errors():
    with pytest.raises(RankDeficient):
        hnf_canonicalize([(1, 0), (2, 0)])
    with pytest.raises(NonRationalScalar):
        hnf_canonicalize([(1, 0), (0, ETA)])


def test_with_unit_first():
    L = hnf_canonicalize([(1, 1), (0, 1)])
    U = L.with_unit_first()
    assert U == L and U.generators[0] == (1, 0)


def test_synthesized_lipschitz_angles():
    dirs = angles_for_lattice(hnf_canonicalize(E4))
    assert [d.coords for d in dirs] == [
        (1, 0, 0, 0), (0, 1, 0, 0), (1, -1, 0, 0), (0, 0, 1, 0), (1, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, -1),
    ]


@pytest.mark.parametrize(
    "angles,lattice",
    [(GAUSSIAN, [(1, 0), (0, 1)]), (CUBE, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]), (LIPSCHITZ, E4)],
)
def test_closure_table_has_no_violations(angles, lattice):
    rep = verify_closure_table(angles, hnf_canonicalize(lattice), coeff_range=2)
    assert rep.ok and rep.defined > 0


def test_closure_table_detects_wrong_lattice():
    rep = verify_closure_table(HURWITZ_TABLE, hnf_canonicalize(E4), coeff_range=1)
    assert not rep.ok


def test_structural_scan():
    rep = structural_scan(CUBE)
    assert rep.ok and [(a.coords, b.coords) for a, b in rep.pairs] == [((0, 1, 0), (1, 1, 0)), ((0, 0, 1), (1, 0, 1))]
    assert len(structural_scan(LIPSCHITZ).pairs) == 3
    assert not structural_scan([(1, 0), (0, 1)]).ok


def test_scan_recovers_pairs_of_synthesized_sets():
    rng = random.Random(11)
    for n in (2, 3, 4):
        for _ in range(5):
            L = random_lattice(rng, n)
            rep = structural_scan(angles_for_lattice(L))
            assert rep.ok and len(rep.pairs) == n - 1


def test_verdicts():
    g = lattice_hypothesis_test(GAUSSIAN, GenerationConfig(max_depth=3))
    assert isinstance(g, LatticeVerdict) and g.basis == hnf_canonicalize([(1, 0), (0, 1)])
    assert len(GAUSSIAN) >= 2 * 2 - 1
    c = lattice_hypothesis_test(COPLANAR_R4, GenerationConfig(max_depth=1))
    assert isinstance(c, DenseEvidence) and c.reason == "coplanar"
    u = lattice_hypothesis_test([(1, 0), (0, 1)])
    assert isinstance(u, UnknownVerdict) and u.reason == "span_deficient"
    assert u.to_json()["verdict"] == "unknown"


def test_nine_angle_set_refines_to_hurwitz():
    v = lattice_hypothesis_test(NINE, GenerationConfig(max_depth=4, retention_box=cube(4, 1)))
    assert isinstance(v, LatticeVerdict) and v.refined
    assert v.basis == hnf_canonicalize(HURWITZ)
    assert v.candidate == hnf_canonicalize(E4)
    assert len(NINE) >= 2 * 4 - 1


def test_lattice_json():
    js = hnf_canonicalize(HURWITZ).to_json()
    assert js["denominator"] == 2 and js["generators"][3] == ["1/2", "1/2", "1/2", "1/2"]
    assert isinstance(LatticeBasis.from_points([(1, 0), (0, 1), (F(1, 2), F(1, 2))]), LatticeBasis)
