"""Shared random generators and hypothesis strategies for the test suite."""
from fractions import Fraction

from hypothesis import strategies as st

from ndorigami.errors import CollidingDirections, DegenerateTau
from ndorigami.lattice import angles_for_lattice, hnf_canonicalize
from ndorigami.geometry import rank

small_q = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def vectors(n, allow_zero=True):
    s = st.tuples(*[small_q] * n)
    if not allow_zero:
        s = s.filter(lambda v: any(v))
    return s


def rand_q(rng, lo=-5, hi=5, max_den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_vec(rng, n, nonzero=False, **kw):
    while True:
        v = tuple(rand_q(rng, **kw) for _ in range(n))
        if not nonzero or any(v):
            return v


def rand_dir(rng, n):
    """Small integer direction, so random pairs are often parallel."""
    while True:
        v = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        if any(v):
            return v


def random_lattice(rng, n):
    """Full lattice 1, tau_1, ..., tau_{n-1} with small rational tau entries.

    Entries stay in [-2, 2] so tau, 1 + tau and -tau fit the box [-3, 3]^n.
    """
    one = tuple(Fraction(int(i == 0)) for i in range(n))
    while True:
        taus = [
            tuple(Fraction(rng.randint(-2 * d, 2 * d), d) for d in (rng.randint(1, 3) for _ in range(n)))
            for _ in range(n - 1)
        ]
        gens = [one] + taus
        if rank(gens) < n:
            continue
        L = hnf_canonicalize(gens)
        try:
            angles_for_lattice(L)
        except (DegenerateTau, CollidingDirections):
            continue
        return L
