"""Named angle sets used by the examples, tests and CLI configs.

Directions are written as integer representatives; scaling is irrelevant
to every construction, so e.g. (i - 1)/sqrt(2) is stored as (-1, 1).
"""
from __future__ import annotations

GAUSSIAN = [(1, 0), (0, 1), (1, 1)]

CUBE = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1)]

# cube set plus a direction that builds 1/3 from 1 + i + j
CUBE_PLUS = CUBE + [(2, 3, 3)]

LIPSCHITZ = [
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (-1, 1, 0, 0),
    (0, 0, 1, 0),
    (-1, 0, 1, 0),
    (0, 0, 0, 1),
    (-1, 0, 0, 1),
]

HURWITZ_TABLE = [
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (-1, 1, 0, 0),
    (0, 0, 1, 0),
    (-1, 0, 1, 0),
    (1, 1, 1, 1),
    (1, -1, -1, -1),
]

NINE = LIPSCHITZ + [(1, 1, 1, 1), (-1, 1, 1, 1)]

# four angles in the plane spanned by 1 and i
COPLANAR_R4 = [
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (-2, 1, 0, 0),
    (-1, 2, 0, 0),
    (0, 0, 1, 0),
    (-1, 0, 1, 0),
    (0, 0, 0, 1),
    (-1, 0, 0, 1),
]

# angle set whose polynomial matrix is worked against the basis {1, i, j}
POLY_EXAMPLE = [(1, 0, 0), (0, 1, 0), (-1, 1, 0), (0, 0, 1), (0, -1, 1)]

PRESETS = {
    "gaussian": GAUSSIAN,
    "cube": CUBE,
    "cube-plus": CUBE_PLUS,
    "lipschitz": LIPSCHITZ,
    "hurwitz-table": HURWITZ_TABLE,
    "nine": NINE,
    "coplanar-r4": COPLANAR_R4,
    "poly-example": POLY_EXAMPLE,
}
