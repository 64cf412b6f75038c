"""Static reference values from the published survey tables.

Each row records the expected dimensions/series for one family, plus the
build parameters when the instance is computable here.  Rows for
families without explicit structure constants (S, K, Skryabin, ...) are
kept as documented constants and marked not computable.
"""

from __future__ import annotations

SOURCE = "published survey of outer derivation algebras (p = 3)"

# family survey: Der/Out dimension formulas with computable spot checks
CARTAN_SURVEY = [
    {
        "name": "W(1;(1)), p=3",
        "formula": "dim Der = m(p^|n|-1)+|n|, dim Out = |n|-m",
        "build": {"family": "W", "n": (1,), "p": 3},
        "expect": {"dim": 3, "der": 3, "out": 0},
    },
    {
        "name": "W(2;(1,1)), p=3",
        "formula": "dim Der = m(p^|n|-1)+|n|, dim Out = |n|-m",
        "build": {"family": "W", "n": (1, 1), "p": 3},
        "expect": {"dim": 18, "der": 18, "out": 0},
    },
    {
        "name": "S(m;n)^(1)",
        "formula": "dim Der = (m-1)(p^|n|-1)+|n|+1, dim Out = |n|+1",
        "build": None,
        "expect": {},
    },
    {
        "name": "H(2;(1,1))^(2), p=3",
        "formula": "dim Der = 14, dim Out = 7",
        "build": {"family": "H2", "r": 1, "n": (1, 1), "p": 3},
        "expect": {"dim": 7, "der": 14, "out": 7},
    },
    {
        "name": "H(2;(1,2))^(2), p=3",
        "formula": "dim Der = 3^(n2+1)+n2+2, dim Out = n2+4",
        "build": {"family": "H2", "r": 1, "n": (1, 2), "p": 3},
        "expect": {"dim": 25, "der": 31, "out": 6},
    },
    {
        "name": "H(2;(1,1))^(2), p=5",
        "formula": "dim Der = p^|n|+|n|, dim Out = |n|+2",
        "build": {"family": "H2", "r": 1, "n": (1, 1), "p": 5},
        "expect": {"dim": 23, "der": 27, "out": 4},
    },
    {
        "name": "K(2r+1;n)^(1), p∤2r+4",
        "formula": "dim Out = |n|-2r-1",
        "build": None,
        "expect": {},
    },
    {
        "name": "K(2r+1;n)^(1), p|2r+4",
        "formula": "dim Out = |n|-2r",
        "build": None,
        "expect": {},
    },
]

# derived series of Out for the Hamiltonian instances
GAP_SERIES = [
    {
        "name": "H(2;(1,1))^(2)",
        "build": {"family": "H2", "r": 1, "n": (1, 1), "p": 3},
        "expect": {"dim": 7, "der": 14, "series": [7, 7], "solvable": False},
        "large": False,
    },
    {
        "name": "H(2;(1,2))^(2)",
        "build": {"family": "H2", "r": 1, "n": (1, 2), "p": 3},
        "expect": {"dim": 25, "der": 31, "series": [6, 5, 5],
                   "solvable": False},
        "large": False,
    },
    {
        "name": "H(2;(1,3))^(2)",
        "build": {"family": "H2", "r": 1, "n": (1, 3), "p": 3},
        "expect": {"dim": 79, "der": 86, "series": [7, 5, 5],
                   "solvable": False},
        "large": False,
    },
    {
        "name": "H(2;(2,2))^(2)",
        "build": {"family": "H2", "r": 1, "n": (2, 2), "p": 3},
        "expect": {"dim": 79, "der": 85, "series": [6, 3, 1, 0],
                   "solvable": True},
        "large": False,
    },
    {
        "name": "H(4;(1,1,1,1))^(2)",
        "build": {"family": "H2", "r": 2, "n": (1, 1, 1, 1), "p": 3},
        "expect": {"dim": 79, "der": 85, "series": [6, 4, 0],
                   "solvable": True},
        "large": False,
    },
    {
        "name": "H(2;(2,3))^(2)",
        "build": {"family": "H2", "r": 1, "n": (2, 3), "p": 3},
        "expect": {"dim": 241, "der": 248, "series": [7, 3, 1, 0],
                   "solvable": True},
        "large": True,
    },
]

# other simple algebras at p = 3
NEWTYPE_SURVEY = [
    {
        "name": "Br_8",
        "build": {"family": "br8", "p": 3},
        "expect": {"dim": 8, "out": 2, "abelian": True},
    },
    {
        "name": "K(eps,delta,rho)",
        "build": None,
        "expect": {"dim": 10, "out": 0, "abelian": True},
    },
    {
        "name": "Br_29",
        "build": None,
        "expect": {"dim": 29, "out": 0, "abelian": True},
    },
    {
        "name": "Z'(n)",
        "build": None,
        "expect": {"out": "|n|", "abelian": True},
    },
    {
        "name": "X_1(n,omega)",
        "build": None,
        "expect": {},
    },
    {
        "name": "X_2(n,omega)",
        "build": None,
        "expect": {},
    },
]

TABLES = {
    "cartan_survey": CARTAN_SURVEY,
    "gap_series": GAP_SERIES,
    "newtype_survey": NEWTYPE_SURVEY,
}
