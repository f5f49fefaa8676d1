"""Independent reference computations used only by the tests.

Nothing here calls into k3lattice: sympy supplies exact determinants,
inverses and Smith forms, and roots are found by scanning a coefficient box.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf


def det(rows) -> int:
    if not rows:
        return 1
    return int(sympy.Matrix(rows).det())


def invariant_factors(rows) -> list[int]:
    """Nonzero Smith invariants, ascending."""
    if not rows or not any(any(r) for r in rows):
        return []
    d = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    out = [abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0]
    return sorted(out)


def rational_inverse(rows) -> list[list[Fraction]]:
    inv = sympy.Matrix(rows).inv()
    return [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(inv.cols)] for i in range(inv.rows)]


def box_roots(gram, radius: int = 2) -> list[tuple[int, ...]]:
    """Vectors of norm -2 with all coordinates in [-radius, radius]."""
    n = len(gram)
    g = np.array(gram, dtype=np.int64)
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    x = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    norms = np.einsum("ij,jk,ik->i", x, g, x)
    return sorted(tuple(int(c) for c in v) for v in x[norms == -2])


def e8_coordinate_roots() -> list[tuple[Fraction, ...]]:
    """Norm 2 vectors of E8 in the even coordinate model D8 + (1/2)^8.

    Coordinates range over {-1, -1/2, 0, 1/2, 1}, which contains every
    vector of norm 2 in that lattice.
    """
    half = Fraction(1, 2)
    out = []
    for v in itertools.product((-1, -half, 0, half, 1), repeat=8):
        if sum(x * x for x in v) != 2:
            continue
        ints = all(x.denominator == 1 if isinstance(x, Fraction) else True for x in v)
        halves = all(isinstance(x, Fraction) and x.denominator == 2 for x in v)
        if (ints and sum(v) % 2 == 0) or (halves and sum(v) % 2 == 0):
            out.append(tuple(Fraction(x) for x in v))
    return out


def centralizer_count(roots, fixed) -> int:
    """Roots orthogonal to every vector in ``fixed``."""
    return sum(1 for r in roots if all(sum(a * b for a, b in zip(r, f)) == 0 for f in fixed))


def cartan(family: str, n: int) -> list[list[int]]:
    """Negative Cartan matrix from the textbook Dynkin diagrams, written out
    independently of the package's own constructors."""
    edges = []
    if family == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif family == "E":
        # chain 0-1-...-(n-2) with the extra node attached to node 2
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def discriminant_values(gram) -> list[Fraction]:
    """Multiset of q-values mod 2 over L*/L, by scanning dual-basis combinations."""
    inv = rational_inverse(gram)
    n = len(gram)
    d = abs(det(gram))
    seen = {}
    # Rows of G^{-1} generate L* in lattice coordinates; classes are taken mod Z^n.
    frontier = [tuple([Fraction(0)] * n)]
    seen[frontier[0]] = None
    while frontier:
        nxt = []
        for v in frontier:
            for row in inv:
                w = tuple((a + b) % 1 for a, b in zip(v, row))
                if w not in seen:
                    seen[w] = None
                    nxt.append(w)
        frontier = nxt
    assert len(seen) == d
    vals = []
    for v in seen:
        vals.append(sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n)) % 2)
    return sorted(vals)

