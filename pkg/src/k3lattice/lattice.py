"""Even integral lattices given by Gram matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import IntMatrix, determinant, hermite_normal_form, left_kernel, matrix_rank, saturate, smith_normal_form

__all__ = [
    "LatticeError",
    "Lattice",
    "Sublattice",
    "DiscriminantGroup",
    "direct_sum",
    "signature",
    "discriminant_group",
    "primitive_closure",
    "orthogonal_complement",
]


class LatticeError(ValueError):
    pass


def _gram_of(obj) -> IntMatrix:
    if isinstance(obj, Lattice):
        return obj.gram
    if isinstance(obj, IntMatrix):
        return obj
    return IntMatrix(obj)


@dataclass(frozen=True)
class Lattice:
    """A nondegenerate even lattice, presented by its Gram matrix."""

    gram: IntMatrix
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        g = self.gram if isinstance(self.gram, IntMatrix) else IntMatrix(self.gram)
        object.__setattr__(self, "gram", g)
        if not g.is_square():
            raise LatticeError("Gram matrix must be square")
        if not g.is_symmetric():
            raise LatticeError("Gram matrix must be symmetric")
        if any(g[i, i] % 2 for i in range(g.nrows)):
            raise LatticeError("lattice not even")
        if determinant(g) == 0:
            raise LatticeError("degenerate lattice")

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @property
    def det(self) -> int:
        return determinant(self.gram)

    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def signature(self) -> tuple[int, int]:
        return signature(self)

    def discriminant_group(self) -> "DiscriminantGroup":
        return discriminant_group(self)

    def is_negative_definite(self) -> bool:
        return signature(self) == (0, self.rank)

    def inner(self, x: Sequence, y: Sequence):
        g = self.gram.rows
        return sum(xi * sum(gij * yj for gij, yj in zip(row, y)) for xi, row in zip(x, g) if xi)

    def norm(self, x: Sequence):
        return self.inner(x, x)

    def sublattice(self, vectors) -> "Sublattice":
        return Sublattice(self, IntMatrix(vectors, ncols=self.rank))

    def to_dict(self) -> dict:
        return {"name": self.name, "rank": self.rank, "gram": self.gram.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Lattice":
        gram = data["gram"]
        rank = data.get("rank", len(gram))
        if rank != len(gram):
            raise LatticeError(f"declared rank {rank} but Gram matrix has {len(gram)} rows")
        return cls(IntMatrix(gram, ncols=rank), data.get("name"))

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "Lattice":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        return self.name or f"Lattice(rank={self.rank}, det={self.det})"


def direct_sum(*lattices: Lattice, name: str | None = None) -> Lattice:
    n = sum(L.rank for L in lattices)
    rows = []
    offset = 0
    for L in lattices:
        for row in L.gram.rows:
            rows.append([0] * offset + list(row) + [0] * (n - offset - L.rank))
        offset += L.rank
    if name is None and all(L.name for L in lattices):
        name = "+".join(L.name for L in lattices)
    return Lattice(IntMatrix(rows, ncols=n), name)


def signature(obj) -> tuple[int, int]:
    """``(n_plus, n_minus)`` by exact rational congruence diagonalization.

    Pivot choice: the first nonzero diagonal entry; failing that, the first
    nonzero off-diagonal entry ``(i, j)`` is folded into the diagonal by the
    congruence ``e_i -> e_i + e_j``.
    """
    a = [[Fraction(x) for x in row] for row in _gram_of(obj).rows]
    pos = neg = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if off is None:
                raise LatticeError("degenerate lattice")
            i, j = off
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for row in a:
                row[i] += row[j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        col = [a[r][piv] for r in range(n)]
        a = [
            [a[r][c] - col[r] * col[c] / p for c in range(n) if c != piv]
            for r in range(n)
            if r != piv
        ]
    return pos, neg


@dataclass(frozen=True)
class DiscriminantGroup:
    """``L*/L`` as a product of cyclic groups with the induced forms.

    ``generators[i]`` is a dual vector (coordinates in the lattice basis) of
    order ``orders[i]``; ``q[i]`` lies in ``[0, 2)`` and ``b[i][j]`` in
    ``[0, 1)``.
    """

    orders: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out


def discriminant_group(obj) -> DiscriminantGroup:
    g = _gram_of(obj)
    if any(g[i, i] % 2 for i in range(g.nrows)):
        raise LatticeError("lattice not even")
    if determinant(g) == 0:
        raise LatticeError("degenerate lattice")
    d, u, _ = smith_normal_form(g)
    # With U G V = D, the rows U_i / d_i generate L* and have order d_i mod L.
    gens, orders = [], []
    for i in range(g.nrows):
        di = d[i, i]
        if di > 1:
            orders.append(di)
            gens.append(tuple(Fraction(x, di) for x in u.row(i)))
    rows = g.rows
    gx = [[sum(c * e for c, e in zip(vec, col)) for col in zip(*rows)] for vec in gens]
    k = len(gens)
    pair = [[sum(a * b for a, b in zip(gx[i], gens[j])) for j in range(k)] for i in range(k)]
    q = tuple(pair[i][i] % 2 for i in range(k))
    b = tuple(tuple(pair[i][j] % 1 for j in range(k)) for i in range(k))
    return DiscriminantGroup(tuple(orders), tuple(gens), q, b)


@dataclass(frozen=True)
class Sublattice:
    """A sublattice given by basis rows in ambient coordinates."""

    ambient: Lattice
    basis: IntMatrix

    def __post_init__(self):
        b = self.basis if isinstance(self.basis, IntMatrix) else IntMatrix(self.basis, ncols=self.ambient.rank)
        object.__setattr__(self, "basis", b)
        if b.nrows and b.ncols != self.ambient.rank:
            raise LatticeError("basis vectors must have ambient rank coordinates")
        if matrix_rank(b) != b.nrows:
            raise LatticeError("basis rows are linearly dependent")

    @property
    def rank(self) -> int:
        return self.basis.nrows

    @property
    def gram(self) -> IntMatrix:
        return self.basis @ self.ambient.gram @ self.basis.T

    def lattice(self, name: str | None = None) -> Lattice:
        return Lattice(self.gram, name)

    def is_nondegenerate(self) -> bool:
        return determinant(self.gram) != 0

    def is_primitive(self) -> bool:
        h, _ = hermite_normal_form(self.basis)
        return primitive_closure(self).basis == IntMatrix(h.rows[: self.rank], ncols=self.basis.ncols)


def primitive_closure(s: Sublattice) -> Sublattice:
    return Sublattice(s.ambient, saturate(s.basis, s.ambient.rank))


def orthogonal_complement(ambient: Lattice, s: Sublattice | Iterable) -> Sublattice:
    """``{x in ambient : x.s = 0 for all s in S}``, with a Hermite basis."""
    basis = s.basis if isinstance(s, Sublattice) else IntMatrix(s, ncols=ambient.rank)
    if basis.nrows == 0:
        return Sublattice(ambient, IntMatrix.identity(ambient.rank))
    pairing = ambient.gram @ basis.T
    return Sublattice(ambient, left_kernel(pairing))
