"""Finite quadratic forms on products of cyclic groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from ..lattice import Lattice, LatticeError, discriminant_group
from ..linalg import IntMatrix

__all__ = [
    "FiniteQuadraticForm",
    "fqf_from_lattice",
    "fqf_direct_sum",
    "fqf_negate",
]


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """``⊕ Z/orders[i]`` with a Q/2Z-valued quadratic form.

    ``gram[i][i]`` holds q(x_i) in [0, 2) and ``gram[i][j]`` holds the
    bilinear value b(x_i, x_j) in [0, 1), so that
    q(Σ a_i x_i) = Σ a_i² q_i + 2 Σ_{i<j} a_i a_j b_ij  (mod 2).
    """

    orders: tuple[int, ...]
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        r = len(orders)
        g = [[Fraction(x) for x in row] for row in self.gram]
        if len(g) != r or any(len(row) != r for row in g):
            raise ValueError("gram must be square with one row per generator")
        if any(n < 2 for n in orders):
            raise ValueError("generator orders must be > 1")
        for i in range(r):
            for j in range(i + 1, r):
                if (g[i][j] - g[j][i]) % 1:
                    raise ValueError("bilinear values must be symmetric")
        norm = tuple(
            tuple(g[i][j] % 2 if i == j else g[min(i, j)][max(i, j)] % 1 for j in range(r)) for i in range(r)
        )
        for i, n in enumerate(orders):
            if (n * norm[i][i]) % 1:
                raise ValueError(f"generator {i}: order times q is not integral")
            if (n * n * norm[i][i]) % 2:
                raise ValueError(f"generator {i}: q(order * x) is not 0 mod 2")
            for j in range(r):
                if j != i and (n * norm[i][j]) % 1:
                    raise ValueError(f"generators {i},{j}: order times b is not integral")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "gram", norm)

    @classmethod
    def trivial(cls) -> "FiniteQuadraticForm":
        return cls((), ())

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def q(self, x: Sequence[int]) -> Fraction:
        g = self.gram
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            total += xi * xi * g[i][i]
            for j in range(i + 1, len(x)):
                if x[j]:
                    total += 2 * xi * x[j] * g[i][j]
        return total % 2

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        g = self.gram
        total = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        total += xi * yj * g[i][j]
        return total % 1

    def element_order(self, x: Sequence[int]) -> int:
        out = 1
        for xi, n in zip(x, self.orders):
            out = lcm(out, n // gcd(xi, n))
        return out

    def primes(self) -> tuple[int, ...]:
        ps: set[int] = set()
        for n in self.orders:
            ps.update(_factor(n))
        return tuple(sorted(ps))

    def normalized(self) -> "FiniteQuadraticForm":
        """Equivalent form whose generator orders are all prime powers."""
        gens: list[tuple[int, int, int]] = []  # (source index, multiplier, order)
        for i, n in enumerate(self.orders):
            for p, a in sorted(_factor(n).items()):
                gens.append((i, n // p**a, p**a))
        g = self.gram
        gram = [
            [
                (ci * cj * g[i][i]) if (a == b) else (ci * cj * g[i][j])
                for b, (j, cj, _) in enumerate(gens)
            ]
            for a, (i, ci, _) in enumerate(gens)
        ]
        # Different primes pair to zero; keep that explicit.
        for a, (_, _, na) in enumerate(gens):
            for b, (_, _, nb) in enumerate(gens):
                if a != b and gcd(na, nb) == 1:
                    gram[a][b] = Fraction(0)
        return FiniteQuadraticForm(tuple(o for _, _, o in gens), tuple(map(tuple, gram)))

    def primary_part(self, p: int) -> "FiniteQuadraticForm":
        nf = self.normalized()
        idx = [i for i, n in enumerate(nf.orders) if n % p == 0]
        return FiniteQuadraticForm(
            tuple(nf.orders[i] for i in idx), tuple(tuple(nf.gram[i][j] for j in idx) for i in idx)
        )

    def scaled_integers(self) -> tuple[list[int], list[list[int]], int]:
        """Integer data for the enumeration kernel.

        Returns ``(qnum, bnum, modulus)`` with q_i = qnum_i / M,
        b_ij = bnum_ij / M and modulus = 2M.
        """
        dens = [x.denominator for row in self.gram for x in row] or [1]
        m = lcm(*dens)
        qnum = [int(self.gram[i][i] * m) for i in range(self.ngens)]
        bnum = [[int(self.gram[i][j] * m) if i != j else 0 for j in range(self.ngens)] for i in range(self.ngens)]
        return qnum, bnum, 2 * m

    def __add__(self, other: "FiniteQuadraticForm") -> "FiniteQuadraticForm":
        return fqf_direct_sum(self, other)

    def __neg__(self) -> "FiniteQuadraticForm":
        return fqf_negate(self)


def fqf_from_lattice(obj) -> FiniteQuadraticForm:
    """Discriminant form on L*/L."""
    if not isinstance(obj, Lattice):
        g = obj if isinstance(obj, IntMatrix) else IntMatrix(obj)
        if any(g[i, i] % 2 for i in range(g.nrows)):
            raise LatticeError("lattice not even")
        obj = Lattice(g)
    d = discriminant_group(obj)
    r = len(d.orders)
    gram = tuple(tuple(d.q[i] if i == j else d.b[i][j] for j in range(r)) for i in range(r))
    return FiniteQuadraticForm(d.orders, gram)


def fqf_direct_sum(*forms: FiniteQuadraticForm) -> FiniteQuadraticForm:
    orders: list[int] = []
    for f in forms:
        orders.extend(f.orders)
    n = len(orders)
    gram = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for f in forms:
        for i in range(f.ngens):
            for j in range(f.ngens):
                gram[off + i][off + j] = f.gram[i][j]
        off += f.ngens
    return FiniteQuadraticForm(tuple(orders), tuple(map(tuple, gram)))


def fqf_negate(f: FiniteQuadraticForm) -> FiniteQuadraticForm:
    return FiniteQuadraticForm(f.orders, tuple(tuple(-x for x in row) for row in f.gram))
