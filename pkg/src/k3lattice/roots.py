"""ADE root lattices, root enumeration and Dynkin classification.

All root lattices use the negative definite convention: roots have square
-2 and the Gram matrix of a simple root basis is minus the Cartan matrix.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .lattice import Lattice, LatticeError, signature
from .linalg import IntMatrix, matrix_rank

__all__ = [
    "RootSystemType",
    "RootSystem",
    "ade_lattice",
    "ade_gram",
    "dynkin_edges",
    "enumerate_roots",
    "classify_root_system",
    "classify_roots",
    "root_count",
]

_FAMILY_ORDER = {"A": 0, "D": 1, "E": 2}
_COMPONENT = re.compile(r"(\d*)([ADE])(\d+)")


def _check_component(family: str, n: int) -> None:
    if family == "A" and n >= 1:
        return
    if family == "D" and n >= 4:
        return
    if family == "E" and n in (6, 7, 8):
        return
    raise ValueError(f"no root system {family}{n}")


def root_count(family: str, n: int) -> int:
    _check_component(family, n)
    if family == "A":
        return n * (n + 1)
    if family == "D":
        return 2 * n * (n - 1)
    return {6: 72, 7: 126, 8: 240}[n]


@dataclass(frozen=True)
class RootSystemType:
    """A multiset of ADE components, kept sorted by (family, rank)."""

    components: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for f, n in self.components:
            _check_component(f, n)
        ordered = tuple(sorted(self.components, key=lambda c: (_FAMILY_ORDER[c[0]], c[1])))
        object.__setattr__(self, "components", ordered)

    @classmethod
    def parse(cls, text: str) -> "RootSystemType":
        text = re.sub(r"\s+", "", text)
        if text in ("", "0", "-"):
            return cls()
        comps = []
        for part in text.split("+"):
            m = _COMPONENT.fullmatch(part)
            if not m:
                raise ValueError(f"bad root system component {part!r} in {text!r}")
            count = int(m.group(1) or 1)
            comps.extend([(m.group(2), int(m.group(3)))] * count)
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    @property
    def num_roots(self) -> int:
        return sum(root_count(f, n) for f, n in self.components)

    def counts(self) -> Counter:
        return Counter(self.components)

    def __add__(self, other: "RootSystemType") -> "RootSystemType":
        return RootSystemType(self.components + other.components)

    def __str__(self) -> str:
        if not self.components:
            return "0"
        parts = []
        for (f, n), k in sorted(self.counts().items(), key=lambda c: (_FAMILY_ORDER[c[0][0]], c[0][1])):
            parts.append(f"{k if k > 1 else ''}{f}{n}")
        return "+".join(parts)

    def lattice(self) -> Lattice:
        if not self.components:
            raise LatticeError("empty root system has no lattice")
        blocks = [ade_gram(f, n) for f, n in self.components]
        size = self.rank
        rows = []
        off = 0
        for b in blocks:
            for r in b:
                rows.append([0] * off + r + [0] * (size - off - len(b)))
            off += len(b)
        return Lattice(IntMatrix(rows, ncols=size), str(self))


def dynkin_edges(family: str, n: int) -> list[tuple[int, int]]:
    """Edges of the Dynkin diagram, nodes numbered from 0.

    A_n and D_n are chains 0-1-...; D_n attaches node n-1 to node n-3.  E_n
    uses the Bourbaki shape: a chain 0-2-3-...-(n-1) with node 1 on node 3.
    """
    _check_component(family, n)
    if family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    return [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]


def ade_gram(family: str, n: int) -> list[list[int]]:
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in dynkin_edges(family, n):
        g[i][j] = g[j][i] = 1
    return g


def ade_lattice(family: str, n: int) -> Lattice:
    return Lattice(IntMatrix(ade_gram(family, n), ncols=n), f"{family}{n}")


def _negative_definite(obj) -> Lattice:
    lat = obj if isinstance(obj, Lattice) else Lattice(obj)
    if signature(lat) != (0, lat.rank):
        raise LatticeError("lattice is not negative definite")
    return lat


def enumerate_roots(obj) -> list[tuple[int, ...]]:
    """All vectors of square -2, sorted lexicographically."""
    lat = _negative_definite(obj)
    pos = [[-v for v in row] for row in lat.gram.rows]
    return [v for v in kernels.short_vectors(pos, 2) if lat.norm(v) == -2]


@dataclass(frozen=True)
class RootSystem:
    """Result of a classification: type, simple roots and the root span."""

    type: RootSystemType
    roots: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    span_rank: int

    @property
    def root_sublattice(self) -> IntMatrix:
        """The simple roots; they form a basis of the lattice spanned by all roots."""
        n = len(self.roots[0]) if self.roots else 0
        return IntMatrix(self.simple_roots, ncols=n)


def _name_component(nodes: list[int], adj: dict[int, set[int]]) -> tuple[str, int]:
    n = len(nodes)
    degrees = {v: len(adj[v]) for v in nodes}
    branch = [v for v in nodes if degrees[v] > 2]
    edges = sum(degrees.values()) // 2
    if edges != n - 1:
        raise ValueError("Dynkin graph has a cycle")
    if not branch:
        return "A", n
    if len(branch) > 1 or degrees[branch[0]] != 3:
        raise ValueError("not a simply-laced finite Dynkin diagram")
    centre = branch[0]
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return "D", n
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return "E", n
    raise ValueError(f"arms {arms} do not form an ADE diagram")


def classify_roots(roots: Iterable[Sequence[int]], gram) -> RootSystem:
    """Classify an explicit, negation-closed set of (-2)-vectors."""
    g = gram.gram if isinstance(gram, Lattice) else (gram if isinstance(gram, IntMatrix) else IntMatrix(gram))
    rows = g.rows
    roots = sorted({tuple(r) for r in roots})
    if not roots:
        return RootSystem(RootSystemType(), (), (), 0)

    def inner(x, y):
        return sum(xi * sum(a * b for a, b in zip(row, y)) for xi, row in zip(x, rows) if xi)

    big = 2 * max(abs(c) for r in roots for c in r) + 1
    weights = [big**i for i in range(len(roots[0]))]

    def height(r):
        return sum(w * c for w, c in zip(weights, r))

    positive = sorted((r for r in roots if height(r) > 0), key=height)
    pos_set = set(positive)
    simple = []
    for i, r in enumerate(positive):
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in pos_set for s in positive[:i]
        )
        if not decomposable:
            simple.append(r)
    adj: dict[int, set[int]] = {i: set() for i in range(len(simple))}
    for i in range(len(simple)):
        for j in range(i + 1, len(simple)):
            v = inner(simple[i], simple[j])
            if v not in (0, 1):
                raise AssertionError(f"simple root pairing {v} outside {{0, 1}}: not a simply-laced root system")
            if v:
                adj[i].add(j)
                adj[j].add(i)
    seen: set[int] = set()
    comps = []
    for v in range(len(simple)):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_name_component(comp, adj))
    span = matrix_rank(IntMatrix(simple, ncols=len(roots[0])))
    return RootSystem(RootSystemType(tuple(comps)), tuple(roots), tuple(simple), span)


def classify_root_system(obj) -> RootSystem:
    lat = _negative_definite(obj)
    return classify_roots(enumerate_roots(lat), lat.gram)
