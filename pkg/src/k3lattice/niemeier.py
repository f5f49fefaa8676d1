"""Niemeier lattices with roots, built as glued overlattices of ADE sums.

Vectors of a Niemeier lattice are written in root coordinates: rational
coefficients over the simple roots of its root sublattice, components in
the order of the root system name.  The glue codes are read from a data
file of explicit coset representatives and every construction is
certified before it is returned.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from pathlib import Path
from typing import Sequence

from .lattice import Lattice, LatticeError, Sublattice, orthogonal_complement
from .linalg import IntMatrix, hermite_normal_form, rational_inverse, saturate
from .qforms import GenusSymbol, fqf_from_lattice, fqf_negate, jordan_normal_form
from .roots import RootSystemType, ade_gram, classify_roots, enumerate_roots, root_count

__all__ = [
    "NiemeierError",
    "NiemeierLattice",
    "build_niemeier",
    "complement_report",
    "ComplementReport",
    "load_glue_codes",
    "load_index",
    "niemeier_names",
    "coset_min_norm",
]


class NiemeierError(ValueError):
    pass


def data_dir() -> Path:
    env = os.environ.get("K3LATTICE_DATA_DIR")
    return Path(env) if env else Path(__file__).parent / "data"


def load_glue_codes(path: Path | str | None = None) -> dict[str, list[tuple[Fraction, ...]]]:
    path = Path(path) if path else data_dir() / "niemeier_glue.txt"
    codes: dict[str, list[tuple[Fraction, ...]]] = {}
    current = None
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = str(RootSystemType.parse(line[1:-1]))
            if current in codes:
                raise NiemeierError(f"{path}:{lineno}: duplicate root system {current}")
            codes[current] = []
        elif line.startswith("glue ") and current is not None:
            try:
                vec = tuple(Fraction(x) for x in line.split()[1:])
            except ValueError:
                raise NiemeierError(f"{path}:{lineno}: bad rational in glue vector") from None
            codes[current].append(vec)
        else:
            raise NiemeierError(f"{path}:{lineno}: cannot parse {line!r}")
    return codes


def load_index(path: Path | str | None = None) -> dict[int, str]:
    """The editable j -> root system map."""
    path = Path(path) if path else data_dir() / "niemeier_index.txt"
    out = {}
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            j, name = line.split()
            out[int(j)] = name if name == "Leech" else str(RootSystemType.parse(name))
    return out


def niemeier_names() -> list[str]:
    return list(load_glue_codes())


def _fundamental_weights(family: str, n: int) -> list[list[Fraction]]:
    # Row k pairs to delta_{kj} with the simple root j.
    return rational_inverse(ade_gram(family, n))


@lru_cache(maxsize=None)
def _coset_table(family: str, n: int) -> dict[tuple[Fraction, ...], Fraction]:
    """Reduced coordinates of each class of A_R -> minimal norm in the coset.

    Norms are those of the positive definite root lattice.
    """
    w = _fundamental_weights(family, n)
    zero = tuple([Fraction(0)] * n)
    table = {zero: Fraction(0)}

    def put(node: int, norm: Fraction):
        table[tuple(x % 1 for x in w[node])] = norm

    if family == "A":
        for i in range(1, n + 1):
            put(i - 1, Fraction(i * (n + 1 - i), n + 1))
    elif family == "D":
        put(0, Fraction(1))
        put(n - 2, Fraction(n, 4))
        put(n - 1, Fraction(n, 4))
    elif n == 6:
        put(0, Fraction(4, 3))
        put(5, Fraction(4, 3))
    elif n == 7:
        put(6, Fraction(3, 2))
    return table


def coset_min_norm(family: str, n: int, coords: Sequence[Fraction]) -> Fraction:
    """Minimal norm (positive convention) of the coset ``coords + R``."""
    key = tuple(Fraction(x) % 1 for x in coords)
    try:
        return _coset_table(family, n)[key]
    except KeyError:
        raise NiemeierError(f"{tuple(coords)} is not in the dual of {family}{n}") from None


@dataclass(frozen=True)
class NiemeierLattice:
    root_system: RootSystemType
    glue: tuple[tuple[Fraction, ...], ...]
    lattice: Lattice
    basis: tuple[tuple[Fraction, ...], ...] = field(repr=False)  # rows of N in root coordinates
    root_gram: IntMatrix = field(repr=False)

    @property
    def name(self) -> str:
        return str(self.root_system)

    def to_lattice_coords(self, v: Sequence) -> tuple[int, ...]:
        """Integer coordinates of a root-coordinate vector in ``lattice``'s basis."""
        inv = _basis_inverse(self.basis)
        x = [sum(Fraction(v[i]) * inv[i][j] for i in range(24)) for j in range(24)]
        if any(c.denominator != 1 for c in x):
            raise NiemeierError("vector is not in the lattice")
        return tuple(int(c) for c in x)

    def to_root_coords(self, x: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(sum(x[i] * self.basis[i][j] for i in range(24)) for j in range(24))

    def roots(self) -> list[tuple[int, ...]]:
        """All roots in root coordinates (they all lie in the root sublattice)."""
        out = []
        off = 0
        for f, n in self.root_system.components:
            for r in _component_roots(f, n):
                out.append((0,) * off + r + (0,) * (24 - off - n))
            off += n
        return out


@lru_cache(maxsize=64)
def _basis_inverse(basis):
    return rational_inverse([list(r) for r in basis])


@lru_cache(maxsize=None)
def _component_roots(family: str, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(enumerate_roots(ade_gram(family, n)))


def _code_words(glue: list[tuple[int, ...]], den: int) -> set[tuple[int, ...]]:
    """The glue code as integer vectors mod ``den`` (coordinates times den)."""
    zero = (0,) * 24
    words = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for w in frontier:
            for g in glue:
                s = tuple((a + b) % den for a, b in zip(w, g))
                if s not in words:
                    words.add(s)
                    nxt.append(s)
        frontier = nxt
    return words


def _certify(rs: RootSystemType, glue, lat: Lattice) -> None:
    if lat.rank != 24 or abs(lat.det) != 1:
        raise NiemeierError(f"{rs}: glue data gives determinant {lat.det}, not unimodular")
    if any(lat.gram[i, i] % 2 for i in range(24)):
        raise NiemeierError(f"{rs}: glued lattice is odd")
    if not lat.is_negative_definite():
        raise NiemeierError(f"{rs}: glued lattice is not negative definite")
    for f, n in set(rs.components):
        if len(_component_roots(f, n)) != root_count(f, n):
            raise NiemeierError(f"{rs}: wrong number of roots in {f}{n}")
    # A glue coset of minimal norm 2 would add roots outside the root sum.
    den = lcm(1, *(x.denominator for g in glue for x in g))
    scaled = [tuple(int(x * den) % den for x in g) for g in glue]
    blocks = []
    off = 0
    for f, n in rs.components:
        blocks.append((off, n, {tuple(int(x * den) for x in k): v for k, v in _coset_table(f, n).items()
                                if all((x * den).denominator == 1 for x in k)}))
        off += n
    for word in _code_words(scaled, den):
        if not any(word):
            continue
        total = Fraction(0)
        for off, n, table in blocks:
            try:
                total += table[word[off : off + n]]
            except KeyError:
                raise NiemeierError(f"{rs}: glue vector outside the dual lattice") from None
        if total <= 2:
            raise NiemeierError(f"{rs}: glue coset of minimal norm {total} adds roots")


@lru_cache(maxsize=None)
def build_niemeier(root_system_name: str) -> NiemeierLattice:
    """Certified Niemeier lattice with the given root system."""
    try:
        rs = RootSystemType.parse(root_system_name)
    except ValueError as e:
        raise NiemeierError(f"unknown root system {root_system_name!r}: {e}") from None
    codes = load_glue_codes()
    if str(rs) not in codes:
        raise NiemeierError(f"{root_system_name!r} is not the root system of a Niemeier lattice")
    glue = codes[str(rs)]
    if any(len(g) != 24 for g in glue):
        raise NiemeierError(f"{rs}: glue vectors must have 24 coordinates")
    r = rs.lattice().gram
    den = lcm(1, *(x.denominator for g in glue for x in g))
    gens = [[den * int(i == j) for j in range(24)] for i in range(24)]
    gens += [[int(x * den) for x in g] for g in glue]
    h, _ = hermite_normal_form(IntMatrix(gens, ncols=24))
    basis = tuple(tuple(Fraction(x, den) for x in h.row(i)) for i in range(24))
    gram = [
        [sum(basis[i][a] * sum(r[a, b] * basis[j][b] for b in range(24) if r[a, b]) for a in range(24) if basis[i][a])
         for j in range(24)]
        for i in range(24)
    ]
    if any(x.denominator != 1 for row in gram for x in row):
        raise NiemeierError(f"{rs}: glue vectors are not in the dual lattice")
    try:
        lat = Lattice(IntMatrix([[int(x) for x in row] for row in gram], ncols=24), f"N({rs})")
    except LatticeError as e:
        raise NiemeierError(f"{rs}: {e}") from None
    _certify(rs, glue, lat)
    return NiemeierLattice(rs, tuple(map(tuple, glue)), lat, basis, r)


@dataclass(frozen=True)
class ComplementReport:
    S_rank: int
    S_qsymbol: GenusSymbol
    T_rank: int
    T_qsymbol: GenusSymbol
    T_root_type: RootSystemType
    S: Sublattice = field(repr=False, compare=False)
    T: Sublattice = field(repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "S_rank": self.S_rank,
            "S_qsymbol": str(self.S_qsymbol),
            "T_rank": self.T_rank,
            "T_qsymbol": str(self.T_qsymbol),
            "T_root_type": str(self.T_root_type),
        }


def _symbol(s: Sublattice) -> GenusSymbol:
    if s.rank == 0:
        return GenusSymbol()
    return jordan_normal_form(fqf_from_lattice(s.lattice()))


def complement_report(n: NiemeierLattice, generators) -> ComplementReport:
    """Primitive closure S of the generators and its complement T in ``n``.

    Generators are given in root coordinates.
    """
    rows = [n.to_lattice_coords(v) for v in generators]
    s = Sublattice(n.lattice, saturate(rows, 24))
    if s.rank and not s.is_nondegenerate():
        raise LatticeError("degenerate sublattice")
    t = orthogonal_complement(n.lattice, s)
    if s.rank + t.rank != 24:
        raise LatticeError("degenerate sublattice")
    qs, qt = _symbol(s), _symbol(t)
    expected = jordan_normal_form(fqf_negate(fqf_from_lattice(s.lattice()))) if s.rank else GenusSymbol()
    if qt != expected:
        raise AssertionError(f"complement form {qt} is not minus {qs}")
    # Every root of n lies in the root sum, so the roots of T are those
    # orthogonal to S.
    g = n.root_gram
    s_root = [n.to_root_coords(v) for v in s.basis.rows]
    gs = [[sum(g[a, b] * v[b] for b in range(24) if g[a, b]) for a in range(24)] for v in s_root]
    t_roots = [r for r in n.roots() if all(sum(x * y for x, y in zip(r, w) if x) == 0 for w in gs)]
    t_type = classify_roots(t_roots, g).type
    return ComplementReport(s.rank, qs, t.rank, qt, t_type, s, t)

