"""Degeneration types and their text grammar.

    deg      := "-" | item | group "<" ambient
    item     := diagram | "(" diagram ")" VARIANT | group VARIANT
    group    := "(" item ("," item)* ")" | "matrix[" row (";" row)* "]"
    row      := "(" item ("," item)* ")"
    diagram  := COMPONENT ("+" COMPONENT)*
    ambient  := part ("+" part)* VARIANT?
    part     := COMPONENT | "(" diagram ")" VARIANT
    VARIANT  := "_" (digits | "I" | "II" | ...)

A component is ``COUNT? FAMILY RANK`` such as ``3A1`` or ``D4``.  Orbits
of nested groups are flattened, so ``(A1,(4A1,4A1)_1)<9A1`` has three
orbits.  Matrix row i lists the entries (i, i), (i, i+1), ...; the diagonal
holds the orbits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..roots import RootSystemType

__all__ = [
    "DegenerationError",
    "Component",
    "Diagram",
    "Group",
    "Matrix",
    "DegenerationType",
    "parse_degeneration",
    "parse_diagram",
    "pairwise_anomalies",
]


class DegenerationError(ValueError):
    pass


_COMPONENT = re.compile(r"(\d*)([ADE])(\d+)")
_VARIANT = re.compile(r"_(\d+|[IVX]+)")


@dataclass(frozen=True)
class Component:
    count: int
    family: str
    rank: int

    @property
    def vertices(self) -> int:
        return self.count * self.rank

    def __str__(self) -> str:
        return f"{self.count if self.count > 1 else ''}{self.family}{self.rank}"


@dataclass(frozen=True)
class Diagram:
    """Components in written order; ``variant`` marks a ``(...)_V`` form."""

    parts: tuple[Union[Component, "Diagram"], ...]
    variant: str | None = None

    @property
    def vertices(self) -> int:
        return sum(p.vertices for p in self.parts)

    @property
    def root_type(self) -> RootSystemType:
        comps = []
        for p in self.parts:
            if isinstance(p, Component):
                comps.extend([(p.family, p.rank)] * p.count)
            else:
                comps.extend(p.root_type.components)
        return RootSystemType(tuple(comps))

    def orbits(self) -> tuple["Diagram", ...]:
        return (self,)

    def loose(self) -> str:
        v = f"_{self.variant}" if self.variant else ""
        return f"{self.root_type}{v}"

    def __str__(self) -> str:
        inner = "+".join(str(p) for p in self.parts)
        return f"({inner})_{self.variant}" if self.variant else inner


@dataclass(frozen=True)
class Group:
    items: tuple["Item", ...]
    variant: str | None = None

    def orbits(self) -> tuple[Diagram, ...]:
        return tuple(o for it in self.items for o in it.orbits())

    def loose(self) -> str:
        v = f"_{self.variant}" if self.variant else ""
        return "(" + ",".join(sorted(it.loose() for it in self.items)) + ")" + v

    def __str__(self) -> str:
        v = f"_{self.variant}" if self.variant else ""
        return "(" + ",".join(str(i) for i in self.items) + ")" + v


@dataclass(frozen=True)
class Matrix:
    rows: tuple[tuple["Item", ...], ...]
    variant: str | None = None

    @property
    def diagonal(self) -> tuple["Item", ...]:
        return tuple(r[0] for r in self.rows)

    def orbits(self) -> tuple[Diagram, ...]:
        return tuple(o for it in self.diagonal for o in it.orbits())

    def entry(self, i: int, j: int) -> "Item":
        i, j = min(i, j), max(i, j)
        return self.rows[i][j - i]

    def loose(self) -> str:
        v = f"_{self.variant}" if self.variant else ""
        return "(" + ",".join(sorted(it.loose() for it in self.diagonal)) + ")" + v

    def __str__(self) -> str:
        v = f"_{self.variant}" if self.variant else ""
        return "matrix[" + ";".join("(" + ",".join(str(i) for i in r) + ")" for r in self.rows) + "]" + v


Item = Union[Diagram, Group, Matrix]


def _vertices(item: Item) -> int:
    return sum(o.vertices for o in item.orbits())


@dataclass(frozen=True)
class DegenerationType:
    """A degeneration: its orbits inside an ambient diagram.

    ``structure`` is None for the base row, a Diagram for codimension 1,
    otherwise the Group or Matrix before ``<``.
    """

    structure: Item | None
    ambient: Diagram | None = None
    variant: str | None = None

    @property
    def orbits(self) -> tuple[Diagram, ...]:
        return () if self.structure is None else self.structure.orbits()

    @property
    def t(self) -> int:
        return len(self.orbits)

    @property
    def ambient_diagram(self) -> Diagram | None:
        if self.ambient is not None:
            return self.ambient
        return self.structure if isinstance(self.structure, Diagram) else None

    @property
    def pairwise(self) -> Matrix | None:
        return self.structure if isinstance(self.structure, Matrix) else None

    @property
    def vertices(self) -> int:
        return sum(o.vertices for o in self.orbits)

    def key(self) -> str:
        """Order-insensitive key: orbit multiset, ambient root type, variants.

        Matrix entries are ignored, so a matrix and the plain tuple of its
        diagonal share a key.
        """
        if self.structure is None:
            return "-"
        s = self.structure.loose()
        if self.ambient is None:
            return s
        parts = sorted(p.loose() if isinstance(p, Diagram) else str(p) for p in self.ambient.parts)
        amb = str(self.ambient.root_type) + "|" + ",".join(p for p in parts if "_" in p)
        v = f"_{self.variant}" if self.variant else ""
        return f"{s}<{amb}{v}"

    def __str__(self) -> str:
        if self.structure is None:
            return "-"
        if self.ambient is None:
            return str(self.structure)
        v = f"_{self.variant}" if self.variant else ""
        return f"{self.structure}<{self.ambient}{v}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise DegenerationError(f"{msg} at offset {self.pos} in {self.text!r}")

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def variant(self) -> str | None:
        m = _VARIANT.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(1)

    def component(self) -> Component:
        m = _COMPONENT.match(self.text, self.pos)
        if not m:
            self.error("expected a Dynkin component")
        count = int(m.group(1) or 1)
        family, rank = m.group(2), int(m.group(3))
        try:
            RootSystemType(((family, rank),))
        except ValueError:
            self.error(f"unknown component {m.group(0)!r}")
        if count < 1:
            self.error("component count must be positive")
        self.pos = m.end()
        return Component(count, family, rank)

    def diagram(self) -> Diagram:
        parts = [self.component()]
        while self.peek("+"):
            self.pos += 1
            parts.append(self.component())
        return Diagram(tuple(parts))

    def _paren_is_diagram(self) -> bool:
        # "(" diagram ")" directly followed by a variant
        m = re.compile(r"\((?:\d*[ADE]\d+)(?:\+\d*[ADE]\d+)*\)").match(self.text, self.pos)
        return bool(m) and _VARIANT.match(self.text, m.end()) is not None and "," not in m.group(0)

    def item(self) -> Item:
        if self.peek("matrix["):
            m = self.matrix()
            return Matrix(m.rows, self.variant() or self.error("nested matrix needs a variant"))
        if self.peek("("):
            if self._paren_is_diagram():
                self.pos += 1
                d = self.diagram()
                self.expect(")")
                return Diagram(d.parts, self.variant())
            g = self.group()
            v = self.variant()
            if v is None:
                self.error("nested group needs a variant")
            return Group(g.items, v)
        return self.diagram()

    def items(self) -> tuple[Item, ...]:
        self.expect("(")
        out = [self.item()]
        while self.peek(","):
            self.pos += 1
            out.append(self.item())
        self.expect(")")
        return tuple(out)

    def group(self) -> Group:
        return Group(self.items())

    def matrix(self) -> Matrix:
        self.expect("matrix[")
        rows = [self.items()]
        while self.peek(";"):
            self.pos += 1
            rows.append(self.items())
        self.expect("]")
        return Matrix(tuple(rows))

    def ambient(self) -> tuple[Diagram, str | None]:
        parts: list = []
        while True:
            if self.peek("("):
                self.pos += 1
                d = self.diagram()
                self.expect(")")
                v = self.variant()
                if v is None:
                    self.error("parenthesized ambient part needs a variant")
                parts.append(Diagram(d.parts, v))
            else:
                parts.append(self.component())
            if not self.peek("+"):
                break
            self.pos += 1
        variant = None
        if isinstance(parts[-1], Component):
            variant = self.variant()
        return Diagram(tuple(parts)), variant


def _check_rows(m: Matrix, text: str) -> None:
    t = len(m.rows)
    for i, row in enumerate(m.rows):
        if len(row) != t - i:
            raise DegenerationError(f"matrix row {i} has {len(row)} entries, expected {t - i} in {text!r}")


def _matrices(item: Item | None):
    if isinstance(item, Matrix):
        yield item
        for it in item.diagonal:
            yield from _matrices(it)
    elif isinstance(item, Group):
        for it in item.items:
            yield from _matrices(it)


def pairwise_anomalies(deg: DegenerationType) -> list[str]:
    """Off-diagonal matrix entries whose vertex count is not diag_i + diag_j.

    The entry (i, j) is the subdiagram of orbits i and j, so its vertices
    should add up; a mismatch points at the source table.
    """
    out = []
    for m in _matrices(deg.structure):
        diag = [_vertices(d) for d in m.diagonal]
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                got = _vertices(m.entry(i, j))
                if got != diag[i] + diag[j]:
                    out.append(f"entry ({i},{j}) {m.entry(i, j)} has {got} vertices, expected {diag[i]} + {diag[j]}")
    return out


def parse_diagram(text: str) -> Diagram:
    p = _Parser(re.sub(r"\s+", "", text))
    d = p.diagram()
    if not p.at_end():
        p.error("trailing characters")
    return d


def parse_degeneration(text: str, strict: bool = False) -> DegenerationType:
    """Parse and check the vertex-count identity.

    With ``strict`` the pairwise matrix entries must also be consistent
    with the diagonal (see ``pairwise_anomalies``).
    """
    text = re.sub(r"\s+", "", text)
    if text == "-":
        return DegenerationType(None)
    p = _Parser(text)
    if not text:
        p.error("empty degeneration")
    if p.peek("matrix["):
        structure: Item = p.matrix()
        ambient_needed = True
    elif p.peek("(") and not p._paren_is_diagram():
        structure = p.group()
        ambient_needed = True
    else:
        structure = p.item()
        ambient_needed = False
    if ambient_needed or p.peek("<"):
        p.expect("<")
        ambient, variant = p.ambient()
    else:
        ambient, variant = None, None
    if not p.at_end():
        p.error("trailing characters")
    deg = DegenerationType(structure, ambient, variant)
    if ambient is not None and ambient.vertices != deg.vertices:
        raise DegenerationError(
            f"vertex count mismatch in {text!r}: orbits have {deg.vertices}, ambient has {ambient.vertices}"
        )
    for m in _matrices(structure):
        _check_rows(m, text)
    if strict:
        bad = pairwise_anomalies(deg)
        if bad:
            raise DegenerationError(f"{bad[0]} in {text!r}")
    return deg

