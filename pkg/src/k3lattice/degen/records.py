"""Table records and the loader for the shipped transcriptions.

Three kinds of files are read, told apart by suffix:

``*.table``     ``n=<n> <group> <rk S_G> <q_SG> | <deg> <rk S> <q_S> [*] [o]``
                plus ``@group n=<n> order=<o> index=<i> name=<name>`` lines
``*.markings``  ``<group> | <deg> | S=<R>+S(<ref>)`` or
                ``<group> | <deg> | j=<j>[*] H=<H> orbits=<labels> perp=<roots>``
``*.old``       ``n=<n> | <deg> <= n=<n> | <deg>``

``# tex:`` comments are attached to the next record.  A symbol written as
``-`` is the empty symbol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..niemeier import data_dir
from ..qforms import GenusSymbol, SymbolParseError, canonical_symbol, parse_symbol
from ..roots import RootSystemType
from .grammar import DegenerationError, DegenerationType, parse_degeneration

__all__ = [
    "LoadError",
    "GroupInfo",
    "DegenerationRecord",
    "Reduction",
    "MarkingRecord",
    "OldCaseRecord",
    "TableModel",
    "load_tables",
    "default_paths",
]


class LoadError(ValueError):
    pass


@dataclass(frozen=True)
class GroupInfo:
    n: int
    order: int
    index: int
    name: str


@dataclass(frozen=True)
class DegenerationRecord:
    group_n: int
    group_name: str
    rk_SG: int
    q_SG: GenusSymbol
    deg: DegenerationType
    deg_text: str
    rk_S: int
    q_S: GenusSymbol
    unique_flag: bool = False
    old_flag: bool = False
    source: str = ""
    tex: str = ""

    @property
    def key(self) -> str:
        return f"n={self.group_n} | {self.deg_text}"

    def same_data(self, other: "DegenerationRecord") -> bool:
        return (self.group_n, self.group_name, self.rk_SG, self.rk_S, self.deg_text) == (
            other.group_n,
            other.group_name,
            other.rk_SG,
            other.rk_S,
            other.deg_text,
        ) and canonical_symbol(self.q_S) == canonical_symbol(other.q_S)


@dataclass(frozen=True)
class Reduction:
    summand: RootSystemType
    ref: str  # degeneration text, or "base"


@dataclass(frozen=True)
class MarkingRecord:
    group_name: str
    group_n: int
    deg_text: str
    deg: DegenerationType
    reduction: Reduction | None = None
    j: int | None = None
    j_unique: bool = False
    H: str = ""
    orbit_labels: str = ""
    complement_roots: RootSystemType | None = None
    source: str = ""
    tex: str = ""

    @property
    def key(self) -> str:
        if self.reduction:
            r = self.reduction
            what = f"S={r.summand}+S({r.ref})" if r.summand.components else f"S=S({r.ref})"
        else:
            what = f"j={self.j} {self.H}"
        return f"n={self.group_n} | {self.deg_text} | {what}"


@dataclass(frozen=True)
class OldCaseRecord:
    small_n: int
    small_deg_text: str
    small_deg: DegenerationType
    big_n: int
    big_deg_text: str
    big_deg: DegenerationType
    source: str = ""
    tex: str = ""

    @property
    def key(self) -> str:
        return f"n={self.small_n} | {self.small_deg_text} <= n={self.big_n} | {self.big_deg_text}"


@dataclass
class TableModel:
    groups: dict[int, GroupInfo] = field(default_factory=dict)
    records: dict[str, DegenerationRecord] = field(default_factory=dict)
    sources: dict[str, list[str]] = field(default_factory=dict)
    markings: list[MarkingRecord] = field(default_factory=list)
    old_cases: list[OldCaseRecord] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    _loose: dict[tuple[int, str], list[str]] = field(default_factory=dict, repr=False)
    _canonical: dict[str, GenusSymbol] = field(default_factory=dict, repr=False)

    def canonical_q(self, key: str) -> GenusSymbol:
        if key not in self._canonical:
            self._canonical[key] = canonical_symbol(self.records[key].q_S)
        return self._canonical[key]

    def add_record(self, r: DegenerationRecord) -> None:
        if r.key in self.records:
            prev = self.records[r.key]
            if prev.source.split(":")[0] == r.source.split(":")[0]:
                raise LoadError(f"{r.source}: duplicate key {r.key} (first at {prev.source})")
            if not prev.same_data(r):
                raise LoadError(f"{r.source}: {r.key} disagrees with {prev.source}")
            self.sources[r.key].append(r.source)
            self.records[r.key] = replace(
                prev, unique_flag=prev.unique_flag or r.unique_flag, old_flag=prev.old_flag or r.old_flag
            )
            return
        self.records[r.key] = r
        self.sources[r.key] = [r.source]
        self._loose.setdefault((r.group_n, r.deg.key()), []).append(r.key)

    def group_n(self, name: str) -> int:
        ns = sorted({r.group_n for r in self.records.values() if r.group_name == name})
        ns += [g.n for g in self.groups.values() if g.name == name and g.n not in ns]
        if len(ns) != 1:
            raise LoadError(f"group {name!r} is {'unknown' if not ns else 'ambiguous'}")
        return ns[0]

    def base(self, n: int) -> DegenerationRecord | None:
        return self.records.get(f"n={n} | -")

    def resolve(self, n: int, text: str) -> DegenerationRecord | None:
        """Record of group n with degeneration ``text``.

        Exact text first; otherwise a unique match up to the order of
        orbits and ambient components.
        """
        if text == "base":
            return self.base(n)
        exact = self.records.get(f"n={n} | {text}")
        if exact is not None:
            return exact
        try:
            key = parse_degeneration(text).key()
        except DegenerationError:
            return None
        found = self._loose.get((n, key), [])
        return self.records[found[0]] if len(found) == 1 else None

    def __len__(self) -> int:
        return len(self.records)


_ROW = re.compile(r"n=(\d+)\s+(\S+)\s+(\d+)\s+(\S+)\s*\|\s*(\S+)\s+(\d+)\s+(\S+)((?:\s+[*o])*)\s*$")
_GROUP = re.compile(r"@group\s+n=(\d+)\s+order=(\d+)\s+index=(\d+)\s+name=(\S+)\s*$")
_REDUCTION = re.compile(r"S=(?:(.*?)\+)?S\((.*)\)$")
_MARKING = re.compile(r"j=(\d+)(\*?)\s+H=(\S+)\s+orbits=(\S*)\s+perp=(\S+)$")
_OLD = re.compile(r"n=(\d+)\s*\|\s*(\S+)\s*<=\s*n=(\d+)\s*\|\s*(\S+)$")


def _symbol(text: str, where: str) -> GenusSymbol:
    if text == "-":
        return GenusSymbol()
    try:
        return parse_symbol(text)
    except SymbolParseError as e:
        raise LoadError(f"{where}: {e}") from None


def _deg(text: str, where: str) -> DegenerationType:
    try:
        return parse_degeneration(text)
    except DegenerationError as e:
        raise LoadError(f"{where}: {e}") from None


def _lines(path: Path):
    tex: list[str] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# tex:"):
                tex.append(line[6:].strip())
            continue
        yield f"{path.name}:{lineno}", line, "\n".join(tex)
        tex = []


def _load_table(model: TableModel, path: Path) -> None:
    for where, line, tex in _lines(path):
        m = _GROUP.match(line)
        if m:
            n, order, index, name = m.groups()
            model.groups[int(n)] = GroupInfo(int(n), int(order), int(index), name)
            continue
        m = _ROW.match(line)
        if not m:
            raise LoadError(f"{where}: cannot parse row {line!r}")
        n, gname, rk_sg, q_sg, deg_text, rk_s, q_s, flags = m.groups()
        deg = _deg(deg_text, where)
        r = DegenerationRecord(
            int(n),
            gname,
            int(rk_sg),
            _symbol(q_sg, where),
            deg,
            deg_text,
            int(rk_s),
            _symbol(q_s, where),
            "*" in flags,
            "o" in flags,
            where,
            tex,
        )
        if r.rk_S != r.rk_SG + deg.t:
            model.violations.append(f"{where}: rank law rk S = {r.rk_S} but rk S_G + t = {r.rk_SG} + {deg.t}")
        model.add_record(r)


def _load_markings(model: TableModel, path: Path) -> None:
    for where, line, tex in _lines(path):
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 3:
            raise LoadError(f"{where}: expected '<group> | <deg> | <data>'")
        gname, deg_text, data = fields
        n = model.group_n(gname)
        deg = _deg(deg_text, where)
        m = _REDUCTION.match(data)
        if m:
            try:
                summand = RootSystemType.parse(m.group(1) or "")
            except ValueError as e:
                raise LoadError(f"{where}: {e}") from None
            ref = m.group(2)
            if model.resolve(n, ref) is None:
                raise LoadError(f"{where}: reduction refers to missing record n={n} | {ref}")
            model.markings.append(
                MarkingRecord(gname, n, deg_text, deg, reduction=Reduction(summand, ref), source=where, tex=tex)
            )
            continue
        m = _MARKING.match(data)
        if not m:
            raise LoadError(f"{where}: cannot parse marking {data!r}")
        j, star, h, orbits, perp = m.groups()
        try:
            roots = RootSystemType.parse(perp)
        except ValueError as e:
            raise LoadError(f"{where}: {e}") from None
        model.markings.append(
            MarkingRecord(
                gname, n, deg_text, deg, None, int(j), bool(star), h, orbits, roots, source=where, tex=tex
            )
        )


def _load_old(model: TableModel, path: Path) -> None:
    for where, line, tex in _lines(path):
        m = _OLD.match(line)
        if not m:
            raise LoadError(f"{where}: cannot parse old case {line!r}")
        sn, sdeg, bn, bdeg = m.groups()
        model.old_cases.append(
            OldCaseRecord(int(sn), sdeg, _deg(sdeg, where), int(bn), bdeg, _deg(bdeg, where), where, tex)
        )


def default_paths() -> list[Path]:
    d = data_dir()
    return sorted(p for p in d.iterdir() if p.suffix in (".table", ".markings", ".old"))


def load_tables(paths=None) -> TableModel:
    """Load table, marking and old-case files into one cross-linked model.

    Tables are read before markings and old cases so references resolve
    regardless of the order of ``paths``.
    """
    paths = [Path(p) for p in (default_paths() if paths is None else paths)]
    for p in paths:
        if not p.exists():
            raise LoadError(f"{p}: no such file")
        if p.suffix not in (".table", ".markings", ".old"):
            raise LoadError(f"{p}: unknown file kind (expected .table, .markings or .old)")
    model = TableModel()
    for p in paths:
        if p.suffix == ".table":
            _load_table(model, p)
    for p in paths:
        if p.suffix == ".markings":
            _load_markings(model, p)
        elif p.suffix == ".old":
            _load_old(model, p)
    return model
