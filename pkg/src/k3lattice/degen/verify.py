"""The verification battery over a loaded table model."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..niemeier import load_index
from ..qforms import (
    GenusSymbol,
    NotRealizable,
    canonical_symbol,
    fqf_from_lattice,
    fqf_from_symbol,
    jordan_normal_form,
    signature_mod8,
    symbol_direct_sum,
)
from ..qforms.symbol import prime_power
from ..roots import RootSystemType
from .grammar import pairwise_anomalies
from .records import DegenerationRecord, LoadError, MarkingRecord, OldCaseRecord, TableModel

__all__ = [
    "CheckResult",
    "verify_record",
    "verify_reduction",
    "check_reduction",
    "verify_marking_bounds",
    "verify_old_case",
    "genus_lookup",
    "verify_all",
    "root_form",
]

PASS, FAIL, WARN = "pass", "fail", "warn"


@dataclass(frozen=True)
class CheckResult:
    key: str
    check: str
    status: str  # pass | fail | warn
    details: str = ""

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return {"key": self.key, "check": self.check, "status": self.status, "details": self.details}

    def __str__(self) -> str:
        return f"{self.status.upper():4}  {self.check:<16} {self.key}" + (f"  [{self.details}]" if self.details else "")


def _result(key: str, check: str, ok: bool, details: str = "") -> CheckResult:
    return CheckResult(key, check, PASS if ok else FAIL, details)


@lru_cache(maxsize=None)
def root_form(r: RootSystemType) -> GenusSymbol:
    """Canonical discriminant symbol of an ADE sum."""
    if not r.components:
        return GenusSymbol()
    return jordan_normal_form(fqf_from_lattice(r.lattice()))


def verify_record(r: DegenerationRecord) -> list[CheckResult]:
    out = []
    t = r.deg.t
    out.append(_result(r.key, "rank-law", r.rk_S == r.rk_SG + t, f"{r.rk_S} vs {r.rk_SG} + {t}"))
    res = signature_mod8(r.q_S)
    want = -r.rk_S % 8
    out.append(_result(r.key, "milgram", res == want, f"residue {res}, -rk S = {want} mod 8"))
    long = [p for p in r.q_S.primes if r.q_S.length(p) > r.rk_S]
    out.append(_result(r.key, "p-length", not long, ", ".join(f"l_{p} = {r.q_S.length(p)}" for p in r.q_S.primes)))
    bad = [str(c) for c in r.q_S.constituents if prime_power(c.scale) != (c.p, c.k)]
    out.append(_result(r.key, "well-formed", not bad, ", ".join(bad)))
    try:
        back = jordan_normal_form(fqf_from_symbol(r.q_S))
        ok = back == canonical_symbol(r.q_S)
        out.append(_result(r.key, "realizable", ok, "" if ok else f"realized as {back}"))
    except NotRealizable as e:
        out.append(_result(r.key, "realizable", False, str(e)))
    if any(c.status == FAIL for c in out) and r.tex:
        out = [CheckResult(c.key, c.check, c.status, f"{c.details}; tex: {r.tex}") if c.status == FAIL else c
               for c in out]
    return out


def check_reduction(m: MarkingRecord, model: TableModel) -> CheckResult:
    """``q(R) + q_S(ref)`` against ``q_S`` of the marked degeneration."""
    if m.reduction is None:
        raise ValueError("marking has no reduction")
    this = model.resolve(m.group_n, m.deg_text)
    ref = model.resolve(m.group_n, m.reduction.ref)
    if this is None or ref is None:
        missing = m.deg_text if this is None else m.reduction.ref
        raise LoadError(f"{m.source}: missing record n={m.group_n} | {missing}")
    r = m.reduction.summand
    ranks = r.rank + ref.rk_S == this.rk_S
    total = canonical_symbol(symbol_direct_sum(root_form(r), ref.q_S))
    want = canonical_symbol(this.q_S)
    ok = ranks and total == want
    details = f"rk {r.rank} + {ref.rk_S} vs {this.rk_S}; {total} vs {want}"
    if not ok and m.tex:
        details += f"; tex: {m.tex}"
    return _result(m.key, "reduction", ok, details)


def verify_reduction(m: MarkingRecord, model: TableModel) -> bool:
    return check_reduction(m, model).passed


_CONTAINS = {
    # family of the small component -> families of components that can hold it, with rank condition
    "A": lambda n, f, m: (f == "A" and n <= m) or (f == "D" and n + 1 <= m) or (f == "D" and n <= 3 and m >= 4)
    or (f == "E" and n <= m),
    "D": lambda n, f, m: (f == "D" and n <= m) or (f == "E" and n <= m - 1),
    "E": lambda n, f, m: f == "E" and n <= m,
}


def verify_marking_bounds(m: MarkingRecord, model: TableModel, index: dict[int, str] | None = None) -> list[CheckResult]:
    """Rank bound on the roots of S^perp; with a j map, a componentwise
    containment test, reported as conditional on that map."""
    out = []
    this = model.resolve(m.group_n, m.deg_text)
    if this is None:
        return [_result(m.key, "marking-ref", False, f"no record for {m.deg_text}")]
    if m.complement_roots is None:
        return out
    rk = m.complement_roots.rank
    out.append(_result(m.key, "marking-rank", rk <= 24 - this.rk_S, f"{m.complement_roots}: {rk} <= 24 - {this.rk_S}"))
    if index is not None and m.j is not None:
        name = index.get(m.j)
        if name is None or name == "Leech":
            out.append(CheckResult(m.key, "marking-embed", WARN, f"j={m.j} has no root system in the map"))
        else:
            amb = RootSystemType.parse(name)
            misfit = [
                f"{f}{n}"
                for f, n in m.complement_roots.components
                if not any(_CONTAINS[f](n, g, k) for g, k in amb.components)
            ]
            status = PASS if not misfit else WARN
            out.append(
                CheckResult(
                    m.key,
                    "marking-embed",
                    status,
                    f"conditional on mapping j={m.j} -> {name}" + (f"; no room for {', '.join(misfit)}" if misfit else ""),
                )
            )
    return out


def verify_old_case(o: OldCaseRecord, model: TableModel) -> list[CheckResult]:
    out = []
    small = model.resolve(o.small_n, o.small_deg_text)
    if small is None:
        out.append(_result(o.key, "old-listed", False, "left side not in the tables"))
    else:
        out.append(_result(o.key, "old-listed", small.old_flag, "" if small.old_flag else "row is not flagged o"))
    g_small, g_big = model.groups.get(o.small_n), model.groups.get(o.big_n)
    if g_small is None or g_big is None:
        missing = o.small_n if g_small is None else o.big_n
        out.append(_result(o.key, "old-order", False, f"group n={missing} unknown"))
    else:
        out.append(_result(o.key, "old-order", g_big.order > g_small.order, f"|G| {g_small.order} -> {g_big.order}"))
    ts, tb = o.small_deg.t, o.big_deg.t
    out.append(_result(o.key, "old-orbits", tb < ts, f"orbits {ts} -> {tb}"))
    for side in (o.small_deg, o.big_deg):
        for msg in pairwise_anomalies(side):
            out.append(CheckResult(o.key, "matrix-entries", WARN, msg))
    return out


def genus_lookup(model: TableModel, rk: int, q, include_old: bool = False) -> list[DegenerationRecord]:
    """Records of any group with this rank and genus symbol (up to equivalence)."""
    want = canonical_symbol(q)
    return [
        r
        for key, r in sorted(model.records.items(), key=lambda kv: (kv[1].group_n, kv[0]))
        if r.rk_S == rk and model.canonical_q(key) == want and (include_old or not r.old_flag)
    ]


_GROUP_FILES = {"d6": (6,), "c4": (4,)}


def verify_all(
    model: TableModel,
    only: str | None = None,
    include_old: bool = False,
    index: dict[int, str] | None = None,
) -> list[CheckResult]:
    """Every check, in a fixed order: records, reductions, markings, old cases.

    ``only`` restricts to ``d6`` or ``c4`` (their tables, markings and old
    cases) or ``codim1`` (the codimension-1 table).  Each record is also
    looked up by its genus; rows flagged o take part in that lookup only
    with ``include_old``.
    """
    if index is None:
        try:
            index = load_index()
        except OSError:
            index = None

    def wanted_record(key: str) -> bool:
        if only is None:
            return True
        srcs = model.sources[key]
        if only == "codim1":
            return any(s.startswith("codim1.table") for s in srcs)
        return any(s.startswith(f"{only}.table") for s in srcs)

    def wanted_n(n: int, source: str) -> bool:
        return only is None or (only in _GROUP_FILES and source.startswith(only + "."))

    out: list[CheckResult] = []
    for msg in model.violations:
        out.append(CheckResult(msg.split(": ", 1)[0], "load", FAIL, msg.split(": ", 1)[1]))
    for key in sorted(model.records, key=lambda k: (model.records[k].group_n, model.records[k].source)):
        if wanted_record(key):
            r = model.records[key]
            out.extend(verify_record(r))
            if include_old or not r.old_flag:
                found = genus_lookup(model, r.rk_S, r.q_S, include_old)
                out.append(_result(key, "lookup", r in found, f"{len(found)} record(s) share this genus"))
    for m in model.markings:
        if not wanted_n(m.group_n, m.source):
            continue
        if m.reduction is not None:
            out.append(check_reduction(m, model))
        else:
            out.extend(verify_marking_bounds(m, model, index))
    for o in model.old_cases:
        if wanted_n(o.small_n, o.source):
            out.extend(verify_old_case(o, model))
    return out
