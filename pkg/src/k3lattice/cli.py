"""Command line interface.

Exit status: 0 on success, 1 on a failed check or bad data, 2 on usage
errors.  ``--json`` prints one JSON object per report line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .lattice import Lattice, LatticeError, discriminant_group
from .linalg import IntMatrix
from .qforms import (
    DEFAULT_BOUND,
    NotRealizable,
    SymbolParseError,
    canonical_symbol,
    fqf_from_lattice,
    fqf_from_symbol,
    jordan_normal_form,
    oracle_compare,
    parse_symbol,
    symbol_direct_sum,
    symbols_equivalent,
)

__all__ = ["main", "run", "CliConfig"]


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    data_dir: Path
    oracle_bound: int = DEFAULT_BOUND
    include_old: bool = False
    output: str = "text"

    def __post_init__(self):
        if self.oracle_bound < 4:
            raise UsageError("--oracle-bound must be at least 4")
        if not self.data_dir.is_dir():
            raise DataError(f"data directory {self.data_dir} does not exist")
        if self.output not in ("text", "json"):
            raise UsageError("output must be text or json")


def _default_data_dir() -> Path:
    env = os.environ.get("K3LATTICE_DATA_DIR")
    return Path(env) if env else Path(__file__).parent / "data"


class _Out:
    def __init__(self, cfg: CliConfig, stream):
        self.json = cfg.output == "json"
        self.stream = stream

    def value(self, name: str, value):
        """A single result: bare value in text mode."""
        if self.json:
            print(json.dumps({name: value}), file=self.stream)
        else:
            print(_text(value), file=self.stream)

    def fields(self, data: dict):
        if self.json:
            print(json.dumps(data), file=self.stream)
        else:
            for k, v in data.items():
                print(f"{k}: {_text(v)}", file=self.stream)

    def line(self, data: dict, text: str):
        print(json.dumps(data) if self.json else text, file=self.stream)


def _text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(_text(x) for x in v) if v else "-"
    if v == "":
        return "-"
    return str(v)


def _read_lattice(path: str) -> Lattice:
    """JSON ``{"name", "rank", "gram"}`` or whitespace separated integer rows."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise DataError(f"{path}: {e.strerror}") from None
    try:
        if text.lstrip().startswith("{"):
            return Lattice.from_dict(json.loads(text))
        rows = [[int(x) for x in line.split()] for line in text.splitlines() if line.split("#")[0].strip()]
        return Lattice(IntMatrix(rows), p.stem)
    except (ValueError, KeyError, LatticeError) as e:
        raise DataError(f"{path}: {e}") from None


def _read_vectors(path: str) -> list[list[Fraction]]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise DataError(f"{path}: {e.strerror}") from None
    out = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#")[0].strip()
        if not line:
            continue
        try:
            out.append([Fraction(x) for x in line.replace(",", " ").split()])
        except ValueError:
            raise DataError(f"{path}:{lineno}: bad rational") from None
        if len(out[-1]) != 24:
            raise DataError(f"{path}:{lineno}: expected 24 coordinates, got {len(out[-1])}")
    return out


def _symbol(text: str):
    try:
        return parse_symbol("" if text == "-" else text)
    except SymbolParseError as e:
        raise UsageError(f"bad genus symbol {text!r}: {e}") from None


def cmd_lattice_info(args, cfg, out):
    lat = _read_lattice(args.file)
    d = discriminant_group(lat)
    pos, neg = lat.signature()
    q = jordan_normal_form(fqf_from_lattice(lat))
    out.fields(
        {
            "name": lat.name or "",
            "rank": lat.rank,
            "det": lat.det,
            "signature": [pos, neg],
            "unimodular": lat.is_unimodular(),
            "discriminant_orders": list(d.orders),
            "qsymbol": str(q),
        }
    )
    return 0


def cmd_qform_symbol(args, cfg, out):
    lat = _read_lattice(args.file)
    out.value("symbol", str(jordan_normal_form(fqf_from_lattice(lat))))
    return 0


def cmd_qform_sum(args, cfg, out):
    s = symbol_direct_sum(_symbol(args.sym1), _symbol(args.sym2))
    if args.canonical:
        s = canonical_symbol(s)
    out.value("symbol", str(s))
    return 0


def cmd_qform_eq(args, cfg, out):
    a, b = _symbol(args.sym1), _symbol(args.sym2)
    eq = symbols_equivalent(a, b)
    if not args.oracle:
        out.value("equivalent", eq)
        return 0 if eq else 1
    try:
        qa, qb = fqf_from_symbol(a), fqf_from_symbol(b)
    except NotRealizable as e:
        raise DataError(str(e)) from None
    if max(qa.order, qb.order) > cfg.oracle_bound:
        verdict = "skipped (group order above --oracle-bound)"
    else:
        verdict = oracle_compare(qa, qb, cfg.oracle_bound).status
    out.fields({"equivalent": eq, "oracle": verdict})
    agree = verdict.startswith("skipped") or verdict == "indistinguishable" or (verdict == "isomorphic") == eq
    return 0 if eq and agree else 1


def cmd_roots_classify(args, cfg, out):
    from .roots import classify_root_system

    lat = _read_lattice(args.file)
    try:
        rs = classify_root_system(lat)
    except LatticeError as e:
        raise DataError(f"{args.file}: {e}") from None
    out.fields({"root_type": str(rs.type), "roots": len(rs.roots), "span_rank": rs.span_rank})
    return 0


def cmd_niemeier_build(args, cfg, out):
    from .niemeier import NiemeierError, build_niemeier, load_index

    try:
        n = build_niemeier(args.root_system)
    except NiemeierError as e:
        raise DataError(str(e)) from None
    js = sorted(j for j, name in load_index().items() if name == n.name)
    out.fields(
        {
            "root_system": n.name,
            "rank": n.lattice.rank,
            "det": n.lattice.det,
            "even": True,
            "roots": n.root_system.num_roots,
            "glue_generators": len(n.glue),
            "j": js,
        }
    )
    return 0


def cmd_niemeier_complement(args, cfg, out):
    from .niemeier import NiemeierError, build_niemeier, complement_report

    try:
        n = build_niemeier(args.root_system)
        rep = complement_report(n, _read_vectors(args.vectors))
    except (NiemeierError, LatticeError) as e:
        raise DataError(str(e)) from None
    out.fields(rep.to_dict())
    return 0


def _model():
    from .degen import LoadError, load_tables

    try:
        return load_tables()
    except LoadError as e:
        raise DataError(str(e)) from None


def cmd_verify_tables(args, cfg, out):
    from .degen import verify_all

    results = verify_all(_model(), only=args.only, include_old=cfg.include_old)
    counts = {"pass": 0, "fail": 0, "warn": 0}
    for r in results:
        counts[r.status] += 1
        out.line(r.to_dict(), str(r))
    out.line({"summary": counts}, f"checks: {counts['pass']} pass, {counts['fail']} fail, {counts['warn']} warn")
    return 1 if counts["fail"] else 0


def cmd_lookup(args, cfg, out):
    from .degen import genus_lookup

    found = genus_lookup(_model(), args.rk, _symbol(args.symbol), include_old=cfg.include_old)
    for r in found:
        data = {
            "key": r.key,
            "group": r.group_name,
            "rk_S": r.rk_S,
            "q_S": str(r.q_S),
            "unique": r.unique_flag,
            "old": r.old_flag,
            "source": r.source,
        }
        flags = ("*" if r.unique_flag else "") + ("o" if r.old_flag else "")
        out.line(data, f"{r.key}  rk {r.rk_S}  {r.q_S}  {r.group_name} {flags}".rstrip())
    if not found:
        out.line({"matches": 0}, "no match")
    return 0


def build_parser() -> argparse.ArgumentParser:
    # Global flags are accepted before or after the subcommand; the copies
    # on subcommands must not reset values given earlier.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="one JSON object per output line")
    common.add_argument("--oracle-bound", type=int, default=argparse.SUPPRESS, help="largest group order for brute force")

    p = argparse.ArgumentParser(prog="k3lattice", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="one JSON object per output line")
    p.add_argument("--oracle-bound", type=int, default=DEFAULT_BOUND, help="largest group order for brute force")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    lat = sub.add_parser("lattice", help="lattice invariants").add_subparsers(dest="action", metavar="action")
    lat.required = True
    x = lat.add_parser("info", parents=[common], help="rank, determinant, signature, discriminant form")
    x.add_argument("file")
    x.set_defaults(func=cmd_lattice_info)

    qf = sub.add_parser("qform", help="genus symbols").add_subparsers(dest="action", metavar="action")
    qf.required = True
    x = qf.add_parser("symbol", parents=[common], help="genus symbol of a lattice's discriminant form")
    x.add_argument("file")
    x.set_defaults(func=cmd_qform_symbol)
    x = qf.add_parser("sum", parents=[common], help="orthogonal sum of two symbols")
    x.add_argument("sym1")
    x.add_argument("sym2")
    x.add_argument("--canonical", action="store_true", help="print the canonical representative")
    x.set_defaults(func=cmd_qform_sum)
    x = qf.add_parser("eq", parents=[common], help="are two symbols the same form")
    x.add_argument("sym1")
    x.add_argument("sym2")
    x.add_argument("--oracle", action="store_true", help="also compare by brute force")
    x.set_defaults(func=cmd_qform_eq)

    rt = sub.add_parser("roots", help="root systems").add_subparsers(dest="action", metavar="action")
    rt.required = True
    x = rt.add_parser("classify", parents=[common], help="ADE type of the roots of a definite lattice")
    x.add_argument("file")
    x.set_defaults(func=cmd_roots_classify)

    nm = sub.add_parser("niemeier", help="Niemeier lattices").add_subparsers(dest="action", metavar="action")
    nm.required = True
    x = nm.add_parser("build", parents=[common], help="build and certify")
    x.add_argument("root_system")
    x.set_defaults(func=cmd_niemeier_build)
    x = nm.add_parser("complement", parents=[common], help="report on S and its complement")
    x.add_argument("root_system")
    x.add_argument("vectors", help="file of vectors in root coordinates, one per line")
    x.set_defaults(func=cmd_niemeier_complement)

    vf = sub.add_parser("verify", help="verification battery").add_subparsers(dest="action", metavar="action")
    vf.required = True
    x = vf.add_parser("tables", parents=[common], help="check every shipped table")
    x.add_argument("--only", choices=["d6", "c4", "codim1"])
    x.add_argument("--include-old", action="store_true", help="include rows flagged o in genus lookups")
    x.set_defaults(func=cmd_verify_tables)

    x = sub.add_parser("lookup", parents=[common], help="records with a given rank and genus symbol")
    x.add_argument("rk", type=int)
    x.add_argument("symbol")
    x.add_argument("--include-old", action="store_true", help="include rows flagged o")
    x.set_defaults(func=cmd_lookup)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = CliConfig(
            _default_data_dir(),
            args.oracle_bound,
            getattr(args, "include_old", False),
            "json" if args.json else "text",
        )
        return args.func(args, cfg, _Out(cfg, stdout))
    except UsageError as e:
        print(f"k3lattice: {e}", file=stderr)
        return 2
    except DataError as e:
        print(f"k3lattice: {e}", file=stderr)
        return 1


def main() -> None:
    sys.exit(run())
