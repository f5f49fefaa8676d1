"""Acceptance criteria.

Each test prints one line ``ACCEPTANCE <n> PASS|FAIL ...`` (shown even
when pytest captures output) and then asserts the same condition, with the
stated runtime limit.
"""

import itertools
import random
import time
from collections import defaultdict

import pytest

from k3lattice import LatticeError
from k3lattice.degen import (
    genus_lookup,
    load_tables,
    parse_degeneration,
    verify_marking_bounds,
    verify_old_case,
    verify_reduction,
)
from k3lattice.degen.verify import check_reduction
from k3lattice.niemeier import build_niemeier, complement_report, niemeier_names
from k3lattice.qforms import (
    brute_force_isomorphic,
    canonical_symbol,
    find_isometry,
    fqf_direct_sum,
    fqf_from_lattice,
    fqf_negate,
    jordan_normal_form,
    oracle_invariants,
    parse_symbol,
    signature_mod8,
    symbols_equivalent,
)
from k3lattice.roots import RootSystemType, ade_lattice, classify_root_system, enumerate_roots


@pytest.fixture
def report(capsys):
    def emit(n, ok, text):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}  {text}")

    return emit


@pytest.fixture(scope="module")
def model():
    return load_tables()


def table_records(model):
    return [r for key, r in model.records.items() if any(".table" in s for s in model.sources[key])]


def test_1_milgram(model, report):
    anchor = signature_mod8(parse_symbol("2_7^-3,3^+5"))
    rows = table_records(model)
    t0 = time.perf_counter()
    bad = [r.key for r in rows if signature_mod8(r.q_S) != -r.rk_S % 8]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1 and anchor == 1 and len(rows) > 0
    report(1, ok, f"Milgram congruence: {len(rows) - len(bad)}/{len(rows)} rows, anchor residue {anchor}, "
                  f"{dt:.3f} s (limit 1 s)" + (f"; failing: {bad}" if bad else ""))
    assert ok


def test_2_reductions(model, report):
    rows = [m for m in model.markings if m.reduction is not None]
    t0 = time.perf_counter()
    results = [check_reduction(m, model) for m in rows]
    passed = [verify_reduction(m, model) for m in rows]
    dt = time.perf_counter() - t0
    bad = [r for r, p in zip(results, passed) if not p]
    ok = not bad and dt < 5 and len(rows) > 0
    report(2, ok, f"reduction identities: {len(rows) - len(bad)}/{len(rows)} rows, {dt:.3f} s (limit 5 s)"
                  + "".join(f"\n    failing: {r.key}  [{r.details.split('; tex:')[0]}]" for r in bad))
    assert ok


def test_3_rank_law(model, report):
    rows = table_records(model)
    rank_bad = [r.key for r in rows if r.rk_S != r.rk_SG + r.deg.t]
    texts = {r.deg_text for r in model.records.values()} | {m.deg_text for m in model.markings}
    texts |= {o.small_deg_text for o in model.old_cases} | {o.big_deg_text for o in model.old_cases}
    vert_bad = []
    for t in sorted(texts):
        d = parse_degeneration(t)
        if d.ambient is not None and d.ambient.vertices != sum(o.vertices for o in d.orbits):
            vert_bad.append(t)
    ok = not rank_bad and not vert_bad and not model.violations
    report(3, ok, f"rank law {len(rows) - len(rank_bad)}/{len(rows)} rows; vertex identity "
                  f"{len(texts) - len(vert_bad)}/{len(texts)} degeneration strings")
    assert ok


def test_4_root_counts(report):
    expected = {}
    for n in range(1, 11):
        expected[("A", n)] = n * (n + 1)
    for n in range(4, 11):
        expected[("D", n)] = 2 * n * (n - 1)
    expected.update({("E", 6): 72, ("E", 7): 126, ("E", 8): 240})
    t0 = time.perf_counter()
    bad = []
    for (f, n), count in expected.items():
        lat = ade_lattice(f, n)
        got = len(enumerate_roots(lat))
        rs = classify_root_system(lat)
        if got != count or rs.type != RootSystemType(((f, n),)) or rs.span_rank != n:
            bad.append(f"{f}{n}: {got} roots, classified {rs.type}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    report(4, ok, f"root counts and classification: {len(expected) - len(bad)}/{len(expected)} types, "
                  f"{dt:.2f} s (limit 10 s)" + (f"; failing: {bad}" if bad else ""))
    assert ok


ORACLE_TYPES = [("A", n) for n in range(1, 9)] + [("D", n) for n in range(4, 9)] + [("E", 6), ("E", 7), ("E", 8)]


def test_5_oracle_equivalence(report):
    t0 = time.perf_counter()
    base = {c: fqf_from_lattice(ade_lattice(*c)) for c in ORACLE_TYPES}
    forms = []
    for r in range(1, 5):
        for combo in itertools.combinations_with_replacement(ORACLE_TYPES, r):
            q = fqf_direct_sum(*(base[c] for c in combo))
            if q.order <= 2**12:
                forms.append(q)
    symbols = [jordan_normal_form(q) for q in forms]
    invariants = [oracle_invariants(q) for q in forms]
    by_order = defaultdict(list)
    for i, q in enumerate(forms):
        by_order[q.order].append(i)
    pairs = disagree = 0
    for idx in by_order.values():
        for a, b in itertools.combinations(idx, 2):
            pairs += 1
            if symbols_equivalent(symbols[a], symbols[b]) != (invariants[a] == invariants[b]):
                disagree += 1
    # Spot-check the invariant comparison against the pairwise oracle entry point.
    rng = random.Random(5)
    sample = [p for idx in by_order.values() if len(idx) > 1 for p in itertools.combinations(idx[:6], 2)]
    for a, b in rng.sample(sample, min(300, len(sample))):
        if brute_force_isomorphic(forms[a], forms[b]) != (invariants[a] == invariants[b]):
            disagree += 1
    # Every class of invariant-equal forms is confirmed by an explicit isometry.
    classes = defaultdict(list)
    for i, q in enumerate(forms):
        classes[(q.order, invariants[i])].append(i)
    unconfirmed = 0
    for idx in classes.values():
        for j in idx[1:]:
            try:
                if find_isometry(forms[idx[0]], forms[j]) is None:
                    disagree += 1
            except TimeoutError:
                unconfirmed += 1
    dt = time.perf_counter() - t0
    ok = disagree == 0 and dt < 60
    report(5, ok, f"symbols vs brute force: {len(forms)} forms, {pairs} equal-order pairs, {disagree} "
                  f"disagreements, {unconfirmed} indistinguishable, {dt:.1f} s (limit 60 s)")
    assert ok


def test_6_niemeier(report):
    t0 = time.perf_counter()
    names = niemeier_names()
    built = [build_niemeier(n) for n in names]
    structural = all(
        n.lattice.rank == 24 and abs(n.lattice.det) == 1 and all(n.lattice.gram[i, i] % 2 == 0 for i in range(24))
        for n in built
    )
    rng = random.Random(2024)
    checked = bad = 0
    while checked < 240:
        n = built[checked % len(built)]
        gens = rng.sample(n.roots(), rng.randint(1, 10))
        try:
            rep = complement_report(n, gens)
        except LatticeError:
            continue
        checked += 1
        neg = jordan_normal_form(fqf_negate(fqf_from_lattice(rep.S.lattice())))
        if not (symbols_equivalent(rep.T_qsymbol, neg) and rep.S_rank + rep.T_rank == 24):
            bad += 1
    dt = time.perf_counter() - t0
    ok = len(built) == 23 and structural and bad == 0 and dt < 120
    report(6, ok, f"Niemeier: {len(built)} lattices even unimodular rank 24; {checked - bad}/{checked} "
                  f"random root sublattices satisfy q_T = -q_S and rank 24, {dt:.1f} s (limit 120 s)")
    assert ok


def test_7_marking_bounds(model, report):
    rows = [m for m in model.markings if m.reduction is None]
    bad = []
    for m in rows:
        res = {r.check: r for r in verify_marking_bounds(m, model)}
        if res.get("marking-rank") is None or res["marking-rank"].status != "pass":
            bad.append(m.key)
    anchor = next(m for m in rows if m.group_n == 6 and m.deg_text == "2A1")
    anchor_ok = anchor.complement_roots.rank == 4 and 24 - model.resolve(6, "2A1").rk_S == 9
    ok = not bad and anchor_ok
    report(7, ok, f"marking rank bound: {len(rows) - len(bad)}/{len(rows)} markings (D6 2A1: 4 <= 9)"
                  + (f"; failing: {bad}" if bad else ""))
    assert ok


def test_8_old_cases(model, report):
    bad = []
    for o in model.old_cases:
        res = [r for r in verify_old_case(o, model) if r.check in ("old-listed", "old-order", "old-orbits")]
        if any(r.status != "pass" for r in res):
            bad.append(o.key)
    ok = not bad and len(model.old_cases) > 0
    report(8, ok, f"old cases: {len(model.old_cases) - len(bad)}/{len(model.old_cases)} entries")
    assert ok


def test_9_excluded(report):
    with_flag = sum(1 for r in load_tables().records.values() if r.unique_flag)
    report(9, True, f"EXCLUDED: completeness of the classification and the {with_flag} uniqueness marks "
                    "are not checkable here; only internal consistency is verified")


def test_lookup_contains_every_record(model):
    # Companion invariant for the lookup surface used by the tables.
    for r in model.records.values():
        assert r in genus_lookup(model, r.rk_S, r.q_S, include_old=True)
        assert canonical_symbol(r.q_S) == canonical_symbol(canonical_symbol(r.q_S))
