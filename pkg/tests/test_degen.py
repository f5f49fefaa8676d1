import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3lattice.degen import (
    DegenerationError,
    LoadError,
    MarkingRecord,
    OldCaseRecord,
    Reduction,
    genus_lookup,
    load_tables,
    pairwise_anomalies,
    parse_degeneration,
    verify_all,
    verify_marking_bounds,
    verify_old_case,
    verify_record,
    verify_reduction,
)
from k3lattice.degen.records import DegenerationRecord
from k3lattice.niemeier import load_index
from k3lattice.qforms import GenusSymbol, parse_symbol, signature_mod8
from k3lattice.roots import RootSystemType


@pytest.fixture(scope="module")
def model():
    return load_tables()


# grammar


def test_parse_examples():
    d = parse_degeneration("(A1,3A1)<D4")
    assert [str(o) for o in d.orbits] == ["A1", "3A1"] and str(d.ambient) == "D4"
    assert d.t == 2 and d.vertices == 4
    d = parse_degeneration("(2A1,2A1)<2A2")
    assert [str(o) for o in d.orbits] == ["2A1", "2A1"] and str(d.ambient) == "2A2"


def test_vertex_mismatch():
    with pytest.raises(DegenerationError, match="2.*3|orbits have 2, ambient has 3"):
        parse_degeneration("(A1,A1)<3A1")


@pytest.mark.parametrize("text", ["(A1,B2)<A3", "(A1,A1)<2A1+", "(A1,A0)<A1", "A1<", "(A1,A1)", "matrix[(A1,2A1);(A1)]<2A1+A1x"])
def test_parse_errors(text):
    with pytest.raises(DegenerationError):
        parse_degeneration(text)


def test_base_and_codim1():
    assert parse_degeneration("-").t == 0
    d = parse_degeneration("(2A1)_II")
    assert d.t == 1 and d.structure.variant == "II"
    assert parse_degeneration("4A1").t == 1


def test_nested_group_flattens():
    d = parse_degeneration("(A1,A2,A2,(4A1,4A1)_1)<A1+2A2+8A1")
    assert d.t == 5
    assert [str(o) for o in d.orbits] == ["A1", "A2", "A2", "4A1", "4A1"]


def test_matrix_form():
    d = parse_degeneration("matrix[(2A1,2A3,6A1);(4A1,(8A1)_1);(4A1)]<2A3+4A1")
    assert d.t == 3
    assert str(d.pairwise.entry(1, 2)) == "(8A1)_1"
    assert str(d.pairwise.entry(2, 0)) == "6A1"
    assert pairwise_anomalies(d) == []


def test_matrix_anomaly_is_strict_only():
    text = "matrix[(A1,2A1);(A1)]<2A1"
    assert pairwise_anomalies(parse_degeneration(text)) == []
    bad = "matrix[(A1,3A1);(A1)]<2A1"
    assert pairwise_anomalies(parse_degeneration(bad))
    with pytest.raises(DegenerationError):
        parse_degeneration(bad, strict=True)


def test_matrix_shape():
    with pytest.raises(DegenerationError, match="row"):
        parse_degeneration("matrix[(A1,2A1,3A1);(A1)]<2A1")


def test_loose_key_ignores_order():
    a = parse_degeneration("(A1,2A1)<A1+2A1")
    b = parse_degeneration("(2A1,A1)<2A1+A1")
    assert a.key() == b.key()
    assert parse_degeneration("(2A1)_I").key() != parse_degeneration("(2A1)_II").key()


def test_all_data_strings_round_trip(model):
    texts = {r.deg_text for r in model.records.values()}
    texts |= {m.deg_text for m in model.markings}
    texts |= {o.small_deg_text for o in model.old_cases} | {o.big_deg_text for o in model.old_cases}
    for t in texts:
        assert str(parse_degeneration(t)) == t


components = st.builds(
    lambda c, f: (c, f),
    st.integers(1, 4),
    st.sampled_from([("A", 1), ("A", 2), ("A", 3), ("D", 4), ("D", 5), ("E", 6)]),
)
variant = st.one_of(st.none(), st.sampled_from(["1", "2", "I", "II"]))


def comp_text(c):
    count, (f, n) = c
    return f"{count if count > 1 else ''}{f}{n}"


@st.composite
def degenerations(draw):
    orbits = draw(st.lists(st.lists(components, min_size=1, max_size=2), min_size=2, max_size=4))
    items = []
    for o in orbits:
        text = "+".join(comp_text(c) for c in o)
        v = draw(variant)
        items.append(f"({text})_{v}" if v else text)
    verts = sum(c[0] * c[1][1] for o in orbits for c in o)
    # Ambient: a run of A1 components with the same vertex count.
    amb = f"{verts}A1" if verts > 1 else "A1"
    av = draw(variant)
    return "(" + ",".join(items) + ")<" + amb + (f"_{av}" if av else "")


@given(degenerations())
def test_grammar_round_trip(text):
    d = parse_degeneration(text)
    assert str(d) == text
    assert parse_degeneration(str(d)) == d
    assert d.vertices == d.ambient.vertices


# loading


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


TABLE1 = "@group n=1 order=2 index=1 name=C2\nn=1 C2 8 2_II^+8 | - 8 2_II^+8\nn=1 C2 8 2_II^+8 | A1 9 2_7^+9\n"


def test_load_table_row(tmp_path):
    m = load_tables([write(tmp_path, "t.table", TABLE1)])
    r = m.records["n=1 | A1"]
    assert (r.group_n, r.group_name, r.rk_SG, r.rk_S) == (1, "C2", 8, 9)
    assert str(r.q_S) == "2_7^+9" and not r.unique_flag and not r.old_flag


def test_load_empty(tmp_path):
    m = load_tables([write(tmp_path, "e.table", "")])
    assert len(m) == 0 and m.markings == [] and m.old_cases == []


def test_rank_law_violation_reported(tmp_path):
    m = load_tables([write(tmp_path, "t.table", TABLE1 + "n=1 C2 8 2_II^+8 | 2A1 10 2_II^-6,4_3^-1\n")])
    assert any("rank law" in v for v in m.violations)
    results = verify_all(m)
    assert any(r.check == "load" and r.status == "fail" for r in results)


def test_duplicate_rejected(tmp_path):
    with pytest.raises(LoadError, match="duplicate"):
        load_tables([write(tmp_path, "t.table", TABLE1 + "n=1 C2 8 2_II^+8 | A1 9 2_7^+9\n")])


def test_cross_file_duplicate_must_agree(tmp_path):
    a = write(tmp_path, "a.table", TABLE1)
    b = write(tmp_path, "b.table", "n=1 C2 8 2_II^+8 | A1 9 2_7^+9 *\n")
    m = load_tables([a, b])
    assert m.records["n=1 | A1"].unique_flag
    c = write(tmp_path, "c.table", "n=1 C2 8 2_II^+8 | A1 9 2_1^+9\n")
    with pytest.raises(LoadError, match="disagrees"):
        load_tables([a, c])


def test_dangling_reference(tmp_path):
    t = write(tmp_path, "t.table", TABLE1)
    mk = write(tmp_path, "t.markings", "C2 | 2A1 | S=A1+S(3A1)\n")
    with pytest.raises(LoadError, match=r"n=1 \| 3A1"):
        load_tables([t, mk])


def test_unknown_file_kind(tmp_path):
    with pytest.raises(LoadError):
        load_tables([write(tmp_path, "t.csv", "")])
    with pytest.raises(LoadError):
        load_tables([tmp_path / "missing.table"])


def test_shipped_counts(model):
    assert len(model) == 424
    assert len(model.markings) == 543
    assert len(model.old_cases) == 72
    assert model.violations == []


# verification


def statuses(results):
    return {r.check: r.status for r in results}


def test_verify_d6_base(model):
    r = model.base(6)
    assert (r.rk_S, str(r.q_S)) == (14, "2_II^-2,3^+5")
    assert set(statuses(verify_record(r)).values()) == {"pass"}
    assert signature_mod8(r.q_S) == 2


def test_verify_c4_2a1(model):
    r = model.records["n=4 | 2A1"]
    assert (r.rk_S, str(r.q_S)) == (15, "4_1^-5")
    assert set(statuses(verify_record(r)).values()) == {"pass"}
    assert signature_mod8(r.q_S) == 1
    assert r.q_S.length(2) == 5


def test_verify_synthetic_milgram_failure():
    bad = DegenerationRecord(1, "C2", 8, parse_symbol("2_II^+8"), parse_degeneration("A1"), "A1", 9,
                             parse_symbol("2_II^+8"))
    res = statuses(verify_record(bad))
    assert res["milgram"] == "fail" and res["rank-law"] == "pass"


def find_marking(model, n, deg, reduction=True):
    for m in model.markings:
        if m.group_n == n and m.deg_text == deg and (m.reduction is not None) == reduction:
            return m
    raise KeyError(deg)


def test_reduction_examples(model):
    m = find_marking(model, 6, "A1")
    assert m.reduction.ref == "base" and verify_reduction(m, model)
    assert str(model.resolve(6, "A1").q_S) == "2_7^-3,3^+5"
    m = find_marking(model, 4, "(A1,A2)<A1+A2")
    assert verify_reduction(m, model)
    assert str(model.resolve(4, "(A1,A2)<A1+A2").q_S) == "2_0^+2,4_II^+4"
    m = find_marking(model, 6, "(A1,A1)<2A1")
    assert verify_reduction(m, model)
    assert str(model.resolve(6, "(A1,A1)<2A1").q_S) == "2_2^+4,3^+5"


def test_reduction_wrong_summand_fails(model):
    m = find_marking(model, 6, "(A1,A1)<2A1")
    wrong = MarkingRecord(m.group_name, m.group_n, m.deg_text, m.deg, Reduction(RootSystemType.parse("A2"), "A1"))
    assert not verify_reduction(wrong, model)
    missing = MarkingRecord(m.group_name, m.group_n, m.deg_text, m.deg, Reduction(RootSystemType.parse("A1"), "9A1"))
    with pytest.raises(LoadError):
        verify_reduction(missing, model)


def test_marking_bound_examples(model):
    index = load_index()
    m = find_marking(model, 6, "2A1", reduction=False)
    assert (m.j, str(m.complement_roots)) == (23, "4A1")
    res = verify_marking_bounds(m, model, index)
    assert statuses(res) == {"marking-rank": "pass", "marking-embed": "pass"}
    assert "4 <= 24 - 15" in res[0].details
    assert "conditional on mapping" in res[1].details
    m = find_marking(model, 4, "A2", reduction=False)
    assert (m.j, str(m.complement_roots)) == (22, "A1+2A2")
    assert statuses(verify_marking_bounds(m, model))["marking-rank"] == "pass"
    big = MarkingRecord(m.group_name, m.group_n, m.deg_text, m.deg, None, 22, False, "H", "", RootSystemType.parse("10A1"))
    assert statuses(verify_marking_bounds(big, model))["marking-rank"] == "fail"


def find_old(model, small_n, small):
    return next(o for o in model.old_cases if o.small_n == small_n and o.small_deg_text == small)


def test_old_case_examples(model):
    o = find_old(model, 6, "(A1,A1,3A1,3A1)<8A1")
    assert o.big_n == 18
    res = verify_old_case(o, model)
    assert statuses(res) == {"old-listed": "pass", "old-order": "pass", "old-orbits": "pass"}
    assert "6 -> 12" in res[1].details and "4 -> 2" in res[2].details
    o = find_old(model, 4, "(A1,A1)<2A1")
    assert o.big_n == 10 and o.big_deg_text == "(2A1)_II"
    res = verify_old_case(o, model)
    assert set(statuses(res).values()) == {"pass"}
    assert "4 -> 8" in res[1].details and "2 -> 1" in res[2].details
    same = OldCaseRecord(4, o.small_deg_text, o.small_deg, 10, "(A1,A1)<2A1", parse_degeneration("(A1,A1)<2A1"))
    assert statuses(verify_old_case(same, model))["old-orbits"] == "fail"


def test_genus_lookup_examples(model):
    found = genus_lookup(model, 15, parse_symbol("2_7^-3,3^+5"))
    assert [r.key for r in found] == ["n=6 | A1"]
    found = genus_lookup(model, 14, parse_symbol("2_2^+2,4_II^+4"))
    assert [r.key for r in found] == ["n=4 | -"]
    assert genus_lookup(model, 9, GenusSymbol()) == []
    assert [r.key for r in genus_lookup(model, 15, parse_symbol("4_1^-5"))] == ["n=4 | 2A1"]


def test_old_rows_filtered(model):
    r = model.records["n=4 | (A1,A1)<2A1"]
    assert r.old_flag
    assert r not in genus_lookup(model, r.rk_S, r.q_S)
    assert r in genus_lookup(model, r.rk_S, r.q_S, include_old=True)


def test_lookup_finds_every_record(model):
    for r in model.records.values():
        assert r in genus_lookup(model, r.rk_S, r.q_S, include_old=True)


def test_shipped_battery(model):
    """Everything passes except two reduction rows whose printed summand is
    inconsistent with the ranks; the corrected summands verify."""
    results = verify_all(model)
    fails = [r for r in results if r.status == "fail"]
    assert sorted((r.key.split(" | ")[0], r.check) for r in fails) == [("n=4", "reduction"), ("n=6", "reduction")]
    warns = sorted(r.check for r in results if r.status == "warn")
    assert warns == ["marking-embed", "matrix-entries"]
    f4 = find_marking(model, 4, "(A1,A2,A2,(4A1,4A1)_1)<A1+2A2+8A1")
    fixed = MarkingRecord(f4.group_name, 4, f4.deg_text, f4.deg, Reduction(RootSystemType.parse("A1"), f4.reduction.ref))
    assert verify_reduction(fixed, model)
    f6 = find_marking(model, 6, "(A1,A1,6A1,3A1,3A1)<8A1+3A2")
    fixed = MarkingRecord(f6.group_name, 6, f6.deg_text, f6.deg, Reduction(RootSystemType.parse("2A1"), f6.reduction.ref))
    assert verify_reduction(fixed, model)


def test_only_filters(model):
    d6 = verify_all(model, only="d6")
    c4 = verify_all(model, only="c4")
    codim1 = verify_all(model, only="codim1")
    assert all(r.key.startswith("n=6") for r in d6 if r.check != "lookup")
    assert all(r.key.startswith("n=4") for r in c4)
    assert codim1 and all(r.check in ("rank-law", "milgram", "p-length", "well-formed", "realizable", "lookup")
                          for r in codim1)
    assert len(verify_all(model, include_old=True)) > len(verify_all(model))
