import json
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from curvitri.avc import (
    DIST,
    FAMILY_BASES,
    Violation,
    VertexType,
    admissible_vertices,
    derive_avc_table,
    fan_decompose,
    row_for,
    solve_f_for_case,
    solve_vertex,
    table_json,
    vertex_cycle,
)
from curvitri.families import FamilySpec, generate
from curvitri.prototile import by_name

GOLDEN = Path(__file__).parent / "data" / "avc_table.json"


def test_table_matches_golden_transcription():
    assert table_json() == GOLDEN.read_text(encoding="utf-8")


def test_golden_is_plain_json():
    rows = json.loads(GOLDEN.read_text(encoding="utf-8"))["rows"]
    assert [r["key"] for r in rows][:2] == ["4", "6"]
    assert {r["key"] for r in rows} >= {"(1)", "(2)", "(3)"}


@pytest.mark.parametrize("base,fs", [
    ("1^3", [6, 12, 24, 36, 60]),
    ("1^4", [8, 16, 24]),
    ("1^5", [10, 20, 60]),
    ("1³23", [12, 20, 36]),
])
def test_solve_f_for_case(base, fs):
    assert solve_f_for_case(base) == fs


@pytest.mark.parametrize("_,base", FAMILY_BASES)
def test_family_bases_have_no_finite_list(_, base):
    with pytest.raises(ValueError):
        solve_f_for_case(base)


def test_base_angles():
    c = solve_vertex(3, 0)
    assert c.angle1(12) == F(2, 3) and c.angle23(12) == F(1, 3) + F(4, 12)
    c = solve_vertex(5, 0)
    assert c.angle1(20) == F(2, 5) and c.angle23(20) == F(3, 5) + F(4, 20)
    c = solve_vertex(0, 2)
    assert c.angle1(16) == F(4, 16) and c.angle23(16) == 1
    assert solve_vertex(1, 1).f == 4


def test_row_lines():
    (r20,) = [r for r in row_for(20) if not r.family][:1]
    assert r20.line() == "[1]=2π/5, [2]+[3]=4π/5, {1⁵, 1³23, 12²3²} (2)"
    (r16,) = [r for r in row_for(16) if not r.family]
    assert r16.angles_at(16) == (F(1, 2), F(3, 4))
    assert [v.pretty for v in r16.evaluate(16)] == ["1⁴", "12²3²"]


def test_f60_second_row():
    rows = [r for r in row_for(60) if not r.family]
    assert [(r.angle1, r.angle23) for r in rows][1] == (F(2, 5), F(2, 3))
    assert [v.pretty for v in rows[1].evaluate(60)] == ["1⁵", "2³3³"]


def test_family_three_at_twelve():
    fam3 = [r for r in derive_avc_table() if r.key == "(3)"][0]
    assert {v.pretty for v in fam3.evaluate(12)} == {"12²3²", "1²23", "1³"}


def test_family_rows_reject_bad_f():
    fam1 = [r for r in derive_avc_table() if r.key == "(1)"][0]
    with pytest.raises(ValueError):
        fam1.evaluate(7)


@pytest.mark.parametrize("f,angles,want", [
    (24, (F(2, 3), F(1, 2)), ["1³", "2⁴3⁴"]),
    (8, (F(1, 2), F(1)), ["1⁴", "1²23", "2²3²"]),
    (4, None, ["123"]),
])
def test_admissible_vertices_examples(f, angles, want):
    assert [v.pretty for v in admissible_vertices(f, angles)] == want


fracs = st.fractions(min_value=F(1, 12), max_value=F(2), max_denominator=12)


@given(fracs, fracs)
def test_admissible_vertices_are_exactly_the_solutions(a, s):
    got = {v.counts for v in admissible_vertices(None, (a, s))}
    want = set()
    for l in range(0, int(2 / s) + 1):
        for k in range(0, int(2 / a) + 1):
            if k * a + l * s == 2 and k + 2 * l >= 3:
                want.add((k, l, l))
    assert got == want


@given(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)).filter(lambda c: sum(c) >= 3))
def test_vertex_type_text_round_trip(c):
    v = VertexType(c)
    assert VertexType.parse(str(v)) == v
    assert VertexType.parse(v.pretty) == v


def test_fans():
    seq = [2, 1, 1, 3, DIST, 2, 3, DIST, 2, 1, 3, DIST]
    assert sorted(str(f) for f in fan_decompose(seq)) == ["2113", "213", "23"]
    # rotation of the cyclic sequence does not matter
    assert len(fan_decompose(seq[3:] + seq[:3])) == 3
    with pytest.raises(Violation) as e:
        fan_decompose([2, 1, 2, DIST, 2, 3, DIST])
    assert str(e.value.fan) == "212"
    assert [str(f) for f in fan_decompose([1, 1, 1, 1])] == ["1111"]
    with pytest.raises(Violation):
        fan_decompose([1, 2, 1])


@pytest.mark.parametrize("name", ["h hb r", "h hb a", "r r r2", "r r a"])
@pytest.mark.parametrize("fam,params", [("EJ1", {"t": 3}), ("EI1", {"m": 5}), ("TP", {"n": 6})])
def test_generated_tilings_have_fans(name, fam, params):
    t = generate(FamilySpec(fam, by_name(name), params))
    for v in range(t.map.nv):
        fan_decompose(vertex_cycle(t, v))
