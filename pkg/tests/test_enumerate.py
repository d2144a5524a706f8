import pytest

from curvitri.enumerate import (
    BudgetExceeded,
    SearchConfig,
    SearchStats,
    avc_constrained_search,
    classify,
    enumerate_labelings,
    enumerate_tilings,
)
from curvitri.families import atlas, tp_skeleton, versions
from curvitri.maps import build_map, platonic_faces
from curvitri.prototile import by_name, catalog16
from curvitri.verify import verify_tiling

P = by_name
TETRA = build_map(platonic_faces(4))
OCTA = build_map(platonic_faces(8))


@pytest.mark.parametrize("name,count", [("r r r-", 2), ("g gb r", 1), ("r r r", 1), ("r r- r2", 2)])
def test_tetrahedron_counts(name, count):
    assert len(enumerate_labelings(TETRA, P(name))) == count


def test_octahedron_has_no_g_gbar_r():
    assert enumerate_labelings(OCTA, P("g gb r")) == []


def test_rrr_at_eight_is_the_octahedron():
    ts = enumerate_tilings(8, P("r r r"))
    assert len(ts) == 1
    assert sorted(ts[0].map.degrees()) == [4] * 6


def test_results_verify_and_are_sorted():
    ts = enumerate_tilings(12, P("h hb r"))
    codes = [t.canonical_code() for t in ts]
    assert codes == sorted(codes) and len(set(codes)) == len(codes)
    assert all(verify_tiling(t).ok for t in ts)


def test_deterministic():
    a = [t.canonical_code() for t in enumerate_tilings(10, P("r r a"))]
    b = [t.canonical_code() for t in enumerate_tilings(10, P("r r a"))]
    assert a == b


@pytest.mark.parametrize("name", ["h hb a", "r r r2", "r a a", "g gb- r"])
def test_angle_pruning_loses_nothing(name):
    on = {t.canonical_code() for t in enumerate_tilings(10, P(name))}
    off = {t.canonical_code() for t in enumerate_tilings(10, P(name), SearchConfig(10, use_angle_pruning=False))}
    assert on == off


def test_twelve_hhr_is_the_atlas():
    got = {t.canonical_code() for t in enumerate_tilings(12, P("h hb r"))}
    assert got == set(atlas(12, P("h hb r")))


@pytest.mark.parametrize("f", [4, 6, 8, 10])
@pytest.mark.parametrize("name", ["h hb r", "r r a", "r a a", "g gb- a"])
def test_growth_search_agrees_with_enumeration(f, name):
    grown = {t.canonical_code() for t in avc_constrained_search(f, P(name))}
    listed = {t.canonical_code() for t in enumerate_tilings(f, P(name))}
    assert grown == listed


def test_whitelist_at_24_gives_tp8():
    ts = avc_constrained_search(24, P("h hb r"), ["1^3", "2^4 3^4"], SearchConfig(24, ceiling=24))
    tp8 = {t.canonical_code() for t in versions(tp_skeleton(8), P("h hb r"))}
    assert {t.canonical_code() for t in ts} == tp8 and len(tp8) == 1


def test_f36_whitelists_are_empty():
    st = SearchStats()
    assert avc_constrained_search(36, P("h hb r"), ["1^3", "1 2^3 3^3"], SearchConfig(36, ceiling=36), stats=st) == []
    assert st.nodes > 0 and st.explored == 1.0


def test_budget_is_reported():
    cfg = SearchConfig(24, ceiling=24, node_budget=50)
    with pytest.raises(BudgetExceeded) as e:
        avc_constrained_search(24, P("r r a"), ["1^3", "2^4 3^4"], cfg)
    assert e.value.explored is not None and 0 <= e.value.explored < 1


def test_ceiling():
    with pytest.raises(ValueError):
        enumerate_tilings(18, P("r r a"))
    with pytest.raises(ValueError):
        SearchConfig(7)


def test_classify_small():
    rep = classify(SearchConfig(8, prototiles=[P("h hb a"), P("r r r")]))
    assert rep.ok and len(rep.cells) == 6
    assert rep.to_json()["ok"] is True
    assert "ok" in rep.table()


def test_classify_flags_the_bipyramid_gap():
    rep = classify(SearchConfig(6, prototiles=[P("g gb- r")]), min_f=6)
    assert not rep.ok and rep.cells[0].unmatched
    assert classify(SearchConfig(6, prototiles=[P("g gb- r")]), min_f=6, extended=True).ok


@pytest.mark.parametrize("name,count", [("h hb r", 1), ("h hb a", 3), ("r r r2", 1), ("r r a", 3)])
def test_even_cap_three_layer_maps(name, count):
    # two caps of four tiles and an antiprism band: outside the listed
    # face counts of the three-layer family, found by the growth search
    p = P(name)
    ts = avc_constrained_search(16, p, ["1^4", "1 2^2 3^2"])
    assert len(ts) == count and all(verify_tiling(t).ok for t in ts)
    plain = atlas(16, p)
    ext = atlas(16, p, extended=True)
    codes = {t.canonical_code() for t in ts}
    assert not codes & set(plain)
    assert codes <= set(ext) and {"E2"} <= set().union(*(ext[c][1] for c in codes))


def test_restricted_search_at_24_is_the_extended_atlas():
    p = P("h hb r")
    got = set()
    from curvitri.avc import row_for

    for row in row_for(24):
        got |= {t.canonical_code() for t in avc_constrained_search(24, p, row.whitelist(24), SearchConfig(24, ceiling=24))}
    assert got == set(atlas(24, p, extended=True))
    assert len(got) == len(atlas(24, p)) + 1
