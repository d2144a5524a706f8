from collections import Counter

import pytest

from curvitri.families import (
    FAMILIES,
    TABLE1,
    BadN,
    BadParams,
    BadPrototile,
    FamilySpec,
    IllegalAction,
    IllegalDiagonal,
    NotEarthMap,
    atlas,
    cube_face_labelings,
    ei1_skeleton,
    ej1_skeleton,
    family_key,
    family_samples,
    generate,
    hemisphere_split,
    inverse_edges,
    named_cube,
    reglue,
    rrr_inv_labelings,
    simple_subdivisions,
    tp_faces,
    versions,
)
from curvitri.maps import canonical_code
from curvitri.prototile import by_name
from curvitri.verify import verify_tiling, vertex_spectrum

P = by_name


def test_family_names():
    assert family_key("E^J1") == "EJ1"
    assert family_key("T△P") == "TP"
    assert family_key("rej1") == "REJ1"
    with pytest.raises(BadParams):
        family_key("nope")
    assert set(TABLE1) == set(FAMILIES)


def test_rrr_platonic():
    for n in (4, 8, 20):
        t = generate(FamilySpec("P", P("r r r"), {"n": n}))
        assert t.f == n and verify_tiling(t).ok
        assert {l.chirality for l in t.label} == {1}
    assert vertex_spectrum(generate(FamilySpec("P", P("r r r"), {"n": 4}))) == {"1 2 3": 4}
    with pytest.raises(BadN):
        generate(FamilySpec("P", P("r r r"), {"n": 6}))


def test_distinguished_types_only_tile_the_tetrahedron():
    for name in ("g gb r", "r r- r2", "r r2 a"):
        t = generate(FamilySpec("P", P(name), {}))
        assert t.f == 4 and verify_tiling(t).ok
        with pytest.raises(BadN):
            generate(FamilySpec("P", P(name), {"n": 8}))


def test_rr_inverse_r_prime_has_direction_flags():
    # the two r' edges of the tetrahedron may point either way
    assert len(generate(FamilySpec("P", P("r r- r2"), {}), all_versions=True)) >= 2


def test_two_rrr_inverse_tetrahedra():
    ts = rrr_inv_labelings(4)
    assert len(ts) == 2
    # circled edges: a 3-edge path in one, a perfect matching in the other
    assert sorted(min(len(inverse_edges(t)), 6 - len(inverse_edges(t))) for t in ts) == [2, 3]
    assert all(verify_tiling(t).ok for t in ts)


def test_bad_prototile():
    with pytest.raises(BadPrototile):
        generate(FamilySpec("E2", P("g gb r"), {"q": 1}))
    with pytest.raises(BadPrototile):
        simple_subdivisions(named_cube("alternating"), P("r a a"))


def test_tp_face_counts():
    assert [tp_faces(n) for n in (4, 6, 8, 12, 20)] == [12, 24, 24, 60, 60]
    t = generate(FamilySpec("TP", P("g gb- r"), {"n": 6}))
    assert t.f == 24 and verify_tiling(t).ok


def test_ej1_hha_sixteen():
    t = generate(FamilySpec("EJ1", P("h hb a"), {"t": 4}))
    assert vertex_spectrum(t) == Counter({"1^2 2 3": 8, "2^4 3^4": 2})


def test_cube_labelings():
    assert len(cube_face_labelings("H")) == 4
    assert len(cube_face_labelings("R")) == 4
    with pytest.raises(BadParams):
        cube_face_labelings("G")
    alt = named_cube("alternating")
    assert all(" ".join(l.ascii for l in w) in ("h hb h hb", "hb h hb h") for w in alt.face_words())


@pytest.mark.parametrize("style,name,count", [
    ("alternating", "h hb r", 7),
    ("uniform", "r r r2", 7),
    ("split", "r r a", 1),
])
def test_simple_subdivisions(style, name, count):
    ts = simple_subdivisions(named_cube(style), P(name))
    assert len(ts) == count
    assert all(t.f == 12 and verify_tiling(t).ok for t in ts)
    assert len({t.canonical_code() for t in ts}) == count


def test_split_cube_forces_diagonals():
    with pytest.raises(IllegalDiagonal):
        idx = [i for i, c in enumerate(cube_face_labelings("R")) if c is named_cube("split")
               or c.describe() == named_cube("split").describe()][0]
        for bits in [(0,) * 6, (1,) * 6, (0, 1) * 3, (1, 0) * 3]:
            generate(FamilySpec("SP6", P("r r a"), {"labeling": idx, "diagonals": bits}))


def test_earth_map_boundaries():
    t = generate(FamilySpec("EI1", P("h hb a"), {"m": 4}))
    d = hemisphere_split(t)
    assert d.combinations(0) == ["1^2", "2 3", "1^2", "2 3"]
    with pytest.raises(NotEarthMap):
        hemisphere_split(generate(FamilySpec("TP", P("h hb a"), {"n": 4})))


def test_flip_on_hha_is_a_tiling_and_on_rra_is_not():
    hha = versions(ei1_skeleton(4), P("h hb a"), limit=1)[0]
    assert verify_tiling(reglue(hemisphere_split(hha), ("flip", 1))).ok
    for t in versions(ei1_skeleton(4), P("r r a")):
        with pytest.raises(IllegalAction):
            reglue(hemisphere_split(t), ("flip", 1))


def test_rotations_compose_to_identity():
    t = versions(ej1_skeleton(5), P("h hb a"), limit=1)[0]
    once = reglue(hemisphere_split(t), ("rotate", "2/3"))
    back = reglue(hemisphere_split(once), ("rotate", "4/3"))
    assert canonical_code(back.map) == canonical_code(t.map)
    assert back.canonical_code() == t.canonical_code()


def test_misaligned_rotation():
    t = versions(ej1_skeleton(5), P("h hb a"), limit=1)[0]
    with pytest.raises(IllegalAction):
        reglue(hemisphere_split(t), ("rotate", "1/7"))


def test_fe1_differs_from_e1():
    p = P("r a a2")
    fe = generate(FamilySpec("FE1", p, {"q": 2}))
    assert verify_tiling(fe).ok and fe.f == 20
    assert fe.canonical_code() not in {t.canonical_code() for t in generate(FamilySpec("E1", p, {"p": 5}), all_versions=True)}


def test_atlas_records_every_family():
    a = atlas(12, P("h hb r"))
    assert len(a) == 9
    names = set().union(*(fams for _, fams in a.values()))
    assert names == {"T△P_n", "S△P6", "E^I1", "E^J1", "E2", "FE^I1", "RE^J1", "RE2"}


@pytest.mark.parametrize("fam", sorted(TABLE1))
def test_two_smallest_members_verify(fam):
    for name in TABLE1[fam]:
        ts = family_samples(fam, P(name))
        assert ts, (fam, name)
        for t in ts:
            assert verify_tiling(t).ok, (fam, name, t.f)


def test_even_cap_e2_needs_extended():
    p = P("h hb r")
    with pytest.raises(BadParams):
        generate(FamilySpec("E2", p, {"n": 4}))
    t = generate(FamilySpec("E2", p, {"n": 4}), extended=True)
    assert t.f == 16 and verify_tiling(t).ok
    assert dict(vertex_spectrum(t)) == {"1^4": 2, "1 2^2 3^2": 8}
