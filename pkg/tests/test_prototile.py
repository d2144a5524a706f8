import pytest
from hypothesis import given, strategies as st

from curvitri.prototile import (
    IllegalGluing,
    NoCompanion,
    SideLabel,
    by_name,
    catalog16,
    companion_quad,
    equivalent,
    is_admissible,
    match,
    normal_form,
    reflect,
)

labels = st.builds(
    SideLabel,
    st.sampled_from("GHRA"),
    st.integers(0, 1),
    st.sampled_from([1, -1]),
    st.integers(0, 2),
)


def L(text):
    return SideLabel.parse(text)


def test_sixteen_in_order():
    assert [p.pretty for p in catalog16()] == [
        "gḡr", "gḡ⁻¹r", "gḡa", "gḡ⁻¹a", "hħr", "hħa", "rr′r″", "rrr′",
        "rr⁻¹r′", "rrr", "rrr⁻¹", "rr′a", "rra", "rr⁻¹a", "raa′", "raa",
    ]


def test_all_admissible_and_pairwise_distinct():
    ps = catalog16()
    assert all(is_admissible(p) for p in ps)
    assert len({normal_form(p) for p in ps}) == 16


def test_admissibility_counts_sides():
    assert is_admissible([L("g"), L("gb"), L("r")])
    assert not is_admissible([L("g"), L("g"), L("r")])
    assert not is_admissible([L("h"), L("a"), L("r")])
    # a second class of g has to balance on its own
    assert not is_admissible([L("g"), L("gb2"), L("r")])


def test_rrr_and_rrr_inverse_differ():
    assert not equivalent(by_name("r r r"), by_name("r r r-"))


def test_rrr_inverse_has_one_minus():
    w = by_name("r r r-").word
    assert sorted(l.chirality for l in w) == [-1, 1, 1]
    assert {l.cls for l in w} == {0}


def test_lookup_by_pretty_or_compact_name():
    assert by_name("rra") is by_name("r r a") or by_name("rra") == by_name("r r a")
    assert by_name("hħr").name == "h hb r"
    with pytest.raises(KeyError):
        by_name("xyz")


@pytest.mark.parametrize("p", catalog16(), ids=lambda p: p.name)
def test_reflect_is_an_involution_up_to_equivalence(p):
    q = reflect(reflect(p))
    assert q.word == p.word
    assert equivalent(reflect(p), p)


def test_match_rules():
    assert match(L("g"), L("gb-"))
    assert not match(L("g"), L("gb"))
    assert match(L("h"), L("hb"))
    assert not match(L("h"), L("h"))
    assert match(L("r"), L("r"))
    assert not match(L("r"), L("r-"))
    assert match(L("a"), L("a"))
    assert not match(L("r"), L("r2"))


@given(labels, labels)
def test_match_is_symmetric(a, b):
    assert match(a, b) == match(b, a)


@given(labels)
def test_label_text_round_trip(l):
    assert SideLabel.parse(l.ascii) == l


@given(labels)
def test_reflect_label_twice_is_identity(l):
    assert l.reflect().reflect() == l


def _cyc(q):
    words = [l.ascii for l in q]
    return min(tuple(words[i:] + words[:i]) for i in range(len(words)))


@pytest.mark.parametrize("name,gluing,quad", [
    ("h hb a", "aligned", "h hb h hb"),
    ("h hb a", "mirrored", "h h hb hb"),
    ("r r a", "aligned", "r r r r"),
    ("r r a", "mirrored", "r r r- r-"),
    ("h hb r", "aligned", "h hb h hb"),
])
def test_companion_quads(name, gluing, quad):
    assert _cyc(companion_quad(by_name(name), gluing)) == _cyc([L(x) for x in quad.split()])


def test_companion_errors():
    with pytest.raises(NoCompanion):
        companion_quad(by_name("r r r"))
    # an r on side 23 cannot meet its own reflection
    with pytest.raises(IllegalGluing):
        companion_quad(by_name("h hb r"), "mirrored")
