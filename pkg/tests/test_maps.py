import random

import pytest
from hypothesis import given, settings, strategies as st

from curvitri.maps import (
    NonManifold,
    NotSphere,
    build_map,
    canonical_code,
    check_map,
    enumerate_triangulations,
    euler_stats,
    platonic_faces,
)

from oracles import oracle_counts

TETRA = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]


def shuffled(m, rng):
    """The same sphere with faces reordered and each face's darts rotated."""
    order = list(range(m.nf))
    rng.shuffle(order)
    rot = [rng.randrange(3) for _ in order]
    faces = []
    for k, r in zip(order, rot):
        a = m.faces[k]
        faces.append(a[r:] + a[:r])
    # rename vertices too
    names = list(range(m.nv))
    rng.shuffle(names)
    return build_map([tuple(names[v] for v in t) for t in faces])


def test_tetrahedron_stats():
    m = build_map(TETRA)
    assert euler_stats(m) == (4, 6, 4)
    assert m.degrees() == [3, 3, 3, 3]


def test_faces_may_come_in_either_orientation():
    flipped = [TETRA[0]] + [t[::-1] for t in TETRA[1:]]
    m = build_map(flipped)
    assert canonical_code(m) == canonical_code(build_map(TETRA))


def test_rejects_open_surface():
    with pytest.raises(NonManifold):
        build_map(TETRA[:3])


def test_rejects_torus_like_gluing():
    # two tetrahedra sharing only a vertex is not a sphere
    faces = TETRA + [(0, 5, 6), (0, 6, 7), (0, 7, 5), (5, 7, 6)]
    with pytest.raises((NotSphere, NonManifold)):
        build_map(faces)


def test_theta_is_an_involution():
    m = build_map(platonic_faces(20))
    for d in range(m.nd):
        assert m.theta[m.theta[d]] == d != m.theta[d]
        assert m.origin(m.theta[d]) == m.dest(d)
    check_map(m)


@pytest.mark.parametrize("f,count", [(4, 1), (6, 1), (8, 2), (10, 5), (12, 14)])
def test_triangulation_counts(f, count):
    assert len(enumerate_triangulations(f)) == count


def test_triangulations_are_pairwise_distinct():
    ms = enumerate_triangulations(12)
    assert len({canonical_code(m) for m in ms}) == len(ms)


def test_mirror_pair_differs_only_in_oriented_group():
    # the smallest chiral triangulation shows up at 12 vertices; here we just
    # check that "oriented" is never coarser than "full"
    for m in enumerate_triangulations(12):
        assert canonical_code(m.mirrored(), group="full") == canonical_code(m, group="full")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([4, 8, 20]))
def test_canonical_code_ignores_dart_numbering(seed, n):
    m = build_map(platonic_faces(n))
    m2 = shuffled(m, random.Random(seed))
    assert canonical_code(m2) == canonical_code(m)
    assert canonical_code(m2, group="oriented") == canonical_code(m, group="oriented")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_shuffled_triangulations_keep_their_codes(seed):
    rng = random.Random(seed)
    ms = enumerate_triangulations(14)
    m = rng.choice(ms)
    assert canonical_code(shuffled(m, rng)) == canonical_code(m)


def test_triangulation_counts_match_vertex_split_oracle():
    expected = oracle_counts(8)
    got = [len(enumerate_triangulations(2 * v - 4)) for v in range(4, 9)]
    assert got == expected == [1, 1, 2, 5, 14]
