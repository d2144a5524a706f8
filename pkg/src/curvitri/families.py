"""Constructors for the tiling families, their versions and modifications.

Every family is first built as a *skeleton*: a triangulated sphere in which
each face knows where its corner 1 sits (the side opposite corner 1 is the
edge shared with its companion tile).  The straight tilings are exactly these
skeletons.  A curvilinear prototile then decorates a skeleton in zero or more
ways; these are the *versions* of the family and are found by a small
backtracking search restricted to the skeleton.

Modifications (flip and rotation) cut an earth map tiling along a circle
into two hemispheres and glue them back differently.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Hashable, Sequence

from .maps import CombMap, build_map, nxt, platonic_faces
from .prototile import (
    IllegalGluing,
    Prototile,
    SideLabel,
    by_name,
    catalog16,
    companion_quad,
    match,
)
from .verify import LabeledTiling, combination_string, verify_tiling


class FamilyError(ValueError):
    pass


class BadN(FamilyError):
    pass


class BadPrototile(FamilyError):
    pass


class BadParams(FamilyError):
    pass


class IllegalDiagonal(FamilyError):
    pass


class IllegalAction(FamilyError):
    pass


class NotEarthMap(FamilyError):
    pass


# ---------------------------------------------------------------------------
# family vocabulary

FAMILIES = {
    "P": "P_n",
    "TP": "T△P_n",
    "SP6": "S△P6",
    "EI1": "E^I1",
    "EJ1": "E^J1",
    "E2": "E2",
    "E1": "E1",
    "FE1": "FE1",
    "FEI1": "FE^I1",
    "REI1": "RE^I1",
    "REJ1": "RE^J1",
    "RE2": "RE2",
}

_ALIASES = {v: k for k, v in FAMILIES.items()}
_ALIASES.update({"P_n": "P", "T_P": "TP", "T△P": "TP", "S△P6": "SP6", "E1_2gon": "E1"})

_FAN_TYPES = ("h hb r", "h hb a", "r r r2", "r r a", "r a a")
_TETRA_TYPES = (
    "g gb r", "g gb a", "r r- r2", "r r- a", "r r2 r3", "r r2 a", "r a a2",
) + _FAN_TYPES

# which prototiles each family is listed for
TABLE1: dict[str, tuple[str, ...]] = {
    "P": _TETRA_TYPES + ("r r r", "r r r-"),
    "TP": ("g gb- r", "g gb- a") + _FAN_TYPES,
    "SP6": _FAN_TYPES,
    "E1": ("r a a2",),
    "FE1": ("r a a2",),
    "EI1": _FAN_TYPES,
    "EJ1": _FAN_TYPES,
    "E2": _FAN_TYPES,
    "REJ1": _FAN_TYPES,
    "RE2": _FAN_TYPES,
    "FEI1": ("h hb r", "h hb a"),
    "REI1": ("r r r2", "r r a", "r a a"),
}

# Earth maps of the bipyramid kind also tile for the two g-inverse types; the
# families list does not include them, so they are kept apart.
EXTENSIONS: dict[str, tuple[str, ...]] = {"EI1": ("g gb- r", "g gb- a")}

# The three-layer earth map closes up for an even number of tiles per cap
# as well (f = 8q); the listed family only has f = 8q + 4.  Also kept apart.
EVEN_E2 = True

PLATONIC_N = {"r r r": (4, 8, 20), "r r r-": (4, 8, 20)}
TP_N = (4, 6, 8, 12, 20)


def family_key(name: str) -> str:
    key = name.strip()
    if key in FAMILIES:
        return key
    if key in _ALIASES:
        return _ALIASES[key]
    up = key.replace("^", "").replace("_", "").replace("△", "").upper()
    if up in FAMILIES:
        return up
    raise BadParams(f"unknown family {name!r}")


# ---------------------------------------------------------------------------
# skeletons


@dataclass(frozen=True, eq=False)
class Skeleton:
    """A triangulated sphere with the corner-1 position of each face.

    ``apex[k]`` is the index ``j`` such that the origin of dart ``3k + j``
    carries corner 1, or ``None`` when the face is unconstrained.
    ``ids`` maps the construction's vertex names to map vertices.
    """

    map: CombMap
    apex: tuple
    name: str = ""
    params: dict = field(default_factory=dict)
    hemisphere: tuple[int, ...] | None = None
    ids: dict = field(default_factory=dict)

    @property
    def f(self) -> int:
        return self.map.nf


def make_skeleton(faces: Sequence[Sequence[Hashable]], apex: Sequence, name: str = "", params=None,
                  hemisphere: Sequence[int] | None = None) -> Skeleton:
    """``faces`` are vertex triples; ``apex[k]`` names the corner-1 vertex of face ``k``."""
    ids: dict = {}
    m = build_map(faces, ids=ids)
    pos = []
    for k, a in enumerate(apex):
        if a is None:
            pos.append(None)
        else:
            pos.append(m.faces[k].index(ids[a]))
    hemi = tuple(sorted(hemisphere)) if hemisphere is not None else None
    return Skeleton(m, tuple(pos), name, dict(params or {}), hemi, ids)


def versions(
    sk: Skeleton,
    p: Prototile,
    *,
    fixed: dict | None = None,
    limit: int | None = None,
    cfg=None,
) -> list[LabeledTiling]:
    """All inequivalent ways ``p`` decorates ``sk``, sorted by canonical code.

    ``fixed`` maps directed edges ``(u, v)`` (construction names) to the
    label the face on the left of ``u -> v`` must read.
    """
    from .enumerate import SearchConfig, enumerate_labelings

    m = sk.map
    want: dict[int, SideLabel] = {}
    for (u, v), lab in (fixed or {}).items():
        a, b = sk.ids[u], sk.ids[v]
        for d in range(m.nd):
            if m.origin(d) == a and m.dest(d) == b:
                want[d] = lab
                break
        else:
            raise BadParams(f"{u}->{v} is not a side of the skeleton")
    places = p.placements(merge=all(x is None for x in sk.apex))
    options = []
    for k in range(m.nf):
        j0 = sk.apex[k]
        opts = []
        for corners, labels in places:
            if j0 is not None and corners[j0] != 1:
                continue
            if any(want.get(3 * k + j, labels[j]) != labels[j] for j in range(3)):
                continue
            opts.append((corners, labels))
        options.append(opts)
    cfg = cfg or SearchConfig(m.nf)
    found = enumerate_labelings(m, p, cfg, restrict=options.__getitem__, limit=limit)
    extra = {"hemisphere": sk.hemisphere} if sk.hemisphere is not None else {}
    return [
        dataclasses.replace(t, provenance=sk.name, params={**sk.params, **extra})
        for t in found
    ]


# ---------------------------------------------------------------------------
# constructions


def platonic_skeleton(n: int) -> Skeleton:
    if n not in (4, 8, 20):
        raise BadN(f"no Platonic solid with {n} triangular faces")
    faces = platonic_faces(n)
    return make_skeleton(faces, [None] * len(faces), "P", {"n": n})


def tetrahedron_skeleton() -> Skeleton:
    """The tetrahedron with companion pairs across the opposite edges 01 and 23."""
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    return make_skeleton(faces, [2, 0, 3, 1], "P", {"n": 4})


def _polygon_edges(polys) -> int:
    return sum(len(p) for p in polys) // 2


def tp_faces(n: int) -> int:
    """Face count of the triangular subdivision of the Platonic solid with ``n`` faces."""
    if n not in TP_N:
        raise BadN(f"no Platonic solid with {n} faces")
    return 2 * _polygon_edges(platonic_faces(n))


def tp_skeleton(n: int) -> Skeleton:
    """Cone every face of ``P_n`` from its centre; corner 1 sits at the centres."""
    polys = platonic_faces(n) if n in TP_N else None
    if polys is None:
        raise BadN(f"no Platonic solid with {n} faces")
    faces, apex = [], []
    for i, poly in enumerate(polys):
        c = ("c", i)
        for j in range(len(poly)):
            faces.append((c, poly[j], poly[(j + 1) % len(poly)]))
            apex.append(c)
    return make_skeleton(faces, apex, "TP", {"n": n})


def _cube_polys() -> list[tuple[int, ...]]:
    return [tuple(p) for p in platonic_faces(6)]


def sp6_skeleton(diagonals: Sequence[int]) -> Skeleton:
    """Cube with one diagonal per face; flag 0 joins face vertices 0-2, flag 1 joins 1-3."""
    diagonals = tuple(int(x) for x in diagonals)
    if len(diagonals) != 6 or any(x not in (0, 1) for x in diagonals):
        raise BadParams("diagonals must be six 0/1 flags")
    faces, apex = [], []
    for (a, b, c, d), flag in zip(_cube_polys(), diagonals):
        if flag == 0:
            faces += [(a, b, c), (c, d, a)]
            apex += [b, d]
        else:
            faces += [(a, b, d), (b, c, d)]
            apex += [a, c]
    return make_skeleton(faces, apex, "SP6", {"diagonals": diagonals})


def _bipyramid(m: int):
    x = [("x", i) for i in range(m)]
    top = [("N", x[i], x[(i + 1) % m]) for i in range(m)]
    bot = [("S", x[(i + 1) % m], x[i]) for i in range(m)]
    return x, top, bot


def ei1_skeleton(m: int, name: str = "EI1") -> Skeleton:
    """Bipyramid over ``m`` equator vertices with corner 1 at both poles."""
    if m < 3:
        raise BadParams("the earth map needs at least 3 timezones")
    x, top, bot = _bipyramid(m)
    faces = top + bot
    apex = ["N"] * m + ["S"] * m
    q = m // 2
    hemi = list(range(q)) + [m + i for i in range(q)]
    return make_skeleton(faces, apex, name, {"m": m}, hemi)


def e1_skeleton(p: int) -> Skeleton:
    """Earth map with ``p`` timezones of four tiles (the bipyramid over ``2p``)."""
    if p < 2:
        raise BadParams("E1 needs at least 2 timezones")
    sk = ei1_skeleton(2 * p, "E1")
    hemi = list(range(p)) + [2 * p + i for i in range(p)]
    return dataclasses.replace(sk, params={"p": p}, hemisphere=tuple(sorted(hemi)))


def ej1_skeleton(t: int) -> Skeleton:
    """Bipyramid over ``2t`` vertices with corners 2, 3 at the poles.

    The distinguished edges run from the north pole to odd equator vertices
    and from the south pole to even ones, so every equator vertex is 1^2 2 3.
    """
    if t < 2:
        raise BadParams("E^J1 needs at least 2 timezones")
    m = 2 * t
    x, top, bot = _bipyramid(m)
    apex = []
    for i in range(m):
        apex.append(x[i] if i % 2 == 0 else x[(i + 1) % m])
    for i in range(m):
        apex.append(x[(i + 1) % m] if i % 2 == 0 else x[i])
    hemi = None
    if t % 2 == 1:
        q = (t - 1) // 2
        hemi = list(range(2 * q + 2)) + [m + i for i in range(1, 2 * q + 1)]
    return make_skeleton(top + bot, apex, "EJ1", {"t": t}, hemi)


def e2_skeleton(q: int | None = None, *, n: int | None = None) -> Skeleton:
    """Three layers: two polar caps of ``n`` tiles and an antiprism band.

    The listed family has ``n = 2q + 1``; any ``n >= 3`` closes up.
    """
    if n is None:
        if q is None or q < 1:
            raise BadParams("E2 needs q >= 1")
        n = 2 * q + 1
    if n < 3:
        raise BadParams("E2 needs at least 3 tiles around a pole")
    x = [("x", i) for i in range(n)]
    z = [("z", i) for i in range(n)]
    U = [("N", x[i], x[(i + 1) % n]) for i in range(n)]
    D = [(x[i], x[(i + 1) % n], z[i]) for i in range(n)]
    V = [(z[i], z[(i + 1) % n], x[(i + 1) % n]) for i in range(n)]
    W = [("S", z[i], z[(i + 1) % n]) for i in range(n)]
    faces = U + D + V + W
    apex = ["N"] * n + [z[i] for i in range(n)] + [x[(i + 1) % n] for i in range(n)] + ["S"] * n
    a, b = (n + 1) // 2, n // 2
    hemi = list(range(a)) + [n + i for i in range(a)] + [2 * n + i for i in range(b)] + [3 * n + i for i in range(b)]
    params = {"q": (n - 1) // 2} if n % 2 else {"n": n}
    return make_skeleton(faces, apex, "E2", params, hemi)


# ---------------------------------------------------------------------------
# hemispheres and regluing


@dataclass(frozen=True, eq=False)
class HemisphereDecomposition:
    """A tiling cut along a circle of edges into two disks.

    ``boundary`` lists the darts of the inner half along the circle, in
    order; ``halves`` are (inner, outer) face sets.
    """

    tiling: LabeledTiling
    boundary: tuple[int, ...]
    halves: tuple[frozenset, frozenset]

    @property
    def boundary_vertices(self) -> list[int]:
        return [self.tiling.map.origin(d) for d in self.boundary]

    def combinations(self, half: int = 0) -> list[str]:
        """Corner combination each half contributes at the boundary vertices."""
        t, faces = self.tiling, self.halves[half]
        out = []
        for v in self.boundary_vertices:
            c = [0, 0, 0]
            for d in t.map.vertex_darts(v):
                if d // 3 in faces:
                    c[t.corner[d] - 1] += 1
            out.append(combination_string(c))
        return out


def _circle(m: CombMap, inner: frozenset) -> tuple[int, ...]:
    bd = [d for k in sorted(inner) for d in range(3 * k, 3 * k + 3) if m.theta[d] // 3 not in inner]
    if not bd:
        raise NotEarthMap("the face set has no boundary")
    by_origin: dict[int, int] = {}
    for d in bd:
        if m.origin(d) in by_origin:
            raise NotEarthMap("the boundary is not a simple circle")
        by_origin[m.origin(d)] = d
    cyc = [bd[0]]
    while True:
        d = by_origin[m.dest(cyc[-1])]
        if d == cyc[0]:
            break
        cyc.append(d)
    if len(cyc) != len(bd):
        raise NotEarthMap("the boundary has several components")
    for half in (inner, frozenset(range(m.nf)) - inner):
        verts = {m.origin(d) for k in half for d in range(3 * k, 3 * k + 3)}
        edges = {frozenset((m.origin(d), m.dest(d))) for k in half for d in range(3 * k, 3 * k + 3)}
        if len(verts) - len(edges) + len(half) != 1:
            raise NotEarthMap("a half is not a disk")
    return tuple(cyc)


def _split(m: CombMap, hemisphere) -> tuple[tuple[int, ...], frozenset, frozenset]:
    if not hemisphere:
        raise NotEarthMap("no hemisphere recorded for this tiling")
    inner = frozenset(hemisphere)
    return _circle(m, inner), inner, frozenset(range(m.nf)) - inner


def hemisphere_split(t: LabeledTiling) -> HemisphereDecomposition:
    """Cut an earth map tiling into the two hemispheres used by its modifications."""
    hemi = t.params.get("hemisphere")
    if hemi is None:
        raise NotEarthMap(f"{t.provenance or 'tiling'} carries no hemisphere decomposition")
    cyc, inner, outer = _split(t.map, hemi)
    return HemisphereDecomposition(t, cyc, (inner, outer))


def _mirror_payload(pl):
    """Payload of face (a, b, c) re-read on the reversed face (c, b, a)."""
    return (pl[2], pl[1], pl[0])


def _reglue(m: CombMap, cyc, inner, shift: int, flip: bool, payload, mirror_payload):
    """Rebuild the sphere with the inner half reattached.

    ``payload[k]`` holds per-vertex data of face ``k`` aligned with
    ``m.faces[k]``.  Returns the new map and the realigned payloads.
    """
    B = [m.origin(d) for d in cyc]
    L = len(B)
    pos = {v: i for i, v in enumerate(B)}

    def vmap(v):
        if v in pos:
            i = pos[v]
            return ("v", B[(shift - i) % L] if flip else B[(i + shift) % L])
        return ("in", v)

    faces, pls = [], []
    order = sorted(range(m.nf), key=lambda k: k in inner)  # outer half first
    for k in order:
        t = m.faces[k]
        pl = payload[k]
        if k in inner:
            t = tuple(vmap(v) for v in t)
            if flip:
                t, pl = t[::-1], mirror_payload(pl)
        else:
            t = tuple(("v", v) for v in t)
        faces.append(t)
        pls.append(pl)
    ids: dict = {}
    try:
        new = build_map(faces, ids=ids)
    except Exception as e:  # the reglued surface is not a valid sphere
        raise IllegalAction(f"regluing does not give a sphere: {e}") from e
    out = []
    for k, t in enumerate(faces):
        want = tuple(ids[v] for v in t)
        got = new.faces[k]
        pl = pls[k]
        if got not in (want, want[1:] + want[:1], want[2:] + want[:2]):
            want, pl = want[::-1], mirror_payload(pl)
        r = want.index(got[0])
        out.append(tuple(pl[(r + j) % 3] for j in range(3)))
    return new, out


def _tiling_payload(t: LabeledTiling):
    # per face: ((corner at vertex j, label of side j -> j+1) for j)
    return [tuple((t.corner[3 * k + j], t.label[3 * k + j]) for j in range(3)) for k in range(t.f)]


def _mirror_tile_payload(pl):
    # face (a,b,c) read as (c,b,a): sides c->b, b->a, a->c are the old b->c, a->b, c->a
    (c0, l0), (c1, l1), (c2, l2) = pl
    return ((c2, l1.reflect()), (c1, l0.reflect()), (c0, l2.reflect()))


def _parse_action(action, L: int) -> tuple[int, bool]:
    kind, amount = action
    if kind == "rotate":
        steps = Fraction(amount) * L / 2
        if steps.denominator != 1:
            raise IllegalAction(f"rotation by {amount}π does not realign a {L}-gon boundary")
        return int(steps) % L, False
    if kind == "flip":
        return int(amount) % L, True
    raise IllegalAction(f"unknown action {kind!r}")


def reglue(d: HemisphereDecomposition, action) -> LabeledTiling:
    """Reattach the inner hemisphere after a rotation or a flip.

    ``action`` is ``("rotate", amount)`` with ``amount`` in units of π
    (the boundary must map onto itself), or ``("flip", axis)`` where the
    inner boundary vertex ``i`` is sent to position ``axis - i``.
    """
    t = d.tiling
    shift, flip = _parse_action(action, len(d.boundary))
    inner = d.halves[0]
    new, pls = _reglue(t.map, d.boundary, inner, shift, flip, _tiling_payload(t), _mirror_tile_payload)
    corner = tuple(pl[j][0] for pl in pls for j in range(3))
    label = tuple(pl[j][1] for pl in pls for j in range(3))
    order = sorted(range(t.f), key=lambda k: k in inner)
    new_inner = tuple(i for i, k in enumerate(order) if k in inner)
    res = LabeledTiling(new, t.prototile, corner, label, provenance=t.provenance,
                        params={**t.params, "hemisphere": new_inner, "action": tuple(action)})
    for a, b in new.edges():
        if not match(label[a], label[b]):
            raise IllegalAction(
                f"{action[0]} breaks the gluing on edge {new.origin(a)}-{new.dest(a)}: "
                f"{label[a].ascii} vs {label[b].ascii}"
            )
    rep = verify_tiling(res)
    if not rep.ok:
        raise IllegalAction(f"{action[0]} gives no tiling: {rep.violations[:3]}")
    return res


def reglue_skeleton(sk: Skeleton, action, name: str, params=None) -> Skeleton:
    """The same operation on a bare skeleton (only corner-1 positions move)."""
    if sk.hemisphere is None:
        raise NotEarthMap(f"{sk.name} has no hemisphere decomposition")
    cyc, inner, _ = _split(sk.map, sk.hemisphere)
    shift, flip = _parse_action(action, len(cyc))
    flags = [tuple(j == a for j in range(3)) for a in sk.apex]
    new, pls = _reglue(sk.map, cyc, inner, shift, flip, flags, _mirror_payload)
    apex = tuple(pl.index(True) for pl in pls)
    order = sorted(range(sk.f), key=lambda k: k in inner)
    new_inner = tuple(i for i, k in enumerate(order) if k in inner)
    return Skeleton(new, apex, name, dict(params or {}), new_inner, {})


# ---------------------------------------------------------------------------
# cubes and their simple subdivisions


@dataclass(frozen=True, eq=False)
class CubeLabeling:
    """Labels on the cube's edges; ``darts[(u, v)]`` is read by the face left of ``u -> v``."""

    kind: str
    darts: dict

    def face_words(self) -> list[tuple[SideLabel, ...]]:
        return [
            tuple(self.darts[(f[i], f[(i + 1) % 4])] for i in range(4)) for f in _cube_polys()
        ]

    def describe(self) -> str:
        return ", ".join(" ".join(l.ascii for l in w) for w in self.face_words())


@lru_cache(maxsize=None)
def _cube_symmetries() -> tuple[tuple[tuple[int, ...], bool], ...]:
    polys = _cube_polys()
    faceset = {frozenset(p) for p in polys}
    cyc = {}
    for p in polys:
        for i in range(4):
            cyc[(p[i], p[(i + 1) % 4])] = True
    out = []
    for perm in permutations(range(8)):
        if {frozenset(perm[v] for v in p) for p in polys} != faceset:
            continue
        a, b = polys[0][0], polys[0][1]
        out.append((perm, (perm[a], perm[b]) in cyc))
    return tuple(out)


def _quad_words(kind: str) -> set[tuple[SideLabel, ...]]:
    p = by_name("h hb a" if kind == "H" else "r r a")
    words = set()
    for g in ("aligned", "mirrored"):
        try:
            w = companion_quad(p, g)
        except IllegalGluing:
            continue
        for ww in (w, tuple(l.reflect() for l in reversed(w))):
            for r in range(4):
                words.add(ww[r:] + ww[:r])
    return words


def _cube_code(darts: dict, kind: str) -> tuple:
    best = None
    for perm, orient in _cube_symmetries():
        for swap in (False, True):
            img = {}
            for (u, v), lab in darts.items():
                if not orient:
                    key, lab = (perm[v], perm[u]), lab.reflect()
                else:
                    key = (perm[u], perm[v])
                if swap:
                    lab = SideLabel(lab.kind, lab.side ^ 1 if kind == "H" else lab.side, -lab.chirality, lab.cls)
                img[key] = lab
            code = tuple(sorted((k, l.code) for k, l in img.items()))
            if best is None or code < best:
                best = code
    return best


def cube_face_labelings(kind: str) -> list[CubeLabeling]:
    """Edge labelings of the cube whose faces all read companion-pair words."""
    if kind not in ("H", "R"):
        raise BadParams("kind must be 'H' or 'R'")
    polys = _cube_polys()
    edges = sorted({tuple(sorted((p[i], p[(i + 1) % 4]))) for p in polys for i in range(4)})
    words = _quad_words(kind)
    seen: dict[tuple, CubeLabeling] = {}
    for bits in product((0, 1), repeat=len(edges)):
        darts = {}
        for (u, v), b in zip(edges, bits):
            if kind == "H":
                darts[(u, v)] = SideLabel("H", b)
                darts[(v, u)] = SideLabel("H", 1 - b)
            else:
                darts[(u, v)] = darts[(v, u)] = SideLabel("R", 0, 1 if b else -1)
        lab = CubeLabeling(kind, darts)
        if all(w in words for w in lab.face_words()):
            seen.setdefault(_cube_code(darts, kind), lab)
    return [seen[k] for k in sorted(seen)]


_CUBE_STYLES = {
    # every face reads h h̄ h h̄
    "alternating": ("H", lambda w: all(w[i].side != w[(i + 1) % 4].side for i in range(4))),
    # every face has four equal r letters
    "uniform": ("R", lambda w: len({l.chirality for l in w}) == 1),
    # every face reads r r r⁻¹ r⁻¹ up to rotation
    "split": ("R", lambda w: sorted(l.chirality for l in w) == [-1, -1, 1, 1]),
}


def named_cube(style: str) -> CubeLabeling:
    """The cube labeling whose faces all have the given ``style``."""
    if style not in _CUBE_STYLES:
        raise BadParams(f"style must be one of {sorted(_CUBE_STYLES)}")
    kind, pred = _CUBE_STYLES[style]
    for lab in cube_face_labelings(kind):
        if all(pred(w) for w in lab.face_words()):
            return lab
    raise BadParams(f"no {style} cube")  # pragma: no cover


def _kind_of(p: Prototile) -> str:
    return p.word[0].kind


def simple_subdivisions(labeling: CubeLabeling, p: Prototile) -> list[LabeledTiling]:
    """All ways to cut the labelled cube's faces into companion pairs of ``p``."""
    if p.name not in ("h hb r", "h hb a", "r r r2", "r r a"):
        raise BadPrototile(f"{p.name} does not cut cube faces into companion pairs")
    if _kind_of(p) != labeling.kind:
        raise BadPrototile(f"{p.name} needs {_kind_of(p)} cube edges, got {labeling.kind}")
    fixed = {k: dataclasses.replace(l, cls=p.word[0].cls) for k, l in labeling.darts.items()}
    out: dict[bytes, LabeledTiling] = {}
    for diag in product((0, 1), repeat=6):
        for t in versions(sp6_skeleton(diag), p, fixed=fixed):
            out.setdefault(t.canonical_code(), t)
    return [out[c] for c in sorted(out)]


# ---------------------------------------------------------------------------
# rrr-inverse labellings


def rrr_inv_labelings(n: int) -> list[LabeledTiling]:
    """Every rrr⁻¹ tiling of the Platonic solid with ``n`` faces, up to equivalence."""
    return versions(platonic_skeleton(n), by_name("r r r-"))


def inverse_edges(t: LabeledTiling) -> frozenset:
    """Edges read as r⁻¹ (the ones drawn with a circle)."""
    m = t.map
    return frozenset(
        frozenset((m.origin(d), m.dest(d))) for d, e in m.edges() if t.label[d].chirality < 0
    )


# ---------------------------------------------------------------------------
# generation


@dataclass(frozen=True)
class FamilySpec:
    family: str
    prototile: Prototile
    params: dict = field(default_factory=dict)


def _int(params, key, default=None):
    v = params.get(key, default)
    if v is None:
        raise BadParams(f"missing parameter {key!r}")
    try:
        return int(v)
    except (TypeError, ValueError):
        raise BadParams(f"parameter {key!r} must be an integer, got {v!r}") from None


def _amount(params) -> Fraction:
    a = Fraction(str(params.get("amount", "2/3")))
    if a not in (Fraction(2, 3), Fraction(4, 3)):
        raise BadParams("rotation amount must be 2/3 or 4/3 (units of π)")
    return a


def skeleton_for(fam: str, params: dict, p: Prototile | None = None) -> Skeleton:
    """The skeleton of a family member (before any decoration)."""
    fam = family_key(fam)
    if fam == "P":
        n = _int(params, "n", 4)
        if p is not None and p.distinguished:
            if n != 4:
                raise BadN(f"{p.name} only tiles the tetrahedron among the Platonic solids")
            return tetrahedron_skeleton()
        return platonic_skeleton(n)
    if fam == "TP":
        return tp_skeleton(_int(params, "n", 4))
    if fam == "SP6":
        return sp6_skeleton(params.get("diagonals", (0,) * 6))
    if fam == "EI1":
        return ei1_skeleton(_int(params, "m"))
    if fam == "EJ1":
        return ej1_skeleton(_int(params, "t"))
    if fam == "E2":
        if "n" in params:
            return e2_skeleton(n=_int(params, "n"))
        return e2_skeleton(_int(params, "q"))
    if fam == "E1":
        return e1_skeleton(_int(params, "p"))
    if fam == "FE1":
        q = _int(params, "q")
        return reglue_skeleton(e1_skeleton(2 * q + 1), ("flip", 1), "FE1", {"q": q})
    if fam in ("FEI1", "REI1"):
        q = _int(params, "q")
        if q < 2:
            raise BadParams("the modified earth map needs q >= 2")
        base = ei1_skeleton(2 * q)
        act = ("flip", 1) if fam == "FEI1" else ("rotate", Fraction(1, 2))
        return reglue_skeleton(base, act, fam, {"q": q})
    if fam == "REJ1":
        q = _int(params, "q")
        if q < 1:
            raise BadParams("RE^J1 needs q >= 1")
        a = _amount(params)
        return reglue_skeleton(ej1_skeleton(2 * q + 1), ("rotate", a), fam, {"q": q, "amount": str(a)})
    if fam == "RE2":
        q = _int(params, "q")
        a = _amount(params)
        return reglue_skeleton(e2_skeleton(q), ("rotate", a), fam, {"q": q, "amount": str(a)})
    raise BadParams(f"unknown family {fam!r}")


def _check_prototile(fam: str, p: Prototile, extended: bool = False):
    allowed = TABLE1[fam] + (EXTENSIONS.get(fam, ()) if extended else ())
    if p.name not in allowed:
        raise BadPrototile(f"{FAMILIES[fam]} is not a family for {p.pretty or p.name}")
    if fam == "P" and not p.distinguished:
        return


def _base_version(fam: str, params: dict, p: Prototile) -> list[LabeledTiling]:
    """Labelled versions for a modification, built by regluing the base family."""
    if fam == "FE1":
        q = _int(params, "q")
        base, act = e1_skeleton(2 * q + 1), ("flip", 1)
    elif fam in ("FEI1", "REI1"):
        q = _int(params, "q")
        base = ei1_skeleton(2 * q)
        act = ("flip", 1) if fam == "FEI1" else ("rotate", Fraction(1, 2))
    elif fam == "REJ1":
        base, act = ej1_skeleton(2 * _int(params, "q") + 1), ("rotate", _amount(params))
    elif fam == "RE2":
        base, act = e2_skeleton(_int(params, "q")), ("rotate", _amount(params))
    else:
        return []
    out = []
    for t in versions(base, p):
        try:
            r = reglue(hemisphere_split(t), act)
        except IllegalAction:
            continue
        out.append(dataclasses.replace(r, provenance=fam, params={**r.params, **_public(params)}))
    return out


def _public(params: dict) -> dict:
    return {k: v for k, v in params.items() if k not in ("version",)}


def generate(spec: FamilySpec, *, all_versions: bool = False, extended: bool = False):
    """Build a family member.

    By default returns one tiling (the first version in canonical order, or
    for modifications the reglued first base version).  ``all_versions``
    returns every inequivalent decoration of the family's skeleton.
    """
    fam = family_key(spec.family)
    p = spec.prototile
    _check_prototile(fam, p, extended)
    params = dict(spec.params)
    if fam == "E2" and "n" in params and _int(params, "n") % 2 == 0 and not extended:
        raise BadParams("an even number of cap tiles is outside the listed family; pass extended=True")
    if fam == "SP6" and "labeling" in params:
        return _sp6_from_labeling(p, params, all_versions)
    if fam == "TP":
        n = _int(params, "n", 4)
        _cross_check_tp(n)
    sk = skeleton_for(fam, params, p)
    if all_versions:
        out = versions(sk, p)
        return [dataclasses.replace(t, provenance=fam, params={**t.params, **_public(params)}) for t in out]
    if fam in ("FE1", "FEI1", "REI1", "REJ1", "RE2"):
        outs = _base_version(fam, params, p)
        if outs:
            return outs[0]
    out = versions(sk, p) if "version" in params else versions(sk, p, limit=1)
    if not out:
        raise BadParams(f"{FAMILIES[fam]} with {params} has no {p.name} version")
    k = _int(params, "version", 0)
    if not 0 <= k < len(out):
        raise BadParams(f"version {k} out of range (0..{len(out) - 1})")
    t = out[k]
    if fam == "TP" and "orientations" in params:
        t = _reorient_blocks(t, sk, params["orientations"])
    return dataclasses.replace(t, provenance=fam, params={**t.params, **_public(params)})


def _cross_check_tp(n: int):
    from .avc import solve_f_for_case

    f = tp_faces(n)
    k = len(platonic_faces(n)[0])
    if f not in solve_f_for_case("1^%d" % k):
        raise FamilyError(f"T△P{n} has {f} faces, not among the face counts for vertex 1^{k}")


def _reorient_blocks(t: LabeledTiling, sk: Skeleton, flags) -> LabeledTiling:
    """Swap corners 2 and 3 in the chosen blocks (faces around one centre)."""
    flags = [int(x) for x in flags]
    polys = platonic_faces(sk.params["n"])
    if len(flags) != len(polys):
        raise BadParams(f"need {len(polys)} orientation flags")
    corner = list(t.corner)
    k = 0
    for poly, flag in zip(polys, flags):
        for _ in poly:
            if flag:
                for j in range(3):
                    c = corner[3 * k + j]
                    corner[3 * k + j] = {1: 1, 2: 3, 3: 2}[c]
            k += 1
    new = LabeledTiling.from_corners(t.map, t.prototile, corner, provenance=t.provenance, params=t.params)
    if not verify_tiling(new).ok:
        raise BadParams(f"these orientation flags give no {t.prototile.name} tiling")
    return new


def _sp6_from_labeling(p: Prototile, params: dict, all_versions: bool):
    labs = cube_face_labelings(_kind_of(p))
    i = _int(params, "labeling", 0)
    if not 0 <= i < len(labs):
        raise BadParams(f"labeling index must be in 0..{len(labs) - 1}")
    lab = labs[i]
    fixed = {k: dataclasses.replace(l, cls=p.word[0].cls) for k, l in lab.darts.items()}
    if all_versions:
        return simple_subdivisions(lab, p)
    diag = tuple(int(x) for x in params.get("diagonals", (0,) * 6))
    sk = sp6_skeleton(diag)
    out = versions(sk, p, fixed=fixed, limit=1)
    if not out:
        raise IllegalDiagonal(f"diagonals {diag} cannot be taken on cube labeling {i} for {p.name}")
    return dataclasses.replace(out[0], provenance="SP6", params={**out[0].params, **_public(params)})


# ---------------------------------------------------------------------------
# the atlas: every family member with a given face count


def family_parameters(fam: str, f: int, p: Prototile, *, extended: bool = False) -> list[dict]:
    """Parameter sets of ``fam`` producing ``f`` tiles.

    ``extended`` adds the even-cap three-layer earth maps (see :data:`EVEN_E2`).
    """
    fam = family_key(fam)
    out: list[dict] = []
    if fam == "P":
        ns = PLATONIC_N.get(p.name, (4,))
        out = [{"n": n} for n in ns if n == f]
    elif fam == "TP":
        out = [{"n": n} for n in TP_N if tp_faces(n) == f]
    elif fam == "SP6":
        out = [{"diagonals": d} for d in product((0, 1), repeat=6)] if f == 12 else []
    elif fam == "EI1":
        out = [{"m": f // 2}] if f >= 6 else []
    elif fam == "EJ1":
        out = [{"t": f // 4}] if f % 4 == 0 and f >= 8 else []
    elif fam == "E1":
        out = [{"p": f // 4}] if f % 4 == 0 and f >= 8 else []
    elif fam in ("E2", "FE1"):
        out = [{"q": (f - 4) // 8}] if f % 8 == 4 and f >= 12 else []
        if fam == "E2" and extended and EVEN_E2 and f % 8 == 0 and f >= 16:
            out = [{"n": f // 4}]
    elif fam in ("FEI1", "REI1"):
        out = [{"q": f // 4}] if f % 4 == 0 and f >= 8 else []
    elif fam in ("REJ1", "RE2"):
        if f % 8 == 4 and f >= 12:
            q = (f - 4) // 8
            out = [{"q": q, "amount": "2/3"}, {"q": q, "amount": "4/3"}]
    return out


def atlas(f: int, p: Prototile, *, extended: bool = False) -> dict[bytes, tuple[LabeledTiling, set[str]]]:
    """Every version of every family listed for ``p`` with ``f`` tiles.

    Keys are canonical codes; values hold one representative and the names
    of all families producing it.
    """
    out: dict[bytes, tuple[LabeledTiling, set[str]]] = {}
    for fam in FAMILIES:
        allowed = TABLE1[fam] + (EXTENSIONS.get(fam, ()) if extended else ())
        if p.name not in allowed:
            continue
        for params in family_parameters(fam, f, p, extended=extended):
            sk = skeleton_for(fam, params, p)
            ts = versions(sk, p)
            if fam in ("FE1", "FEI1", "REI1", "REJ1", "RE2"):
                ts = ts + _base_version(fam, params, p)
            for t in ts:
                code = t.canonical_code()
                if code not in out:
                    out[code] = (dataclasses.replace(t, provenance=fam), set())
                out[code][1].add(FAMILIES[fam])
    return out


def all_prototiles() -> list[Prototile]:
    return catalog16()


def family_samples(fam: str, p: Prototile, count: int = 2, max_f: int = 60, *, extended: bool = False) -> list[LabeledTiling]:
    """One tiling for each of the ``count`` smallest parameter choices of ``fam``."""
    fam = family_key(fam)
    _check_prototile(fam, p, extended)
    out: list[LabeledTiling] = []
    if fam == "SP6" and _kind_of(p) in "HR":
        for i, lab in enumerate(cube_face_labelings(_kind_of(p))):
            ts = simple_subdivisions(lab, p)
            if ts:
                out.append(dataclasses.replace(ts[0], provenance=fam, params={"labeling": i}))
            if len(out) == count:
                break
        return out
    for f in range(4, max_f + 1, 2):
        for params in family_parameters(fam, f, p, extended=extended):
            if fam in ("FE1", "FEI1", "REI1", "REJ1", "RE2"):
                ts = _base_version(fam, params, p)
            else:
                ts = versions(skeleton_for(fam, params, p), p, limit=1)
            if ts:
                out.append(dataclasses.replace(ts[0], provenance=fam, params={**ts[0].params, **_public(params)}))
                break
        if len(out) == count:
            break
    return out
