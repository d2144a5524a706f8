"""Dart-based combinatorial maps of triangulated spheres.

A map with ``f`` triangular faces has ``3f`` darts.  Dart ``3k + j`` is the
``j``-th side of face ``k`` read counterclockwise, so the face permutation
``nxt`` is implicit in the numbering.  ``theta`` pairs each dart with the
dart on the other side of the same edge.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence


class MapError(ValueError):
    pass


class NonManifold(MapError):
    pass


class NotSphere(MapError):
    pass


class LowDegree(MapError):
    pass


class OutOfRange(MapError):
    pass


TRIANGULATION_CEILING = 16


def nxt(d: int) -> int:
    return d - 2 if d % 3 == 2 else d + 1


def prv(d: int) -> int:
    return d + 2 if d % 3 == 0 else d - 1


@dataclass(frozen=True, eq=False)
class CombMap:
    """A triangulated sphere.

    ``faces[k]`` is the counterclockwise vertex triple of face ``k``;
    ``theta`` is the edge involution on darts.
    """

    faces: tuple[tuple[int, int, int], ...]
    theta: tuple[int, ...]
    nv: int = field(default=0)

    @property
    def nf(self) -> int:
        return len(self.faces)

    @property
    def nd(self) -> int:
        return 3 * len(self.faces)

    @property
    def ne(self) -> int:
        return self.nd // 2

    def origin(self, d: int) -> int:
        return self.faces[d // 3][d % 3]

    def dest(self, d: int) -> int:
        return self.faces[d // 3][(d % 3 + 1) % 3]

    def rotate(self, d: int) -> int:
        """Next dart counterclockwise around the origin of ``d``."""
        return self.theta[prv(d)]

    def vertex_darts(self, v: int) -> list[int]:
        """Darts leaving ``v`` in counterclockwise order."""
        start = self._out[v]
        out = [start]
        d = self.rotate(start)
        while d != start:
            out.append(d)
            d = self.rotate(d)
        return out

    @property
    def _out(self) -> list[int]:
        cache = self.__dict__.get("_out_cache")
        if cache is None:
            cache = [-1] * self.nv
            for d in range(self.nd):
                v = self.origin(d)
                if cache[v] < 0:
                    cache[v] = d
            object.__setattr__(self, "_out_cache", cache)
        return cache

    def degree(self, v: int) -> int:
        return len(self.vertex_darts(v))

    def degrees(self) -> list[int]:
        deg = [0] * self.nv
        for d in range(self.nd):
            deg[self.origin(d)] += 1
        return deg

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as dart pairs ``(d, theta[d])`` with ``d`` smaller."""
        return [(d, t) for d, t in enumerate(self.theta) if d < t]

    def neighbors(self, v: int) -> list[int]:
        return [self.dest(d) for d in self.vertex_darts(v)]

    def face_adjacent(self, k: int) -> list[int]:
        return [self.theta[3 * k + j] // 3 for j in range(3)]

    def is_simplicial(self) -> bool:
        seen = set()
        for a, b in (
            (self.origin(d), self.dest(d)) for d in range(self.nd)
        ):
            if a == b or (a, b) in seen:
                return False
            seen.add((a, b))
        return True

    def mirrored(self) -> "CombMap":
        """The same sphere with the opposite orientation.

        Face ``k`` becomes ``(v0, v2, v1)``; dart ``3k + j`` of the result is
        the reversal of the original dart ``3k + (2 - j) % 3``... see
        :func:`mirror_dart`.
        """
        faces = tuple((a, c, b) for a, b, c in self.faces)
        theta = [0] * self.nd
        for d in range(self.nd):
            theta[mirror_dart(d)] = mirror_dart(self.theta[d])
        return CombMap(faces, tuple(theta), self.nv)

    def __repr__(self) -> str:
        v, e, f = euler_stats(self)
        return f"CombMap(v={v}, e={e}, f={f})"


def mirror_dart(d: int) -> int:
    """Index in :meth:`CombMap.mirrored` of the reversal of dart ``d``.

    Face ``(a, b, c)`` becomes ``(a, c, b)``; the reversed side ``b -> a``
    of dart ``a -> b`` (j=0) is side 2 of the new face, ``c -> b`` is side 1
    and ``a -> c`` is side 0.
    """
    k, j = divmod(d, 3)
    return 3 * k + (2 - j)


def _orient(triples: Sequence[Sequence[int]]) -> list[tuple[int, int, int]]:
    """Reorient faces coherently, relative to the first face."""
    faces = [tuple(t) for t in triples]
    for t in faces:
        if len(t) != 3 or len(set(t)) != 3:
            raise NonManifold(f"face {t} is not a triangle on 3 distinct vertices")
    uses: dict[frozenset, list[int]] = {}
    for k, t in enumerate(faces):
        for j in range(3):
            uses.setdefault(frozenset((t[j], t[(j + 1) % 3])), []).append(k)
    for pair, ks in uses.items():
        if len(ks) != 2:
            raise NonManifold(f"adjacency {sorted(pair)} used {len(ks)} times")
    flip = [None] * len(faces)
    for root in range(len(faces)):
        if flip[root] is not None:
            continue
        flip[root] = False
        queue = deque([root])
        while queue:
            k = queue.popleft()
            t = faces[k][::-1] if flip[k] else faces[k]
            for j in range(3):
                a, b = t[j], t[(j + 1) % 3]
                for k2 in uses[frozenset((a, b))]:
                    if k2 == k:
                        continue
                    t2 = faces[k2]
                    forward = any(
                        t2[i] == a and t2[(i + 1) % 3] == b for i in range(3)
                    )
                    want = forward  # same direction means k2 must flip
                    if flip[k2] is None:
                        flip[k2] = want
                        queue.append(k2)
                    elif flip[k2] != want:
                        raise NotSphere("faces cannot be oriented coherently")
    return [faces[k][::-1] if flip[k] else faces[k] for k in range(len(faces))]


def build_map(
    face_boundaries: Iterable[Sequence[int]], *, check: bool = True, ids: dict | None = None
) -> CombMap:
    """Build a map from cyclic vertex triples.

    Faces may be given in either orientation; they are reoriented to agree
    with the first face, and keep their order.  Vertex ids are compacted to
    ``0..v-1`` in order of first appearance; pass a dict as ``ids`` to get
    the old-to-new mapping back.
    """
    raw = [tuple(t) for t in face_boundaries]
    oriented = _orient(raw)
    if ids is None:
        ids = {}
    ids.clear()
    for t in oriented:
        for x in t:
            ids.setdefault(x, len(ids))
    faces = tuple(tuple(ids[x] for x in t) for t in oriented)
    where = {}
    for k, t in enumerate(faces):
        for j in range(3):
            key = (t[j], t[(j + 1) % 3])
            if key in where:
                raise NonManifold(f"directed side {key} used twice")
            where[key] = 3 * k + j
    theta = [where[(faces[d // 3][(d % 3 + 1) % 3], faces[d // 3][d % 3])] for d in range(3 * len(faces))]
    m = CombMap(faces, tuple(theta), len(ids))
    if check:
        check_map(m)
    return m


def check_map(m: CombMap) -> None:
    for d, t in enumerate(m.theta):
        if t == d or m.theta[t] != d:
            raise NonManifold(f"theta is not a fixed-point-free involution at dart {d}")
    # vertex orbits of the rotation must match vertex ids
    seen = [False] * m.nd
    orbits = 0
    for d in range(m.nd):
        if seen[d]:
            continue
        orbits += 1
        x = d
        while not seen[x]:
            seen[x] = True
            if m.origin(x) != m.origin(d):
                raise NonManifold(f"vertex {m.origin(d)} is pinched")
            x = m.rotate(x)
    if orbits != m.nv:
        raise NonManifold("a vertex has more than one umbrella")
    v, e, f = euler_stats(m)
    if v - e + f != 2:
        raise NotSphere(f"Euler characteristic {v - e + f} != 2")
    low = [i for i, dg in enumerate(m.degrees()) if dg < 3]
    if low:
        raise LowDegree(f"vertices {low} have degree < 3")


def euler_stats(m: CombMap) -> tuple[int, int, int]:
    return m.nv, m.nd // 2, m.nf


# ---------------------------------------------------------------------------
# canonical form


def _bfs_code(m: CombMap, start: int, labels, best):
    """Code of ``m`` numbered by BFS from ``start``; ``None`` once worse than ``best``.

    Each dart contributes ``(label, number of nxt, number of theta)``.
    """
    nd = m.nd
    num = [-1] * nd
    order = [start]
    num[start] = 0
    theta = m.theta
    code = []
    i = 0
    pos = 0
    better = best is None
    while i < len(order):
        d = order[i]
        i += 1
        row = (labels[d] if labels is not None else 0,)
        for x in (nxt(d), theta[d]):
            if num[x] < 0:
                num[x] = len(order)
                order.append(x)
            row += (num[x],)
        for val in row:
            if not better:
                b = best[pos]
                if val > b:
                    return None
                if val < b:
                    better = True
            code.append(val)
            pos += 1
    if not better:
        return None
    return code


def _min_code(m: CombMap, labels):
    best = None
    starts = range(m.nd)
    if labels is not None:
        low = min(labels)
        starts = [d for d in starts if labels[d] == low]
    for s in starts:
        c = _bfs_code(m, s, labels, best)
        if c is not None:
            best = c
    return best


def canonical_code(
    m: CombMap,
    labels: Sequence[int] | None = None,
    group: str = "full",
    mirror_labels: Sequence[int] | None = None,
) -> bytes:
    """Minimal BFS encoding of a (labelled) map.

    ``labels`` are small non-negative ints per dart.  With ``group="full"``
    the mirror image is also tried; ``mirror_labels[d]`` is then the label of
    the reversal of dart ``d`` in the mirror image (defaults to ``labels``).
    """
    if group not in ("oriented", "full"):
        raise ValueError(f"unknown group {group!r}")
    if labels is not None and len(labels) != m.nd:
        raise ValueError("label vector length must equal the dart count")
    best = _min_code(m, labels)
    if group == "full":
        mm = m.mirrored()
        src = labels if mirror_labels is None else mirror_labels
        ml = None
        if src is not None:
            ml = [0] * m.nd
            for d in range(m.nd):
                ml[mirror_dart(d)] = src[d]
        other = _min_code(mm, ml)
        if other < best:
            best = other
    return array("H", best).tobytes()


def automorphisms(m: CombMap, labels: Sequence[int] | None = None, group: str = "full"):
    """All label-preserving automorphisms as ``(mirrored, dart_map)`` pairs.

    ``dart_map[d]`` is the image dart (in ``m`` itself, or in
    ``m.mirrored()`` when ``mirrored``).
    """
    out = []
    targets = [(False, m, labels)]
    if group == "full":
        mm = m.mirrored()
        ml = None
        if labels is not None:
            ml = [0] * m.nd
            for d in range(m.nd):
                ml[mirror_dart(d)] = labels[d]
        targets.append((True, mm, ml))
    for flag, target, tl in targets:
        for s in range(m.nd):
            iso = _extend_iso(m, labels, target, tl, 0, s)
            if iso is not None:
                out.append((flag, iso))
    return out


def _extend_iso(a: CombMap, la, b: CombMap, lb, d0: int, e0: int):
    phi = [-1] * a.nd
    phi[d0] = e0
    stack = [d0]
    while stack:
        d = stack.pop()
        e = phi[d]
        if (la[d] if la is not None else 0) != (lb[e] if lb is not None else 0):
            return None
        for x, y in ((nxt(d), nxt(e)), (a.theta[d], b.theta[e])):
            if phi[x] < 0:
                phi[x] = y
                stack.append(x)
            elif phi[x] != y:
                return None
    return phi


# ---------------------------------------------------------------------------
# triangulation enumeration


def _faces_of(m: CombMap) -> list[tuple[int, int, int]]:
    return list(m.faces)


def _flip(faces: list[tuple[int, int, int]], m: CombMap, d: int):
    """Faces after flipping the edge of dart ``d``; ``None`` if not simplicial."""
    t = m.theta[d]
    a, b = m.origin(d), m.dest(d)
    c = m.dest(nxt(d))
    e = m.dest(nxt(t))
    if c == e or e in m.neighbors(c):
        return None
    if m.degree(a) <= 3 or m.degree(b) <= 3:
        return None
    k1, k2 = d // 3, t // 3
    new = [f for i, f in enumerate(faces) if i not in (k1, k2)]
    new.append((c, a, e))
    new.append((e, b, c))
    return new


def platonic_faces(n: int) -> list[tuple[int, ...]]:
    """Face lists of the Platonic solids (n = number of faces)."""
    if n == 4:
        return [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    if n == 8:
        # poles 0, 5; equator 1..4
        eq = [1, 2, 3, 4]
        out = []
        for i in range(4):
            a, b = eq[i], eq[(i + 1) % 4]
            out.append((0, a, b))
            out.append((5, b, a))
        return out
    if n == 20:
        top, bot = 0, 11
        up = [1, 2, 3, 4, 5]
        lo = [6, 7, 8, 9, 10]
        out = []
        for i in range(5):
            j = (i + 1) % 5
            out.append((top, up[i], up[j]))
            out.append((up[i], lo[i], up[j]))
            out.append((up[j], lo[i], lo[j]))
            out.append((bot, lo[j], lo[i]))
        return out
    if n == 6:
        # cube: bottom 0..3, top 4..7
        return [
            (0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4),
            (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7),
        ]
    if n == 12:
        return _dodecahedron()
    raise OutOfRange(f"no Platonic solid with {n} faces")


def _dodecahedron() -> list[tuple[int, ...]]:
    # dual of the icosahedron: one dodecahedron vertex per icosahedron face
    ico = build_map(platonic_faces(20))
    faces = []
    for v in range(ico.nv):
        faces.append(tuple(d // 3 for d in ico.vertex_darts(v)))
    return faces


def _seed_triangulation(nv: int) -> list[tuple[int, int, int]]:
    """A triangulation with ``nv`` vertices: a double pyramid over a cycle."""
    ring = list(range(2, nv))
    out = []
    r = len(ring)
    for i in range(r):
        a, b = ring[i], ring[(i + 1) % r]
        out.append((0, a, b))
        out.append((1, b, a))
    return out


def enumerate_triangulations(f: int, ceiling: int = TRIANGULATION_CEILING) -> list[CombMap]:
    """All simplicial sphere triangulations with ``f`` faces, up to isomorphism.

    Simplicial triangulations of the sphere with a fixed vertex count are
    connected under edge flips, so a flip closure from any seed reaches all
    of them.  Output is sorted by canonical code.
    """
    if f % 2 or f < 4 or f > ceiling:
        raise OutOfRange(f"face count must be even with 4 <= f <= {ceiling}, got {f}")
    nv = f // 2 + 2
    if nv == 4:
        m = build_map(platonic_faces(4))
        return [m]
    seed = build_map(_seed_triangulation(nv))
    found = {canonical_code(seed): seed}
    queue = deque([seed])
    while queue:
        m = queue.popleft()
        faces = _faces_of(m)
        for d, _ in m.edges():
            new = _flip(faces, m, d)
            if new is None:
                continue
            m2 = build_map(new, check=False)
            code = canonical_code(m2)
            if code not in found:
                check_map(m2)
                found[code] = m2
                queue.append(m2)
    return [found[c] for c in sorted(found)]
