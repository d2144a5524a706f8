"""Labelled tilings, the gluing law, and exact angle feasibility."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .maps import CombMap, MapError, canonical_code, check_map, mirror_dart, nxt
from .prototile import Prototile, SideLabel, match

F = Fraction


class Infeasible(ValueError):
    pass


def darts_match(l1: SideLabel, l2: SideLabel) -> bool:
    return match(l1, l2)


@dataclass(frozen=True, eq=False)
class LabeledTiling:
    """A triangulated sphere with every face carrying a copy of the prototile.

    ``corner[d]`` is the corner at the origin of dart ``d``; ``label[d]`` the
    side label read along ``d``.
    """

    map: CombMap
    prototile: Prototile
    corner: tuple[int, ...]
    label: tuple[SideLabel, ...]
    provenance: str | None = None
    params: dict = field(default_factory=dict)

    @classmethod
    def from_corners(cls, m: CombMap, p: Prototile, corner: Sequence[int], **kw) -> "LabeledTiling":
        labels = []
        for d in range(m.nd):
            a, b = corner[d], corner[nxt(d)]
            if b == a % 3 + 1:
                labels.append(p.side(a, b))
            else:
                labels.append(p.side(a, b).reflect())
        return cls(m, p, tuple(corner), tuple(labels), **kw)

    @classmethod
    def from_vertex_corners(cls, m: CombMap, p: Prototile, face_corners: Sequence[dict], **kw) -> "LabeledTiling":
        """``face_corners[k]`` maps each vertex of face ``k`` to its corner."""
        corner = [face_corners[d // 3][m.origin(d)] for d in range(m.nd)]
        return cls.from_corners(m, p, corner, **kw)

    @property
    def f(self) -> int:
        return self.map.nf

    def mirrored_face(self, k: int) -> bool:
        a, b = self.corner[3 * k], self.corner[3 * k + 1]
        return b != a % 3 + 1

    def convention_variants(self) -> list[dict]:
        """Relabelings that rename which side or direction of a curve is primary."""
        classes = sorted({(l.kind, l.cls) for l in self.prototile.word if l.kind != "A"})
        out = [{}]
        for key in classes:
            flips = ("side", "chirality") if key[0] == "G" else (("side",) if key[0] == "H" else ("chirality",))
            new = []
            for conv in out:
                for mask in range(1 << len(flips)):
                    c = dict(conv)
                    c[key] = tuple(fl for i, fl in enumerate(flips) if mask >> i & 1)
                    new.append(c)
            out = new
        return out

    def code_labels(self, conv: dict | None = None) -> tuple[list[int], list[int]]:
        """Per-dart ints for canonical codes, and their mirror-image counterparts."""
        orbit = {}
        for i, o in enumerate(self.prototile.corner_orbits()):
            for c in o:
                orbit[c] = i
        labels, corner = self.label, self.corner
        if conv:
            labels = [_convert(l, conv.get((l.kind, l.cls), ())) for l in labels]
            corner = _recorner(self.prototile, corner, labels)
            if corner is None:
                return None
        lab = [labels[d].code * 4 + orbit[corner[d]] for d in range(self.map.nd)]
        mir = [
            labels[d].reflect().code * 4 + orbit[corner[nxt(d)]]
            for d in range(self.map.nd)
        ]
        return lab, mir

    def canonical_code(self, group: str = "full", conventions: bool = True) -> bytes:
        key = f"_code_{group}_{conventions}"
        cached = self.__dict__.get(key)
        if cached is None:
            convs = self.convention_variants() if conventions else [{}]
            for conv in convs:
                pair = self.code_labels(conv)
                if pair is None:
                    continue
                lab, mir = pair
                c = canonical_code(self.map, lab, group, mir)
                if cached is None or c < cached:
                    cached = c
            if cached is None:
                # labels that no convention change can re-read (a corrupted
                # tiling): fall back to the code of the labels as given
                lab, mir = self.code_labels({})
                cached = canonical_code(self.map, lab, group, mir)
            object.__setattr__(self, key, cached)
        return cached

    def vertex_counts(self) -> list[tuple[int, int, int]]:
        cnt = [[0, 0, 0] for _ in range(self.map.nv)]
        for d in range(self.map.nd):
            cnt[self.map.origin(d)][self.corner[d] - 1] += 1
        return [tuple(c) for c in cnt]

    def mirror(self) -> "LabeledTiling":
        """The reflected tiling on :meth:`CombMap.mirrored`."""
        m2 = self.map.mirrored()
        corner = [0] * m2.nd
        label = [None] * m2.nd
        for d in range(self.map.nd):
            e = mirror_dart(d)
            corner[e] = self.corner[nxt(d)]
            label[e] = self.label[d].reflect()
        return LabeledTiling(m2, self.prototile, tuple(corner), tuple(label), self.provenance, dict(self.params))


def _convert(l: SideLabel, flips) -> SideLabel:
    if not flips:
        return l
    side = l.side ^ 1 if "side" in flips else l.side
    chir = -l.chirality if "chirality" in flips else l.chirality
    return SideLabel(l.kind, side, chir, l.cls)


def _recorner(p: Prototile, corner, labels):
    """Corners making ``labels`` a tiling by ``p``, keeping the old ones when possible."""
    by_labels: dict[tuple, list] = {}
    for cs, ls in p.placements(merge=False):
        by_labels.setdefault(ls, []).append(cs)
    out = []
    for k in range(len(labels) // 3):
        opts = by_labels.get(tuple(labels[3 * k:3 * k + 3]))
        if not opts:
            return None
        old = tuple(corner[3 * k:3 * k + 3])
        out.extend(old if old in opts else opts[0])
    return out


def combination_string(counts: Sequence[int]) -> str:
    parts = []
    for c, k in zip((1, 2, 3), counts):
        if k == 1:
            parts.append(str(c))
        elif k > 1:
            parts.append(f"{c}^{k}")
    return " ".join(parts)


def orbit_normal(counts: Sequence[int], orbits) -> tuple[int, ...]:
    """Spread counts evenly over corners that the prototile cannot tell apart.

    Such corners carry equal angles, so only their total at a vertex is
    meaningful; the lower corner gets the larger share.
    """
    out = list(counts)
    for o in orbits:
        cs = sorted(o)
        if len(cs) < 2:
            continue
        total = sum(counts[c - 1] for c in cs)
        q, r = divmod(total, len(cs))
        for i, c in enumerate(cs):
            out[c - 1] = q + (i < r)
    return tuple(out)


def vertex_spectrum(t: LabeledTiling) -> Counter:
    orbits = t.prototile.corner_orbits()
    return Counter(combination_string(orbit_normal(c, orbits)) for c in t.vertex_counts())


# ---------------------------------------------------------------------------
# exact angle systems


@dataclass(frozen=True)
class AngleAssignment:
    """Corner angles in units of pi."""

    values: tuple[Fraction, Fraction, Fraction]
    free: int = 0

    def total(self) -> Fraction:
        return sum(self.values, F(0))

    def __str__(self) -> str:
        return "(" + ", ".join(f"{v}" for v in self.values) + ")·π"


def _rref(rows: list[list[Fraction]], n: int):
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for row in rows[r:]:
        if row[n] != 0:
            return None
    return rows[:r], pivots


def solve_positive(equations: Iterable[Sequence], n: int = 3) -> tuple[list[Fraction], int] | None:
    """Strictly positive solution of ``A x = b`` (rows ``[a1..an, b]``).

    Returns ``(x, free_dims)`` where ``x`` is the centroid-style witness, or
    ``None`` when no positive solution exists.
    """
    rows = [[F(x) for x in row] for row in equations]
    res = _rref(rows, n)
    if res is None:
        return None
    rows, pivots = res
    free = [c for c in range(n) if c not in pivots]
    # x = p + sum t_j * basis_j
    p = [F(0)] * n
    basis = []
    for i, c in enumerate(pivots):
        p[c] = rows[i][n]
    for fc in free:
        v = [F(0)] * n
        v[fc] = F(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][fc]
        basis.append(v)
    k = len(basis)
    if k == 0:
        return (p, 0) if all(x > 0 for x in p) else None
    if k == 1:
        lo, hi = None, None
        for i in range(n):
            a, b = basis[0][i], p[i]  # b + a t > 0
            if a == 0:
                if b <= 0:
                    return None
            elif a > 0:
                bound = -b / a
                lo = bound if lo is None else max(lo, bound)
            else:
                bound = -b / a
                hi = bound if hi is None else min(hi, bound)
        if lo is None or hi is None or lo >= hi:
            return None
        t = (lo + hi) / 2
        return [p[i] + basis[0][i] * t for i in range(n)], 1
    if k == 2:
        # vertices of the closed region; their average is interior if area > 0
        pts = []
        cons = [(basis[0][i], basis[1][i], p[i]) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a1, b1, c1 = cons[i]
                a2, b2, c2 = cons[j]
                det = a1 * b2 - a2 * b1
                if det == 0:
                    continue
                s = (-c1 * b2 + c2 * b1) / det
                t = (-a1 * c2 + a2 * c1) / det
                if all(a * s + b * t + c >= 0 for a, b, c in cons):
                    pts.append((s, t))
        if not pts:
            return None
        s = sum(q[0] for q in pts) / len(pts)
        t = sum(q[1] for q in pts) / len(pts)
        x = [p[i] + basis[0][i] * s + basis[1][i] * t for i in range(n)]
        return (x, 2) if all(v > 0 for v in x) else None
    raise Infeasible("angle system has no vertex constraint")


def angle_equations(counts: Iterable[Sequence[int]], f: int, equal_corners: Iterable[frozenset] = ()) -> list[list[Fraction]]:
    rows = [[F(1), F(1), F(1), 1 + F(4, f)]]
    for c in set(tuple(x) for x in counts):
        rows.append([F(c[0]), F(c[1]), F(c[2]), F(2)])
    for orbit in equal_corners:
        o = sorted(orbit)
        for a, b in zip(o, o[1:]):
            row = [F(0)] * 4
            row[a - 1], row[b - 1] = F(1), F(-1)
            rows.append(row)
    return rows


def solve_counts(counts, f: int, equal_corners=()) -> AngleAssignment | None:
    res = solve_positive(angle_equations(counts, f, equal_corners))
    if res is None:
        return None
    x, free = res
    return AngleAssignment(tuple(x), free)


def chord_equal_corners(p: Prototile) -> list[frozenset[int]]:
    """Corners whose straightened (geodesic) angles must agree.

    Sides cut by the same curve class have equal chords, and equal sides of
    a geodesic triangle face equal angles.
    """
    opp = {0: 3, 1: 1, 2: 2}  # side 12 faces corner 3, 23 faces 1, 31 faces 2
    groups: dict[tuple, set[int]] = {}
    for i, lab in enumerate(p.word):
        groups.setdefault((lab.kind, lab.cls), set()).add(opp[i])
    return [frozenset(g) for g in groups.values() if len(g) > 1]


def angle_solve(t: LabeledTiling) -> AngleAssignment:
    orbits = [o for o in t.prototile.corner_orbits() if len(o) > 1]
    sol = solve_counts(t.vertex_counts(), t.f, orbits)
    if sol is None:
        raise Infeasible("no positive angle assignment")
    return sol


def chord_feasible(counts, f: int, p: Prototile) -> bool:
    """Positive solution for the straightened triangle's angles."""
    return solve_counts(counts, f, chord_equal_corners(p)) is not None


# ---------------------------------------------------------------------------
# full verification


@dataclass
class VerifyReport:
    ok: bool
    violations: list[tuple[str, str]]
    angle: AngleAssignment | None = None
    vertex_spectrum: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"check": c, "where": w} for c, w in self.violations],
            "angle": None if self.angle is None else [str(v) for v in self.angle.values],
            "vertex_spectrum": dict(sorted(self.vertex_spectrum.items())),
        }


def face_violation(t: LabeledTiling, k: int) -> bool:
    got = tuple((t.corner[3 * k + j], t.label[3 * k + j]) for j in range(3))
    for corners, labels in t.prototile.placements(merge=False):
        if tuple(zip(corners, labels)) == got:
            return False
    return True


def verify_tiling(t: LabeledTiling, *, oriented_only: bool = False, chords: bool = True) -> VerifyReport:
    """Check topology, congruence, gluing and angles, in that order."""
    v: list[tuple[str, str]] = []
    m = t.map
    try:
        check_map(m)
    except MapError as e:
        v.append(("topology", str(e)))
    if not m.is_simplicial():
        v.append(("topology", "map has a loop or a multiple edge"))
    for k in range(m.nf):
        if sorted(t.corner[3 * k:3 * k + 3]) != [1, 2, 3]:
            v.append(("congruence", f"face {k} corners {t.corner[3 * k:3 * k + 3]}"))
        elif face_violation(t, k):
            v.append(("congruence", f"face {k} does not carry the prototile"))
        elif oriented_only and t.mirrored_face(k):
            v.append(("congruence", f"face {k} is a mirror placement"))
    for d, e in m.edges():
        if not match(t.label[d], t.label[e]):
            v.append((
                "matching",
                f"edge {m.origin(d)}-{m.dest(d)} darts {d}/{e}: {t.label[d].ascii} vs {t.label[e].ascii}",
            ))
    angle = None
    counts = t.vertex_counts()
    if not v:
        try:
            angle = angle_solve(t)
        except Infeasible as e:
            v.append(("angle", str(e)))
        if chords and angle is not None and not chord_feasible(counts, t.f, t.prototile):
            v.append(("angle", "straightened triangle has no positive angles"))
            angle = None
    spectrum = vertex_spectrum(t)
    return VerifyReport(not v and angle is not None, v, angle, spectrum)
