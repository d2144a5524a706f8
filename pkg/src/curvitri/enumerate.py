"""Exhaustive search for labelled tilings, and the desk-scale classification."""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .maps import CombMap, build_map, enumerate_triangulations
from .prototile import Prototile, catalog16, match
from .verify import LabeledTiling, chord_equal_corners, solve_counts, verify_tiling


class BudgetExceeded(RuntimeError):
    def __init__(self, msg, partial=None, explored=None):
        super().__init__(msg)
        self.partial = partial or []
        self.explored = explored


DEFAULT_NODES = int(os.environ.get("CURVITRI_NODE_BUDGET", 10**8))
DEFAULT_SECONDS = float(os.environ.get("CURVITRI_TIME_BUDGET", 600))


@dataclass
class SearchConfig:
    f: int
    prototiles: list[Prototile] | None = None
    use_angle_pruning: bool = True
    chords: bool = True
    avc_restriction: set[tuple[int, int, int]] | None = None
    oriented_only: bool = False
    group: str = "full"
    node_budget: int = DEFAULT_NODES
    time_budget: float = DEFAULT_SECONDS
    ceiling: int = 16

    def __post_init__(self):
        if self.f % 2 or self.f < 4:
            raise ValueError(f"f must be even and >= 4, got {self.f}")


class _Enough(Exception):
    pass


class _AngleOracle:
    """Memoised feasibility of sets of vertex types."""

    def __init__(self, p: Prototile, f: int, chords: bool):
        self.f = f
        self.orbits = [o for o in p.corner_orbits() if len(o) > 1]
        self.chord = chord_equal_corners(p) if chords else None
        self.cache: dict[frozenset, bool] = {}

    def __call__(self, types: frozenset) -> bool:
        hit = self.cache.get(types)
        if hit is None:
            hit = solve_counts(types, self.f, self.orbits) is not None
            if hit and self.chord is not None:
                hit = solve_counts(types, self.f, self.chord) is not None
            self.cache[types] = hit
        return hit


def _face_order(m: CombMap) -> list[int]:
    order, seen = [], {0}
    q = deque([0])
    while q:
        k = q.popleft()
        order.append(k)
        for k2 in m.face_adjacent(k):
            if k2 not in seen:
                seen.add(k2)
                q.append(k2)
    return order


def enumerate_labelings(
    m: CombMap,
    p: Prototile,
    cfg: SearchConfig | None = None,
    *,
    restrict=None,
    limit: int | None = None,
) -> list[LabeledTiling]:
    """All valid tilings of ``m`` by ``p``, one per equivalence class.

    ``restrict(k)`` may return the allowed placements for face ``k``.  With
    ``limit`` the search stops once that many classes are found.
    """
    cfg = cfg or SearchConfig(m.nf)
    places = p.placements()
    if cfg.oriented_only:
        places = [pl for pl in places if pl[0][1] == pl[0][0] % 3 + 1]
    order = _face_order(m)
    nd, nv = m.nd, m.nv
    theta = m.theta
    origin = [m.origin(d) for d in range(nd)]
    degree = m.degrees()
    placed = [False] * m.nf
    corner = [0] * nd
    label = [None] * nd
    filled = [0] * nv
    counts = [[0, 0, 0] for _ in range(nv)]
    done_types: list[tuple] = []
    oracle = _AngleOracle(p, m.nf, cfg.chords)
    allowed = cfg.avc_restriction
    found: dict[bytes, LabeledTiling] = {}
    nodes = 0
    t0 = time.monotonic()

    def vertex_ok(v: int) -> bool:
        c = tuple(counts[v])
        if allowed is not None and c not in allowed:
            return False
        if not cfg.use_angle_pruning:
            return True
        return oracle(frozenset(done_types + [c]))

    def rec(i: int):
        nonlocal nodes
        if i == len(order):
            if not cfg.use_angle_pruning and not oracle(frozenset(map(tuple, counts))):
                return
            t = LabeledTiling(m, p, tuple(corner), tuple(label))
            code = t.canonical_code(cfg.group)
            if code not in found:
                found[code] = t
                if limit is not None and len(found) >= limit:
                    raise _Enough
            return
        nodes += 1
        if nodes > cfg.node_budget or (nodes & 1023 == 0 and time.monotonic() - t0 > cfg.time_budget):
            raise BudgetExceeded(
                f"budget exceeded after {nodes} nodes",
                partial=[found[c] for c in sorted(found)],
                explored=i / len(order),
            )
        k = order[i]
        base = 3 * k
        options = places if restrict is None else restrict(k)
        for corners, labels in options:
            ok = True
            for j in range(3):
                e = theta[base + j]
                if placed[e // 3] and not match(labels[j], label[e]):
                    ok = False
                    break
            if not ok:
                continue
            for j in range(3):
                corner[base + j] = corners[j]
                label[base + j] = labels[j]
            placed[k] = True
            pushed = 0
            for j in range(3):
                v = origin[base + j]
                counts[v][corners[j] - 1] += 1
                filled[v] += 1
            for j in range(3):
                v = origin[base + j]
                if filled[v] == degree[v]:
                    if not vertex_ok(v):
                        ok = False
                        break
                    done_types.append(tuple(counts[v]))
                    pushed += 1
            if ok:
                rec(i + 1)
            for _ in range(pushed):
                done_types.pop()
            for j in range(3):
                v = origin[base + j]
                counts[v][corners[j] - 1] -= 1
                filled[v] -= 1
            placed[k] = False

    try:
        rec(0)
    except _Enough:
        pass
    return [found[c] for c in sorted(found)]


def enumerate_tilings(f: int, p: Prototile, cfg: SearchConfig | None = None) -> list[LabeledTiling]:
    """All tilings with ``f`` faces over every triangulation, deduplicated."""
    cfg = cfg or SearchConfig(f)
    out: dict[bytes, LabeledTiling] = {}
    for m in enumerate_triangulations(f, cfg.ceiling):
        for t in enumerate_labelings(m, p, cfg):
            out.setdefault(t.canonical_code(cfg.group), t)
    return [out[c] for c in sorted(out)]


# ---------------------------------------------------------------------------
# growth search with a vertex-type whitelist


def _as_counts(v) -> tuple[int, int, int]:
    if isinstance(v, tuple) and len(v) == 3 and all(isinstance(x, int) for x in v):
        return v
    counts = getattr(v, "counts", None)
    if counts is not None:
        return tuple(counts)
    from .avc import VertexType

    return VertexType.parse(str(v)).counts


@dataclass
class SearchStats:
    nodes: int = 0
    seeds_done: int = 0
    seeds_total: int = 0
    seconds: float = 0.0

    @property
    def explored(self) -> float:
        return self.seeds_done / self.seeds_total if self.seeds_total else 1.0


def avc_constrained_search(
    f: int,
    p: Prototile,
    whitelist: Iterable | None = None,
    cfg: SearchConfig | None = None,
    *,
    stats: SearchStats | None = None,
) -> list[LabeledTiling]:
    """Tilings with ``f`` tiles whose vertices all have whitelisted corner counts.

    Works without a triangulation list: a sphere is grown from one tile by
    filling holes.  Every hole is a disk bounded by a simple cycle, and the
    tile across a hole edge has its third vertex either new or on the same
    hole, so every tiling is reached.  ``whitelist=None`` allows every vertex.
    """
    if f % 2 or f < 4:
        raise ValueError(f"f must be even and >= 4, got {f}")
    cfg = cfg or SearchConfig(f, ceiling=max(f, 16))
    stats = stats if stats is not None else SearchStats()
    allowed = None if whitelist is None else sorted({_as_counts(v) for v in whitelist})
    V = f // 2 + 2
    oracle = _AngleOracle(p, f, cfg.chords)
    places = p.placements()
    found: dict[bytes, LabeledTiling] = {}
    t0 = time.monotonic()

    faces: list[tuple[int, int, int]] = []
    fcorners: list[tuple[int, int, int]] = []
    dart: dict[tuple[int, int], object] = {}
    edges: set[frozenset] = set()
    counts: dict[int, list[int]] = {}
    done_types: list[tuple] = []

    def partial_ok(c) -> bool:
        # the vertex still needs at least one more corner
        if allowed is None:
            return True
        s = sum(c)
        return any(s < sum(t) and all(a <= b for a, b in zip(c, t)) for t in allowed)

    def complete_ok(c) -> bool:
        if sum(c) < 3:
            return False
        if allowed is not None and c not in allowed:
            return False
        if not cfg.use_angle_pruning:
            return True
        return oracle(frozenset(done_types + [c]))

    def place(tri, corners, labels):
        faces.append(tri)
        fcorners.append(corners)
        for j in range(3):
            a, b = tri[j], tri[(j + 1) % 3]
            dart[(a, b)] = labels[j]
            edges.add(frozenset((a, b)))
            counts.setdefault(a, [0, 0, 0])[corners[j] - 1] += 1

    def unplace(tri, corners, new_edges):
        faces.pop()
        fcorners.pop()
        for j in range(3):
            a, b = tri[j], tri[(j + 1) % 3]
            del dart[(a, b)]
            counts[a][corners[j] - 1] -= 1
        for e in new_edges:
            edges.discard(e)

    def finish(nv):
        if len(faces) != f or nv != V:
            return
        m = build_map(faces, check=False)
        corner = [c for cs in fcorners for c in cs]
        labels = [dart[(t[j], t[(j + 1) % 3])] for t in faces for j in range(3)]
        t = LabeledTiling(m, p, tuple(corner), tuple(labels))
        if not cfg.use_angle_pruning and not oracle(frozenset(t.vertex_counts())):
            return
        found.setdefault(t.canonical_code(cfg.group), t)

    def rec(holes: list[tuple[int, ...]], nv: int):
        stats.nodes += 1
        if stats.nodes > cfg.node_budget or (
            stats.nodes & 1023 == 0 and time.monotonic() - t0 > cfg.time_budget
        ):
            raise BudgetExceeded(
                f"budget exceeded after {stats.nodes} nodes",
                partial=[found[c] for c in sorted(found)],
                explored=stats.explored,
            )
        if not holes:
            finish(nv)
            return
        if len(faces) + sum(len(h) - 2 for h in holes) > f:
            return
        # grow at the boundary vertex closest to completion
        best = None
        for hi, h in enumerate(holes):
            for i, v in enumerate(h):
                key = sum(counts[v])
                if best is None or key > best[0]:
                    best = (key, hi, i)
        _, hi, i = best
        h = holes[hi]
        h = h[i:] + h[:i]
        rest = holes[:hi] + holes[hi + 1:]
        v, w, k = h[0], h[1], len(h)
        other = {x for j, hh in enumerate(rest) for x in hh}
        back = dart[(w, v)]
        options = [(None, j) for j in range(2, k)]
        if nv < V:
            options.append((nv, None))
        for x, j in options:
            if x is None:
                x = h[j]
                glue_wx, glue_xv = j == 2, j == k - 1
                if not glue_wx and frozenset((w, x)) in edges:
                    continue
                if not glue_xv and frozenset((x, v)) in edges:
                    continue
                h1 = h[1:j + 1] if j > 2 else ()
                h2 = h[j:] + (v,) if j < k - 1 else ()
                new_holes = rest + [hh for hh in (h1, h2) if hh]
                n2 = nv
            else:
                glue_wx = glue_xv = False
                new_holes = rest + [(v, x, w) + h[2:]]
                n2 = nv + 1
            tri = (v, w, x)
            still = other | {y for hh in new_holes[len(rest):] for y in hh}
            closed = [y for y in (v, w, x) if y not in still]
            # vertices of the old hole leaving every hole are the ones completed now
            closed = sorted(set(closed) | {y for y in h if y not in still})
            for corners, labels in places:
                if not match(labels[0], back):
                    continue
                if glue_wx and not match(labels[1], dart[(x, w)]):
                    continue
                if glue_xv and not match(labels[2], dart[(v, x)]):
                    continue
                new_edges = [e for e in (frozenset((w, x)), frozenset((x, v))) if e not in edges]
                place(tri, corners, labels)
                ok = True
                pushed = 0
                for y in (v, w, x):
                    if y not in closed and not partial_ok(tuple(counts[y])):
                        ok = False
                        break
                if ok:
                    for y in closed:
                        c = tuple(counts[y])
                        if not complete_ok(c):
                            ok = False
                            break
                        done_types.append(c)
                        pushed += 1
                if ok:
                    rec(new_holes, n2)
                for _ in range(pushed):
                    done_types.pop()
                unplace(tri, corners, new_edges)

    seeds = places
    stats.seeds_total = len(seeds)
    for corners, labels in seeds:
        place((0, 1, 2), corners, labels)
        # the hole is the rest of the sphere, entered along the reversed seed sides
        if all(partial_ok(tuple(counts[y])) for y in (0, 1, 2)):
            rec([(0, 2, 1)], 3)
        unplace((0, 1, 2), corners, list(edges))
        stats.seeds_done += 1
    stats.seconds = time.monotonic() - t0
    return [found[c] for c in sorted(found)]


# ---------------------------------------------------------------------------
# classification at desk scale


@dataclass
class CellResult:
    f: int
    prototile: str
    found: int
    families: dict[str, int]
    unmatched: list[str]
    missing: list[str]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.unmatched and not self.missing

    def to_json(self) -> dict:
        return {
            "f": self.f,
            "prototile": self.prototile,
            "found": self.found,
            "families": dict(sorted(self.families.items())),
            "unmatched": self.unmatched,
            "missing": self.missing,
            "ok": self.ok,
        }


@dataclass
class ClassificationReport:
    cells: list[CellResult] = field(default_factory=list)
    extended: bool = False

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def unmatched(self) -> list[tuple[int, str, str]]:
        return [(c.f, c.prototile, code) for c in self.cells for code in c.unmatched]

    def to_json(self) -> dict:
        return {
            "extended": self.extended,
            "ok": self.ok,
            "cells": [c.to_json() for c in self.cells],
        }

    def table(self) -> str:
        lines = []
        for c in self.cells:
            fams = ", ".join(f"{k}×{v}" for k, v in sorted(c.families.items())) or "-"
            flag = "ok" if c.ok else f"UNMATCHED {len(c.unmatched)} MISSING {len(c.missing)}"
            lines.append(f"f={c.f:<3} {c.prototile:<8} {c.found:>4}  {fams}  [{flag}]")
        return "\n".join(lines)


def classify(cfg: SearchConfig, *, min_f: int = 4, extended: bool = False) -> ClassificationReport:
    """Enumerate every even ``f`` up to ``cfg.f`` and match each tiling to the family atlas.

    A tiling with no family is *unmatched*; a family member the search did
    not produce is *missing* (that would be a generator bug).
    """
    from .families import atlas

    protos = cfg.prototiles or catalog16()
    report = ClassificationReport(extended=extended)
    for f in range(min_f, cfg.f + 1, 2):
        sub = SearchConfig(
            f,
            use_angle_pruning=cfg.use_angle_pruning,
            chords=cfg.chords,
            group=cfg.group,
            node_budget=cfg.node_budget,
            time_budget=cfg.time_budget,
            ceiling=cfg.ceiling,
        )
        for p in protos:
            t0 = time.monotonic()
            found = {t.canonical_code(sub.group): t for t in enumerate_tilings(f, p, sub)}
            known = atlas(f, p, extended=extended)
            fams: dict[str, int] = {}
            for code in found:
                if code in known:
                    for name in known[code][1]:
                        fams[name] = fams.get(name, 0) + 1
            report.cells.append(
                CellResult(
                    f,
                    p.name,
                    len(found),
                    fams,
                    sorted(c.hex() for c in found if c not in known),
                    sorted(c.hex() for c in known if c not in found),
                    time.monotonic() - t0,
                )
            )
    return report
