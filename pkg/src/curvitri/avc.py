"""Vertex combinatorics for the fan-constrained prototiles (hh̄r, hh̄a, rrr′, rra).

Angles are exact rationals in units of π.  Around every vertex of such a
tiling the corners split into *fans* ``a 1 ... 1 b`` with ``{a, b} = {2, 3}``,
so a vertex is ``1^k 2^l 3^l`` and only ``[1]`` and ``[2] + [3]`` matter.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

DIST = "|"  # marks a distinguished (2-3) edge in a cyclic corner sequence


class Violation(ValueError):
    def __init__(self, msg, fan=None):
        super().__init__(msg)
        self.fan = fan


# ---------------------------------------------------------------------------
# expressions in f


@dataclass(frozen=True)
class InvF:
    """``c0 + c1 / f``: angle values depending on the tile count."""

    c0: Fraction
    c1: Fraction = Fraction(0)

    def __call__(self, f: int) -> Fraction:
        return self.c0 + self.c1 / f

    def __str__(self) -> str:
        c0, c1 = Fraction(self.c0), Fraction(self.c1)
        if c1 == 0:
            return _q(c0)
        tail = f"{_q(abs(c1))}/f" if abs(c1).denominator == 1 else f"({_q(abs(c1))})/f"
        if c0 == 0:
            return tail if c1 > 0 else "-" + tail
        return f"{_q(c0)}{'+' if c1 > 0 else '-'}{tail}"


@dataclass(frozen=True, order=True)
class LinF:
    """``c0 + c1 * f``: a vertex exponent depending on the tile count."""

    c1: Fraction
    c0: Fraction

    def __call__(self, f: int) -> Fraction:
        return self.c0 + self.c1 * f

    @property
    def constant(self) -> bool:
        return self.c1 == 0

    def __str__(self) -> str:
        if self.c1 == 0:
            return _q(self.c0)
        # write as (a f + b) / d
        d = (Fraction(self.c1).denominator * Fraction(self.c0).denominator) // _gcd(
            Fraction(self.c1).denominator, Fraction(self.c0).denominator
        )
        a, b = self.c1 * d, self.c0 * d
        num = ("f" if a == 1 else f"{_q(a)}f") + (f"+{_q(b)}" if b > 0 else (f"-{_q(-b)}" if b < 0 else ""))
        if d == 1:
            return num
        return f"({num})/{d}" if b else f"{num}/{d}"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational(x: Fraction) -> str:
    """Serialized form of an exact rational: always ``p/q``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# vertex types and fans


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_UNSUP = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_TOKEN = re.compile(r"([123])(?:\^(\d+))?")


@dataclass(frozen=True, order=True)
class VertexType:
    """Corner counts ``(k1, k2, k3)`` at a vertex."""

    counts: tuple[int, int, int]

    def __post_init__(self):
        if sum(self.counts) < 3 or min(self.counts) < 0:
            raise ValueError(f"a vertex needs at least 3 corners, got {self.counts}")

    @classmethod
    def fan(cls, k: int, l: int) -> "VertexType":
        return cls((k, l, l))

    @classmethod
    def parse(cls, text: str) -> "VertexType":
        """Read ``"1^2 2 3"`` or the compact ``"1²23"``."""
        s = re.sub("[⁰¹²³⁴⁵⁶⁷⁸⁹]+", lambda m: "^" + m.group().translate(_UNSUP) + " ", text)
        counts = [0, 0, 0]
        for c, e in _TOKEN.findall(s.replace(" ^", "^")):
            counts[int(c) - 1] += int(e) if e else 1
        return cls(tuple(counts))

    def __str__(self) -> str:
        parts = []
        for c, n in zip((1, 2, 3), self.counts):
            if n == 1:
                parts.append(str(c))
            elif n > 1:
                parts.append(f"{c}^{n}")
        return " ".join(parts)

    @property
    def pretty(self) -> str:
        out = ""
        for c, n in zip((1, 2, 3), self.counts):
            if n:
                out += str(c) + (str(n).translate(_SUP) if n > 1 else "")
        return out


@dataclass(frozen=True)
class Fan:
    corners: tuple[int, ...]

    def __str__(self) -> str:
        return "".join(map(str, self.corners))


def fan_decompose(seq: Sequence) -> list[Fan]:
    """Split a cyclic corner sequence at distinguished edges.

    ``seq`` holds corners (1, 2, 3) with :data:`DIST` between two corners
    whose common edge is a distinguished edge.  A vertex with no
    distinguished edge is one degenerate fan, allowed only if all its
    corners are 1.
    """
    items = list(seq)
    if not any(x == DIST for x in items):
        corners = tuple(int(x) for x in items)
        if any(c != 1 for c in corners):
            raise Violation(f"corners {corners} without a distinguished edge", Fan(corners))
        return [Fan(corners)]
    # rotate so that the sequence starts right after a separator
    i = items.index(DIST)
    items = items[i + 1:] + items[:i + 1]
    fans, cur = [], []
    for x in items:
        if x == DIST:
            fans.append(Fan(tuple(cur)))
            cur = []
        else:
            cur.append(int(x))
    for fan in fans:
        c = fan.corners
        if len(c) < 2 or {c[0], c[-1]} != {2, 3} or any(x != 1 for x in c[1:-1]):
            raise Violation(f"fan {fan} is not of the form 2 1...1 3", fan)
    return fans


def vertex_cycle(t, v: int) -> list:
    """The cyclic corner sequence at vertex ``v`` of a tiling, with separators."""
    from .maps import nxt, prv

    m = t.map
    out = []
    darts = m.vertex_darts(v)
    for d in darts:
        out.append(t.corner[d])
        e = prv(d)  # edge shared with the next face around v
        if {t.corner[e], t.corner[d]} == {2, 3}:
            out.append(DIST)
    return out


# ---------------------------------------------------------------------------
# base cases


BASE_CASES = ("1 2 3", "1^3", "1^4", "1^5", "1^2 2 3", "1 2^2 3^2", "1^3 2 3", "2^2 3^2")


@dataclass(frozen=True)
class BaseCase:
    vertex: VertexType
    angle1: InvF | None
    angle23: InvF | None
    f: int | None = None  # set when the vertex fixes f

    def __str__(self) -> str:
        if self.f is not None:
            return f"{self.vertex}: [1]+[2]+[3]=2, f={self.f}"
        return f"{self.vertex}: [1]={self.angle1}, [2]+[3]={self.angle23}"


def solve_vertex(k: int, l: int) -> BaseCase:
    """Angles forced by a vertex ``1^k 2^l 3^l`` together with ``[1]+[2]+[3] = 1 + 4/f``."""
    v = VertexType.fan(k, l)
    if k == l:
        # k([1]+[2]+[3]) = 2 fixes the angle sum, hence f
        total = Fraction(2, k)
        if total <= 1:
            raise ValueError(f"{v} forces a non-positive curvature")
        f = Fraction(4) / (total - 1)
        if f.denominator != 1:
            raise ValueError(f"{v} forces a non-integer f")
        return BaseCase(v, None, None, int(f))
    # k a + l s = 2 and a + s = 1 + 4/f
    a0 = Fraction(2 - l, k - l)
    a1 = Fraction(-4 * l, k - l)
    return BaseCase(v, InvF(a0, a1), InvF(1 - a0, 4 - a1))


def base_vertex_cases() -> list[BaseCase]:
    out = []
    for text in BASE_CASES:
        v = VertexType.parse(text)
        k, l, _ = v.counts
        out.append(solve_vertex(k, l))
    return out


def _case(base) -> BaseCase:
    if isinstance(base, BaseCase):
        return base
    v = base if isinstance(base, VertexType) else VertexType.parse(str(base))
    return solve_vertex(v.counts[0], v.counts[1])


def solve_f_for_case(base) -> list[int]:
    """Even ``f >= 4`` at which the base vertex coexists with a vertex having more 2-3 pairs than 1s.

    The partner vertex ``1^k 2^l 3^l`` must satisfy ``k < l`` (the corner
    counts over the whole tiling balance) and ``k + 2l >= 3``.
    """
    bc = _case(base)
    if bc.f is not None:
        return [bc.f]
    if any(bc.vertex == VertexType.parse(b) for _, b in FAMILY_BASES):
        raise ValueError(f"{bc.vertex} leads to a family valid for infinitely many f")
    a, s = bc.angle1, bc.angle23
    found = set()
    # k a(f) + l s(f) = 2 is linear in 1/f: (k a0 + l s0) + (k a1 + l s1)/f = 2
    for l in range(2, 200):
        if l * s.c0 > 2 and s.c1 >= 0:
            break
        for k in range(0, l):
            c0 = k * a.c0 + l * s.c0
            c1 = k * a.c1 + l * s.c1
            if c1 == 0:
                continue
            f = c1 / (2 - c0) if c0 != 2 else None
            if f is None or f.denominator != 1 or f < 4 or f % 2:
                continue
            f = int(f)
            if a(f) > 0 and s(f) > 0:
                found.add(f)
    return sorted(found)


def admissible_vertices(f: int | None, angles=None) -> list[VertexType]:
    """All ``1^k 2^l 3^l`` with ``k [1] + l ([2]+[3]) = 2`` and ``k + 2l >= 3``.

    ``angles`` may be an ``AngleAssignment``, a pair ``([1], [2]+[3])`` or an
    :class:`AvcRow`.  Without angles (the case f = 4) only the vertices
    valid for every angle choice are returned.
    """
    if f is not None and f % 2:
        raise ValueError("f must be even")
    if angles is None:
        return [VertexType.fan(1, 1)]
    if isinstance(angles, AvcRow):
        if angles.angle1 is None:
            return [VertexType.fan(1, 1)]
        a, s = angles.angle1, angles.angle23
        if isinstance(a, InvF):
            a, s = a(f), s(f)
    elif hasattr(angles, "values"):
        v = angles.values
        a, s = Fraction(v[0]), Fraction(v[1]) + Fraction(v[2])
    else:
        a, s = (Fraction(x) for x in angles)
    if a <= 0 or s <= 0:
        raise ValueError("angles must be positive")
    out = []
    l = 0
    while l * s <= 2:
        rest = 2 - l * s
        k = rest / a
        if k.denominator == 1 and k + 2 * l >= 3:
            out.append(VertexType.fan(int(k), l))
        l += 1
    return out


# ---------------------------------------------------------------------------
# the table


@dataclass(frozen=True)
class SymVertex:
    """``1^k 2^l 3^l`` with exponents possibly linear in f."""

    k: LinF
    l: LinF

    def evaluate(self, f: int) -> VertexType:
        k, l = self.k(f), self.l(f)
        if k.denominator != 1 or l.denominator != 1 or k < 0 or l < 0:
            raise ValueError(f"f={f} gives a non-integer exponent in {self}")
        return VertexType.fan(int(k), int(l))

    def __str__(self) -> str:
        return _sym_text(self.k, self.l)

    def to_json(self) -> dict:
        out = {}
        for c, e in (("1", self.k), ("2", self.l), ("3", self.l)):
            if e.constant:
                if e.c0:
                    out[c] = int(e.c0)
            else:
                out[c] = str(e)
        return out


def _sym_text(k: LinF, l: LinF) -> str:
    def part(c, e):
        if e.constant:
            n = int(e.c0)
            return "" if n == 0 else (c if n == 1 else f"{c}^{n}")
        return f"{c}^{{{e}}}"

    return " ".join(p for p in (part("1", k), part("2", l), part("3", l)) if p)


@dataclass
class AvcRow:
    key: str
    f: int | None
    angle1: Fraction | InvF | None
    angle23: Fraction | InvF | None
    vertices: list[SymVertex]
    printed_tag: str | None = None
    member_of: list[str] = field(default_factory=list)
    errata: list[str] = field(default_factory=list)

    @property
    def family(self) -> bool:
        return self.f is None

    def evaluate(self, f: int) -> list[VertexType]:
        """Concrete vertices of a family row; ``f`` must make every exponent integral."""
        if f % 2 or f < 4:
            raise ValueError("f must be even and at least 4")
        return [v.evaluate(f) for v in self.vertices]

    def whitelist(self, f: int) -> list[VertexType]:
        """Vertices of the row that exist at ``f``.

        For a family row these are the vertices whose exponents are whole
        numbers at ``f``; the others simply do not occur.
        """
        if not self.family:
            return self.evaluate(f)
        if f % 2 or f < 4:
            raise ValueError("f must be even and at least 4")
        out = []
        for v in self.vertices:
            try:
                out.append(v.evaluate(f))
            except ValueError:
                continue
        if not out:
            raise ValueError(f"family {self.key} has no vertex at f={f}")
        return out

    def angles_at(self, f: int) -> tuple[Fraction, Fraction]:
        a, s = self.angle1, self.angle23
        return (a(f), s(f)) if isinstance(a, InvF) else (a, s)

    def to_json(self) -> dict:
        def ang(x):
            if x is None:
                return None
            if isinstance(x, InvF):
                return rational(x.c0) if x.c1 == 0 else str(x)
            return rational(x)

        return {
            "angle1": ang(self.angle1),
            "angle23": ang(self.angle23),
            "errata": list(self.errata),
            "f": self.f,
            "key": self.key,
            "member_of": list(self.member_of),
            "printed_tag": self.printed_tag,
            "vertices": [v.to_json() for v in self.vertices],
        }

    def line(self) -> str:
        def pi(x):
            if x is None:
                return "-"
            if isinstance(x, InvF):
                if x.c1 != 0:
                    return f"({x})π"
                x = x.c0
            x = Fraction(x)
            if x == 1:
                return "π"
            num = "π" if x.numerator == 1 else f"{x.numerator}π"
            return num if x.denominator == 1 else f"{num}/{x.denominator}"

        verts = ", ".join(_pretty_sym(v) for v in self.vertices)
        s = f"[1]={pi(self.angle1)}, [2]+[3]={pi(self.angle23)}, {{{verts}}}"
        if self.printed_tag:
            s += f" {self.printed_tag}"
        return s


def _pretty_sym(v: SymVertex) -> str:
    out = ""
    for c, e in (("1", v.k), ("2", v.l), ("3", v.l)):
        if not e.constant:
            out += f"{c}^{{{e}}}"
        elif e.c0 == 1:
            out += c
        elif e.c0 > 1:
            out += c + str(int(e.c0)).translate(_SUP)
    return out


def _const(n) -> LinF:
    return LinF(Fraction(0), Fraction(n))


def _fixed_row(key: str, f: int, a, s) -> AvcRow:
    verts = admissible_vertices(f, (a, s))
    sv = [SymVertex(_const(v.counts[0]), _const(v.counts[1])) for v in verts]
    return AvcRow(key, f, a, s, sv)


def _family_vertices(a: InvF, s: InvF) -> list[SymVertex]:
    """Vertices valid for every f, with exponents linear in f."""
    out = []
    if a.c0 == 0:
        for l in range(0, 4):
            if l * s.c0 > 2:
                break
            k = LinF((2 - l * s.c0) / a.c1, -l * s.c1 / a.c1)
            if (k.c1 > 0 or (k.c1 == 0 and k.c0 >= 0)) and (k.c1 > 0 or k.c0 + 2 * l >= 3):
                out.append(SymVertex(k, _const(l)))
    elif s.c0 == 0:
        for k in range(0, 4):
            if k * a.c0 > 2:
                break
            l = LinF((2 - k * a.c0) / s.c1, -k * a.c1 / s.c1)
            if l.c1 > 0 or (l.c1 == 0 and l.c0 >= 0 and k + 2 * l.c0 >= 3):
                out.append(SymVertex(_const(k), l))
    return sorted(out, key=_order_key)


def _order_key(v: SymVertex):
    # ascending number of 2-3 pairs, judged at large f
    return (v.l.c1, v.l.c0, -v.k.c1, -v.k.c0)


FAMILY_BASES = (("(1)", "2^2 3^2"), ("(2)", "1^2 2 3"), ("(3)", "1 2^2 3^2"))
FIXED_BASES = ("1^3", "1^4", "1^5", "1^3 2 3")

# The printed table, transcribed as (f, [1], [2]+[3], vertices, tag); used
# only to attach the printed tags and to flag where the print differs.
PRINTED_TABLE2 = (
    (4, None, None, ("1 2 3",), None),
    (6, "1/3", "1", ("1^3", "2^2 3^2"), "(3)"),
    (8, "1/2", "1", ("1^4", "1^2 2 3", "2^2 3^2"), "(3)"),
    (10, "2/5", "1", ("1^5", "2^2 3^2"), "(3)"),
    (12, "2/3", "2/3", ("1^3", "1^2 2 3", "1 2^2 3^2", "2^3 3^3"), None),
    (12, "1/3", "1", ("1^3 2 3", "1^6", "2^2 3^2"), "(3)"),
    (16, "1/2", "3/4", ("1^4", "1 2^2 3^2"), "(2)"),
    (20, "2/5", "4/5", ("1^5", "1^3 2 3", "1 2^2 3^2"), "(2)"),
    (24, "2/3", "1/2", ("1^3", "2^4 3^4"), None),
    (24, "1/2", "2/3", ("1^4", "2^3 3^3"), None),
    (36, "2/3", "4/9", ("1^3", "1 2^3 3^3"), None),
    (36, "4/9", "2/3", ("1^3 2 3", "2^3 3^3"), None),
    (60, "2/3", "2/5", ("1^3", "2^5 3^5"), None),
    (60, "2/5", "2/3", ("1^5", "2^3 3^3"), None),
)


def _family_rows() -> list[AvcRow]:
    rows = []
    for tag, base in FAMILY_BASES:
        bc = _case(base)
        rows.append(AvcRow(tag, None, bc.angle1, bc.angle23, _family_vertices(bc.angle1, bc.angle23),
                           printed_tag=None, member_of=[tag]))
    return rows


def derive_avc_table() -> list[AvcRow]:
    """Rows for f = 4 and every fixed f, then the three parametric families."""
    rows = [AvcRow("4", 4, None, None, [SymVertex(_const(1), _const(1))])]
    fixed: set[tuple[int, Fraction, Fraction]] = set()
    for base in FIXED_BASES:
        bc = _case(base)
        for f in solve_f_for_case(base):
            fixed.add((f, bc.angle1(f), bc.angle23(f)))
    by_f: dict[int, list] = {}
    for f, a, s in sorted(fixed, key=lambda x: (x[0], -x[1])):
        by_f.setdefault(f, []).append((a, s))
    for f, pairs in sorted(by_f.items()):
        for i, (a, s) in enumerate(pairs):
            key = str(f) if len(pairs) == 1 else f"{f}{'ab'[i]}"
            rows.append(_fixed_row(key, f, a, s))
    fams = _family_rows()
    for row in rows:
        if row.f is None or row.angle1 is None:
            continue
        for fam in fams:
            a, s = fam.angles_at(row.f)
            if (a, s) == (row.angle1, row.angle23):
                row.member_of.append(fam.key)
    _annotate_printed(rows)
    return rows + fams


def _annotate_printed(rows: list[AvcRow]):
    printed = {}
    for f, a, s, verts, tag in PRINTED_TABLE2:
        printed.setdefault(f, []).append((a, s, verts, tag))
    for row in rows:
        cands = printed.get(row.f, [])
        if not cands:
            row.errata.append("row missing from the printed table")
            continue
        # match on [2]+[3] and vertex set; the printed [1] may differ
        mine = {str(v.evaluate(row.f)) for v in row.vertices}
        best = None
        for a, s, verts, tag in cands:
            if set(verts) == mine:
                best = (a, s, verts, tag)
        if best is None:
            row.errata.append("vertex set differs from the printed table")
            continue
        a, s, verts, tag = best
        row.printed_tag = tag
        if a is not None and Fraction(a) != row.angle1:
            row.errata.append(f"printed [1]={a}")
        if s is not None and Fraction(s) != row.angle23:
            row.errata.append(f"printed [2]+[3]={s}")
        if tag is not None and tag not in row.member_of:
            row.errata.append(f"printed tag {tag}; angles fit {', '.join(row.member_of) or 'no family'}")


def table_json(rows: Iterable[AvcRow] | None = None) -> str:
    """Canonical serialization (sorted keys, two-space indent, trailing newline)."""
    rows = derive_avc_table() if rows is None else list(rows)
    return json.dumps({"rows": [r.to_json() for r in rows]}, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def row_for(f: int) -> list[AvcRow]:
    """Table rows that apply at ``f``: fixed rows first, then families with a vertex at ``f``."""
    rows = derive_avc_table()
    out = [r for r in rows if r.f == f]
    for r in rows:
        # at f=4 the angle sum forces the single fixed row
        if r.family and f > 4:
            try:
                r.whitelist(f)
            except ValueError:
                continue
            if all(x > 0 for x in r.angles_at(f)):
                out.append(r)
    return out
