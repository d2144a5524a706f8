"""Side labels, the sixteen admissible curvilinear triangles, and their symmetries.

Conventions
-----------
A prototile is read counterclockwise.  Entry ``i`` of :attr:`Prototile.word`
is the side leaving corner ``i + 1`` (sides 12, 23, 31).

``SideLabel`` is physical: it records what a tile sees along one of its
sides when traversed counterclockwise.

* ``G`` (general curve): ``side`` says whether the curve's hook lies inside
  the tile (``bar``) or outside (``plain``); ``chirality`` says whether the
  curve's arrow runs against (``+1``) or along (``-1``) the traversal.
* ``H`` (h-symmetric): only ``side`` (bump inside = ``bar``).
* ``R`` (r-symmetric): only ``chirality``; the half-turn symmetry makes it
  independent of traversal direction, so both tiles on an edge read the same
  value.
* ``A`` (straight): nothing.

``cls`` distinguishes different curves of the same kind (r, r', r'').
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Literal

KINDS = "GHRA"
PLAIN, BAR = 0, 1


class NoCompanion(ValueError):
    pass


class IllegalGluing(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SideLabel:
    kind: str
    side: int = PLAIN
    chirality: int = 1
    cls: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"bad kind {self.kind!r}")
        if self.kind in "RA" and self.side != PLAIN:
            object.__setattr__(self, "side", PLAIN)
        if self.kind in "HA" and self.chirality != 1:
            object.__setattr__(self, "chirality", 1)

    def reflect(self) -> "SideLabel":
        """Letterwise mirror map: arrows and zigzags flip, sides stay."""
        if self.kind in "GR":
            return SideLabel(self.kind, self.side, -self.chirality, self.cls)
        return self

    @property
    def code(self) -> int:
        """Small int used in canonical codes."""
        return ((KINDS.index(self.kind) * 2 + self.side) * 2 + (self.chirality < 0)) * 4 + self.cls

    @property
    def ascii(self) -> str:
        s = self.kind.lower()
        if self.side == BAR:
            s += "b"
        if self.chirality < 0:
            s += "-"
        if self.cls:
            s += str(self.cls + 1)
        return s

    @classmethod
    def parse(cls, text: str) -> "SideLabel":
        kind = text[0].upper()
        rest = text[1:]
        side = BAR if rest.startswith("b") else PLAIN
        rest = rest[1:] if side == BAR else rest
        chir = -1 if rest.startswith("-") else 1
        rest = rest[1:] if chir < 0 else rest
        c = int(rest) - 1 if rest else 0
        return cls(kind, side, chir, c)


def match(l1: SideLabel, l2: SideLabel) -> bool:
    """Can the two sides of one edge carry these labels?

    Both labels are read counterclockwise by their own tiles, so the two
    traversals are opposite.
    """
    if l1.kind != l2.kind or l1.cls != l2.cls:
        return False
    k = l1.kind
    if k == "G":
        return l1.side != l2.side and l1.chirality != l2.chirality
    if k == "H":
        return l1.side != l2.side
    if k == "R":
        return l1.chirality == l2.chirality
    return True


def _L(text: str) -> SideLabel:
    return SideLabel.parse(text)


@dataclass(frozen=True)
class Prototile:
    """A curvilinear triangle: labels of sides 12, 23, 31 and a display name."""

    name: str
    word: tuple[SideLabel, SideLabel, SideLabel]
    pretty: str = ""

    def side(self, c1: int, c2: int) -> SideLabel:
        """Label of the side joining corners ``c1`` and ``c2`` (read 12/23/31)."""
        if (c1, c2) in ((1, 2), (2, 1)):
            return self.word[0]
        if (c1, c2) in ((2, 3), (3, 2)):
            return self.word[1]
        return self.word[2]

    @property
    def distinguished(self) -> bool:
        """Whether side 23 is told apart from the other two (companion pairs exist)."""
        return self.name not in ("r r r", "r r r-")

    def placements(self, merge: bool = True) -> list[tuple[tuple[int, int, int], tuple[SideLabel, SideLabel, SideLabel]]]:
        """Distinct ways to lay the tile into a face.

        Returns ``(corners, labels)`` with ``corners[j]`` the corner at the
        origin of face side ``j`` and ``labels[j]`` the label read along it.
        Placements giving identical label triples are merged (the tile's own
        symmetry makes them the same tile).
        """
        out = []
        seen = set()
        for mirror in (False, True):
            for r in range(3):
                if not mirror:
                    corners = tuple((j + r) % 3 + 1 for j in range(3))
                    labels = tuple(self.side(c, c % 3 + 1) for c in corners)
                else:
                    corners = tuple((r - j) % 3 + 1 for j in range(3))
                    labels = tuple(self.side(c, (c - 2) % 3 + 1).reflect() for c in corners)
                key = labels if merge and self.symmetric else (corners, labels)
                if key in seen:
                    continue
                seen.add(key)
                out.append((corners, labels))
        return out

    @property
    def symmetric(self) -> bool:
        """True when some corner permutation maps the tile to itself."""
        return len(self.corner_orbits()) < 3

    def corner_orbits(self) -> list[frozenset[int]]:
        w = self.word
        perms = []
        for r in range(1, 3):
            if all(w[(i + r) % 3] == w[i] for i in range(3)):
                perms.append(lambda c, r=r: (c - 1 + r) % 3 + 1)
        # reflections fixing corner c: swaps the two sides at c, reflects the third
        for c in (1, 2, 3):
            a, b = c, c % 3 + 1
            z = (c - 2) % 3 + 1
            s_ab, s_za, s_bz = self.side(a, b), self.side(z, a), self.side(b, z)
            if s_ab.reflect() == s_za and s_za.reflect() == s_ab and s_bz.reflect() == s_bz:
                perms.append(lambda x, b=b, z=z: {b: z, z: b}.get(x, x))
        parent = {1: 1, 2: 2, 3: 3}
        for p in perms:
            for x in (1, 2, 3):
                y = p(x)
                rx, ry = parent[x], parent[y]
                while parent[rx] != rx:
                    rx = parent[rx]
                while parent[ry] != ry:
                    ry = parent[ry]
                parent[max(rx, ry)] = min(rx, ry)
        groups: dict[int, set[int]] = {}
        for x in (1, 2, 3):
            r = x
            while parent[r] != r:
                r = parent[r]
            groups.setdefault(r, set()).add(x)
        return [frozenset(g) for _, g in sorted(groups.items())]

    def __str__(self) -> str:
        return self.name


_CATALOG = [
    ("g gb r", "gḡr", ("g", "r", "gb")),
    ("g gb- r", "gḡ⁻¹r", ("g", "r", "gb-")),
    ("g gb a", "gḡa", ("g", "a", "gb")),
    ("g gb- a", "gḡ⁻¹a", ("g", "a", "gb-")),
    ("h hb r", "hħr", ("h", "r", "hb")),
    ("h hb a", "hħa", ("h", "a", "hb")),
    ("r r2 r3", "rr′r″", ("r", "r3", "r2")),
    ("r r r2", "rrr′", ("r", "r2", "r")),
    ("r r- r2", "rr⁻¹r′", ("r", "r2", "r-")),
    ("r r r", "rrr", ("r", "r", "r")),
    ("r r r-", "rrr⁻¹", ("r", "r-", "r")),
    ("r r2 a", "rr′a", ("r", "a", "r2")),
    ("r r a", "rra", ("r", "a", "r")),
    ("r r- a", "rr⁻¹a", ("r", "a", "r-")),
    ("r a a2", "raa′", ("a", "r", "a2")),
    ("r a a", "raa", ("a", "r", "a")),
]


def catalog16() -> list[Prototile]:
    """The sixteen admissible curvilinear triangles, most curvilinear first."""
    return [Prototile(n, tuple(_L(s) for s in w), pretty) for n, pretty, w in _CATALOG]


def by_name(name: str) -> Prototile:
    key = name.strip().replace("_", " ")
    for p in catalog16():
        if key in (p.name, p.name.replace(" ", ""), p.pretty):
            return p
    raise KeyError(f"unknown prototile {name!r}")


def is_admissible(word) -> bool:
    """Every general or h-symmetric curve shows both of its sides equally often."""
    labels = word.word if isinstance(word, Prototile) else tuple(word)
    count: dict[tuple[str, int], int] = {}
    for lab in labels:
        if lab.kind in "GH":
            key = (lab.kind, lab.cls)
            count[key] = count.get(key, 0) + (1 if lab.side == PLAIN else -1)
    return all(v == 0 for v in count.values())


def reflect(p: Prototile) -> Prototile:
    """Mirror image, re-read counterclockwise from corner 1."""
    w = p.word
    new = (w[2].reflect(), w[1].reflect(), w[0].reflect())
    return Prototile(p.name + "*", new, p.pretty)


def _variants(word) -> Iterator[tuple]:
    classes = sorted({(l.kind, l.cls) for l in word})
    for flips in product((0, 1), repeat=2 * len(classes)):
        fs = dict(zip(classes, zip(flips[::2], flips[1::2])))
        w = []
        for l in word:
            sflip, cflip = fs[(l.kind, l.cls)]
            side = l.side ^ sflip if l.kind in "GH" else l.side
            chir = -l.chirality if cflip and l.kind in "GR" else l.chirality
            w.append(SideLabel(l.kind, side, chir, l.cls))
        for mirror in (False, True):
            base = w if not mirror else [x.reflect() for x in reversed(w)]
            for r in range(3):
                rot = base[r:] + base[:r]
                rename: dict[tuple[str, int], int] = {}
                out = []
                for l in rot:
                    c = rename.setdefault((l.kind, l.cls), sum(1 for k in rename if k[0] == l.kind))
                    out.append((l.kind, l.side, l.chirality, c))
                yield tuple(out)


def normal_form(p) -> tuple:
    word = p.word if isinstance(p, Prototile) else tuple(p)
    return min(_variants(word))


def equivalent(p1, p2) -> bool:
    """Same triangle up to rotation, reflection, class renaming and per-curve conventions."""
    return normal_form(p1) == normal_form(p2)


def companion_quad(p: Prototile, gluing: Literal["aligned", "mirrored"] = "aligned") -> tuple[SideLabel, ...]:
    """Boundary of two tiles glued along side 23, read from corner 1 of the first.

    ``aligned`` glues a half-turned copy, ``mirrored`` a reflected copy.
    """
    if not p.distinguished:
        raise NoCompanion(f"{p.name} has no distinguished side")
    l12, l23, l31 = p.word
    if gluing == "aligned":
        if not match(l23, l23):
            raise IllegalGluing(f"side 23 of {p.name} cannot meet itself half-turned")
        return (l12, l31, l12, l31)
    if gluing == "mirrored":
        if not match(l23, l23.reflect()):
            raise IllegalGluing(f"side 23 of {p.name} cannot meet its mirror image")
        return (l12, l12.reflect(), l31.reflect(), l31)
    raise ValueError(f"unknown gluing {gluing!r}")


def quad_string(q) -> str:
    return " ".join(l.ascii for l in q)
