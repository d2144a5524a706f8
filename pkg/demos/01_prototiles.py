"""
The sixteen curvilinear triangles
=================================

Each triangle is a word of three side labels (sides 12, 23, 31).  A label
has a kind (g general, h h-symmetric, r r-symmetric, a straight), a side
flag, a direction and a curve class.
"""

from curvitri import by_name, catalog16, is_admissible
from curvitri.prototile import IllegalGluing, NoCompanion, SideLabel, companion_quad, match, quad_string

# print the catalog with its counting argument
for i, p in enumerate(catalog16(), 1):
    word = " ".join(l.ascii for l in p.word)
    print(f"{i:>2} {p.pretty:<7} {word:<12} admissible={is_admissible(p)}")

# a general curve cannot be glued to itself: one tile must show the other side
g, gbar_rev = SideLabel.parse("g"), SideLabel.parse("gb-")
print("g against ḡ reversed:", match(g, gbar_rev), "  g against g:", match(g, g))

# two tiles sharing side 23 make a quadrilateral
for name in ("h hb a", "r r a", "r r r"):
    for gluing in ("aligned", "mirrored"):
        try:
            print(name, gluing, "->", quad_string(companion_quad(by_name(name), gluing)))
        except (NoCompanion, IllegalGluing) as e:
            print(name, gluing, "->", type(e).__name__)
