"""
Flips and rotations of a hemisphere
===================================

An earth map splits into two disks along a circle of edges.  Regluing one
disk after a flip or a rotation can give a new tiling, or break a gluing.
"""

from curvitri import FamilySpec, by_name, generate, verify_tiling
from curvitri.families import IllegalAction, ei1_skeleton, ej1_skeleton, hemisphere_split, reglue, versions

# the cut for E^I1: corner combinations seen from the inner half
t = versions(ei1_skeleton(4), by_name("h hb a"), limit=1)[0]
cut = hemisphere_split(t)
print("boundary:", cut.combinations(0))

# flipping works for hh̄a ...
flipped = reglue(cut, ("flip", 1))
print("flip hh̄a:", verify_tiling(flipped).ok)

# ... and not for rra, where the flip turns r into r⁻¹ on the circle
for t in versions(ei1_skeleton(4), by_name("r r a")):
    try:
        reglue(hemisphere_split(t), ("flip", 1))
    except IllegalAction as e:
        print("flip rra:", e)

# rotating by 2π/3 and then by 4π/3 gives the original back
t = versions(ej1_skeleton(5), by_name("h hb a"), limit=1)[0]
there = reglue(hemisphere_split(t), ("rotate", "2/3"))
back = reglue(hemisphere_split(there), ("rotate", "4/3"))
print("round trip equal:", back.canonical_code() == t.canonical_code())

# the flip modification of E1 for raa′
fe = generate(FamilySpec("FE1", by_name("r a a2"), {"q": 2}))
e1 = generate(FamilySpec("E1", by_name("r a a2"), {"p": 5}))
print("FE1 ok:", verify_tiling(fe).ok, " differs from E1:", fe.canonical_code() != e1.canonical_code())
