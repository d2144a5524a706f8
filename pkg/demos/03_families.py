"""
Generating and checking tilings
===============================

Every family is built as a triangulated skeleton with the corner-1
positions fixed; the decorations by a prototile are then enumerated and
deduplicated.
"""

from curvitri import FamilySpec, by_name, generate, verify_tiling, vertex_spectrum
from curvitri.families import named_cube, rrr_inv_labelings, simple_subdivisions

# the earth map with 2^4 3^4 poles, 16 tiles
t = generate(FamilySpec("EJ1", by_name("h hb a"), {"t": 4}))
rep = verify_tiling(t)
print(t.f, rep.ok, rep.angle, dict(vertex_spectrum(t)))

# triangular subdivision of the octahedron: every face split into three
t = generate(FamilySpec("TP", by_name("g gb- r"), {"n": 8}))
print("T△P8:", t.f, verify_tiling(t).ok)

# two ways to circle the r⁻¹ edges of a tetrahedron
print("rrr⁻¹ tetrahedra:", len(rrr_inv_labelings(4)))

# cubes whose faces are companion pairs, and their subdivisions
for style, name in (("alternating", "h hb r"), ("uniform", "r r r2"), ("split", "r r a")):
    cube = named_cube(style)
    print(style, cube.describe().split(",")[0], "...", len(simple_subdivisions(cube, by_name(name))))

# all inequivalent versions of a family member
vs = generate(FamilySpec("E2", by_name("h hb a"), {"q": 1}), all_versions=True)
print("E2 versions for hh̄a at f=12:", len(vs))
