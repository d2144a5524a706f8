"""
Angle values and admissible vertices
====================================

A vertex is written 1^k 2^l 3^l.  Fixing one vertex type and the total
angle of a tile, (1 + 4/f) pi, pins down the angles; the face counts where a
second vertex type fits follow.
"""

from curvitri.avc import admissible_vertices, derive_avc_table, row_for, solve_f_for_case

# face counts reachable from each fixed base vertex
for base in ("1^3", "1^4", "1^5", "1^3 2 3"):
    print(f"{base:<8} f in {solve_f_for_case(base)}")

# the whole table, one row per line
for row in derive_avc_table():
    head = f"family {row.key}" if row.family else f"f={row.key}"
    print(f"{head:<11}{row.line()}")

# angle values in units of pi: which vertices can close up?
print([v.pretty for v in admissible_vertices(24, ("2/3", "1/2"))])

# the rows that apply at one face count, with their concrete whitelists
for row in row_for(24):
    print(row.key, [v.pretty for v in row.whitelist(24)])
