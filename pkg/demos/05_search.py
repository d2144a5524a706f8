"""
Exhaustive search and classification
====================================

Two engines: decorate every triangulation with up to 16 tiles, or grow a
sphere tile by tile under a vertex whitelist (no size limit).
"""

import time

from curvitri import SearchConfig, avc_constrained_search, by_name, classify, enumerate_tilings
from curvitri.enumerate import SearchStats
from curvitri.families import atlas

# all hh̄r tilings with 12 tiles, each named by the families producing it
p = by_name("h hb r")
names = atlas(12, p)
for t in enumerate_tilings(12, p):
    print(sorted(names[t.canonical_code()][1]))

# the classification check on a few prototiles
rep = classify(SearchConfig(10, prototiles=[by_name("r r r"), by_name("h hb a")]))
print(rep.table())

# growing spheres: 24 tiles with vertices 1^3 and 2^4 3^4
ts = avc_constrained_search(24, p, ["1^3", "2^4 3^4"], SearchConfig(24, ceiling=24))
print("f=24:", len(ts), "tiling(s)")

# 36 tiles: both candidate vertex sets close with no tiling at all
for wl in (["1^3", "1 2^3 3^3"], ["1^3 2 3", "2^3 3^3"]):
    st = SearchStats()
    t0 = time.time()
    found = avc_constrained_search(36, p, wl, SearchConfig(36, ceiling=36), stats=st)
    print(wl, len(found), f"{st.nodes} nodes, {time.time() - t0:.2f}s")

# caps of four tiles and an antiprism band: a three-layer earth map at f=16
ts = avc_constrained_search(16, p, ["1^4", "1 2^2 3^2"])
ext = atlas(16, p, extended=True)
print([sorted(ext[t.canonical_code()][1]) for t in ts])
