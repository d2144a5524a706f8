"""
Tiling documents and drawings
=============================

Tilings are saved as JSON dart tables.  Loading checks the table; the
strict mode also recomputes the stored canonical code.
"""

import json
import tempfile
from pathlib import Path

from curvitri import FamilySpec, by_name, generate
from curvitri.document import IntegrityFailure, dumps, load, loads, save
from curvitri.render import RenderOptions, render

t = generate(FamilySpec("EJ1", by_name("h hb a"), {"t": 4}))

out = Path(tempfile.mkdtemp())
save(t, out / "ej1.json")
back = load(out / "ej1.json", strict=True)
print("same tiling:", back.canonical_code() == t.canonical_code())
print("byte stable:", dumps(back) == (out / "ej1.json").read_text(encoding="utf-8"))

# a tampered edge pairing is refused
doc = json.loads((out / "ej1.json").read_text(encoding="utf-8"))
doc["darts"][0]["theta"] = doc["darts"][1]["theta"]
try:
    loads(json.dumps(doc))
except IntegrityFailure as e:
    print("refused:", e)

# SVG with per-kind edge decorations, and Graphviz DOT
(out / "ej1.svg").write_bytes(render(t))
(out / "ej1.dot").write_bytes(render(t, RenderOptions(format="dot")))
print("wrote", sorted(p.name for p in out.iterdir()))
