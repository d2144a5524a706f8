import xml.etree.ElementTree as ET

import numpy as np
import pytest

from curvitri.families import FamilySpec, generate, rrr_inv_labelings
from curvitri.prototile import by_name
from curvitri.render import RenderOptions, render, tutte_layout

SVG = "{http://www.w3.org/2000/svg}"


def _tetra():
    return generate(FamilySpec("P", by_name("r r r"), {"n": 4}))


def test_svg_parses_and_has_every_edge():
    t = _tetra()
    root = ET.fromstring(render(t))
    edges = root.findall(f".//{SVG}g[@data-edge]")
    assert len(edges) == 6
    # rrr has no r-inverse edges, so no circle markers inside edge groups
    assert not any(g.find(f"{SVG}circle") is not None for g in edges)


def test_render_is_deterministic():
    t = generate(FamilySpec("EJ1", by_name("h hb a"), {"t": 4}))
    assert render(t) == render(t)
    assert render(t, RenderOptions(format="dot")) == render(t, RenderOptions(format="dot"))


def test_circle_markers_match_inverse_edges():
    for t in rrr_inv_labelings(4):
        root = ET.fromstring(render(t))
        marked = 0
        for g in root.findall(f".//{SVG}g[@data-edge]"):
            if g.find(f"{SVG}circle") is not None:
                marked += 1
        d_labels = [t.label[int(g.get("data-edge").split("-")[0])] for g in root.findall(f".//{SVG}g[@data-edge]")]
        assert marked == sum(1 for l in d_labels if l.chirality < 0)


def test_layout_is_planar_barycentric():
    t = generate(FamilySpec("TP", by_name("h hb r"), {"n": 4}))
    pos = tutte_layout(t)
    m = t.map
    outer = set(m.faces[0])
    for v in range(m.nv):
        if v in outer:
            continue
        assert np.allclose(pos[v], np.mean([pos[u] for u in m.neighbors(v)], axis=0))


def test_dot_output():
    text = render(_tetra(), RenderOptions(format="dot")).decode()
    assert text.startswith("graph tiling {") and text.count(" -- ") == 6


def test_bad_format():
    with pytest.raises(ValueError):
        RenderOptions(format="png")
