"""JSON documents for labelled tilings.

A document stores the dart table directly, so a file can be checked
without trusting whoever wrote it.  Keys are sorted and the layout is fixed,
which makes save, load and save again byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path

from .maps import CombMap, nxt, prv
from .prototile import Prototile, SideLabel, by_name
from .verify import LabeledTiling, verify_tiling

SCHEMA = "curvitri.tiling/1"


class DocumentError(ValueError):
    pass


class SchemaMismatch(DocumentError):
    pass


class IntegrityFailure(DocumentError):
    pass


def label_json(l: SideLabel) -> dict:
    return {"kind": l.kind, "side": l.side, "chirality": l.chirality, "curve_class": l.cls}


def label_from_json(d: dict) -> SideLabel:
    try:
        return SideLabel(d["kind"], int(d["side"]), int(d["chirality"]), int(d["curve_class"]))
    except (KeyError, TypeError, ValueError) as e:
        raise IntegrityFailure(f"bad label {d!r}: {e}") from None


def _plain(x):
    # tuples become lists, so the document equals its own reload
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


def to_document(t: LabeledTiling) -> dict:
    m = t.map
    report = verify_tiling(t)
    darts = [
        {
            "id": d,
            "theta": m.theta[d],
            "nxt": nxt(d),
            "corner": t.corner[d],
            "label": label_json(t.label[d]),
        }
        for d in range(m.nd)
    ]
    return {
        "schema": SCHEMA,
        "prototile": {"name": t.prototile.name, "word": [label_json(l) for l in t.prototile.word]},
        "darts": darts,
        "metadata": {
            "family": t.provenance,
            "params": _plain(t.params),
            "f": m.nf,
            "canonical_code": t.canonical_code().hex(),
        },
        "verified": report.ok,
    }


def dumps(t: LabeledTiling) -> str:
    return json.dumps(to_document(t), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def save(t: LabeledTiling, path) -> None:
    Path(path).write_text(dumps(t), encoding="utf-8")


def _prototile(doc: dict) -> Prototile:
    try:
        p = by_name(doc["name"])
    except KeyError:
        raise IntegrityFailure(f"unknown prototile {doc.get('name')!r}") from None
    word = tuple(label_from_json(x) for x in doc.get("word", ()))
    if word != p.word:
        raise IntegrityFailure(f"word stored for {p.name} differs from the catalog")
    return p


def from_document(doc: dict, *, strict: bool = False) -> LabeledTiling:
    """Rebuild a tiling; ``strict`` also recomputes the canonical code and verification."""
    if not isinstance(doc, dict) or "schema" not in doc:
        raise SchemaMismatch("not a tiling document (no schema field)")
    if doc["schema"] != SCHEMA:
        raise SchemaMismatch(f"schema {doc['schema']!r} is not supported; expected {SCHEMA!r}")
    p = _prototile(doc.get("prototile", {}))
    rows = sorted(doc.get("darts", []), key=lambda r: r.get("id", -1))
    n = len(rows)
    if n == 0 or n % 3:
        raise IntegrityFailure(f"dart count {n} is not a positive multiple of 3")
    if [r.get("id") for r in rows] != list(range(n)):
        raise IntegrityFailure("dart ids are not 0..n-1")
    theta = [r.get("theta") for r in rows]
    if sorted(theta) != list(range(n)) or any(theta[t] != d or t == d for d, t in enumerate(theta)):
        raise IntegrityFailure("theta is not a fixed-point-free involution")
    if [r.get("nxt") for r in rows] != [nxt(d) for d in range(n)]:
        raise IntegrityFailure("nxt is not the face rotation d -> 3(d//3) + (d+1) mod 3")
    # vertices are the orbits of theta o prv
    vid = [-1] * n
    nv = 0
    for d in range(n):
        if vid[d] >= 0:
            continue
        e = d
        while vid[e] < 0:
            vid[e] = nv
            e = theta[prv(e)]
        nv += 1
    faces = tuple(tuple(vid[3 * k + j] for j in range(3)) for k in range(n // 3))
    m = CombMap(faces, tuple(theta), nv)
    corner = tuple(int(r.get("corner", 0)) for r in rows)
    labels = tuple(label_from_json(r.get("label", {})) for r in rows)
    meta = doc.get("metadata", {})
    t = LabeledTiling(m, p, corner, labels, meta.get("family"), dict(meta.get("params") or {}))
    if strict:
        if meta.get("canonical_code") != t.canonical_code().hex():
            raise IntegrityFailure("stored canonical code does not match the tiling")
        if bool(doc.get("verified")) != verify_tiling(t).ok:
            raise IntegrityFailure("stored verified flag does not match verification")
    return t


def loads(text: str, *, strict: bool = False) -> LabeledTiling:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaMismatch(f"not JSON: {e}") from None
    return from_document(doc, strict=strict)


def load(path, *, strict: bool = False) -> LabeledTiling:
    return loads(Path(path).read_text(encoding="utf-8"), strict=strict)
