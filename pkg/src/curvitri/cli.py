"""Command line: ``curvitri <command> ...``.

Exit codes: 0 ok, 1 verification or classification failure, 2 usage
error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import avc as avc_mod
from .document import DocumentError, dumps, loads, to_document
from .enumerate import BudgetExceeded, SearchConfig, avc_constrained_search, classify, enumerate_tilings
from .families import FAMILIES, FamilyError, FamilySpec, generate
from .prototile import by_name, catalog16, is_admissible
from .render import RenderOptions, render
from .verify import verify_tiling

OK, FAIL, USAGE, BUDGET = 0, 1, 2, 3
FAN_TYPES = ("h hb r", "h hb a", "r r r2", "r r a")
COLLECTION = "curvitri.collection/1"


class UsageError(Exception):
    pass


def _emit(obj, as_json: bool, text: str, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text + ("\n" if text and not text.endswith("\n") else ""))


def _prototile(name: str):
    try:
        return by_name(name)
    except KeyError:
        raise UsageError(f"unknown prototile {name!r}; try `curvitri catalog`") from None


# ---------------------------------------------------------------------------


def cmd_catalog(args) -> int:
    rows = []
    lines = []
    for i, p in enumerate(catalog16(), 1):
        counts: dict[str, list[int]] = {}
        for l in p.word:
            if l.kind in "GH":
                c = counts.setdefault(l.ascii.rstrip("b-")[:1] + (str(l.cls + 1) if l.cls else ""), [0, 0])
                c[l.side] += 1
        proof = "; ".join(f"{k}: {a} plain, {b} bar" for k, (a, b) in sorted(counts.items()))
        proof = proof or "no general or h-symmetric curve"
        ok = is_admissible(p)
        rows.append({"index": i, "name": p.name, "pretty": p.pretty, "admissible": ok, "proof": proof,
                     "word": [l.ascii for l in p.word]})
        lines.append(f"{i:>2}. {p.pretty:<7} sides 12/23/31 = {' '.join(l.ascii for l in p.word):<12} "
                     f"{'admissible' if ok else 'NOT admissible'} ({proof})")
    _emit(rows, args.json, "\n".join(lines))
    return OK


def cmd_avc(args) -> int:
    if args.f is None and not args.all:
        raise UsageError("give --f N or --all")
    if args.f is not None and (args.f % 2 or args.f < 4):
        raise UsageError("f must be even and at least 4")
    rows = avc_mod.derive_avc_table() if args.all else avc_mod.row_for(args.f)
    if args.json:
        sys.stdout.write(avc_mod.table_json(rows))
        return OK
    lines = []
    for r in rows:
        head = f"family {r.key}" if r.family else f"f={r.key}"
        tail = f"  [fits {', '.join(r.member_of)}]" if r.printed_tag and r.printed_tag not in r.member_of else ""
        lines.append(f"{head:<10} {r.line()}{tail}")
    _emit(None, False, "\n".join(lines))
    return OK


def _parse_value(text: str):
    if "," in text:
        return [_parse_value(x) for x in text.split(",") if x]
    try:
        return int(text)
    except ValueError:
        pass
    try:
        Fraction(text)
        return text
    except ValueError:
        return text


def _params(items) -> dict:
    out = {}
    for it in items or ():
        if "=" not in it:
            raise UsageError(f"--param expects k=v, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = _parse_value(v.strip())
    return out


def _collection(ts) -> str:
    doc = {"schema": COLLECTION, "tilings": [to_document(t) for t in ts]}
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def cmd_generate(args) -> int:
    p = _prototile(args.prototile)
    spec = FamilySpec(args.family, p, _params(args.param))
    try:
        res = generate(spec, all_versions=args.all_versions, extended=args.extended)
    except FamilyError as e:
        raise UsageError(f"{type(e).__name__}: {e}") from None
    text = _collection(res) if args.all_versions else dumps(res)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        n = len(res) if args.all_versions else 1
        print(f"wrote {n} tiling(s) to {args.output}")
    else:
        sys.stdout.write(text)
    return OK


def _load_any(path: str, strict: bool):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None
    doc = json.loads(text)
    if isinstance(doc, dict) and doc.get("schema") == COLLECTION:
        from .document import from_document

        return [from_document(d, strict=strict) for d in doc.get("tilings", [])]
    return [loads(text, strict=strict)]


def cmd_verify(args) -> int:
    try:
        ts = _load_any(args.file, args.strict)
    except (DocumentError, json.JSONDecodeError) as e:
        _emit({"ok": False, "error": f"{type(e).__name__}: {e}"}, args.report == "json",
              f"FAIL {type(e).__name__}: {e}")
        return FAIL
    reports = [verify_tiling(t) for t in ts]
    ok = all(r.ok for r in reports)
    if args.report == "json":
        _emit({"ok": ok, "tilings": [r.to_json() for r in reports]}, True, "")
    else:
        for i, r in enumerate(reports):
            if r.ok:
                spec = ", ".join(f"{k}×{v}" for k, v in sorted(r.vertex_spectrum.items()))
                print(f"[{i}] ok  angles {' '.join(str(a) for a in r.angle.values)} (units of π)  {spec}")
            else:
                for check, where in r.violations:
                    print(f"[{i}] FAIL {check}: {where}")
    return OK if ok else FAIL


def cmd_enumerate(args) -> int:
    protos = [_prototile(args.prototile)] if args.prototile else catalog16()
    cfg = SearchConfig(args.faces, ceiling=max(args.faces, 16) if args.avc_restrict else 16)
    if args.budget:
        cfg.node_budget = args.budget
    if args.seconds:
        cfg.time_budget = args.seconds
    if args.faces > cfg.ceiling:
        raise UsageError(f"f={args.faces} is above the triangulation ceiling {cfg.ceiling}; use --avc-restrict")
    result = {}
    lines = []
    for p in protos:
        if args.avc_restrict:
            if p.name not in FAN_TYPES:
                raise UsageError(f"--avc-restrict applies only to {', '.join(FAN_TYPES)}")
            ts = {}
            for row in avc_mod.row_for(args.faces):
                wl = row.whitelist(args.faces)
                for t in avc_constrained_search(args.faces, p, wl, cfg):
                    ts.setdefault(t.canonical_code(), t)
            ts = [ts[c] for c in sorted(ts)]
        else:
            ts = enumerate_tilings(args.faces, p, cfg)
        result[p.name] = [t.canonical_code().hex() for t in ts]
        lines.append(f"{p.pretty or p.name:<8} {len(ts)}")
    _emit({"f": args.faces, "tilings": result}, args.json, "\n".join(lines))
    return OK


def cmd_classify(args) -> int:
    protos = [_prototile(args.prototile)] if args.prototile else None
    cfg = SearchConfig(args.max_faces, prototiles=protos)
    if args.max_faces > cfg.ceiling:
        raise UsageError(f"--max-faces is limited to {cfg.ceiling}")
    rep = classify(cfg, min_f=args.min_faces, extended=args.extended)
    if args.output:
        Path(args.output).write_text(json.dumps(rep.to_json(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    _emit(rep.to_json(), args.json, rep.table() + f"\n{'ok' if rep.ok else 'UNMATCHED TILINGS FOUND'}")
    return OK if rep.ok else FAIL


def cmd_render(args) -> int:
    try:
        ts = _load_any(args.file, False)
    except (DocumentError, json.JSONDecodeError) as e:
        print(f"cannot read {args.file}: {e}", file=sys.stderr)
        return FAIL
    data = render(ts[args.index], RenderOptions(format=args.format))
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvitri", description="Tilings of the sphere by congruent curvilinear triangles.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", help="list the 16 prototiles")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("avc", help="vertex table rows")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--f", type=int)
    g.add_argument("--all", action="store_true")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--table", action="store_true", help="human-readable rows (default)")
    s.set_defaults(func=cmd_avc)

    s = sub.add_parser("generate", help="build a family member")
    s.add_argument("--family", required=True, help=", ".join(FAMILIES))
    s.add_argument("--prototile", required=True)
    s.add_argument("--param", action="append", metavar="K=V")
    s.add_argument("--all-versions", action="store_true")
    s.add_argument("--extended", action="store_true", help="allow families outside the main table")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("verify", help="check a tiling document")
    s.add_argument("file")
    s.add_argument("--report", choices=("text", "json"), default="text")
    s.add_argument("--strict", action="store_true", help="also recompute the stored code and flag")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="exhaustive search at one face count")
    s.add_argument("--faces", type=int, required=True)
    s.add_argument("--prototile")
    s.add_argument("--avc-restrict", action="store_true", help="grow spheres using the vertex table whitelist")
    s.add_argument("--budget", type=int, help="node budget")
    s.add_argument("--seconds", type=float, help="time budget")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("classify", help="match every enumerated tiling to a family")
    s.add_argument("--max-faces", type=int, required=True)
    s.add_argument("--min-faces", type=int, default=4)
    s.add_argument("--prototile")
    s.add_argument("--extended", action="store_true")
    s.add_argument("--json", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("render", help="draw a tiling")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--format", choices=("svg", "dot"), default="svg")
    s.add_argument("--index", type=int, default=0, help="which tiling of a collection")
    s.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as e:
        print(f"budget exceeded: {e} (explored {e.explored})", file=sys.stderr)
        return BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
