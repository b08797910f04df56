"""Command-line entry point: generate, tiles-check, classify, render, paper-suite."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import families as fam
from .classify import NotOrthogonal, SeesawConfig, classify_bipartite, classify_tripartite
from .io import ParseError, read_stateset, read_structure, stateset_to_json, structure_from_json, \
    structure_to_json, write_json, load_json
from .render import render_ascii, render_svg
from .suite import run_suite
from .tiles import (Bipartition, CapExceeded, enumerate_special_regions, find_quasi_u_partition,
                    flatten_to_bipartition, is_u_tile, validate_structure)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True)


def run_generate(args) -> int:
    try:
        spec = fam.FamilySpec(args.family, args.d)
    except fam.OutOfRange as e:
        raise UsageError(str(e)) from e
    built = fam.build(spec)
    out = Path(args.out or f"{spec.name}.json")
    try:
        write_json(stateset_to_json(built.states), out)
        if built.structure is not None:
            write_json(structure_to_json(built.structure), out.with_name(out.stem + ".tiles.json"))
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    print(f"{spec.name}: {len(built.states)} states (closed form {fam.size_formula(spec)}) -> {out}")
    return EXIT_OK


def _u_tile_json(s, max_tiles):
    try:
        v = is_u_tile(s, max_tiles)
    except CapExceeded as e:
        return {"skipped": str(e)}
    return {"is_u_tile": v.is_u_tile, "region": list(v.region) if v.region else None,
            "split": [list(p) for p in v.split] if v.split else None, "reason": v.reason}


def _quasi_json(s, max_tiles):
    try:
        qp = find_quasi_u_partition(s, max_tiles)
    except CapExceeded as e:
        return {"skipped": str(e)}
    return {"found": qp is not None, **(qp.to_json() if qp else {})}


def run_tiles_check(args) -> int:
    s = structure_from_json(load_json(args.path), validate=False)
    problems = validate_structure(s)
    report = {"dims": list(s.dims), "tiles": s.ntiles, "valid": not problems,
              "violations": [{"kind": v.kind, "message": v.message} for v in problems]}
    if problems:
        print(_dump(report))
        return EXIT_FAIL
    report["u_tile"] = _u_tile_json(s, args.max_tiles)
    try:
        report["special_regions"] = len(enumerate_special_regions(s, args.max_tiles))
    except CapExceeded as e:
        report["special_regions"] = {"skipped": str(e)}
    if s.ndim == 2:
        report["quasi_u"] = _quasi_json(s, args.max_tiles)
    else:
        report["bipartitions"] = {}
        for b in Bipartition:
            f = flatten_to_bipartition(s, b)
            report["bipartitions"][b.value] = {"u_tile": _u_tile_json(f, args.max_tiles),
                                               "quasi_u": _quasi_json(f, args.max_tiles)}
    print(_dump(report))
    return EXIT_OK


def _known_partitions(S, tripartite: bool):
    prov = S.provenance
    if "family" not in prov:
        return None, None
    try:
        spec = fam.FamilySpec(prov["family"], prov.get("d"))
    except fam.OutOfRange:
        return None, None
    built = fam.build(spec)
    if not tripartite:
        try:
            return built.structure, fam.known_partition(spec)
        except fam.NoKnownPartition:
            return built.structure, None
    parts = {}
    for b in Bipartition:
        try:
            parts[b] = fam.known_partition(spec, b)
        except fam.NoKnownPartition:
            pass
    return built.structure, parts


def run_classify(args) -> int:
    S = read_stateset(args.path)
    if len(S) == 0:
        raise UsageError("state set is empty")
    want = 3 if args.tripartite else 2
    if len(S.dims) != want:
        raise UsageError(f"{'--tripartite needs' if args.tripartite else 'bipartite classification needs'} "
                         f"{want} parties, file has {len(S.dims)}")
    cfg = SeesawConfig(restarts=args.restarts, seed=args.seed)
    structure, parts = _known_partitions(S, args.tripartite)
    try:
        if args.tripartite:
            rep = classify_tripartite(S, structure, parts, cfg, max_tiles=args.max_tiles).to_json()
        else:
            rep = classify_bipartite(S, structure, parts, cfg, max_tiles=args.max_tiles).to_json()
    except NotOrthogonal as e:
        raise UsageError(f"states are not orthogonal: {e}") from e
    text = _dump(rep)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return EXIT_OK


def run_render(args) -> int:
    s = read_structure(args.path)
    text = render_svg(s, args.cell, not args.no_labels) if args.format == "svg" \
        else render_ascii(s, not args.no_labels)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def run_paper_suite(args) -> int:
    cfg = SeesawConfig(restarts=args.restarts, seed=args.seed)
    only = set(args.only) if args.only else None
    results = run_suite(cfg, only)
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="upbkit", description="Tile-structure product bases: build, check, classify.")
    sub = p.add_subparsers(dest="command", required=True)

    def seesaw_flags(q):
        q.add_argument("--seed", type=int, default=42)
        q.add_argument("--restarts", type=int, default=200)

    g = sub.add_parser("generate", help="write a family's state set (and tile structure) as JSON")
    g.add_argument("--family", required=True, choices=sorted(fam.FAMILIES))
    g.add_argument("--d", type=int)
    g.add_argument("--out")
    g.set_defaults(func=run_generate)

    t = sub.add_parser("tiles-check", help="validity, U-tile and quasi U-tile report for a structure file")
    t.add_argument("path")
    t.add_argument("--max-tiles", type=int, default=24)
    t.set_defaults(func=run_tiles_check)

    c = sub.add_parser("classify", help="classify a state-set file per bipartition")
    c.add_argument("path")
    c.add_argument("--tripartite", action="store_true")
    c.add_argument("--max-tiles", type=int, default=24)
    c.add_argument("--out")
    seesaw_flags(c)
    c.set_defaults(func=run_classify)

    r = sub.add_parser("render", help="draw a structure file")
    r.add_argument("path")
    r.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    r.add_argument("--cell", type=int, default=40)
    r.add_argument("--no-labels", action="store_true")
    r.add_argument("--out")
    r.set_defaults(func=run_render)

    s = sub.add_parser("paper-suite", help="run the reproduction checks")
    s.add_argument("--only", type=int, nargs="*")
    seesaw_flags(s)
    s.set_defaults(func=run_paper_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
