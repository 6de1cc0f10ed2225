"""Command-line front end: ``prekosmos check | reconstruct | twist | suite``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or parse errors.
Reports are canonical JSON (sorted keys, compact separators, no timestamps) so identical
invocations produce identical bytes.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import kosmos as K
from . import reconstruction as C
from . import rep as P
from . import suite as S
from . import torsors as T
from .documents import Loader
from .errors import AxiomFailure, ParseError, PrekosmosError
from .hopf import (FinGroupObj, RatHopfObj, algebra_axiom_reports, check_two_cell, group_axiom_reports,
                   group_mor_reports, hopf_axiom_reports)
from .lawcheck import Report, all_passed, failure

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# report assembly


def _section(title: str, reports) -> dict:
    reports = list(reports)
    return {"section": title, "passed": all_passed(reports), "reports": [r.to_dict() for r in reports]}


def _document(command: str, inputs: dict, sections: list[dict], extra: dict | None = None) -> dict:
    out = {"tool": "prekosmos", "version": S.VERSION, "command": command, "inputs": inputs,
           "sections": sections, "passed": all(s["passed"] for s in sections)}
    if extra:
        out.update(extra)
    return out


def _rows(m) -> list[list[str]]:
    return [[K.rat_str(v) for v in row] for row in m.matrix]


def structure_tables(pi) -> dict:
    if isinstance(pi, FinGroupObj):
        return {"order": pi.order, "mul": pi.table(), "unit": pi.unit, "inv": list(pi.inv.table)}
    return {"dim": pi.dim, "mul": _rows(pi.mul), "unit": [r[0] for r in _rows(pi.unit)], "comul": _rows(pi.comul),
            "counit": _rows(pi.counit)[0], "antipode": _rows(pi.antipode)}


def _map_payload(f) -> list:
    return list(f.table) if isinstance(f, K.FinMap) else _rows(f)


def _decode_group_witness(pi_order: int, reports: list[Report]) -> list[Report]:
    """Spell out the flattened witness index of a failed associativity check as an element triple."""
    out = []
    for r in reports:
        if r.name == "associativity" and r.witness is not None and r.witness.index >= 0:
            a, rest = divmod(r.witness.index, pi_order * pi_order)
            b, c = divmod(rest, pi_order)
            r = Report(r.name, r.passed, r.witness, r.anchor, r.note, {**r.data, "triple": [a, b, c]})
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, loader: Loader) -> dict:
    path = Path(args.path)
    doc = loader.read(path)
    kind = doc.get("kind") if isinstance(doc, dict) else None
    try:
        loaded = loader.load_path(path)
    except AxiomFailure as exc:
        reports = exc.reports
        if kind == "finset-group":
            reports = _decode_group_witness(len(doc["mul"]), reports)
        return _document("check", dict(loader.digests), [_section(f"{kind} axioms", reports)],
                         {"kind": kind})
    except PrekosmosError as exc:
        if isinstance(exc, ParseError):
            raise
        r = failure(f"{kind} axioms", f"{type(exc).__name__}: {exc}")
        return _document("check", dict(loader.digests), [_section(f"{kind} axioms", [r])], {"kind": kind})
    v = loaded.value
    if kind == "finset-group":
        reports = group_axiom_reports(v.carrier, v.mul, v.unit_map, v.inv)
    elif kind == "rat-hopf":
        reports = hopf_axiom_reports(v.carrier, v.mul, v.unit, v.comul, v.counit, v.antipode)
    elif kind == "comm-alg":
        reports = algebra_axiom_reports(v.carrier, v.mul, v.unit)
    elif kind == "gal-rep":
        reports = P.gal_rep_reports(v.group, v.carrier, v.action)
    elif kind == "gro-rep":
        reports = P.gro_rep_reports(v.hopf, v.carrier, v.coaction)
    elif kind == "gal-torsor":
        reports = T.gal_action_reports(v.group, v.carrier, v.action) + T.torsor_law_reports(v)
    elif kind == "gro-torsor":
        reports = T.gro_coaction_reports(v.hopf, v.algebra, v.coaction) + T.torsor_law_reports(v)
    elif kind == "group-mor":
        reports = group_mor_reports(v.src, v.dst, v.map)
    elif kind == "two-cell":
        reports = [check_two_cell(v.theta, v.f1, v.f2)]
    else:
        raise UsageError(f"check does not accept a {kind} document")
    return _document("check", dict(loader.digests), [_section(f"{kind} axioms", reports)],
                     {"kind": kind, "object": loaded.name})


def _size_of(pi) -> int:
    return pi.order if isinstance(pi, FinGroupObj) else pi.dim


def _load_group(loader: Loader, path: str, max_order: int):
    loaded = loader.load_path(path)
    if loaded.kind not in ("finset-group", "rat-hopf"):
        raise UsageError(f"{path} holds a {loaded.kind}, expected a finset-group or rat-hopf")
    if _size_of(loaded.value) > max_order:
        raise UsageError(f"{loaded.name} has size {_size_of(loaded.value)} > --max-order {max_order}")
    return loaded.value


def cmd_reconstruct(args, loader: Loader) -> dict:
    pi = _load_group(loader, args.object, args.max_order)
    recon = C.reconstruct(pi)
    probes = P.default_probes(pi, args.probe_limit)
    hat = C.hatar_reports(pi, [m.map for m in probes.morphisms])
    _, comparison = C.comparison_functor(recon, probes)
    sections = [_section("reconstruction", recon.reports), _section("reflection isomorphisms", hat),
                _section("comparison functor", comparison)]
    extra = {"object": recon.original.name, "reconstructed": structure_tables(recon.rec),
             "witness": _map_payload(recon.witness.map), "probes": [X.name for X in probes.reps]}
    return _document("reconstruct", dict(loader.digests), sections, extra)


def cmd_twist(args, loader: Loader) -> dict:
    pi = _load_group(loader, args.group, args.max_order)
    loaded = loader.load_path(args.torsor)
    if loaded.kind not in ("gal-torsor", "gro-torsor"):
        raise UsageError(f"{args.torsor} holds a {loaded.kind}, expected a torsor")
    t = loaded.value
    t_group = t.group if isinstance(t, T.GalTorsor) else t.hopf
    if t_group is not pi and S.group_document(t_group) != S.group_document(pi):
        raise UsageError("the torsor is defined over a different group than --group")
    probes = P.default_probes(t_group, args.probe_limit)
    tg = T.twist_group(t)
    fiber = T.twist_fiber(t, probes, tg)
    equiv, equiv_reports = T.twisted_equiv_check(t, probes, tg)
    trip, trip_reports, _ = T.fib_tors_roundtrip(t)
    sections = [_section("torsor laws", T.torsor_law_reports(t)), _section("twisted group", tg.reports),
                _section("twisted fibre functor", fiber.reports),
                _section("twisted equivalence", [equiv] + equiv_reports),
                _section("round trip", [trip] + trip_reports)]
    extra = {"torsor": t.name, "twisted_group": structure_tables(tg.group),
             "twisted_carriers": fiber.carrier_sizes()}
    if isinstance(t, T.GroTorsor) and t.algebra.carrier.dim == 2:
        extra["rational_points"] = len(T.rational_points_dim2(t.algebra))
    elif isinstance(t, T.GalTorsor):
        extra["points"] = t.carrier.size
    return _document("twist", dict(loader.digests), sections, extra)


def _load_roster(loader: Loader, path: str):
    """Groups and Hopf algebras from a roster file; invalid entries become rejections."""
    base = Path(path).resolve().parent
    loaded = loader.load_path(path)
    if loaded.kind != "roster":
        raise UsageError(f"{path} holds a {loaded.kind}, expected a roster")
    galois, grothendieck, rejected = [], [], []
    for entry in loaded.value:
        label = entry if isinstance(entry, str) else entry.get("name", "inline entry")
        try:
            g = loader.load_ref(entry, base)
        except ParseError:
            raise
        except PrekosmosError as exc:
            rejected.append((label, f"{type(exc).__name__}: {exc}"))
            continue
        if isinstance(g.value, FinGroupObj):
            galois.append(g.value)
        elif isinstance(g.value, RatHopfObj):
            grothendieck.append(g.value)
        else:
            raise UsageError(f"roster entry {label} is a {g.kind}")
    return galois, grothendieck, rejected


def cmd_suite(args, loader: Loader) -> dict:
    seed = os.environ.get("PREKOSMOS_SEED") or None
    if args.roster:
        galois, grothendieck, rejected = _load_roster(loader, args.roster)
    else:
        (galois, grothendieck), rejected = S.default_roster(), []
    result = S.run_suite(galois, grothendieck, side=args.side, probe_limit=args.probe_limit,
                         max_order=args.max_order, rejected=rejected, seed=seed)
    out = result.to_dict()
    out["command"] = "suite"
    out["roster_files"] = dict(loader.digests)
    return out


# ---------------------------------------------------------------------------
# output and entry point


def render_text(doc: dict) -> str:
    lines = [f"prekosmos {doc.get('version', '')} {doc.get('command', '')}: {'PASS' if doc.get('passed') else 'FAIL'}"]
    for sec in doc.get("sections", []):
        lines.append(f"[{'PASS' if sec['passed'] else 'FAIL'}] {sec['section']}")
        for r in sec["reports"]:
            if not r["passed"]:
                lines.append(f"    FAIL {r['name']}: {r.get('witness')}{' ' + str(r['data']) if 'data' in r else ''}")
    for c in doc.get("criteria", []):
        lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['criterion']}. {c['title']}")
        for r in c["details"]:
            if not r["passed"]:
                lines.append(f"    FAIL {r['name']}: {r.get('witness')}")
    for w in doc.get("warnings", []):
        lines.append(f"warning: {w}")
    for key in ("reconstructed", "witness", "twisted_group", "twisted_carriers", "rational_points", "points"):
        if key in doc:
            lines.append(f"{key}: {S.canonical_json(doc[key])}")
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--probe-limit", type=int, default=5, help="number of probe representations (default 5)")
    common.add_argument("--max-order", type=int, default=8, help="largest group order or Hopf dimension (default 8)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json", help="print canonical JSON")
    fmt.add_argument("--text", dest="format", action="store_const", const="text", help="print a summary (default)")
    common.add_argument("--report", metavar="PATH", help="also write the canonical JSON report here")

    parser = argparse.ArgumentParser(prog="prekosmos", description="Validate group and Hopf data, reconstruct "
                                     "groups from their representations, and twist fibre functors by torsors.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="validate one input document")
    p.add_argument("path")
    p = sub.add_parser("reconstruct", parents=[common], help="rebuild a group or Hopf algebra from its fibre functor")
    p.add_argument("--object", required=True, metavar="PATH")
    p = sub.add_parser("twist", parents=[common], help="twisted group and fibre functor of a torsor")
    p.add_argument("--group", required=True, metavar="PATH")
    p.add_argument("--torsor", required=True, metavar="PATH")
    p = sub.add_parser("suite", parents=[common], help="run the acceptance suite")
    p.add_argument("--side", choices=("galois", "grothendieck", "both"), default="both")
    p.add_argument("--roster", metavar="PATH", help="roster document (default: built-in roster)")
    return parser


COMMANDS = {"check": cmd_check, "reconstruct": cmd_reconstruct, "twist": cmd_twist, "suite": cmd_suite}


def _emit(doc: dict, args) -> None:
    body = S.canonical_json(doc)
    if args.report:
        Path(args.report).write_text(body + "\n")
    print(body if args.format == "json" else render_text(doc))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.probe_limit < 1 or args.max_order < 1:
        print("prekosmos: --probe-limit and --max-order must be positive", file=sys.stderr)
        return EXIT_USAGE
    loader = Loader()
    try:
        doc = COMMANDS[args.command](args, loader)
    except (ParseError, UsageError) as exc:
        print(f"prekosmos: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrekosmosError as exc:
        # an input referenced by the command failed validation: still write what is known
        doc = _document(args.command, dict(loader.digests),
                        [_section("inputs", [failure("input validation", f"{type(exc).__name__}: {exc}")])],
                        {"error": f"{type(exc).__name__}: {exc}"})
    _emit(doc, args)
    return EXIT_PASS if doc["passed"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
