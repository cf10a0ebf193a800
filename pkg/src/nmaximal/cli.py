"""Command-line front end: analyze, chains, catalog, verify.

Exit codes: 0 success, 1 mathematical violation or predicate failure,
2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from . import catalog as cat
from .errors import EnvelopeExceeded, NMaximalError, RationalFieldUnsupported
from .exactcore import FieldSpec, Subspace
from .lattice import DEFAULT_BUDGET, ChainPredicate, SubalgebraLattice, galois_number
from .liekernel import LieAlgebra, SeriesKind, center, is_nilpotent, is_solvable, series
from .oracles import parse_ids, run_algebras, run_catalog, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _sub(s: Subspace) -> dict:
    return {"dim": s.dim, "basis": [list(map(str, v)) for v in s.basis], "hex": s.hex()}


def _load(path: str) -> LieAlgebra:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    L = cat.parse(text)
    if L.label is None:
        L.label = Path(path).stem
    return L


def _dims_hist(spaces) -> dict:
    return {str(d): c for d, c in sorted(Counter(s.dim for s in spaces).items())}


# ---------------------------------------------------------------------------
# analyze

def analyze_report(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> dict:
    F = L.field
    rep = {
        "label": L.label,
        "field": str(F),
        "dim": L.dim,
        "solvable": is_solvable(L),
        "nilpotent": is_nilpotent(L),
        "derived_series": [s.dim for s in series(L, kind=SeriesKind.DERIVED)],
        "lower_central_series": [s.dim for s in series(L, kind=SeriesKind.LOWER_CENTRAL)],
        "center": _sub(center(L)),
    }
    unavailable = None
    if not F.is_finite:
        unavailable = "unavailable: rational field"
    else:
        est = galois_number(L.dim, F.p)
        rep["subspace_estimate"] = est
        if est > budget:
            unavailable = "unavailable: envelope"
    keys = ["simple", "supersolvable", "nilradical", "frattini_subalgebra", "frattini_ideal",
            "maximal_subalgebras", "chains"]
    if unavailable:
        for k in keys:
            rep[k] = unavailable
        if rep["nilpotent"]:
            rep["nilradical"] = _sub(L.full())
        return rep
    lat = SubalgebraLattice(L, budget)
    Fr, phi = lat.frattini()
    maxes = lat.maximal_subalgebras()
    rep["simple"] = bool(L.table) and len(lat.ideals) == 2
    rep["supersolvable"] = lat.is_supersolvable() if rep["solvable"] else False
    rep["nilradical"] = _sub(lat.nilradical())
    rep["frattini_subalgebra"] = _sub(Fr)
    rep["frattini_ideal"] = _sub(phi)
    rep["maximal_subalgebras"] = {"count": len(maxes), "dims": _dims_hist(maxes)}
    chains = {}
    for n in (1, 2, 3):
        lvl = lat.n_maximals(n)
        chains[str(n)] = {
            "count": len(lvl),
            "dims": _dims_hist(lvl),
            "ideal": sum(lat.ideal(s) for s in lvl),
            "subideal": sum(lat.subideal(s) for s in lvl),
            "nilpotent": sum(lat.nilpotent(s) for s in lvl),
        }
    rep["chains"] = chains
    return rep


def _render_text(rep: dict, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    for k, v in rep.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_render_text(v, indent + 1))
        elif isinstance(v, list):
            lines.append(f"{pad}{k}: {json.dumps(v, separators=(',', ':'))}")
        elif isinstance(v, bool):
            lines.append(f"{pad}{k}: {str(v).lower()}")
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def cmd_analyze(args) -> int:
    L = _load(args.file)
    rep = analyze_report(L, args.budget)
    if args.format == "json":
        sys.stdout.write(json.dumps(rep, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(_render_text(rep)) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# chains

def cmd_chains(args) -> int:
    L = _load(args.file)
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    lat = SubalgebraLattice(L, args.budget)
    pred = ChainPredicate(args.predicate)
    lvl = lat.level(args.n)
    rows = []
    for s, chain in lvl.items():
        rows.append({"subalgebra": _sub(s), "chain": [c.hex() for c in chain], "holds": lat.holds(s, pred)})
    holds = all(r["holds"] for r in rows)
    if args.format == "json":
        doc = {"label": L.label, "n": args.n, "predicate": pred.value, "count": len(rows),
               "holds": holds, "n_maximals": rows}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        out = [f"label: {L.label}", f"n: {args.n}", f"predicate: {pred.value}", f"count: {len(rows)}"]
        for r in rows:
            s = r["subalgebra"]
            basis = " ; ".join(" ".join(v) for v in s["basis"]) or "0"
            out.append(f"{'ok  ' if r['holds'] else 'FAIL'} dim={s['dim']} [{basis}] chain={','.join(r['chain'])}")
        out.append(f"holds: {str(holds).lower()}")
        sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK if holds else EXIT_FAIL


# ---------------------------------------------------------------------------
# catalog

def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in sorted(cat.BUILDERS):
            print(name)
        print("standard entries:")
        for e in cat.standard_catalog():
            print(f"  {e.label}" + (f"  intended={e.intended_case}" if e.intended_case else ""))
        return EXIT_OK
    if not args.spec:
        raise UsageError("catalog emit needs an entry, e.g. 'heisenberg' or 'cor26c(p=3,alpha=1)'")
    L = cat.build(args.spec, _field(args.field))
    doc = cat.emit(L)
    if args.output:
        Path(args.output).write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ints(text: str, flag: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers") from None


def _sample(text: str) -> tuple[int, int]:
    """``COUNT[,seed=S]``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        count = int(parts[0])
        seed = 0
        for p in parts[1:]:
            key, _, val = p.partition("=")
            if key != "seed":
                raise ValueError
            seed = int(val)
    except (ValueError, IndexError):
        raise UsageError("--sample expects COUNT or COUNT,seed=S") from None
    return count, seed


def cmd_verify(args) -> int:
    try:
        ids = parse_ids(args.theorems)
    except ValueError as exc:
        raise UsageError(f"unknown theorem id: {exc}") from None
    if not ids:
        raise UsageError("no theorems selected")
    reports = []
    if args.scope == "catalog":
        reports.append(run_catalog(None, ids, args.budget, args.threads))
    elif args.scope == "files":
        if not args.files:
            raise UsageError("--scope files needs --files")
        items = [(L.label, L) for L in map(_load, args.files)]
        reports.append(run_algebras(items, ids, args.budget, args.threads))
    else:
        fields = [_field(f) for f in args.fields.split(",") if f.strip()]
        dims = _ints(args.dims, "--dims")
        if not fields or not dims:
            raise UsageError("--scope sweep needs --fields and --dims")
        specs = []
        for F in fields:
            for d in dims:
                if args.sample:
                    count, seed = _sample(args.sample)
                    specs.append(cat.SweepSpec(d, F, "sampled", count, seed))
                else:
                    specs.append(cat.SweepSpec(d, F))
        for spec in specs:
            reports.append(run_sweep(spec, ids, args.budget, args.threads))
    text = "".join(r.to_text() for r in reports)
    doc = {"reports": [r.to_dict() for r in reports], "ok": all(r.ok for r in reports)}
    sys.stdout.write(json.dumps(doc, indent=2) + "\n" if args.format == "json" else text)
    if args.json:
        Path(args.json).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK if doc["ok"] else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of subspaces to enumerate (default 10^7)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for suites")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="nmaximal", description="n-maximal subalgebras of small Lie algebras")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="structure report for a table file")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("chains", parents=[common], help="list n-maximal subalgebras with witness chains")
    c.add_argument("file")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--predicate", choices=[p.value for p in ChainPredicate], default="subideal")
    c.set_defaults(func=cmd_chains)

    g = sub.add_parser("catalog", parents=[common], help="list or emit witness algebras")
    g.add_argument("action", choices=("list", "emit"))
    g.add_argument("spec", nargs="?")
    g.add_argument("--field", default="gf2")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify", parents=[common], help="run predicate/matcher suites")
    v.add_argument("--scope", choices=("catalog", "sweep", "files"), default="catalog")
    v.add_argument("--theorems", default="all", help="'all' or comma-separated ids, e.g. T1_1,T2_5")
    v.add_argument("--fields", default="5", help="comma-separated primes for sweeps")
    v.add_argument("--dims", default="3", help="comma-separated dimensions for sweeps")
    v.add_argument("--sample", help="COUNT[,seed=S] for a seeded sampled sweep")
    v.add_argument("--files", nargs="*")
    v.add_argument("--json", help="also write the structured report to this path")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "budget", 1) <= 0 or getattr(args, "threads", 1) <= 0:
        print("error: --budget and --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except EnvelopeExceeded as exc:
        print(f"error: Galois-number estimate {exc.estimate} exceeds budget {exc.budget}", file=sys.stderr)
        return EXIT_USAGE
    except RationalFieldUnsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, NMaximalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
