"""Command-line front end: build algebras, analyze Out(g), reproduce tables.

Subcommands:
    modlie build    -- construct an algebra and write the text format
    modlie analyze  -- full Der/Inn/Out report as JSON/CSV/text
    modlie reproduce -- recompute a survey table and compare cell by cell

Every flag can also be set through an environment variable with the
MODLIE_ prefix (e.g. MODLIE_THREADS=4).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict

from .linalg import FpError
from .liealg import LieAlgebraFp
from .families import build_family, hamiltonian_generator_checks
from .derout import zassenhaus_report
from .reference import TABLES

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4

CSV_COLUMNS = ["family", "p", "params", "dim_g", "dim_der", "dim_out",
               "out_series", "solvable", "derived_length", "simplicity",
               "generator_checks_passed", "complete", "seed", "code_version"]


def _env(name: str, fallback=None):
    return os.environ.get("MODLIE_" + name.upper().replace("-", "_"), fallback)


def _parse_bytes(text: str) -> int:
    text = str(text).strip().upper()
    mult = 1
    for suffix, m in (("G", 1 << 30), ("M", 1 << 20), ("K", 1 << 10)):
        if text.endswith(suffix):
            return int(float(text[:-1]) * m)
    return int(text)


def _parse_n(text):
    if text is None:
        return None
    return tuple(int(t) for t in str(text).split(","))


def _add_common(sub):
    sub.add_argument("--p", type=int, default=int(_env("p", 3)))
    sub.add_argument("--family", default=_env("family"),
                     choices=["W", "H2", "sl", "psl", "br8", "model"])
    sub.add_argument("--r", type=int, default=None)
    sub.add_argument("--n", default=_env("n"),
                     help="comma-separated exponents, or matrix size for sl/psl")
    sub.add_argument("--kind", default=None, help="model kind")
    sub.add_argument("--k", type=int, default=0, help="abelian summands (model)")
    sub.add_argument("--diag", default="id", help="diagonal action (model)")
    sub.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    sub.add_argument("--threads", type=int, default=int(_env("threads", 1)))
    sub.add_argument("--mem-limit", default=_env("mem_limit", "8G"))
    sub.add_argument("--time-limit", type=float,
                     default=float(_env("time_limit", 1800)))
    sub.add_argument("--cache-dir", default=_env("cache_dir"))
    sub.add_argument("--format", default=_env("format", "json"),
                     choices=["json", "csv", "text"])
    sub.add_argument("--output", default=None)


def _build_from_args(args) -> tuple[LieAlgebraFp, str, dict]:
    if args.family is None:
        raise FpError("--family is required")
    L, params = build_family(args.family, p=args.p, n=_parse_n(args.n),
                             r=args.r, kind=args.kind, k=args.k, D=args.diag)
    return L, args.family, params


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _report_json(report) -> str:
    return json.dumps(asdict(report), sort_keys=True, indent=2) + "\n"


def _report_csv(report) -> str:
    d = asdict(report)
    row = {
        "family": d["family"],
        "p": d["params"].get("p"),
        "params": ";".join(f"{k}={v}" for k, v in sorted(d["params"].items())
                           if k != "p"),
        "dim_g": d["dims"]["g"],
        "dim_der": d["dims"]["der"],
        "dim_out": d["dims"]["out"],
        "out_series": " ".join(str(x) for x in d["out_derived_series"]),
        "solvable": d["solvable"],
        "derived_length": d["derived_length"],
        "simplicity": d["simplicity"],
        "generator_checks_passed":
            f'{sum(1 for _, ok in d["generator_checks"] if ok)}'
            f'/{len(d["generator_checks"])}',
        "complete": d["complete"],
        "seed": d["seed"],
        "code_version": d["code_version"],
    }
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerow(row)
    return buf.getvalue()


def _report_text(report) -> str:
    d = asdict(report)
    lines = [
        f"family: {d['family']}  params: {d['params']}",
        f"dim g = {d['dims']['g']}, dim Der = {d['dims']['der']}, "
        f"dim Out = {d['dims']['out']}",
        f"Out derived series: {tuple(d['out_derived_series'])}",
        f"solvable: {d['solvable']}"
        + (f" (length {d['derived_length']})" if d["solvable"] else ""),
        f"simplicity probe: {d['simplicity']}",
    ]
    if d["generator_checks"]:
        good = sum(1 for _, ok in d["generator_checks"] if ok)
        lines.append(f"generator checks: {good}/{len(d['generator_checks'])} passed")
        for name, ok in d["generator_checks"]:
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    if not d["complete"]:
        lines.append(f"INCOMPLETE: {d['error']}")
    lines.append(f"telemetry: {d['telemetry']}")
    return "\n".join(lines) + "\n"


def _analyze(L: LieAlgebraFp, family: str, params: dict, args):
    hook = None
    if family == "H2":
        hook = hamiltonian_generator_checks(params["r"], params["n"],
                                            params["p"])
    return zassenhaus_report(
        L, family=family, params=params, threads=args.threads,
        mem_limit=_parse_bytes(args.mem_limit), time_limit=args.time_limit,
        seed=args.seed, check_generators=hook, cache_dir=args.cache_dir)


def cmd_build(args) -> int:
    L, family, params = _build_from_args(args)
    violations = L.validate()
    status = "OK" if not violations else f"FAILED ({violations[0][:3]})"
    print(f"{L.name or family}: dim {L.dim}, validation {status}",
          file=sys.stderr)
    if violations:
        return EXIT_VALIDATION
    _emit(L.serialize(), args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.input:
        with open(args.input) as f:
            L = LieAlgebraFp.deserialize(f.read())
        family, params = "file", {"p": L.p, "name": L.name}
    else:
        L, family, params = _build_from_args(args)
    violations = L.validate()
    if violations:
        i, j, k, _ = violations[0]
        print(f"Jacobi violation at basis triple ({i}, {j}, {k})",
              file=sys.stderr)
        return EXIT_VALIDATION
    report = _analyze(L, family, params, args)
    text = {"json": _report_json, "csv": _report_csv,
            "text": _report_text}[args.format](report)
    _emit(text, args.output)
    return EXIT_OK if report.complete else EXIT_RESOURCE


def cmd_reproduce(args) -> int:
    rows = TABLES[args.table]
    failures = 0
    out_lines = []
    for row in rows:
        if row.get("large") and not args.include_large:
            continue
        if row["build"] is None:
            out_lines.append(f"SKIPPED  {row['name']} (documented, not computed)")
            continue
        spec = dict(row["build"])
        family = spec.pop("family")
        L, params = build_family(family, **spec)
        class _A:  # reuse analyze defaults with reproduce's resource flags
            pass
        a = _A()
        a.threads, a.seed = args.threads, args.seed
        a.mem_limit, a.time_limit = args.mem_limit, args.time_limit
        a.cache_dir = args.cache_dir
        report = _analyze(L, family, params, a)
        exp = row["expect"]
        cells = []
        ok = report.complete
        if "dim" in exp:
            cells.append(("dim", report.dims["g"], exp["dim"]))
        if "der" in exp:
            cells.append(("der", report.dims["der"], exp["der"]))
        if "out" in exp:
            cells.append(("out", report.dims["out"], exp["out"]))
        if "series" in exp:
            cells.append(("series", list(report.out_derived_series),
                          exp["series"]))
        if "solvable" in exp:
            cells.append(("solvable", report.solvable, exp["solvable"]))
        if "abelian" in exp:
            cells.append(("abelian", report.simplicity == "abelian",
                          exp["abelian"]))
        bad = [f"{name}: got {got}, expected {want}"
               for name, got, want in cells if got != want]
        ok = ok and not bad
        verdict = "PASS" if ok else "FAIL"
        detail = "" if ok else "  (" + "; ".join(bad or ["incomplete"]) + ")"
        out_lines.append(f"{verdict:8s} {row['name']}{detail}")
        if not ok:
            failures += 1
    text = "\n".join(out_lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if failures == 0 else 1


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="modlie",
        description="Exact Der/Out analysis of simple modular Lie algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct an algebra, emit text format")
    _add_common(b)
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="full Der/Inn/Out report")
    _add_common(a)
    a.add_argument("--input", default=None, help="read a serialized algebra")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reproduce", help="recompute a survey table")
    r.add_argument("table", choices=sorted(TABLES))
    _add_common(r)
    r.add_argument("--include-large",
                   action="store_true",
                   default=bool(_env("include_large")))
    r.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except FpError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
