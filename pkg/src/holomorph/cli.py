"""``holo`` command line: verify, f, scan, simple, matrix-lemma, export.

Exit status: 0 all checks pass, 1 a mathematical violation, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .errors import BudgetExceeded, HolomorphError

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
    if not pairs and text.strip():
        raise UsageError(f"cannot parse --expect {text!r}; use e.g. \"(2,3),(3,3)\"")
    return sorted((int(a), int(b)) for a, b in pairs)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    from .harness import VerifyOptions, default_corpus, dump_report, load_group, read_manifest, run_verify

    sources: list[str] = []
    if args.corpus:
        sources += read_manifest(args.corpus).entries
    sources += args.group or []
    if args.default_corpus or not sources:
        sources += default_corpus()
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    # validate every input before any work is scheduled
    labels: dict[str, str] = {}
    for s in sources:
        G = load_group(s)
        if G.label in labels and labels[G.label] != s:
            raise UsageError(f"duplicate label {G.label!r} ({labels[G.label]} and {s})")
        labels[G.label] = s
    sources = list(dict.fromkeys(sources))
    options = VerifyOptions(seed=args.seed, samples=args.samples, timings=args.timings)
    report = run_verify(sources, options, jobs=args.jobs)
    dump_report(report, args.report)
    summ = report["summary"]
    for r in report["records"]:
        bad = sorted(k for k, v in r["checks"].items() if v is False)
        status = "ok" if not bad else "FAIL " + ",".join(bad)
        print(f"{r['label']:<40} order={r['order']:<4} F={r['f_value']:<4} mao={r['mao']:<4} maffo={r['maffo']:<4} {status}")
    print(f"groups checked: {summ['groups_checked']}, violations: {summ['violations']}")
    return EXIT_OK if summ["violations"] == 0 else EXIT_VIOLATION


def cmd_f(args) -> int:
    from .affine import frak_f
    from .autgrp import automorphism_group
    from .harness import load_group

    G = load_group(args.group)
    res = frak_f(G, automorphism_group(G), class_reps=args.class_reps)
    ok = res.value <= G.order
    _emit({"label": G.label, "order": G.order, "f_value": res.value, "witness": res.witness_list, "theorem_ok": ok})
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_scan(args) -> int:
    from .lie import load_dp_table, scan_psl2, scan_psl_d

    dp = load_dp_table(args.dp_table) if args.dp_table else None
    if args.q_max < 1:
        raise UsageError("--q-max must be positive")
    if args.family == "psl2":
        res = scan_psl2(args.q_max, args.f_min, include_small=args.include_small, dp_table=dp)
    else:
        if args.d_max is None:
            raise UsageError("psld needs --d-max")
        if args.d_max < args.d_min or args.d_min < 3:
            raise UsageError("need 3 <= --d-min <= --d-max")
        res = scan_psl_d(args.d_max, args.q_max, args.d_min, dp_table=dp)
    out = res.to_dict()
    if args.json:
        Path(args.json).write_text(json.dumps(out["results"], indent=2) + "\n")
    _emit(out)
    if args.expect is not None:
        expected = _parse_pairs(args.expect)
        match = [tuple(e) for e in res.exceptions] == expected
        print(f"exceptions {res.exceptions} {'match' if match else 'differ from'} expected {expected}", file=sys.stderr)
        return EXIT_OK if match else EXIT_VIOLATION
    return EXIT_OK


SIMPLE_CASES = {"psl2_8": 8, "psl2_27": 27, "psl2_125": 125, "psl3_4": None}


def cmd_simple(args) -> int:
    from .simple import verify_aut_orders_divide, verify_psl3_4

    if args.case == "psl2_125" and not args.slow:
        raise UsageError("psl2_125 enumerates about 5.9 million automorphisms; rerun with --slow")
    if args.case == "psl3_4":
        if not args.stretch:
            raise UsageError("psl3_4 is a stretch case; rerun with --stretch")
        rec = verify_psl3_4(stretch=True)
    else:
        rec = verify_aut_orders_divide(SIMPLE_CASES[args.case], slow=args.slow, jobs=args.jobs)
    _emit(rec.to_dict())
    return EXIT_OK if rec.passed else EXIT_VIOLATION


def cmd_matrix_lemma(args) -> int:
    from .lie import matrix_order_p_part, matrix_order_p_part_exhaustive

    if args.exhaustive:
        rec = matrix_order_p_part_exhaustive(args.p, args.d)
    else:
        rec = matrix_order_p_part(args.p, args.d, args.samples, args.seed)
    _emit(rec.to_dict())
    return EXIT_OK if rec.passed else EXIT_VIOLATION


def cmd_export(args) -> int:
    from .autgrp import automorphism_group
    from .harness import load_group
    from .io import format_pgrp, write_ctab

    G = load_group(args.group)
    if args.format == "ctab":
        write_ctab(G, args.out)
        return EXIT_OK
    if args.aut:
        A = automorphism_group(G)
        text = format_pgrp(f"Aut({G.label})", G.order, A.generators)
    else:
        if G.perms is None:
            raise UsageError(f"{G.label} has no permutation representation; export with --aut or as ctab")
        from .groups import generating_sequence

        text = format_pgrp(G.label, G.degree, [G.perms[g] for g in generating_sequence(G)])
    Path(args.out).write_text(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="holo", description="Affine maps, automorphisms and order bounds of finite groups.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run every check over a corpus and write a JSON report")
    v.add_argument("--corpus", help="JSON manifest with an 'entries' list")
    v.add_argument("--group", action="append", help="group source (repeatable): builtin:..., ctab:PATH, pgrp:PATH")
    v.add_argument("--default-corpus", action="store_true", help="include the built-in corpus")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--report", default="report.json")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=2000, help="random (x, alpha) pairs for groups above order 24")
    v.add_argument("--timings", action="store_true", help="add runtime_ms to each record (breaks byte-identity)")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("f", help="compute F(G) for one group")
    f.add_argument("group")
    f.add_argument("--class-reps", action="store_true", help="scan one automorphism per conjugacy class")
    f.set_defaults(func=cmd_f)

    s = sub.add_parser("scan", help="PSL inequality scan")
    s.add_argument("family", choices=["psl2", "psld"])
    s.add_argument("--q-max", type=int, required=True)
    s.add_argument("--f-min", type=int, default=3)
    s.add_argument("--d-min", type=int, default=3)
    s.add_argument("--d-max", type=int)
    s.add_argument("--include-small", action="store_true", help="psl2: also list f = 1, 2 (informational)")
    s.add_argument("--dp-table", help="override file with 'PSL d q d_p' lines")
    s.add_argument("--expect", help='expected exceptions, e.g. "(2,3),(3,3),(5,3)"')
    s.add_argument("--json", help="write the result array to this file")
    s.set_defaults(func=cmd_scan)

    si = sub.add_parser("simple", help="check that automorphism orders divide |S|")
    si.add_argument("--case", required=True, choices=sorted(SIMPLE_CASES))
    si.add_argument("--slow", action="store_true")
    si.add_argument("--stretch", action="store_true")
    si.add_argument("--jobs", type=int, default=1)
    si.set_defaults(func=cmd_simple)

    m = sub.add_parser("matrix-lemma", help="p-part of matrix orders in GL_d(p)")
    m.add_argument("--p", type=int, required=True)
    m.add_argument("--d", type=int, required=True)
    m.add_argument("--samples", type=int, default=10_000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--exhaustive", action="store_true", help="enumerate all of GL_d(p) instead of sampling")
    m.set_defaults(func=cmd_matrix_lemma)

    e = sub.add_parser("export", help="write a group (or its Aut) as .pgrp or .ctab")
    e.add_argument("group")
    e.add_argument("--out", required=True)
    e.add_argument("--format", choices=["pgrp", "ctab"], default="pgrp")
    e.add_argument("--aut", action="store_true", help="export Aut(G) acting on the elements of G")
    e.set_defaults(func=cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    import logging

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, BudgetExceeded) as exc:
        print(f"holo: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HolomorphError, ValueError, OSError) as exc:
        print(f"holo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
