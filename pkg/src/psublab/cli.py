"""Command-line entry point.

Exit codes: 0 success, 1 a mathematical violation was found, 2 an
operational error (bad input, missing path, cap exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .groupdef import ParseError, build, read_grp
from .lattice import enumerate_lattice, to_dot
from .numtheory import zsigmondy
from .perm import CapExceeded, default_order_cap
from .psubnormal import psubnormal_map
from .verify import Config, Report, exit_status, lattice_cap_for, run_corpus, run_one

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_positive, default=None, help="group order cap (default: $PSUBLAB_CAP or 5000)")
    common.add_argument("--lattice-cap", type=_positive, default=None, help="largest group order whose lattice is enumerated")
    common.add_argument("--format", choices=("json", "text"), default="text")

    p = argparse.ArgumentParser(prog="psublab", description="Subgroup lattices and P-subnormality checks for permutation groups.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="analyze one .grp file")
    a.add_argument("path")
    a.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", parents=[common], help="verify every .grp file in a directory")
    v.add_argument("path")
    v.add_argument("--jobs", type=_positive, default=1)
    v.add_argument("--seed", type=int, default=0)

    la = sub.add_parser("lattice", parents=[common], help="emit the Hasse diagram as DOT")
    la.add_argument("path")
    la.add_argument("--dot", default=None, help="write DOT here instead of stdout")

    z = sub.add_parser("zsigmondy", help="least Zsigmondy prime of a^n - 1")
    z.add_argument("a", type=int)
    z.add_argument("n", type=int)
    return p


def _config(args) -> Config:
    return Config(
        cap=args.cap if args.cap is not None else default_order_cap(),
        lattice_cap=args.lattice_cap,
        seed=getattr(args, "seed", 0),
        jobs=getattr(args, "jobs", 1),
    )


def _text_row(r: Report) -> str:
    if r.error is not None:
        return f"{r.group:<22} ERROR  {r.error}"
    th = r.theorem
    lem = " ".join(f"{k}={v}" for k, v in r.lemmas.items())
    verdict = "ok" if not r.violation else "VIOLATION"
    return (f"{r.group:<22} {r.order:>6}  lhs={str(th['lhs']):<5} rhs={str(th['rhs']):<5} "
            f"ss={str(r.flags['supersolvable']):<5} {lem}  {verdict}")


def _text_report(r: Report) -> str:
    if r.error is not None:
        return f"{r.group}: ERROR {r.error}"
    lines = [f"group     {r.group}", f"spec      {r.spec}", f"order     {r.order}", f"pi        {r.pi}"]
    lines += [f"  {k:<26} {v}" for k, v in r.flags.items()]
    th = r.theorem
    lines.append(f"theorem   lhs={th['lhs']} rhs={th['rhs']} equivalent={th['equivalent']}")
    for viol in th["violators"]:
        lines.append(f"  non-P-subnormal 2-maximal: node {viol['node']} order {viol['order']} (class of {viol['class_size']})")
    if th["first_non_supersolvable"]:
        lines.append(f"  non-supersolvable maximal: order {th['first_non_supersolvable']['order']}")
    for k, v in r.lemmas.items():
        lines.append(f"  {k:<5} {v:<5} {r.lemma_details[k]}")
    lat = r.lattice
    lines.append(f"lattice   {lat['subgroups']} subgroups, {lat['classes']} classes, "
                 f"{lat['normal']} normal, {lat['p_subnormal']} P-subnormal")
    return "\n".join(lines)


def _emit(reports: list[Report], fmt: str, single: bool):
    if fmt == "json":
        payload = reports[0].to_json() if single else [r.to_json() for r in reports]
        print(json.dumps(payload, indent=2, sort_keys=False))
    elif single:
        print(_text_report(reports[0]))
    else:
        for r in reports:
            print(_text_row(r))
        bad = sum(r.violation for r in reports)
        err = sum(r.error is not None for r in reports)
        print(f"{len(reports)} groups, {bad} with violations, {err} errors")


def _load(path: str):
    try:
        return read_grp(path)
    except ParseError as exc:
        print(f"{path}:{exc.line}:{exc.col}: {exc.msg}", file=sys.stderr)
    except OSError as exc:
        print(f"{path}: {exc.strerror or exc}", file=sys.stderr)
    return None


def cmd_analyze(args) -> int:
    entry = _load(args.path)
    if entry is None:
        return EXIT_ERROR
    report = run_one(entry, _config(args))
    _emit([report], args.format, single=True)
    return exit_status([report])


def cmd_verify(args) -> int:
    root = Path(args.path)
    if not root.is_dir():
        print(f"{root}: not a directory", file=sys.stderr)
        return EXIT_ERROR
    entries = []
    status = EXIT_OK
    for f in sorted(root.glob("*.grp")):
        e = _load(str(f))
        if e is None:
            status = EXIT_ERROR
        else:
            entries.append(e)
    reports = run_corpus(entries, _config(args))
    _emit(reports, args.format, single=False)
    code = exit_status(reports)
    return code if code == EXIT_VIOLATION else max(code, status)


def cmd_lattice(args) -> int:
    entry = _load(args.path)
    if entry is None:
        return EXIT_ERROR
    cfg = _config(args)
    try:
        L = enumerate_lattice(build(entry.spec, cap=cfg.cap), cap=lattice_cap_for(entry, cfg))
    except (CapExceeded, ValueError) as exc:
        print(f"{args.path}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    dot = to_dot(L, marked=[int(i) for i in psubnormal_map(L).marked.nonzero()[0]])
    if args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_zsigmondy(args) -> int:
    try:
        q = zsigmondy(args.a, args.n)
    except ValueError as exc:
        print(f"zsigmondy: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print("none (exception)" if q is None else q)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "lattice": cmd_lattice, "zsigmondy": cmd_zsigmondy}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
