"""Command-line front end.

Exit status: 0 on success, 1 when an identity or a realization fails,
2 for usage and parse errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .dot import export_dot
from .edge_euler import is_admissible
from .exactalg import expand
from .formulas import ah_sum, check_3l_edges, check_ah, check_residues, weight1_balance
from .graph import GraphError, GraphOfWeights, parse, serialize, validate
from .models import FIXED_SURFACE_NAMES, MODEL_NAMES, any_model
from .realize import (Certificate, CertificateError, format_certificate, parse_certificate, realize,
                      replay)
from .surgery import SurgeryError, format_move, format_trace, reduce

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(q: Fraction) -> str:
    return str(q)


def _load_graph(path: str) -> GraphOfWeights:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    try:
        return parse(text)
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def check_report(g: GraphOfWeights) -> tuple[bool, list[str]]:
    """All identity checks on one graph; returns (all hold, output lines)."""
    report = validate(g)
    if not report.ok:
        return False, ["invalid graph of weights:", str(report)]
    ah = check_ah(g)
    res = check_residues(g)
    bal = weight1_balance(g)
    adm = is_admissible(g)
    lhs, rhs = check_3l_edges(g)
    failures = []
    if ah.constant is None:
        failures.append("AH sum is not constant")
    elif ah.constant != ah.signature:
        failures.append("AH constant differs from the signature")
    if res != (0, 0):
        failures.append("residues at z = 1 do not vanish")
    if bal != 0:
        failures.append("weight-1 balance is not 0")
    if not adm.admissible:
        failures.append("graph is not admissible")
    if lhs != rhs:
        failures.append("3L differs from sum n_e + sum n_j")
    const = "none (not constant)" if ah.constant is None else _fmt(ah.constant)
    three_l = (f"3L = Σn_e+Σn_j = {_fmt(lhs)}" if lhs == rhs
               else f"3L = {_fmt(lhs)} ≠ Σn_e+Σn_j = {_fmt(rhs)}")
    lines = [
        f"constant = {const}, signature = {ah.signature}, residues = ({_fmt(res[0])},{_fmt(res[1])}), "
        f"balance = {bal}, {three_l}",
        f"AH sum = {ah.ah_function}",
        f"p1 = 3*signature = {ah.sign_times_3}",
        str(adm),
    ]
    lines.append("all identities hold" if not failures else "FAILED: " + "; ".join(failures))
    return not failures, lines


def _check_file(path: str) -> tuple[str, int, list[str]]:
    try:
        g = _load_graph(path)
    except UsageError as exc:
        return path, EXIT_USAGE, [str(exc)]
    ok, lines = check_report(g)
    return path, EXIT_OK if ok else EXIT_FAIL, lines


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    report = validate(_load_graph(args.file))
    print(report)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_check(args) -> int:
    ok, lines = check_report(_load_graph(args.file))
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check_batch(args) -> int:
    if not Path(args.dir).is_dir():
        raise UsageError(f"{args.dir}: not a directory")
    files = sorted(str(p) for p in Path(args.dir).glob("*.gw1"))
    if args.jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_check_file, files))
    else:
        results = [_check_file(f) for f in files]
    worst = EXIT_OK
    for path, code, lines in results:
        status = {EXIT_OK: "ok", EXIT_FAIL: "FAIL", EXIT_USAGE: "ERROR"}[code]
        print(f"{status} {path}: {lines[-1]}")
        worst = max(worst, code)
    return worst


def cmd_reduce(args) -> int:
    g = _load_graph(args.file)
    try:
        trace = reduce(g)
    except (SurgeryError, GraphError) as exc:
        print(f"reduction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(serialize(trace.final))
    if args.trace:
        Path(args.trace).write_text(format_trace(trace), encoding="utf-8")
    tallies = ", ".join(f"#{k}={trace.tallies.get(k, 0)}" for k in ("P", "Q", "PQ"))
    print(f"# {len(trace.moves)} moves; {tallies}", file=sys.stderr)
    return EXIT_OK


def cmd_realize(args) -> int:
    result = realize(_load_graph(args.file))
    if not isinstance(result, Certificate):
        print(f"rejected: {result}")
        return EXIT_FAIL
    text = format_certificate(result)
    print(f"certified: base of {result.base} S(1,1) block(s), {len(result.moves)} move(s)")
    for m in result.moves:
        print(f"  {format_move(m)}")
    print()
    sys.stdout.write(text)
    if args.cert:
        Path(args.cert).write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_replay(args) -> int:
    try:
        text = Path(args.certfile).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{args.certfile}: {exc.strerror}") from exc
    try:
        cert = parse_certificate(text)
    except (CertificateError, GraphError) as exc:
        raise UsageError(f"{args.certfile}: {exc}") from exc
    try:
        g = replay(cert)
    except CertificateError as exc:
        print(f"certificate rejected: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(serialize(g))
    return EXIT_OK


def cmd_model(args) -> int:
    params = args.params
    if args.name in FIXED_SURFACE_NAMES:
        if params:
            raise UsageError(f"{args.name} takes no parameters")
        a = b = None
    else:
        if len(params) != 2:
            raise UsageError(f"{args.name} needs two parameters a b")
        a, b = params
    try:
        g = any_model(args.name, a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(serialize(g))
    return EXIT_OK


def cmd_expand(args) -> int:
    g = _load_graph(args.file)
    report = validate(g)
    if not report.ok:
        print(report, file=sys.stderr)
        return EXIT_FAIL
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    w = expand(ah_sum(g), center=args.center, min_order=args.from_, count=args.count)
    print(" ".join(_fmt(c) for c in w.coeffs))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    sys.stdout.write(export_dot(_load_graph(args.file)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weightgraph",
                                 description="Graphs of weights for circle actions on oriented 4-manifolds.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the graph-of-weights conditions")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="check the AH identity and the identities derived from it")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("check-batch", help="run check on every *.gw1 file in a directory")
    p.add_argument("dir")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check_batch)

    p = sub.add_parser("reduce", help="split off P, Q and P#Q blocks until every label is 1")
    p.add_argument("file")
    p.add_argument("--trace", metavar="OUT")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("realize", help="certify or reject realizability of a points-only graph")
    p.add_argument("file")
    p.add_argument("--cert", metavar="OUT")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("replay", help="rebuild the certified graph from a certificate")
    p.add_argument("certfile")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("model", help="print a model graph")
    p.add_argument("name", choices=MODEL_NAMES + FIXED_SURFACE_NAMES)
    p.add_argument("params", nargs="*", type=int)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("expand", help="Laurent coefficients of the AH sum")
    p.add_argument("file")
    p.add_argument("--center", type=int, choices=(0, 1), required=True)
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("export-dot", help="print the graph in Graphviz DOT")
    p.add_argument("file")
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
