"""Command line front end.

Subcommands mirror the library: derive, family, limit, search, shoes.
Every invocation prints one table, either as CSV (12 significant digits,
human-facing) or as a single JSON envelope (repr-exact reals, lossless);
diagnostics go to the error stream.  Exit codes: 0 success, 2 input
validation, 3 numerical tolerance, 4 simulation truncation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .dist_core import Distribution, RngSeed, validate
from .errors import ExcessTruncation, InputError, ToleranceNotMet
from .family_opt import family_argmax, figure_family_curves, simplex_search
from .limit_laws import (DEFAULT_TOL, ell, ell_argmax, ell_shoes,
                         ell_shoes_diag_argmax)
from .pair_laws import derive_m1, derive_m2, discrepancy, tvd
from .shoes import (SHOES_EXACT_MAX_COLORS, ShoePair, shoes_m1,
                    shoes_m2_exact, shoes_m2_simulate, sup_one_demo)


@dataclass(frozen=True)
class OutputEnvelope:
    """Everything one invocation produced, in one machine-readable object."""

    command: str
    parameters: dict
    results: dict
    provenance: dict


def _envelope(command: str, parameters: dict, columns: list, rows: list,
              seed: int | None = None, tolerances: dict | None = None) -> OutputEnvelope:
    return OutputEnvelope(
        command=command,
        parameters=parameters,
        results={"columns": columns, "rows": rows},
        provenance={"seed": seed, "tolerances": tolerances or {},
                    "version": __version__},
    )


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    if value is None:
        return ""
    return str(value)


def csv_from_results(results: dict) -> str:
    """Render the results table of an envelope as CSV.

    Shared by the CSV emitter and by JSON consumers re-rendering, so the
    two routes are byte-identical by construction.  Cells never contain
    commas or quotes, so no quoting dialect is needed.
    """
    lines = [",".join(results["columns"])]
    for row in results["rows"]:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def render(envelope: OutputEnvelope, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(asdict(envelope), indent=2) + "\n"
    return csv_from_results(envelope.results)


def _parse_inline(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise InputError(f"unparsable probability list {text!r}") from exc


def _parse_dist(inline: str | None, path: str | None) -> Distribution:
    if (inline is None) == (path is None):
        raise InputError("give exactly one of an inline list or a file")
    if inline is not None:
        return validate(_parse_inline(inline))
    with open(path, encoding="utf-8") as fh:
        values = [line.strip() for line in fh]
    try:
        return validate(float(v) for v in values if v != "")
    except ValueError as exc:
        raise InputError(f"unparsable probability file {path!r}") from exc


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise InputError(f"unparsable integer list {text!r}") from exc


def cmd_derive(args: argparse.Namespace) -> OutputEnvelope:
    d = _parse_dist(args.dist, args.dist_file)
    columns = ["quantity", "color", "value"]
    rows: list[list] = []
    if args.method in ("m1", "both"):
        rows += [["m1", i, v] for i, v in enumerate(derive_m1(d).probs)]
    if args.method in ("m2", "both"):
        rows += [["m2", i, v] for i, v in enumerate(derive_m2(d).probs)]
    if args.method == "both":
        rows.append(["discrepancy", None, discrepancy(d)])
    return _envelope("derive", {"dist": list(d.probs), "method": args.method},
                     columns, rows)


def cmd_family(args: argparse.Namespace) -> OutputEnvelope:
    params = {"n": args.n, "action": args.action}
    if args.action == "max":
        opt = family_argmax(args.n)
        columns = ["n", "x", "value"]
        rows = [[args.n, opt.argmax, opt.value]]
    else:
        params["samples"] = args.samples
        columns = ["n", "u", "value"]
        rows = [[r.n, r.u, r.value]
                for r in figure_family_curves(args.n, args.samples)]
    return _envelope("family", params, columns, rows)


def _limit_socks(args) -> tuple[dict, list, list]:
    if args.argmax:
        opt = ell_argmax(args.tol)
        return {"mode": "argmax"}, ["argmax", "value", "evaluations"], \
            [[opt.argmax, opt.value, opt.evaluations]]
    if args.c is not None:
        r = ell(args.c, args.tol)
        return {"mode": "point", "c": args.c}, \
            ["c", "value", "abs_error_estimate", "subdivisions"], \
            [[args.c, r.value, r.abs_error_estimate, r.subdivisions]]
    rows = []
    for i in range(args.points):
        c = args.lo + (args.hi - args.lo) * i / (args.points - 1)
        rows.append([c, ell(c, args.tol).value])
    return {"mode": "curve", "lo": args.lo, "hi": args.hi,
            "points": args.points}, ["c", "value"], rows


def _limit_shoes_diag(args) -> tuple[dict, list, list]:
    if args.argmax:
        opt = ell_shoes_diag_argmax(args.tol)
        return {"mode": "argmax"}, ["argmax", "value", "evaluations"], \
            [[opt.argmax, opt.value, opt.evaluations]]
    if args.a is not None:
        r = ell_shoes(args.a, args.a, args.tol)
        return {"mode": "point", "a": args.a}, \
            ["a", "value", "abs_error_estimate", "subdivisions"], \
            [[args.a, r.value, r.abs_error_estimate, r.subdivisions]]
    rows = []
    for i in range(args.points):
        a = args.lo + (args.hi - args.lo) * i / (args.points - 1)
        rows.append([a, ell_shoes(a, a, args.tol).value])
    return {"mode": "curve", "lo": args.lo, "hi": args.hi,
            "points": args.points}, ["a", "value"], rows


def _limit_shoes_grid(args) -> tuple[dict, list, list]:
    if args.a is not None and args.b is not None:
        r = ell_shoes(args.a, args.b, args.tol)
        return {"mode": "point", "a": args.a, "b": args.b}, \
            ["a", "b", "value", "abs_error_estimate", "subdivisions"], \
            [[args.a, args.b, r.value, r.abs_error_estimate, r.subdivisions]]
    ticks = [args.lo + (args.hi - args.lo) * i / (args.points - 1)
             for i in range(args.points)]
    rows = [[a, b, ell_shoes(a, b, args.tol).value]
            for a in ticks for b in ticks]
    return {"mode": "grid", "lo": args.lo, "hi": args.hi,
            "points": args.points}, ["a", "b", "value"], rows


def cmd_limit(args: argparse.Namespace) -> OutputEnvelope:
    if args.kind == "socks":
        if args.a is not None or args.b is not None:
            raise InputError("--a/--b apply to the shoes kinds; use --c")
        params, columns, rows = _limit_socks(args)
    elif args.kind == "shoes-diag":
        if args.c is not None or args.b is not None:
            raise InputError("shoes-diag takes --a alone (or --argmax/--curve)")
        params, columns, rows = _limit_shoes_diag(args)
    else:
        if args.argmax or args.c is not None:
            raise InputError("shoes-grid takes --a with --b, or --curve")
        if (args.a is None) != (args.b is None):
            raise InputError("give both --a and --b for a grid point")
        params, columns, rows = _limit_shoes_grid(args)
    params = {"kind": args.kind, **params}
    return _envelope("limit", params, columns, rows,
                     tolerances={"tol": args.tol})


def cmd_search(args: argparse.Namespace) -> OutputEnvelope:
    best, value, family_gap = simplex_search(
        args.m, args.points, RngSeed(args.seed), threads=args.threads)
    columns = ["quantity", "color", "value"]
    rows: list[list] = [["best_p", i, v] for i, v in enumerate(best.probs)]
    rows.append(["value", None, value])
    rows.append(["family_gap", None, family_gap])
    return _envelope("search", {"m": args.m, "points": args.points},
                     columns, rows, seed=args.seed)


def cmd_shoes_derive(args: argparse.Namespace) -> OutputEnvelope:
    sp = ShoePair(_parse_dist(args.left, args.left_file),
                  _parse_dist(args.right, args.right_file))
    params = {"left": list(sp.left.probs), "right": list(sp.right.probs)}
    columns = ["quantity", "color", "value", "error"]
    m1_law = shoes_m1(sp)
    rows: list[list] = [["m1", i, v, 0.0] for i, v in enumerate(m1_law.probs)]
    if args.exact or len(sp) <= SHOES_EXACT_MAX_COLORS:
        params["mode"] = "exact"
        seed = None
        m2_law = shoes_m2_exact(sp)
        rows += [["m2", i, v, 0.0] for i, v in enumerate(m2_law.probs)]
        distance, error = tvd(m1_law, m2_law), 0.0
    else:
        params["mode"] = "simulate"
        params["trials"] = args.trials
        seed = args.seed
        report = shoes_m2_simulate(sp, args.trials, RngSeed(args.seed),
                                   args.max_steps, threads=args.threads)
        rows += [["m2", i, v, s] for i, (v, s) in
                 enumerate(zip(report.estimated_probs, report.std_errors))]
        distance = tvd(m1_law, report)
        error = 0.5 * math.sqrt(math.fsum(s * s for s in report.std_errors))
    rows.append(["discrepancy", None, distance, error])
    return _envelope("shoes derive", params, columns, rows, seed=seed)


def cmd_shoes_sup_demo(args: argparse.Namespace) -> OutputEnvelope:
    sizes = _parse_int_list(args.n)
    rows = [[r.n, r.value, r.error]
            for r in sup_one_demo(sizes, args.trials, RngSeed(args.seed),
                                  threads=args.threads)]
    return _envelope("shoes sup-demo",
                     {"n": sizes, "trials": args.trials},
                     ["n", "value", "error"], rows, seed=args.seed)


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _add_threads(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: PAIRLAW_THREADS or all CPUs)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairlaw",
        description="Pair-color laws of matching experiments: exact "
                    "distributions, discrepancy extrema, limit constants.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="both pair laws of one distribution")
    p.add_argument("--dist", help="comma-separated probabilities")
    p.add_argument("--dist-file", help="file with one probability per line")
    p.add_argument("--method", choices=["m1", "m2", "both"], default="both")
    _add_format(p)
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("family", help="one-heavy-color family extremum or curve")
    p.add_argument("--n", type=int, required=True, help="tail color count")
    p.add_argument("--action", choices=["max", "curve"], default="max")
    p.add_argument("--samples", type=int, default=129,
                   help="samples per curve (curve action)")
    _add_format(p)
    p.set_defaults(handler=cmd_family)

    p = sub.add_parser("limit", help="limit curves and their constants")
    p.add_argument("--kind", choices=["socks", "shoes-diag", "shoes-grid"],
                   required=True)
    p.add_argument("--argmax", action="store_true", help="locate the maximum")
    p.add_argument("--curve", action="store_true", help="tabulate the curve")
    p.add_argument("--c", type=float, help="evaluation point (socks)")
    p.add_argument("--a", type=float, help="evaluation point (shoes)")
    p.add_argument("--b", type=float, help="second point (shoes-grid)")
    p.add_argument("--lo", type=float, default=0.1, help="curve start")
    p.add_argument("--hi", type=float, default=10.0, help="curve end")
    p.add_argument("--points", type=int, default=64, help="curve samples")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _add_format(p)
    p.set_defaults(handler=cmd_limit)

    p = sub.add_parser("search", help="random search over the sorted simplex")
    p.add_argument("--m", type=int, required=True, help="color count")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_threads(p)
    _add_format(p)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("shoes", help="alternating left/right collection")
    shoes_sub = p.add_subparsers(dest="shoes_command", required=True)

    q = shoes_sub.add_parser("derive", help="laws and discrepancy of a pair")
    q.add_argument("--left", help="comma-separated left probabilities")
    q.add_argument("--left-file")
    q.add_argument("--right", help="comma-separated right probabilities")
    q.add_argument("--right-file")
    q.add_argument("--exact", action="store_true",
                   help="require the exact solve (fails above its size cap)")
    q.add_argument("--trials", type=int, default=1_000_000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--max-steps", type=int, default=None)
    _add_threads(q)
    _add_format(q)
    q.set_defaults(handler=cmd_shoes_derive)

    q = shoes_sub.add_parser("sup-demo",
                             help="witness-family discrepancy ladder")
    q.add_argument("--n", required=True, help="comma-separated family sizes")
    q.add_argument("--trials", type=int, default=1_000_000)
    q.add_argument("--seed", type=int, default=0)
    _add_threads(q)
    _add_format(q)
    q.set_defaults(handler=cmd_shoes_sup_demo)

    return parser


_MAIN_PARSER: argparse.ArgumentParser | None = None


def main(argv: list[str] | None = None) -> int:
    # parsing never mutates the parser, so repeat in-process calls share one
    global _MAIN_PARSER
    if _MAIN_PARSER is None:
        _MAIN_PARSER = build_parser()
    args = _MAIN_PARSER.parse_args(argv)
    try:
        envelope = args.handler(args)
    except InputError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ToleranceNotMet as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except ExcessTruncation as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 4
    sys.stdout.write(render(envelope, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
