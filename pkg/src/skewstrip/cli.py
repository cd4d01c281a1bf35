"""Command-line entry point.

Every subcommand prints one JSON document ``{command, params, payload,
status, timing}``; counts are emitted as decimal strings. Exit codes: 0 ok,
1 invalid input, 2 verification failure, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field

from . import __version__
from .algebra import extract_combo, parse_expr, reduce, series_expand
from .bijection import MotzkinPath, phi, phi_inv
from .enumeration import (
    DEFAULT_CAP,
    catalan,
    central_binomial,
    count_entry_restricted,
    count_grounded_level_paths,
    count_skew_bruteforce,
    count_strip,
    motzkin,
    random_path,
    strip_counts,
    x_count,
)
from .errors import (
    CalibrationUnstable,
    IntegralityError,
    ResourceLimitError,
    ValidationError,
    VerificationFailed,
)
from .identities import (
    VERIFY_SPAN,
    calibrate_prefix_classes,
    catalog,
    catalog_markdown,
    derive_entry_combo,
    derive_skew_combo,
    entry_shapes,
)
from .tableaux import Partition, YamanouchiWord, chi_inv, hook_count
from .walks import check_conjecture

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise UsageError(message)


@dataclass
class CommandResult:
    command: str
    params: dict
    payload: dict = field(default_factory=dict)
    status: str = "ok"
    timing: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "markdown"), default=None)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap on path length")
    common.add_argument("--memory-cap", type=int, default=None, metavar="BYTES")
    common.add_argument("--parallel", type=int, default=None, metavar="N")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", default=None, help="also write the result to this file")

    parser = _Parser(prog="skewstrip", description="Motzkin paths and three-rowed standard tableaux")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("map", parents=[common], help="path <-> word <-> tableau")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--path", help="steps over U, D, L")
    g.add_argument("--word", help="Yamanouchi word over 1, 2, 3")
    g.add_argument("--random", type=int, metavar="N", help="uniform random path of length N (uses --seed)")

    p = sub.add_parser("count", parents=[common], help="exact counts")
    p.add_argument("--kind", required=True, choices=("strip", "skew", "entry", "x", "motzkin", "grounded"))
    p.add_argument("--n", type=int, required=True, help="total number of entries / path length")
    p.add_argument("--k", type=int, default=3, help="row bound for --kind strip")
    p.add_argument("--mu", default=None, help="partition, e.g. 2,1,0")
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--cell", type=_pair, default=None, metavar="ROW,COL")
    p.add_argument("--value", type=int, default=None)

    p = sub.add_parser("seq", parents=[common], help="print a sequence, one value per line")
    p.add_argument("--name", required=True, choices=("motzkin", "strip", "grounded", "central-binomial", "catalan"))
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--k", type=int, default=3)

    p = sub.add_parser("algebra", parents=[common], help="reduce expressions in x and M")
    p.add_argument("action", choices=("reduce", "series"))
    p.add_argument("--expr", required=True)
    p.add_argument("--offset", type=int, default=0, help="extract [x^(n - offset)]")
    p.add_argument("--order", type=int, default=10)

    p = sub.add_parser("derive", parents=[common], help="skew-strip formula for a shape")
    p.add_argument("--mu", required=True)

    p = sub.add_parser("derive-entry", parents=[common], help="formula for a fixed entry in a cell")
    p.add_argument("--cell", type=_pair, required=True, metavar="ROW,COL")
    p.add_argument("--value", type=int, required=True)

    p = sub.add_parser("catalog", parents=[common], help="formulas for every mu with mu_1 <= MU_MAX")
    p.add_argument("--mu-max", type=int, required=True)

    p = sub.add_parser("conjecture", parents=[common], help="compare walk counts with strip counts")
    p.add_argument("--ell-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    return parser


def _map(args: argparse.Namespace) -> dict:
    if args.path is not None:
        path = MotzkinPath(args.path)
        word = phi(path)
    elif args.word is not None:
        word = YamanouchiWord.parse(args.word)
        path = phi_inv(word)
    else:
        if args.random < 0:
            raise ValidationError("--random needs a nonnegative length")
        path = random_path(args.random, random.Random(args.seed))
        word = phi(path)
    tableau = chi_inv(word)
    return {
        "path": str(path),
        "word": str(word),
        "tableau": [list(r) for r in tableau.rows],
        "shape": str(tableau.shape),
    }


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValidationError(f"--kind {args.kind} requires {', '.join(missing)}")


def _count(args: argparse.Namespace) -> dict:
    n = args.n
    if n < 0:
        raise ValidationError("--n must be nonnegative")
    kind = args.kind
    params: dict = {"kind": kind, "n": n}
    if kind == "motzkin":
        value = motzkin(n)
    elif kind == "grounded":
        value = count_grounded_level_paths(n)
    elif kind == "strip":
        params["k"] = args.k
        value = count_strip(args.k, n)
    elif kind == "skew":
        _need(args, "mu")
        mu = Partition.parse(args.mu)
        if n < mu.size:
            raise ValidationError(f"--n must be at least |mu| = {mu.size}")
        params.update(mu=str(mu), entries=n - mu.size)
        value = count_skew_bruteforce(mu, n - mu.size)
    elif kind == "x":
        _need(args, "i", "j")
        params.update(i=args.i, j=args.j)
        value = x_count(args.i, args.j, n)
    else:
        _need(args, "cell", "value")
        i, j = args.cell
        params.update(cell=[i, j], value=args.value)
        value = count_entry_restricted(i, j, args.value, n)
    return {"params": params, "value": str(value)}


def _seq(args: argparse.Namespace) -> dict:
    upto = args.upto
    if upto < 0:
        raise ValidationError("--upto must be nonnegative")
    if args.name == "motzkin":
        values = [motzkin(n) for n in range(upto + 1)]
    elif args.name == "strip":
        values = strip_counts(args.k, upto)
    elif args.name == "grounded":
        values = [count_grounded_level_paths(n) for n in range(upto + 1)]
    elif args.name == "central-binomial":
        values = [central_binomial(n) for n in range(upto + 1)]
    else:
        values = [catalan(n) for n in range(upto + 1)]
    return {"name": args.name, "values": [str(v) for v in values]}


def _algebra(args: argparse.Namespace) -> dict:
    expr = parse_expr(args.expr)
    reduced = reduce(expr)
    if args.action == "series":
        coeffs = series_expand(expr, args.order)
        return {"input": str(expr), "order": args.order, "coefficients": [str(c) for c in coeffs]}
    combo = extract_combo(reduced, args.offset)
    return {
        "input": str(expr),
        "reduced": str(reduced),
        "offset": args.offset,
        "combo": combo.to_dict(),
        "formula": str(combo),
    }


def _derive(args: argparse.Namespace) -> dict:
    mu = Partition.parse(args.mu)
    table = calibrate_prefix_classes(mu)
    combo = derive_skew_combo(mu)
    return {
        "mu": str(mu),
        "prefix_word": str(table.prefix_word),
        "classes": [
            {"height": j, "multiplicity": mult, "segments": list(table.segments[j])}
            for j, mult in table.classes.items()
        ],
        "calibration_sizes": list(table.calibration_sizes),
        "combo": combo.to_dict(),
        "formula": str(combo),
        "verified_n": [mu.size, mu.size + VERIFY_SPAN],
    }


def _derive_entry(args: argparse.Namespace) -> dict:
    i, j = args.cell
    m = args.value
    combo = derive_entry_combo(i, j, m)
    return {
        "cell": [i, j],
        "value": m,
        "shapes": [
            {"mu": str(mu), "weight": hook_count(mu.remove_cell(i))} for mu in entry_shapes(i, j, m)
        ],
        "combo": combo.to_dict(),
        "formula": str(combo),
        "verified_n": [m, m + VERIFY_SPAN],
    }


def _stringify_cells(report: dict) -> dict:
    for cell in report["cells"]:
        for key in ("odd_lhs", "odd_rhs", "even_lhs", "even_rhs"):
            if key in cell:
                cell[key] = str(cell[key])
    return report


_HANDLERS = {
    "map": _map,
    "count": _count,
    "seq": _seq,
    "algebra": _algebra,
    "derive": _derive,
    "derive-entry": _derive_entry,
}


def _params(args: argparse.Namespace) -> dict:
    skip = {"command", "format", "output"}
    out = {}
    for k, v in vars(args).items():
        if k in skip or v is None:
            continue
        out[k] = list(v) if isinstance(v, tuple) else v
    return out


def _execute(args: argparse.Namespace) -> tuple[CommandResult, int]:
    result = CommandResult(args.command, _params(args))
    code = EXIT_OK
    if args.command == "catalog":
        report = catalog(args.mu_max, parallel=args.parallel)
        result.payload = report
        if report["summary"]["failed"]:
            result.status, code = "partial", EXIT_VERIFY
    elif args.command == "conjecture":
        report = _stringify_cells(
            check_conjecture(args.ell_max, args.n_max, memory_cap=args.memory_cap, parallel=args.parallel)
        )
        result.payload = report
        summary = report["summary"]
        if summary["odd_mismatches"]:
            result.status, code = "error", EXIT_VERIFY
        elif summary["resource_limited"]:
            result.status, code = "partial", EXIT_RESOURCE
    else:
        result.payload = _HANDLERS[args.command](args)
    return result, code


def _render_text(result: CommandResult, fmt: str) -> str:
    p = result.payload
    cmd = result.command
    if result.status == "error" and "error" in p:
        return f"error: {p['message']}"
    if cmd == "seq":
        return "\n".join(p["values"])
    if cmd == "catalog" and fmt == "markdown":
        return catalog_markdown(p)
    if cmd == "map":
        rows = "\n".join(" ".join(map(str, r)) for r in p["tableau"])
        return f"path: {p['path']}\nword: {p['word']}\ntableau:\n{rows}"
    if cmd == "count":
        return p["value"]
    if cmd in ("derive", "derive-entry"):
        return p["formula"]
    if cmd == "algebra":
        return p.get("reduced") or " ".join(p["coefficients"])
    if cmd == "catalog":
        return "\n".join(f"({e['mu']}): {e.get('formula', e.get('error'))}" for e in p["entries"])
    if cmd == "conjecture":
        s = p["summary"]
        return (
            f"cells: {s['cells']}  by status: {s['by_status']}\n"
            f"odd mismatches: {s['odd_mismatches']}\npotential counterexamples: {s['even_findings']}"
        )
    return json.dumps(p, indent=2)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_INVALID
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    start = time.perf_counter()
    try:
        result, code = _execute(args)
    except ValidationError as exc:
        result, code = CommandResult(args.command, _params(args), status="error"), EXIT_INVALID
        result.payload = {"error": type(exc).__name__, "message": str(exc)}
    except (VerificationFailed, CalibrationUnstable, IntegralityError) as exc:
        result, code = CommandResult(args.command, _params(args), status="error"), EXIT_VERIFY
        result.payload = {"error": type(exc).__name__, "message": str(exc)}
    except ResourceLimitError as exc:
        result, code = CommandResult(args.command, _params(args), status="error"), EXIT_RESOURCE
        result.payload = {"error": type(exc).__name__, "message": str(exc)}
    result.timing = {"seconds": round(time.perf_counter() - start, 6)}
    if code != EXIT_OK:
        print(f"skewstrip {args.command}: {result.payload.get('message', result.status)}", file=sys.stderr)

    fmt = args.format or ("text" if args.command == "seq" else "json")
    text = result.to_json() if fmt == "json" else _render_text(result, fmt)
    print(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return code


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())
