"""Command line front end: ``pezzo <command> [options]``.

Exit codes: 0 success, 1 verification mismatch, 2 unknown surface id,
3 validation failure or a value that cannot be computed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from pezzo._errors import UnknownSurfaceError, ValidationError
from pezzo._graph import dual_graph
from pezzo._lct import Mode, format_fraction
from pezzo._propagation import STRATA
from pezzo.pezzo import TABLE_COLUMNS, Pezzo

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_UNKNOWN = 2
EXIT_INVALID = 3


def _render(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Plain aligned text table."""
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _csv(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
        logger.info("wrote %s", out)


# ------------------------------------------------------------------
# Commands
# ------------------------------------------------------------------


def cmd_catalog(pz: Pezzo, args: argparse.Namespace) -> int:
    entries = pz.entries(args.degree)
    if args.format == "json":
        _emit(_json([e.to_dict() for e in entries]), args.out)
        return EXIT_OK
    rows = [(e.id, e.degree, e.singularity.label) for e in entries]
    fmt = _csv if args.format == "csv" else _render
    _emit(fmt(("id", "degree", "sigma"), rows), args.out)
    return EXIT_OK


def cmd_show(pz: Pezzo, args: argparse.Namespace) -> int:
    model = pz.surface(args.surface)
    if args.format == "json":
        _emit(_json(model.to_dict()), args.out)
        return EXIT_OK
    rows = [(c.name, c.self_int, c.source) for c in model.curves]
    if args.format == "csv":
        _emit(_csv(("curve", "self_int", "source"), rows), args.out)
        return EXIT_OK
    header = f"{model.id}: degree {model.degree}, {model.singularity}, {len(model.minus_one_curves)} (-1)-curves\n"
    _emit(header + _render(("curve", "self_int", "source"), rows), args.out)
    return EXIT_OK


def cmd_enumerate(pz: Pezzo, args: argparse.Namespace) -> int:
    configs = pz.enumerate(args.surface, with_roots=args.with_roots)
    if args.format == "json":
        _emit(_json([c.to_dict() for c in configs]), args.out)
    elif args.format == "dot":
        _emit("".join(dual_graph(c).to_dot(f"{args.surface}-{k}") for k, c in enumerate(configs, start=1)), args.out)
    else:
        rows = [(k, " + ".join(f"{a}*{n}" for n, a in c.mult.items())) for k, c in enumerate(configs, start=1)]
        fmt = _csv if args.format == "csv" else _render
        _emit(fmt(("config", "divisor"), rows), args.out)
    return EXIT_OK


def cmd_lct(pz: Pezzo, args: argparse.Namespace) -> int:
    report = pz.lct(args.surface, args.mode)
    if args.format == "json":
        _emit(_json(report.to_dict()), args.out)
    elif args.format == "csv":
        w = report.witness
        _emit(_csv(("surface", "value", "config", "witness", "detail"),
                   [(report.surface, format_fraction(report.value), report.config, w.source, w.detail)]), args.out)
    else:
        _emit(format_fraction(report.value) + "\n", args.out)
    return EXIT_OK


def cmd_table(pz: Pezzo, args: argparse.Namespace) -> int:
    rows = pz.table(args.degree)
    if args.format == "json":
        _emit(_json([r.to_dict() for r in rows]), args.out)
    else:
        fmt = _csv if args.format == "csv" else _render
        _emit(fmt(TABLE_COLUMNS, [r.csv_row() for r in rows]), args.out)
    return EXIT_OK if all(r.match for r in rows) else EXIT_MISMATCH


def cmd_propagate(pz: Pezzo, args: argparse.Namespace) -> int:
    tables = pz.propagate(args.stratum, args.max_degree)
    if args.format == "json":
        doc = {str(d): [g.to_text() for g in gs] for d, gs in tables.items()}
        _emit(_json(doc), args.out)
    elif args.format == "dot":
        _emit("".join(g.to_dot(f"wt{args.stratum}-d{d}-{k}") for d, gs in tables.items()
                      for k, g in enumerate(gs, start=1)), args.out)
    else:
        rows = [(d, k, g.to_text()) for d, gs in tables.items() for k, g in enumerate(gs, start=1)]
        fmt = _csv if args.format == "csv" else _render
        _emit(fmt(("degree", "index", "graph"), rows), args.out)
    checked = pz.propagation_rows(args.stratum)
    missing = [r.row for r in checked if r.degree <= args.max_degree and not r.contained]
    for row_id in missing:
        logger.warning("table row %s not reproduced", row_id)
    return EXIT_MISMATCH if missing else EXIT_OK


def cmd_export(pz: Pezzo, args: argparse.Namespace) -> int:
    if args.surface:
        ids = [args.surface]
        pz.surface(args.surface)
    else:
        ids = [e.id for e in pz.entries(args.degree)]
    fmt = "json" if args.format == "table" else args.format
    _emit(pz.export(ids, fmt, with_roots=args.with_roots), args.out)
    return EXIT_OK


def cmd_verify(pz: Pezzo, args: argparse.Namespace) -> int:
    report = pz.verify()
    if args.format == "json":
        _emit(_json(report.to_dict()), args.out)
    else:
        fmt = _csv if args.format == "csv" else _render
        text = fmt(TABLE_COLUMNS, [r.csv_row() for r in report.lct_rows])
        if args.format != "csv":
            text += "\n" + _render(("stratum", "degree", "row", "contained"),
                                   [(r.stratum, r.degree, r.row, r.contained) for r in report.propagation_rows])
            for name, failures in sorted(report.validators.items()):
                text += f"\n{name}: {'ok' if not failures else f'{len(failures)} failure(s)'}\n"
                text += "".join(f"  {f}\n" for f in failures)
            text += f"\n{'PASSED' if report.passed else 'FAILED'}\n"
        _emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_MISMATCH


# ------------------------------------------------------------------
# Parser
# ------------------------------------------------------------------


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="pezzo", description="Anticanonical divisors and lct_1 of del Pezzo surfaces.")
    parser.add_argument("--catalog", type=Path, default=None, help="catalog JSON (default: $PEZZO_CATALOG or built-in)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json", "dot"), default="table")
    common.add_argument("--out", type=Path, default=None, help="write to this file instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list catalog entries")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("show", parents=[common], help="negative curves of a surface")
    p.add_argument("--surface", required=True)
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("enumerate", parents=[common], help="anticanonical configs on negative curves")
    p.add_argument("--surface", required=True)
    p.add_argument("--with-roots", action="store_true", help="only configs through a (-2)-curve")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("lct", parents=[common], help="lct_1 of a surface")
    p.add_argument("--surface", required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.DEFAULT_SNC.value)
    p.set_defaults(func=cmd_lct)

    p = sub.add_parser("table", parents=[common], help="tabulated vs computed lct_1 per catalog entry")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("propagate", parents=[common], help="dual graphs propagated from degree-1 seeds")
    p.add_argument("--stratum", type=int, choices=STRATA, required=True)
    p.add_argument("--max-degree", type=int, default=7)
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("export", parents=[common], help="export enumerated configs")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--surface")
    group.add_argument("--degree", type=int)
    p.add_argument("--with-roots", action="store_true")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", parents=[common], help="run every check and report")
    p.set_defaults(func=cmd_verify)

    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        pz = Pezzo(args.catalog)
        return args.func(pz, args)
    except UnknownSurfaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except ValueError as exc:
        # ValidationError included
        kind = "invalid" if isinstance(exc, ValidationError) else "error"
        print(f"{kind}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
