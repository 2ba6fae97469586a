"""Command-line front end.

Subcommands: expand, structures, chern, autgroup, obstruct, scan.  Lens
spaces are written P/Q; coefficient lists are comma-separated and may be
given negated (--coeffs=-2,-4,-2 is normalized to 2,4,2).  Values that
start with a minus sign must use the --flag=value form.

Output is line-oriented and byte-reproducible: json emits one object per
line with a fixed key order and no floating point, csv emits a header
(unless --quiet) and comma-separated rows with bracketed
semicolon-separated lists and row-major flattened matrices, table emits
aligned columns.  --strict turns any capped/indeterminate result into
exit code 2; invalid input exits 1.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import IO, Sequence

from .contact import RotationVector, chern_residue, classify_structure, enumerate_structures
from .contfrac import LensSpace, expand
from .errors import InvalidInputError, InvalidNormError, ResultTooLargeError
from .lattice import DEFAULT_GROUP_CAP, IntersectionLattice, orthogonal_group
from .obstruct import Record, evaluate_one, scan

_FIELDS = (
    "p",
    "q",
    "coeffs",
    "rotation",
    "tight_class",
    "chern",
    "verdict",
    "reason",
    "witness",
    "group_order",
    "complete",
)

_WIDTHS = {
    "p": 5,
    "q": 5,
    "coeffs": 14,
    "rotation": 14,
    "tight_class": 11,
    "chern": 6,
    "verdict": 15,
    "reason": 23,
    "witness": 30,
    "group_order": 11,
    "complete": 8,
    "index": 5,
    "trace": 6,
    "matrix": 30,
}


@dataclass(frozen=True)
class OutputRecord:
    """Serialization form of one obstruction record; field order fixed."""

    p: int
    q: int
    coeffs: tuple[int, ...]
    rotation: tuple[int, ...] | None
    tight_class: str | None
    chern: int | None
    verdict: str
    reason: str | None
    witness: tuple[int, ...] | None
    group_order: int | None
    complete: bool

    @staticmethod
    def from_record(rec: Record) -> "OutputRecord":
        if rec.error is not None:
            verdict = "Error"
            reason: str | None = rec.error
            witness = None
            group_order = None
            complete = True
        else:
            v = rec.verdict
            verdict = v.outcome.value
            reason = v.reason.value if v.reason is not None else None
            witness = v.witness.flatten() if v.witness is not None else None
            group_order = v.group_order
            complete = v.complete
        return OutputRecord(
            p=rec.p,
            q=rec.q,
            coeffs=tuple(rec.coeffs),
            rotation=tuple(rec.rotation.r) if rec.rotation is not None else None,
            tight_class=rec.tight_class.value if rec.tight_class is not None else None,
            chern=rec.chern,
            verdict=verdict,
            reason=reason,
            witness=witness,
            group_order=group_order,
            complete=complete,
        )


def _bracketed(values, sep: str) -> str:
    return "[" + sep.join(str(v) for v in values) + "]"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        # Keep the row structure intact whatever the text contains.
        return value.replace(",", ";").replace("\n", " ")
    return str(value)


def _table_cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _nested_rows(flat: tuple[int, ...]) -> str:
    n = math.isqrt(len(flat))
    rows = [flat[i * n : (i + 1) * n] for i in range(n)]
    return "[" + ",".join(_bracketed(r, ",") for r in rows) + "]"


def _row_bytes(cells: dict[str, str], fields: Sequence[str], fmt: str) -> bytes:
    if fmt == "csv":
        return (",".join(cells[f] for f in fields) + "\n").encode()
    line = "  ".join(cells[f].ljust(_WIDTHS.get(f, 10)) for f in fields).rstrip()
    return (line + "\n").encode()


def _header_bytes(fields: Sequence[str], fmt: str) -> bytes:
    if fmt == "csv":
        return (",".join(fields) + "\n").encode()
    line = "  ".join(f.ljust(_WIDTHS.get(f, 10)) for f in fields).rstrip()
    return (line + "\n").encode()


def emit_record(record: OutputRecord, format: str) -> bytes:
    """One output line for one record; identical input, identical bytes."""
    if format == "json":
        obj = {
            "p": record.p,
            "q": record.q,
            "coeffs": list(record.coeffs),
            "rotation": list(record.rotation) if record.rotation is not None else None,
            "tight_class": record.tight_class,
            "chern": record.chern,
            "verdict": record.verdict,
            "reason": record.reason,
            "witness": list(record.witness) if record.witness is not None else None,
            "group_order": record.group_order,
            "complete": record.complete,
        }
        return (json.dumps(obj, separators=(",", ":")) + "\n").encode()
    if format == "csv":
        cells = {
            "p": str(record.p),
            "q": str(record.q),
            "coeffs": _bracketed(record.coeffs, ";"),
            "rotation": _bracketed(record.rotation, ";") if record.rotation is not None else "",
            "tight_class": _csv_cell(record.tight_class),
            "chern": _csv_cell(record.chern),
            "verdict": _csv_cell(record.verdict),
            "reason": _csv_cell(record.reason),
            "witness": ";".join(str(x) for x in record.witness)
            if record.witness is not None
            else "",
            "group_order": _csv_cell(record.group_order),
            "complete": _csv_cell(record.complete),
        }
        return _row_bytes(cells, _FIELDS, "csv")
    if format == "table":
        cells = {
            "p": str(record.p),
            "q": str(record.q),
            "coeffs": _bracketed(record.coeffs, ","),
            "rotation": _bracketed(record.rotation, ",") if record.rotation is not None else "-",
            "tight_class": _table_cell(record.tight_class),
            "chern": _table_cell(record.chern),
            "verdict": record.verdict,
            "reason": _table_cell(record.reason),
            "witness": _nested_rows(record.witness) if record.witness is not None else "-",
            "group_order": _table_cell(record.group_order),
            "complete": _table_cell(record.complete),
        }
        return _row_bytes(cells, _FIELDS, "table")
    raise InvalidInputError(f"unknown format {format!r}")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclass
class _Ctx:
    fmt: str
    cap: int
    quiet: bool
    strict: bool
    out: IO[bytes]


def _common_flags() -> argparse.ArgumentParser:
    par = _Parser(add_help=False)
    par.add_argument(
        "--format", choices=("json", "csv", "table"), default=argparse.SUPPRESS,
        help="output format (default table)",
    )
    par.add_argument(
        "--cap", type=int, default=argparse.SUPPRESS,
        help="bound on enumeration size and search work (default 1000000)",
    )
    par.add_argument(
        "--quiet", action="store_true", default=argparse.SUPPRESS,
        help="suppress header lines",
    )
    par.add_argument(
        "--strict", action="store_true", default=argparse.SUPPRESS,
        help="exit 2 when any result is capped/indeterminate",
    )
    return par


def _build_parser() -> _Parser:
    common = _common_flags()
    parser = _Parser(
        prog="lensmilnor",
        description="Milnor-fiber boundary obstructions for tight lens spaces.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_expand = sub.add_parser("expand", parents=[common], help="continued fraction of P/Q")
    p_expand.add_argument("pq", metavar="P/Q")
    p_expand.set_defaults(func=_cmd_expand)

    p_struct = sub.add_parser(
        "structures", parents=[common], help="list the tight structures on L(P,Q)"
    )
    p_struct.add_argument("pq", metavar="P/Q")
    p_struct.set_defaults(func=_cmd_structures)

    p_chern = sub.add_parser(
        "chern", parents=[common], help="Chern-class residue of one structure"
    )
    p_chern.add_argument("pq", metavar="P/Q")
    p_chern.add_argument("--rot", required=True, help="rotation numbers r1,...,rn")
    p_chern.set_defaults(func=_cmd_chern)

    p_aut = sub.add_parser(
        "autgroup", parents=[common], help="integral isometry group of the lattice"
    )
    p_aut.add_argument("pq", metavar="P/Q", nargs="?")
    p_aut.add_argument("--coeffs", help="diagonal a1,...,an (negatives normalized)")
    p_aut.set_defaults(func=_cmd_autgroup)

    p_obs = sub.add_parser(
        "obstruct", parents=[common], help="obstruction verdicts for L(P,Q)"
    )
    p_obs.add_argument("pq", metavar="P/Q")
    p_obs.add_argument("--rot", help="restrict to one rotation vector r1,...,rn")
    p_obs.add_argument(
        "--theorem-only", action="store_true",
        help="skip the isometry-group fallback",
    )
    p_obs.set_defaults(func=_cmd_obstruct)

    p_scan = sub.add_parser(
        "scan", parents=[common], help="verdicts for all (p,q) up to a bound"
    )
    p_scan.add_argument("--pmax", type=int, required=True)
    p_scan.add_argument("--rot-zero-only", action="store_true")
    p_scan.add_argument("--all-even-only", action="store_true")
    p_scan.set_defaults(func=_cmd_scan)

    return parser


def _parse_pq(text: str) -> tuple[int, int]:
    parts = text.split("/")
    if len(parts) != 2:
        raise InvalidInputError(f"expected P/Q, got {text!r}")
    try:
        p, q = int(parts[0]), int(parts[1])
    except ValueError:
        raise InvalidInputError(f"expected integers in P/Q, got {text!r}") from None
    space = LensSpace(p, q)
    return space.p, space.q


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InvalidInputError(
            f"{what} must be comma-separated integers, got {text!r}"
        ) from None


def _normalize_coeffs(values: tuple[int, ...]) -> tuple[int, ...]:
    """Accept an all-negative coefficient list and flip its sign."""
    if values and all(v < 0 for v in values):
        values = tuple(-v for v in values)
    if not values or any(v < 2 for v in values):
        raise InvalidInputError(
            f"coefficients must be all >= 2 or all <= -2, got {list(values)}"
        )
    return values


def _cmd_expand(ns, ctx: _Ctx) -> bool:
    p, q = _parse_pq(ns.pq)
    exp = expand(p, q)
    if ctx.fmt == "json":
        obj = {"p": p, "q": q, "coeffs": list(exp)}
        ctx.out.write((json.dumps(obj, separators=(",", ":")) + "\n").encode())
    elif ctx.fmt == "csv":
        if not ctx.quiet:
            ctx.out.write(_header_bytes(("p", "q", "coeffs"), "csv"))
        cells = {"p": str(p), "q": str(q), "coeffs": _bracketed(exp, ";")}
        ctx.out.write(_row_bytes(cells, ("p", "q", "coeffs"), "csv"))
    else:
        ctx.out.write((_bracketed(exp, ",") + "\n").encode())
    return False


_STRUCT_FIELDS = ("p", "q", "coeffs", "rotation", "tight_class", "chern")


def _emit_structure_line(ctx: _Ctx, p: int, q: int, rot: RotationVector) -> None:
    residue = chern_residue(rot)
    tclass = classify_structure(rot)
    if ctx.fmt == "json":
        obj = {
            "p": p,
            "q": q,
            "coeffs": list(rot.coeffs),
            "rotation": list(rot.r),
            "tight_class": tclass.value,
            "chern": residue.value,
        }
        ctx.out.write((json.dumps(obj, separators=(",", ":")) + "\n").encode())
        return
    sep = ";" if ctx.fmt == "csv" else ","
    cells = {
        "p": str(p),
        "q": str(q),
        "coeffs": _bracketed(rot.coeffs, sep),
        "rotation": _bracketed(rot.r, sep),
        "tight_class": tclass.value,
        "chern": str(residue.value),
    }
    ctx.out.write(_row_bytes(cells, _STRUCT_FIELDS, ctx.fmt))


def _cmd_structures(ns, ctx: _Ctx) -> bool:
    p, q = _parse_pq(ns.pq)
    exp = expand(p, q)
    rots = enumerate_structures(exp, cap=ctx.cap)
    if ctx.fmt in ("csv", "table") and not ctx.quiet:
        ctx.out.write(_header_bytes(_STRUCT_FIELDS, ctx.fmt))
    for rot in rots:
        _emit_structure_line(ctx, p, q, rot)
    return False


def _cmd_chern(ns, ctx: _Ctx) -> bool:
    p, q = _parse_pq(ns.pq)
    exp = expand(p, q)
    rot = RotationVector(exp, _parse_int_list(ns.rot, "--rot"))
    if ctx.fmt in ("csv", "table") and not ctx.quiet:
        ctx.out.write(_header_bytes(_STRUCT_FIELDS, ctx.fmt))
    _emit_structure_line(ctx, p, q, rot)
    return False


def _cmd_autgroup(ns, ctx: _Ctx) -> bool:
    if ns.pq is None and ns.coeffs is None:
        raise InvalidInputError("autgroup needs P/Q or --coeffs")
    diag = None
    if ns.coeffs is not None:
        diag = _normalize_coeffs(_parse_int_list(ns.coeffs, "--coeffs"))
    if ns.pq is not None:
        p, q = _parse_pq(ns.pq)
        expanded = tuple(expand(p, q))
        if diag is not None and diag != expanded:
            raise InvalidInputError(
                f"{p}/{q} expands to {list(expanded)}, which disagrees "
                f"with --coeffs {list(diag)}"
            )
        diag = expanded
    lattice = IntersectionLattice(diag)
    group = orthogonal_group(lattice, cap=ctx.cap)

    if ctx.fmt == "json":
        obj = {
            "diag": list(diag),
            "order": group.order,
            "complete": group.complete,
            "elements": [list(e.flatten()) for e in group],
        }
        ctx.out.write((json.dumps(obj, separators=(",", ":")) + "\n").encode())
    else:
        fields = ("index", "trace", "matrix")
        if not ctx.quiet:
            if ctx.fmt == "table":
                summary = (
                    f"# diag {_bracketed(diag, ',')} order {group.order} "
                    f"complete {'true' if group.complete else 'false'}\n"
                )
                ctx.out.write(summary.encode())
            ctx.out.write(_header_bytes(fields, ctx.fmt))
        for i, e in enumerate(group):
            cells = {
                "index": str(i),
                "trace": str(e.trace),
                "matrix": ";".join(str(x) for x in e.flatten())
                if ctx.fmt == "csv"
                else _nested_rows(e.flatten()),
            }
            ctx.out.write(_row_bytes(cells, fields, ctx.fmt))
    return not group.complete


def _emit_output_records(ctx: _Ctx, records) -> bool:
    indeterminate = False
    header_done = False
    for rec in records:
        out = OutputRecord.from_record(rec)
        if not out.complete:
            indeterminate = True
        if ctx.fmt in ("csv", "table") and not ctx.quiet and not header_done:
            ctx.out.write(_header_bytes(_FIELDS, ctx.fmt))
        header_done = True
        ctx.out.write(emit_record(out, ctx.fmt))
    return indeterminate


def _cmd_obstruct(ns, ctx: _Ctx) -> bool:
    p, q = _parse_pq(ns.pq)
    exp = expand(p, q)
    if ns.rot is not None:
        rots = [RotationVector(exp, _parse_int_list(ns.rot, "--rot"))]
    else:
        rots = enumerate_structures(exp, cap=ctx.cap)
    records = (
        evaluate_one(p, q, rot, theorem_only=ns.theorem_only, cap=ctx.cap) for rot in rots
    )
    return _emit_output_records(ctx, records)


def _cmd_scan(ns, ctx: _Ctx) -> bool:
    records = scan(
        ns.pmax,
        rot_zero_only=ns.rot_zero_only,
        all_even_only=ns.all_even_only,
        cap=ctx.cap,
    )
    return _emit_output_records(ctx, records)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, execute, return the exit code (0 ok, 1 bad input,
    2 indeterminate under --strict)."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    ctx = _Ctx(
        fmt=getattr(ns, "format", "table"),
        cap=getattr(ns, "cap", DEFAULT_GROUP_CAP),
        quiet=getattr(ns, "quiet", False),
        strict=getattr(ns, "strict", False),
        out=sys.stdout.buffer,
    )
    if ctx.cap < 1:
        print("error: --cap must be positive", file=sys.stderr)
        return 1
    try:
        indeterminate = ns.func(ns, ctx)
        ctx.out.flush()
    except (InvalidInputError, InvalidNormError, ResultTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if ctx.strict and indeterminate:
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
