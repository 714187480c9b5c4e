"""Command-line surface: inspect tensors, check points, classify grids, run
the full catalog verification, and validate Jacobi.

Every command is a thin adapter over the library; no computation logic lives
here.  Exit codes: 0 success, 1 verification discrepancies, 2 usage errors
(including invalid parameter points and bad flags).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .algebra import (
    InvalidAssignmentError,
    LieAlgebraSpec,
    load_spec_file,
    parse_assignment,
)
from .catalog import ALL_GROUPS, Catalog, CatalogError, load_catalog
from .geometry import (
    compute_tensors,
    matrix_json,
    render_matrix,
    render_vector,
)
from .poly import MissingVariableError, PolyParseError, parse_rational
from .soliton import SolitonKind, soliton_decide, wan_for_kind
from .verify import GridSpec, classify_grid, default_grid, generate_grid, verify_paper

_MATRIX_TENSORS = ("abar", "ric", "wan", "wan-tilde")
_TENSOR_CHOICES = (
    "connection",
    "levi-civita",
    "torsion",
    "curvature",
    "a-tensor",
    "wanas",
) + _MATRIX_TENSORS


class _CliError(Exception):
    """Invalid invocation detected after argparse (still exit code 2)."""


def _fail(message: str) -> None:
    raise _CliError(message)


def _load_algebra(args, catalog: Catalog | None) -> tuple[str, LieAlgebraSpec]:
    if getattr(args, "spec_file", None):
        if getattr(args, "group", None):
            _fail("--group and --spec-file are mutually exclusive")
        try:
            return ("spec-file", load_spec_file(args.spec_file))
        except (OSError, ValueError) as exc:
            _fail(f"could not load spec file {args.spec_file}: {exc}")
    if not getattr(args, "group", None):
        _fail("one of --group or --spec-file is required")
    entry = catalog.get_group(args.group)
    return (entry.id, entry.spec)


def _parse_at(spec: LieAlgebraSpec, text: str) -> dict[str, Fraction]:
    try:
        sigma = parse_assignment(text)
    except (ValueError, PolyParseError) as exc:
        _fail(f"invalid --at value: {exc}")
    try:
        violations = spec.validate_assignment(sigma)
    except MissingVariableError as exc:
        _fail(f"incomplete --at assignment: {exc}")
    extra = [v for v in sigma if v not in spec.variables()]
    if extra:
        _fail(f"--at assigns parameters the algebra does not use: {', '.join(extra)}")
    if violations:
        _fail("invalid parameter point: " + "; ".join(violations))
    return sigma


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


# -- tensors -------------------------------------------------------------------


def _cmd_tensors(args, catalog: Catalog) -> int:
    gid, spec = _load_algebra(args, catalog)
    sigma = _parse_at(spec, args.at) if args.at else None
    if sigma is not None:
        spec = spec.evaluate(sigma)

    base = "levi-civita" if args.tensor == "levi-civita" else args.connection_kind
    bundle = compute_tensors(spec, base)

    tensor = args.tensor
    lines: list[str] = []
    payload: dict = {"group": gid, "tensor": tensor, "connection_kind": base}
    if sigma is not None:
        payload["at"] = {v: str(x) for v, x in sorted(sigma.items())}

    if tensor in ("connection", "levi-civita"):
        table = bundle.levi_civita if tensor == "levi-civita" else bundle.connection
        name = "nabla" if tensor == "levi-civita" or base == "levi-civita" else "nabla0"
        entries = {}
        for i in range(3):
            for j in range(3):
                key = f"{name}[e{i + 1}]e{j + 1}"
                entries[key] = [str(p) for p in table[i][j]]
                lines.append(f"{key} = {render_vector(table[i][j])}")
        payload["entries"] = entries
    elif tensor == "torsion":
        entries = {}
        for key, (i, j) in (("e1,e2", (0, 1)), ("e1,e3", (0, 2)), ("e2,e3", (1, 2))):
            entries[f"T({key})"] = [str(p) for p in bundle.torsion[i][j]]
            lines.append(f"T({key}) = {render_vector(bundle.torsion[i][j])}")
        payload["entries"] = entries
    elif tensor in ("curvature", "a-tensor", "wanas"):
        table = {
            "curvature": bundle.curvature,
            "a-tensor": bundle.a_tensor,
            "wanas": bundle.wanas,
        }[tensor]
        label = {"curvature": "R", "a-tensor": "A", "wanas": "W"}[tensor]
        entries = {}
        for key, (i, j) in (("e1,e2", (0, 1)), ("e1,e3", (0, 2)), ("e2,e3", (1, 2))):
            for k in range(3):
                name = f"{label}({key})e{k + 1}"
                entries[name] = [str(p) for p in table[i][j][k]]
                lines.append(f"{name} = {render_vector(table[i][j][k])}")
        payload["entries"] = entries
    else:
        matrix = {
            "abar": bundle.abar,
            "ric": bundle.ric,
            "wan": bundle.wan,
            "wan-tilde": bundle.wan_tilde,
        }[tensor]
        payload["matrix"] = matrix_json(matrix)
        lines.append(f"{tensor} operator (row i = image of e_i):")
        lines.append(render_matrix(matrix))

    _emit(args, payload, "\n".join(lines))
    return 0


# -- check ---------------------------------------------------------------------


def _cmd_check(args, catalog: Catalog) -> int:
    gid, spec = _load_algebra(args, catalog)
    sigma = _parse_at(spec, args.at)
    kind = SolitonKind(args.kind)
    numeric = spec.evaluate(sigma)
    wan = wan_for_kind(numeric, kind)
    verdict = soliton_decide(numeric, kind, wan)
    payload = {
        "group": gid,
        "kind": kind.value,
        "at": {v: str(x) for v, x in sorted(sigma.items())},
        "verdict": verdict.to_json_dict(),
    }
    _emit(args, payload, f"{gid} ({kind.value} kind): {verdict.describe()}")
    return 0


# -- classify ------------------------------------------------------------------


def _parse_ladder(text: str) -> tuple[Fraction, ...]:
    try:
        values = tuple(parse_rational(x) for x in text.split(",") if x.strip())
    except PolyParseError as exc:
        _fail(f"invalid --grid-ladder: {exc}")
    if not values:
        _fail("--grid-ladder must list at least one rational")
    return values


def _cmd_classify(args, catalog: Catalog) -> int:
    entry = catalog.get_group(args.group)
    kind = SolitonKind(args.kind)
    if args.grid_ladder:
        ladder = _parse_ladder(args.grid_ladder)
        points = generate_grid(entry.spec, GridSpec(entry.id, ladder, max_points=args.max_points))
    else:
        _, points = default_grid(entry, min_points=args.min_points, max_points=args.max_points)
    claim = catalog.theorem_claim(entry.id, kind)
    report = classify_grid(entry, kind, points, claim)
    payload = report.to_json_dict()
    lines = [
        f"{entry.id} {kind.value} kind: {report.total} grid points, "
        f"{report.agreements} agree with the classification theorem"
    ]
    for rec in report.disagreements:
        lines.append(
            f"  DISAGREE at {rec.sigma_str()}: computed {rec.computed.describe()}; "
            f"expected {rec.expected.describe()}"
        )
    _emit(args, payload, "\n".join(lines))
    return 0 if report.total == report.agreements else 1


# -- verify-paper ----------------------------------------------------------------


def _cmd_verify_paper(args, catalog: Catalog) -> int:
    groups = None
    if args.group:
        groups = tuple(g.lower() for g in args.group)
        for g in groups:
            if g not in ALL_GROUPS:
                _fail(f"unknown group {g!r}; expected one of {', '.join(ALL_GROUPS)}")
    ladder = _parse_ladder(args.grid_ladder) if args.grid_ladder else None
    report = verify_paper(
        catalog,
        groups=groups,
        ladder=ladder,
        min_points=args.min_points,
        max_points=args.max_points,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    if getattr(args, "json", False):
        print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
    else:
        print(report.to_text(), end="")
    return 0 if report.ok else 1


# -- jacobi ----------------------------------------------------------------------


def _cmd_jacobi(args, catalog: Catalog) -> int:
    gid, spec = _load_algebra(args, catalog)
    sigma = _parse_at(spec, args.at) if args.at else None
    if sigma is not None:
        spec = spec.evaluate(sigma)
    residual = spec.jacobi_residual()
    payload = {
        "group": gid,
        "residual": [str(p) for p in residual],
        "holds": all(p.is_zero() for p in residual),
    }
    text = f"Jacobi residual: {render_vector(residual)}"
    if payload["holds"]:
        text += "\nJacobi identity holds."
    _emit(args, payload, text)
    return 0 if payload["holds"] else 1


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wanas",
        description=(
            "Exact canonical-connection tensor calculus and algebraic soliton "
            "classification for the three-dimensional Lorentzian Lie groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_group_args(p, spec_file=True):
        p.add_argument("--group", help="catalog group id (g1..g7, case-insensitive)")
        if spec_file:
            p.add_argument(
                "--spec-file",
                help="JSON algebra spec to use instead of a catalog group",
            )

    p = sub.add_parser("tensors", help="print a tensor table or operator matrix")
    add_group_args(p)
    p.add_argument("--tensor", required=True, choices=_TENSOR_CHOICES)
    p.add_argument(
        "--connection-kind",
        choices=("canonical", "levi-civita"),
        default="canonical",
        help="base connection for the pipeline (default canonical)",
    )
    p.add_argument("--at", help="evaluate at a point, e.g. alpha=1,beta=-1/2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_tensors)

    p = sub.add_parser("check", help="decide solitonhood at a parameter point")
    add_group_args(p)
    p.add_argument("--kind", required=True, choices=("first", "second"))
    p.add_argument("--at", required=True, help="parameter point, e.g. alpha=0,beta=0,gamma=1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("classify", help="classify a parameter grid against the theorem")
    p.add_argument("--group", required=True)
    p.add_argument("--kind", required=True, choices=("first", "second"))
    p.add_argument("--grid-ladder", help="comma-separated rationals overriding the ladder")
    p.add_argument("--min-points", type=int, default=200)
    p.add_argument("--max-points", type=int, default=5000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser(
        "verify-paper", help="recompute and verify every table, theorem, and grid"
    )
    p.add_argument(
        "--group",
        action="append",
        help="restrict to a group (repeatable); default all seven",
    )
    p.add_argument("--out", help="write the JSON report to this path")
    p.add_argument("--grid-ladder", help="comma-separated rationals overriding the ladder")
    p.add_argument("--min-points", type=int, default=200)
    p.add_argument("--max-points", type=int, default=5000)
    p.add_argument("--json", action="store_true", help="print the JSON report to stdout")
    p.set_defaults(func=_cmd_verify_paper)

    p = sub.add_parser("jacobi", help="print the Jacobi residual of an algebra")
    add_group_args(p)
    p.add_argument("--at", help="optional parameter point")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_jacobi)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        catalog = load_catalog()
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, catalog)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvalidAssignmentError as exc:
        print(f"error: invalid parameter point: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
