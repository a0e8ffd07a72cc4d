"""Command-line front end: `qcspec <command> [flags]`.

Thin client over the report layer.  By default commands run in process;
with ``--server URL`` they are forwarded to a running qcspec service and the
response is rendered identically.  Exit codes: 0 success, 2 bad input,
3 theorem-inequality violation, 4 solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import report
from .analysis import PolarGrid
from .errors import ConvergenceError, InvalidParameterError

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_VIOLATION = 3
EXIT_NO_CONVERGENCE = 4


def _parse_grid(text: str) -> PolarGrid:
    try:
        radial, angular = (int(part) for part in text.lower().split("x"))
    except ValueError as exc:
        raise InvalidParameterError(f"grid must look like 512x512, got {text!r}") from exc
    return PolarGrid(radial, angular)


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=["identity", "ellipse", "rose-petal", "epicycloid"])
    p.add_argument("--a", type=float, default=None, help="ellipse / rose-petal parameter")
    p.add_argument("--A", type=float, default=None, help="epicycloid coefficient A")
    p.add_argument("--B", type=float, default=None, help="epicycloid coefficient B")
    p.add_argument("--n", type=int, default=None, help="epicycloid exponent n >= 2")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--server", default=None, help="base URL of a running qcspec service")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="closed-form bound report for one family")
    _add_family_flags(p)
    p.add_argument("--grid", type=_parse_grid, default=PolarGrid(512, 512), help="polar grid, e.g. 512x512")
    _add_output_flags(p)

    p = sub.add_parser("verify", help="FEM check of the theorem inequalities")
    _add_family_flags(p)
    p.add_argument("--rings", type=int, default=report.DEFAULT_RINGS)
    p.add_argument("--tol", type=float, default=report.DEFAULT_TOL)
    _add_output_flags(p)

    p = sub.add_parser("paper-table", help="reproduce every worked example in one table")
    p.add_argument("--rings", type=int, default=report.DEFAULT_RINGS)
    p.add_argument("--petal-rings", type=int, default=report.ROSE_PETAL_RINGS)
    p.add_argument("--tol", type=float, default=report.DEFAULT_TOL)
    _add_output_flags(p)

    p = sub.add_parser("sweep", help="bound report rows over a parameter range")
    _add_family_flags(p)
    p.add_argument("--param", default="a", help="parameter to sweep (a, A, or B)")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--with-fem", action="store_true", help="also run the FEM solver per row")
    p.add_argument("--rings", type=int, default=report.DEFAULT_RINGS)
    p.add_argument("--tol", type=float, default=report.DEFAULT_TOL)
    _add_output_flags(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _post(server: str, path: str, payload: dict) -> dict:
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", {})
        except ValueError:
            detail = {}
        message = detail.get("message", response.text) if isinstance(detail, dict) else str(detail)
        if response.status_code in (400, 422):
            raise InvalidParameterError(message)
        if isinstance(detail, dict) and detail.get("error") == "no-convergence":
            raise ConvergenceError(message)
        raise RuntimeError(f"server error {response.status_code}: {message}")
    return response.json()


def _family_payload(args) -> dict:
    return {"family": args.family, "a": args.a, "A": args.A, "B": args.B, "n": args.n}


def _run_analyze(args) -> dict:
    if args.server:
        payload = _family_payload(args)
        payload.update(grid_radial=args.grid.radial, grid_angular=args.grid.angular)
        return _post(args.server, "/analyze", payload)
    family = report.make_family(args.family, a=args.a, A=args.A, B=args.B, n=args.n)
    return report.round_floats(report.analyze_report(family, args.grid))


def _run_verify(args) -> dict:
    if args.server:
        payload = _family_payload(args)
        payload.update(rings=args.rings, tol=args.tol)
        return _post(args.server, "/verify", payload)
    family = report.make_family(args.family, a=args.a, A=args.A, B=args.B, n=args.n)
    return report.round_floats(report.verify_report(family, rings=args.rings, tol=args.tol))


def _run_paper_table(args) -> dict:
    if args.server:
        payload = {"rings": args.rings, "rose_petal_rings": args.petal_rings, "tol": args.tol}
        return _post(args.server, "/paper-table", payload)
    return report.round_floats(
        report.paper_table(rings=args.rings, rose_petal_rings=args.petal_rings, tol=args.tol)
    )


def _run_sweep(args) -> dict:
    if args.server:
        payload = _family_payload(args)
        payload.update(
            param=args.param,
            start=args.start,
            stop=args.stop,
            step=args.step,
            with_fem=args.with_fem,
            rings=args.rings,
            tol=args.tol,
        )
        return _post(args.server, "/sweep", payload)
    base = {k: v for k, v in (("a", args.a), ("A", args.A), ("B", args.B), ("n", args.n)) if v is not None}
    base.pop(args.param, None)
    return report.round_floats(
        report.sweep(
            args.family,
            args.param,
            args.start,
            args.stop,
            args.step,
            with_fem=args.with_fem,
            rings=args.rings,
            tol=args.tol,
            base_params=base,
        )
    )


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _flatten(record: dict, prefix: str = "") -> dict:
    flat = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        else:
            flat[name] = value
    return flat


def _rows_of(payload: dict) -> tuple[list[str], list[dict]] | None:
    if "rows" in payload:
        columns = payload.get("columns")
        rows = payload["rows"]
        if columns is None:
            columns = list(rows[0].keys()) if rows else []
        return list(columns), rows
    return None

def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    table = _rows_of(payload)
    if fmt == "csv":
        if table:
            columns, rows = table
            lines = [",".join(columns)]
            lines += [",".join(_fmt(row.get(c)) for c in columns) for row in rows]
        else:
            flat = _flatten(payload)
            lines = [",".join(flat.keys()), ",".join(_fmt(v) for v in flat.values())]
        return "\n".join(lines) + "\n"
    if fmt == "md":
        if table:
            columns, rows = table
            lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
            lines += ["| " + " | ".join(_fmt(row.get(c)) for c in columns) + " |" for row in rows]
        else:
            flat = _flatten(payload)
            lines = ["| key | value |", "|---|---|"]
            lines += [f"| {k} | {_fmt(v)} |" for k, v in flat.items()]
        return "\n".join(lines) + "\n"
    raise InvalidParameterError(f"unknown format {fmt!r}")


def _violation_exit(command: str, payload: dict) -> int:
    if command == "verify" and not payload.get("ok", True):
        return EXIT_VIOLATION
    if command in ("paper-table", "sweep"):
        for row in payload.get("rows", []):
            if row.get("status", "ok") != "ok":
                continue
            for key in ("margin", "fem_margin", "gap_margin"):
                value = row.get(key)
                if value is not None and value < 0:
                    return EXIT_VIOLATION
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    runners = {
        "analyze": _run_analyze,
        "verify": _run_verify,
        "paper-table": _run_paper_table,
        "sweep": _run_sweep,
    }
    try:
        payload = runners[args.command](args)
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return _violation_exit(args.command, payload)


if __name__ == "__main__":
    sys.exit(main())
