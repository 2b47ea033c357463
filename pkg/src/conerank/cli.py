"""Command-line interface: rank, classify, quantile, cones, plot, serve.

Exit codes: 0 success, 1 problem parse/validation failure, 2 unsupported
dimension for plotting, 3 bad flags.  The CONERANK_TOLERANCE environment
variable overrides the numeric tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis
from .cones import DEFAULT_TOLERANCE
from .distribution import rank_alternatives
from .model import DecisionProblem, ProblemFormatError, load_problem
from .plot import render_svg
from .quantiles import lower_v_quantile, quantile_region_2d, upper_v_quantile

EXIT_OK = 0
EXIT_PROBLEM = 1
EXIT_DIMENSION = 2
EXIT_FLAGS = 3


class _FlagError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _FlagError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="conerank", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, needs_p=False):
        p.add_argument("--problem", required=True, help="problem .json file or CSV directory")
        p.add_argument("--judges", help="comma-separated judge ids to keep")
        p.add_argument("--output", choices=["table", "json", "svg"], default="table")
        if needs_p:
            p.add_argument("--p", type=float, required=True, help="rank level in (0, 1)")

    common(sub.add_parser("rank", help="per-alternative rank values"))
    common(sub.add_parser("classify", help="four-way quantile verdicts"), needs_p=True)
    common(sub.add_parser("quantile", help="per-direction thresholds and memberships"), needs_p=True)
    common(sub.add_parser("cones", help="importance generators and acceptance facets"))

    plot = sub.add_parser("plot", help="SVG figure of points, cones, and regions")
    plot.add_argument("--problem", required=True)
    plot.add_argument("--judges", help="comma-separated judge ids to keep")
    plot.add_argument("--p", type=float, required=True)
    plot.add_argument("--bbox", required=True, help="x0,y0,x1,y1")
    plot.add_argument("--output", choices=["table", "json", "svg"], default="svg")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--static", help="directory of workbench assets to serve at /")

    return parser


def _tolerance() -> float:
    raw = os.environ.get("CONERANK_TOLERANCE")
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        return float(raw)
    except ValueError:
        raise _FlagError(f"CONERANK_TOLERANCE must be a float, got {raw!r}") from None


def _judge_ids(args) -> list[str] | None:
    if not getattr(args, "judges", None):
        return None
    ids = [j.strip() for j in args.judges.split(",") if j.strip()]
    if not ids:
        raise _FlagError("--judges must list at least one judge id")
    return ids


def _load(args) -> DecisionProblem:
    return load_problem(args.problem)


def _check_p(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise _FlagError(f"--p must lie in (0, 1), got {p}")
    return p


def _fmt_vec(vec) -> str:
    return "(" + ", ".join(f"{float(x):.5f}" for x in vec) + ")"


def _run_rank(args, out) -> int:
    problem = _load(args)
    tol = _tolerance()
    importance, _ = analysis.panel_cones(problem.panel, _judge_ids(args), tol=tol)
    result = rank_alternatives(
        problem.evaluations, importance, problem.alternative_ids(), tol=tol
    )
    if args.output == "json":
        json.dump(analysis.rank_payload(importance, result), out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(f"{'alternative':<14}{'rank':>8}{'value':>10}  witness\n")
    for aid in result.sorted_ids():
        rank = result.ranks[aid]
        out.write(
            f"{aid:<14}{str(rank):>8}{rank.decimal:>10.4f}  "
            f"{_fmt_vec(result.witnesses[aid].direction)}\n"
        )
    return EXIT_OK


def _run_classify(args, out) -> int:
    problem = _load(args)
    payload = analysis.classify_payload(
        problem, _check_p(args.p), _judge_ids(args), tol=_tolerance()
    )
    if args.output == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(f"p = {payload['p']}\n")
    out.write(f"{'alternative':<14}{'label':<16}{'in_lower':<10}{'in_upper':<10}\n")
    for v in payload["verdicts"]:
        out.write(
            f"{v['alternative']:<14}{v['label']:<16}"
            f"{'yes' if v['in_lower'] else 'no':<10}{'yes' if v['in_upper'] else 'no':<10}\n"
        )
    return EXIT_OK


def _run_quantile(args, out) -> int:
    problem = _load(args)
    tol = _tolerance()
    p = _check_p(args.p)
    importance, _ = analysis.panel_cones(problem.panel, _judge_ids(args), tol=tol)
    rows = []
    for ray in importance.generators:
        lower = lower_v_quantile(problem.evaluations, ray, p)
        upper = upper_v_quantile(problem.evaluations, ray, p)
        rows.append(
            {
                "direction": [float(x) for x in ray],
                "lower_threshold": lower.threshold,
                "upper_threshold": upper.threshold,
            }
        )
    payload = analysis.classify_payload(problem, p, _judge_ids(args), tol=tol)
    if args.output == "json":
        json.dump({"p": p, "thresholds": rows, "verdicts": payload["verdicts"]}, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(f"p = {p}\n")
    for row in rows:
        out.write(
            f"direction {_fmt_vec(row['direction'])}: "
            f"lower >= {row['lower_threshold']:.5f}, upper <= {row['upper_threshold']:.5f}\n"
        )
    out.write(f"{'alternative':<14}{'in_lower':<10}{'in_upper':<10}\n")
    for v in payload["verdicts"]:
        out.write(
            f"{v['alternative']:<14}"
            f"{'yes' if v['in_lower'] else 'no':<10}{'yes' if v['in_upper'] else 'no':<10}\n"
        )
    return EXIT_OK


def _run_cones(args, out) -> int:
    problem = _load(args)
    payload = analysis.cones_payload(problem, _judge_ids(args), tol=_tolerance())
    if args.output == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write("importance cone generators:\n")
    for g in payload["importance_cone"]["generators"]:
        out.write(f"  {_fmt_vec(g)}\n")
    out.write("acceptance cone facet normals:\n")
    for f in payload["acceptance_cone"]["facet_normals"]:
        out.write(f"  {_fmt_vec(f)}\n")
    return EXIT_OK


def _run_plot(args, out) -> int:
    if args.output != "svg":
        raise _FlagError("plot only supports --output svg")
    try:
        parts = [float(x) for x in args.bbox.split(",")]
    except ValueError:
        raise _FlagError(f"--bbox must be x0,y0,x1,y1, got {args.bbox!r}") from None
    if len(parts) != 4 or not (parts[0] < parts[2] and parts[1] < parts[3]):
        raise _FlagError("--bbox must be x0,y0,x1,y1 with x0<x1 and y0<y1")
    problem = _load(args)
    if problem.d != 2:
        sys.stderr.write("plot: geometry is available for 2 criteria only\n")
        return EXIT_DIMENSION
    tol = _tolerance()
    p = _check_p(args.p)
    bbox = tuple(parts)
    importance, acceptance = analysis.panel_cones(problem.panel, _judge_ids(args), tol=tol)
    region = quantile_region_2d(problem.evaluations, importance, p, bbox, tol=tol)
    points = [
        (a.id, (float(col[0]), float(col[1])))
        for a, col in zip(problem.alternatives, problem.evaluations.columns)
    ]
    out.write(render_svg(points, importance, acceptance, region, bbox, title=f"p = {p}"))
    return EXIT_OK


def _run_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb == "serve":
            return _run_serve(args)
        runner = {
            "rank": _run_rank,
            "classify": _run_classify,
            "quantile": _run_quantile,
            "cones": _run_cones,
            "plot": _run_plot,
        }[args.verb]
        return runner(args, out)
    except _FlagError as exc:
        sys.stderr.write(f"conerank: {exc}\n")
        return EXIT_FLAGS
    except (ProblemFormatError, FileNotFoundError, KeyError, ValueError) as exc:
        sys.stderr.write(f"conerank: {exc}\n")
        return EXIT_PROBLEM


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
