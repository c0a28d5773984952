"""Command-line entry point: embed, complete, project and bench."""

import argparse
import logging
import sys
from dataclasses import asdict
from typing import Dict, List, Optional

import numpy as np

from .config import EMBEDDING_MODELS, OBJECTIVES, SUCCESS_DELTA
from .conic_solver import SolverConfig
from .embedding import SdrOptions, hdgp, project_to_loid_with_multiplier, sdr_complete
from .errors import HdgpError, InputError
from .etl import (
    load_distances,
    load_ordinal,
    load_points,
    load_run_config,
    save_embedding,
    save_hdm,
    save_points,
    save_trials,
)
from .experiments import (
    ordinal_benchmark,
    ordinal_consistency_curve,
    solved_hdm,
    sparsity_success_curve,
    summaries_to_frame,
    tree_benchmark,
)
from .gramian import Hdm, ObservationMask, relative_error

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NOT_CONVERGED = 2

NOT_CONVERGED_WARNING = "solver did not converge; best iterate written"

SOLVER_KEYS = ("max_iters", "rho", "relaxation", "tol_primal", "tol_dual")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _list_of(kind):
    def parse(text):
        try:
            values = [kind(v) for v in text.split(",") if v.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid list: {text!r}")
        if not values:
            raise argparse.ArgumentTypeError("list must not be empty")
        return values

    return parse


# --- Parser ---


def _add_relaxation_flags(p):
    p.add_argument("--ordinal", help="JSON array of [i1, i2, i3, i4] comparisons")
    p.add_argument("--n", type=int, help="number of points (ordinal-only input)")
    p.add_argument("--objective", choices=sorted(OBJECTIVES.values()))
    p.add_argument("--eps1", type=float, help="fidelity budget")
    p.add_argument("--eps2", type=float, help="ordinal margin")
    p.add_argument("--min-distance", type=float, dest="min_distance")
    p.add_argument("--max-violations-pct", type=float, dest="max_violations_pct")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="JSON file of run overrides")


def _add_bench_output(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="summary CSV")
    p.add_argument("--html", help="also write a plotly chart of the summary")
    p.add_argument("--jobs", type=int, default=1, help="joblib workers")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hdgp", description="Hyperbolic distance geometry toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    embed = commands.add_parser("embed", help="embed points from distances/comparisons")
    embed.add_argument("--distances", help="long-form i,j,value CSV")
    embed.add_argument("--dim", type=int, required=True)
    embed.add_argument("--out", required=True, help="embedding JSON")
    embed.add_argument(
        "--model",
        choices=sorted(EMBEDDING_MODELS.values()),
        default=EMBEDDING_MODELS["POINCARE"],
    )
    embed.add_argument("--svg", help="render the Poincare disk (dim <= 2)")
    _add_relaxation_flags(embed)

    complete = commands.add_parser("complete", help="complete an HDM without factoring")
    complete.add_argument("--distances", help="long-form i,j,value CSV")
    complete.add_argument("--dim", type=int, required=True)
    complete.add_argument("--out-hdm", required=True, dest="out_hdm")
    _add_relaxation_flags(complete)

    project = commands.add_parser("project", help="project R^{d+1} points onto the 'Loid")
    project.add_argument("--in", required=True, dest="in_path")
    project.add_argument("--out", required=True)

    bench = commands.add_parser("bench", help="synthetic benchmarks")
    benches = bench.add_subparsers(dest="bench", required=True)

    sparsity = benches.add_parser("sparsity", help="success probability vs density")
    sparsity.add_argument("--n", type=int, required=True)
    sparsity.add_argument("--dim", type=int, required=True)
    sparsity.add_argument("--grid", type=_list_of(float), required=True)
    sparsity.add_argument("--trials", type=int, default=20)
    sparsity.add_argument("--delta", type=float, default=SUCCESS_DELTA)
    sparsity.add_argument("--spread", type=float, default=1.0)
    _add_bench_output(sparsity)

    tree = benches.add_parser("tree", help="hyperbolic vs Euclidean tree embedding")
    tree.add_argument("--n-grid", type=_list_of(int), required=True, dest="n_grid")
    tree.add_argument("--trials", type=int, default=20)
    _add_bench_output(tree)

    ordinal = benches.add_parser("ordinal", help="ordinal-only embedding accuracy")
    ordinal.add_argument("--n", type=int, required=True)
    ordinal.add_argument("--dim-grid", type=_list_of(int), required=True, dest="dim_grid")
    ordinal.add_argument("--k", type=int, required=True)
    ordinal.add_argument("--zeta-grid", type=_list_of(float), required=True, dest="zeta_grid")
    ordinal.add_argument("--trials", type=int, default=1)
    ordinal.add_argument("--corruption", type=float, default=0.0)
    ordinal.add_argument("--true-dim", type=int, default=2, dest="true_dim")
    _add_bench_output(ordinal)

    consistency = benches.add_parser(
        "consistency", help="spread of ordinal-only estimates vs ordinal density"
    )
    consistency.add_argument("--n", type=int, required=True)
    consistency.add_argument("--dim", type=int, required=True)
    consistency.add_argument("--grid", type=_list_of(float), required=True)
    consistency.add_argument("--sets", type=int, default=5)
    consistency.add_argument("--trials", type=int, default=5)
    consistency.add_argument("--limit", type=int)
    _add_bench_output(consistency)

    return parser


# --- Helpers ---


def _invocation(argv: List[str], args) -> Dict[str, object]:
    return {"argv": ["hdgp", *argv], "seed": getattr(args, "seed", None)}


def _options(args) -> SdrOptions:
    """Relaxation options: defaults, then --config, then explicit flags."""
    overrides = load_run_config(args.config) if args.config else {}
    for key in ("objective", "eps1", "eps2", "min_distance", "max_violations_pct"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    overrides.pop("seed", None)
    solver = {k: overrides.pop(k) for k in SOLVER_KEYS if k in overrides}
    return SdrOptions(**overrides, solver=SolverConfig(**solver))


def _load_inputs(args):
    if not args.distances and not args.ordinal:
        raise InputError("give --distances, --ordinal, or both")
    ordinal = load_ordinal(args.ordinal) if args.ordinal else []
    needed = max([args.n or 0] + [c.i4 + 1 for c in ordinal] + [c.i2 + 1 for c in ordinal])
    if args.distances:
        dtilde, mask = load_distances(args.distances)
        if needed > dtilde.n:
            dtilde, mask = load_distances(args.distances, n=needed)
    else:
        if needed == 0:
            raise InputError("cannot infer the number of points")
        dtilde, mask = Hdm(np.zeros((needed, needed))), ObservationMask.empty(needed)
    return dtilde, mask, ordinal


# --- Commands ---


def _cmd_embed(args, invocation):
    if args.svg and args.dim > 2:
        raise InputError("--svg needs --dim 1 or 2")
    dtilde, mask, ordinal = _load_inputs(args)
    options = _options(args)
    result = hdgp(dtilde, mask, ordinal, args.dim, options)

    provenance = {
        "invocation": invocation,
        "seed": args.seed,
        "options": asdict(options),
    }
    if mask.measured_pairs:
        provenance["reconstruction_error"] = relative_error(
            dtilde, result.recon_hdm, mask
        )
    warning = None if result.report.converged else NOT_CONVERGED_WARNING
    save_embedding(result, args.out, args.model, provenance, warning)
    if args.svg:
        from .charts import render_poincare_svg

        render_poincare_svg(
            result.poincare_points,
            [str(k) for k in range(result.n)],
            args.svg,
            invocation,
        )
    return EXIT_OK if result.report.converged else EXIT_NOT_CONVERGED


def _cmd_complete(args, invocation):
    dtilde, mask, ordinal = _load_inputs(args)
    g, report = sdr_complete(dtilde, mask, ordinal, args.dim, _options(args))
    warning = None if report.converged else NOT_CONVERGED_WARNING
    save_hdm(solved_hdm(g), args.out_hdm, invocation, warning)
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def _cmd_project(args, invocation):
    z = load_points(args.in_path)
    projected = [project_to_loid_with_multiplier(row) for row in z]
    save_points(
        [p for p, _ in projected],
        args.out,
        multipliers=[lam for _, lam in projected],
        provenance={"invocation": invocation},
    )
    return EXIT_OK


def _cmd_bench(args, invocation):
    if args.bench == "sparsity":
        summaries = sparsity_success_curve(
            args.n,
            args.dim,
            args.grid,
            m_trials=args.trials,
            delta=args.delta,
            seed=args.seed,
            spread=args.spread,
            n_jobs=args.jobs,
        )
    elif args.bench == "tree":
        summaries = tree_benchmark(
            args.n_grid, m_trials=args.trials, seed=args.seed, n_jobs=args.jobs
        )
    elif args.bench == "ordinal":
        summaries = ordinal_benchmark(
            args.n,
            args.dim_grid,
            args.k,
            args.zeta_grid,
            seed=args.seed,
            m_trials=args.trials,
            true_dim=args.true_dim,
            corruption=args.corruption,
            n_jobs=args.jobs,
        )
    else:
        summaries = ordinal_consistency_curve(
            args.n,
            args.dim,
            args.grid,
            m_trials=args.sets,
            k_realizations=args.trials,
            seed=args.seed,
            limit=args.limit,
            n_jobs=args.jobs,
        )
    frame = summaries_to_frame(summaries)
    save_trials(frame, args.out, invocation)
    if args.html:
        from .charts import create_benchmark_chart, write_html

        write_html(create_benchmark_chart(frame), args.html, invocation)
    # non-converged trials are scored and counted in the table
    return EXIT_OK


COMMANDS = {
    "embed": _cmd_embed,
    "complete": _cmd_complete,
    "project": _cmd_project,
    "bench": _cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args, _invocation(argv, args))
    except InputError as e:
        print(f"hdgp: error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except HdgpError as e:
        print(f"hdgp: solver failure: {e}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
