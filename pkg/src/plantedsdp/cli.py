"""
plantedsdp CLI.

Subcommands `gen`, `solve`, `certify`, `oracle`, `sweep` and `spectral`.
Global options may be given before the subcommand or on the subcommand
itself; the subcommand value wins. Exit codes: 0 on success, 1 on a usage
error, 2 on a data error.
"""

import logging
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from enum import Enum
from importlib import metadata
from pathlib import Path
from typing import Annotated, Any

import click
import orjson
import polars as pl
import typer
from pydantic import BaseModel, ValidationError

from plantedsdp.core.standard_models.abstract.errors import PlantedSdpError
from plantedsdp.core.standard_models.recovery import ModelParams
from plantedsdp.core.standard_models.recovery.sdp import SolverOptions
from plantedsdp.core.utils.env import Env
from plantedsdp.core.utils.logger import set_package_log_level, setup_logger

env = Env()
logger = setup_logger("CLI", level=env.LOGGER_LEVEL)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

app = typer.Typer(
    name="plantedsdp",
    help="Exact recovery of planted clusters by semidefinite programming.",
    no_args_is_help=True,
    add_completion=False,
)


class ModelChoice(str, Enum):
    sbm = "sbm"
    pds = "pds"


class FormatChoice(str, Enum):
    csv = "csv"
    json = "json"


class MethodChoice(str, Enum):
    certificate = "certificate"
    sdp = "sdp"
    both = "both"


class RuleChoice(str, Enum):
    log = "log"
    sublog = "sublog"


class RegimeChoice(str, Enum):
    auto = "auto"
    a_greater = "a-greater"
    b_greater = "b-greater"


_METHODS = {
    MethodChoice.certificate: "Certificate",
    MethodChoice.sdp: "SdpSolve",
    MethodChoice.both: "Both",
}
_RULES = {RuleChoice.log: "ConstTimesLogOverN", RuleChoice.sublog: "SubLog"}
_REGIMES = {
    RegimeChoice.auto: None,
    RegimeChoice.a_greater: "AGreater",
    RegimeChoice.b_greater: "BGreater",
}


class CliState(BaseModel):
    """Global options collected by the app callback."""

    seed: int = 0
    out: Path | None = None
    format: FormatChoice = FormatChoice.csv
    threads: int = 1


SeedOpt = Annotated[
    int | None, typer.Option("--seed", min=0, help="Seed of all randomness.")
]
OutOpt = Annotated[
    Path | None, typer.Option("--out", help="Output file; stdout when omitted.")
]
FormatOpt = Annotated[
    FormatChoice | None, typer.Option("--format", help="Output format.")
]
ThreadsOpt = Annotated[
    int | None, typer.Option("--threads", min=1, help="Worker pool size.")
]
ModelOpt = Annotated[ModelChoice, typer.Option("--model", help="Planted model.")]
GraphOpt = Annotated[
    Path,
    typer.Option(
        "--graph", dir_okay=False, help="Graph file (`n m` header)."
    ),
]
KOpt = Annotated[
    int | None, typer.Option("--k", min=1, help="PDS cluster size.")
]
RegimeOpt = Annotated[
    RegimeChoice,
    typer.Option("--regime", help="Sign of a - b; auto infers it from the intensities."),
]


def _resolve(ctx: typer.Context, **overrides: Any) -> CliState:
    state: CliState = ctx.obj or CliState()
    return state.model_copy(
        update={k: v for k, v in overrides.items() if v is not None}
    )


@contextmanager
def _data_errors() -> Iterator[None]:
    """Turn library and I/O failures into exit code 2."""
    try:
        yield
    except (PlantedSdpError, ValidationError, OSError, ValueError) as e:
        logger.debug("data error", exc_info=True)
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(code=EXIT_DATA) from e


def _version() -> str:
    try:
        return metadata.version("plantedsdp")
    except metadata.PackageNotFoundError:
        return "unknown"


def _emit_record(record: dict[str, Any], state: CliState) -> None:
    """Write one record as JSON or as a one-row CSV."""
    if state.format == FormatChoice.json:
        payload = orjson.dumps(
            record, option=orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2
        ).decode()
    else:
        flat = {
            k: (orjson.dumps(v).decode() if isinstance(v, list | dict | tuple) else v)
            for k, v in record.items()
        }
        payload = pl.DataFrame([flat]).write_csv(float_precision=12)
    _write_text(payload, state.out)


def _write_text(payload: str, out: Path | None) -> None:
    if out is None:
        typer.echo(payload.rstrip("\n"))
    else:
        out.write_text(payload if payload.endswith("\n") else payload + "\n", encoding="utf-8")


def _model_params(  # noqa: PLR0913
    model: ModelChoice,
    n: int,
    a: float | None,
    b: float | None,
    p: float | None,
    q: float | None,
    k: int | None = None,
    rho: float | None = None,
    seed: int = 0,
) -> ModelParams:
    kind = "SBM" if model == ModelChoice.sbm else "PDS"
    data: dict[str, Any] = {"kind": kind, "n": n, "seed": seed}
    for name, value in (("a", a), ("b", b), ("p", p), ("q", q), ("K", k), ("rho", rho)):
        if value is not None:
            data[name] = value
    return ModelParams(**data)


@app.callback()
def main_callback(  # noqa: PLR0913
    ctx: typer.Context,
    seed: Annotated[int, typer.Option("--seed", min=0, help="Seed of all randomness.")] = 0,
    out: OutOpt = None,
    format: Annotated[  # noqa: A002
        FormatChoice, typer.Option("--format", help="Output format.")
    ] = FormatChoice.csv,
    threads: Annotated[
        int | None, typer.Option("--threads", min=1, help="Worker pool size.")
    ] = None,
    log_level: Annotated[
        str | None,
        typer.Option("--log-level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL."),
    ] = None,
) -> None:
    """Exact recovery of planted clusters by semidefinite programming."""
    if log_level is not None:
        level = logging.getLevelName(log_level.upper())
        if not isinstance(level, int):
            msg = f"unknown log level {log_level!r}"
            raise typer.BadParameter(msg, param_hint="--log-level")
        set_package_log_level(level)
    ctx.obj = CliState(
        seed=seed, out=out, format=format, threads=threads or env.THREADS
    )


@app.command()
def gen(  # noqa: PLR0913
    ctx: typer.Context,
    model: ModelOpt,
    n: Annotated[int, typer.Option("--n", min=2, help="Number of vertices.")],
    a: Annotated[float | None, typer.Option("--a")] = None,
    b: Annotated[float | None, typer.Option("--b")] = None,
    p: Annotated[float | None, typer.Option("--p")] = None,
    q: Annotated[float | None, typer.Option("--q")] = None,
    rho: Annotated[float | None, typer.Option("--rho")] = None,
    k: KOpt = None,
    truth_out: Annotated[
        Path | None,
        typer.Option("--truth-out", help="Truth file; defaults to <out>.truth."),
    ] = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
) -> None:
    """Sample a planted graph and write it with its truth."""
    from plantedsdp.recovery.graph_models.helpers import (
        write_assignment,
        write_graph,
    )
    from plantedsdp.recovery.graph_models.model import sample_planted

    state = _resolve(ctx, seed=seed, out=out)
    with _data_errors():
        params = _model_params(model, n, a, b, p, q, k, rho, state.seed)
        g, truth = sample_planted(params)
        if state.out is None:
            lines = [f"{g.n} {g.m}"] + [f"{i + 1} {j + 1}" for i, j in g.edges()]
            typer.echo("\n".join(lines))
        else:
            write_graph(state.out, g)
            truth_out = truth_out or state.out.with_name(state.out.name + ".truth")
        if truth_out is not None:
            write_assignment(truth_out, truth)
        logger.info("sampled %s graph: n=%d m=%d", params.kind, g.n, g.m)


@app.command()
def solve(  # noqa: PLR0913
    ctx: typer.Context,
    graph: GraphOpt,
    model: ModelOpt,
    k: KOpt = None,
    regime: RegimeOpt = RegimeChoice.a_greater,
    tol: Annotated[float, typer.Option("--tol", min=0.0)] = 1e-6,
    max_iters: Annotated[int, typer.Option("--max-iters", min=1)] = 5000,
    rho_penalty: Annotated[float, typer.Option("--rho-penalty", min=0.0)] = 1.0,
    out: OutOpt = None,
    format: FormatOpt = None,  # noqa: A002
) -> None:
    """Solve the SDP relaxation on a saved graph and print its summary."""
    from plantedsdp.core.standard_models.recovery.sdp import SdpProblem
    from plantedsdp.recovery.graph_models.helpers import read_graph
    from plantedsdp.recovery.sdp_solver.model import (
        constraint_violations,
        solve as solve_sdp,
    )

    state = _resolve(ctx, out=out, format=format)
    with _data_errors():
        g = read_graph(graph)
        family = "SBM" if model == ModelChoice.sbm else "PDS"
        if family == "PDS" and k is None:
            msg = "--k is required for the pds model"
            raise PlantedSdpError(msg)
        side = "MIN" if regime == RegimeChoice.b_greater else "MAX"
        problem = SdpProblem(kind=f"{family}_{side}", adjacency=g.adj, K=k)
        options = SolverOptions(tol=tol, max_iters=max_iters, rho_penalty=rho_penalty)
        sol = solve_sdp(problem, options)
        record = sol.summary() | {"violations": constraint_violations(sol)}
        _emit_record(record, state)


@app.command()
def certify(  # noqa: PLR0913
    ctx: typer.Context,
    graph: GraphOpt,
    truth: Annotated[
        Path, typer.Option("--truth", dir_okay=False, help="Assignment file.")
    ],
    model: ModelOpt,
    a: Annotated[float | None, typer.Option("--a")] = None,
    b: Annotated[float | None, typer.Option("--b")] = None,
    p: Annotated[float | None, typer.Option("--p")] = None,
    q: Annotated[float | None, typer.Option("--q")] = None,
    regime: RegimeOpt = RegimeChoice.auto,
    out: OutOpt = None,
    format: FormatOpt = None,  # noqa: A002
) -> None:
    """Build and verify the dual certificate of a saved truth."""
    from plantedsdp.recovery.graph_models.helpers import read_assignment, read_graph
    from plantedsdp.recovery.recovery_controller import Recovery

    state = _resolve(ctx, out=out, format=format)
    with _data_errors():
        g = read_graph(graph)
        assignment = read_assignment(truth)
        k = int(assignment.members.size) if model == ModelChoice.pds else None
        params = _model_params(model, g.n, a, b, p, q, k)
        cert = Recovery(**params.model_dump(exclude={"rho"})).certify(
            g, assignment, _REGIMES[regime]
        )
        if state.format == FormatChoice.json:
            _write_text(cert.to_json().decode(), state.out)
        else:
            _emit_record(
                {
                    "regime": cert.regime,
                    "lambda_star": cert.lambda_star,
                    "lambda2_perp": cert.lambda2_perp,
                    "psd_lower_bound": cert.psd_lower_bound,
                    "passed": bool(cert.verdict and cert.verdict.passed),
                    "reasons": list(cert.verdict.reasons) if cert.verdict else [],
                },
                state,
            )
        if cert.verdict and not cert.verdict.passed:
            logger.info("certificate failed: %s", "; ".join(cert.verdict.reasons))


@app.command()
def oracle(
    ctx: typer.Context,
    graph: GraphOpt,
    model: ModelOpt,
    k: KOpt = None,
    regime: RegimeOpt = RegimeChoice.a_greater,
    out: OutOpt = None,
    format: FormatOpt = None,  # noqa: A002
) -> None:
    """Brute-force maximum-likelihood assignment of a small saved graph."""
    from plantedsdp.recovery.graph_models.helpers import read_graph
    from plantedsdp.recovery.oracle.model import ml_bisection, ml_subset

    state = _resolve(ctx, out=out, format=format)
    side = _REGIMES[regime] or "AGreater"
    with _data_errors():
        g = read_graph(graph)
        if model == ModelChoice.sbm:
            result = ml_bisection(g, side)
        else:
            if k is None:
                msg = "--k is required for the pds model"
                raise PlantedSdpError(msg)
            result = ml_subset(g, k, side)
        _emit_record(
            {
                "best": [int(v) for v in result.best.values],
                "best_objective": result.best_objective,
                "num_optima": result.num_optima,
                "unique": result.unique,
                "candidates": result.candidates,
            },
            state,
        )


@app.command()
def sweep(  # noqa: PLR0913
    ctx: typer.Context,
    model: ModelOpt,
    n: Annotated[int, typer.Option("--n", min=2)],
    b_grid: Annotated[
        str | None, typer.Option("--b-grid", help="`start:stop:step` or a comma list.")
    ] = None,
    a: Annotated[float | None, typer.Option("--a", help="Fixed a.")] = None,
    a_grid: Annotated[str | None, typer.Option("--a-grid")] = None,
    b: Annotated[float | None, typer.Option("--b", help="Fixed b.")] = None,
    rho: Annotated[float, typer.Option("--rho", help="PDS cluster fraction.")] = 0.5,
    trials: Annotated[int, typer.Option("--trials", min=1)] = 50,
    method: Annotated[MethodChoice, typer.Option("--method")] = MethodChoice.certificate,
    audit_fraction: Annotated[float, typer.Option("--audit-fraction", min=0.0, max=1.0)] = 0.1,
    svg: Annotated[Path | None, typer.Option("--svg", help="Write the heatmap here.")] = None,
    seed: SeedOpt = None,
    out: OutOpt = None,
    format: FormatOpt = None,  # noqa: A002
    threads: ThreadsOpt = None,
) -> None:
    """Phase-diagram sweep over (a, b); one row per grid point."""
    from plantedsdp.core.standard_models.recovery.experiments.phase_diagram import (
        PhaseDiagramFetcher,
    )

    state = _resolve(ctx, seed=seed, out=out, format=format, threads=threads)
    if (a is None) == (a_grid is None) or (b is None) == (b_grid is None):
        msg = "give exactly one of --a/--a-grid and one of --b/--b-grid"
        raise typer.BadParameter(msg)
    with _data_errors():
        result = PhaseDiagramFetcher(
            context_params=None,
            command_params={
                "kind": "SBM" if model == ModelChoice.sbm else "PDS",
                "a_grid": a_grid if a_grid is not None else [a],
                "b_grid": b_grid if b_grid is not None else [b],
                "rho": rho,
                "n": n,
                "trials_per_point": trials,
                "method": _METHODS[method],
                "base_seed": state.seed,
                "threads": state.threads,
                "audit_fraction": audit_fraction,
                "chart": svg is not None,
            },
        ).fetch_data()
        header = f"base_seed={state.seed} version={_version()}"
        if state.out is None:
            frame = result.to_polars(collect=True)
            if state.format == FormatChoice.json:
                typer.echo(result.to_json().decode())
            else:
                typer.echo(frame.write_csv(float_precision=12).rstrip("\n"))
        elif state.format == FormatChoice.json:
            result.write_json(state.out)
            result.write_json(_trials_path(state.out, ".json"), trials=True)
        else:
            result.write_csv(state.out, header=header)
            result.write_csv(_trials_path(state.out, ".csv"), trials=True, header=header)
        if svg is not None:
            result.write_svg(svg)
        for warning in result.warnings or []:
            typer.echo(f"warning: {warning.message}", err=True)


def _trials_path(out: Path, suffix: str) -> Path:
    return out.with_name(f"{out.stem}.trials{suffix}")


@app.command()
def spectral(  # noqa: PLR0913
    ctx: typer.Context,
    n_list: Annotated[str, typer.Option("--n-list", help="Comma-separated sizes.")],
    rule: Annotated[RuleChoice, typer.Option("--rule")] = RuleChoice.log,
    trials: Annotated[int, typer.Option("--trials", min=1)] = 20,
    seed: SeedOpt = None,
    out: OutOpt = None,
    format: FormatOpt = None,  # noqa: A002
    threads: ThreadsOpt = None,
) -> None:
    """Normalized spectral deviation of G(n, p) across sizes."""
    from plantedsdp.core.standard_models.recovery.experiments.spectral_scaling import (
        SpectralScalingFetcher,
    )

    state = _resolve(ctx, seed=seed, out=out, format=format, threads=threads)
    with _data_errors():
        result = SpectralScalingFetcher(
            context_params=None,
            command_params={
                "n_list": n_list,
                "p_rule": _RULES[rule],
                "trials": trials,
                "base_seed": state.seed,
                "threads": state.threads,
            },
        ).fetch_data()
        header = f"base_seed={state.seed} rule={_RULES[rule]} version={_version()}"
        if state.out is None:
            if state.format == FormatChoice.json:
                typer.echo(result.to_json().decode())
            else:
                typer.echo(
                    result.to_polars(collect=True).write_csv(float_precision=12).rstrip("\n")
                )
        elif state.format == FormatChoice.json:
            result.write_json(state.out)
        else:
            result.write_csv(state.out, header=header)
        trend = result.extra["trend"]
        typer.echo(
            f"medians: {', '.join(f'{m:.4f}' for m in trend['medians'])} "
            f"(sign test z={trend['z_score']:.2f})",
            err=True,
        )


def cli_main(argv: Sequence[str] | None = None) -> int:
    """
    Run the CLI and return its exit code instead of exiting.

    Usage errors print the message and the synopsis to stderr and return 1;
    data errors print the message and return 2.
    """
    command = typer.main.get_command(app)
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = command.main(args=args, prog_name="plantedsdp", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.UsageError as e:
        if e.ctx is not None:
            typer.echo(e.ctx.get_usage(), err=True)
        typer.echo(f"error: {e.format_message()}", err=True)
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except (PlantedSdpError, ValidationError, OSError, ValueError) as e:
        typer.echo(f"error: {e}", err=True)
        return EXIT_DATA
    # standalone_mode=False returns the code of typer.Exit instead of raising
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    """Console entry point."""
    sys.exit(cli_main())
