#!/usr/bin/env python3
"""
hyc - free hypergraph C*-algebra toolkit.

Build hypergraph presentations, rewrite them with relation gadgets,
translate games and colimit diagrams, and run the semi-decision analyzers.
Report lines go to stdout; diagnostics go to stderr.
"""

import functools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

sys.path.insert(0, str(Path(__file__).parent.parent))

from src import __version__
from src.config.settings import settings
from src.models.analysis import CapExceeded, FeasibilityVerdict, MomentProblem, VerdictKind
from src.models.errors import HycError, ParseError
from src.models.hypergraph import Hypergraph, SimpleGraph
from src.models.relations import Relation, RelationKind
from src.models.report import AnalysisReport, CertificateFile, ResidualFile, VerdictRecord
from src.services.builders import (
    build_cep,
    build_free_product,
    build_graph_product_cyclic,
    build_hom_game,
    build_iso_game,
    build_qperm,
    build_zero_gadget,
    named_graph,
    parse_graph,
)
from src.services.classical import enumerate_solutions, solve_exact_one
from src.services.colimit import encode_colimit, parse_diagram
from src.services.core import parse_hypergraph, redundant_edges, serialize_hypergraph
from src.services.games import (
    game_to_hypergraph,
    hypergraph_to_game,
    parse_game,
    perfect_deterministic_strategies,
    serialize_game,
    validate_game,
)
from src.services.reps import parse_rep, search_representation, serialize_rep, verify_representation
from src.services.sdp import (
    build_moment_problem,
    certificate_from_file,
    certificate_to_file,
    solve_feasibility,
    verify_certificate,
)
from src.services.transforms import impose_relation, three_uniform
from src.ui.formatters import display_hypergraph_summary, display_verdicts
from src.ui.styles import error, info, processing, progress_bar, success, warning, welcome
from src.utils.report_store import ReportStore, fingerprint

QUICK_START = [
    ("hyc build qperm 3 -o q3.hg", "quantum permutation hypergraph"),
    ("hyc analyze classical --count q3.hg", "count classical solutions"),
    ("hyc analyze npa --level 1 q3.hg", "moment relaxation feasibility"),
]


class InputError(click.ClickException):
    """Bad input: printed on the diagnostics console, exit status 2."""

    exit_code = 2

    def show(self, file=None) -> None:
        error(self.format_message())


def reports_input_errors(command):
    """Turn library and file errors into InputError."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HycError as exc:
            raise InputError(str(exc)) from exc
        except OSError as exc:
            raise InputError(f"{exc.filename or 'file'}: {exc.strerror or exc}") from exc
    return wrapper


def report_options(command):
    """`--report FILE` and `--timings` for analyze/verify commands."""
    command = click.option(
        "--timings", is_flag=True,
        help="Add wall-clock timings to the report (breaks byte-identical output)."
    )(command)
    command = click.option(
        "--report", "report_path", type=click.Path(dir_okay=False),
        help="Write the JSON analysis report to this file."
    )(command)
    return command


def output_option(command):
    return click.option(
        "-o", "--output", type=click.Path(dir_okay=False),
        help="Write to this file instead of stdout."
    )(command)


def read_text(path: str) -> str:
    """
    Read an input file as UTF-8.

    Raises:
        ParseError: If the bytes are not UTF-8, located at the first bad byte.
    """
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        raise ParseError(f"{path}: not valid UTF-8 ({exc.reason})", line, column) from None


def load_hypergraph(path: str, quiet: bool = False) -> Hypergraph:
    text = read_text(path)
    try:
        return parse_hypergraph(text, quiet=quiet)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_graph(source: str) -> SimpleGraph:
    """A `.gr` file if one exists at the path, otherwise a named family such as K3."""
    path = Path(source)
    if path.is_file():
        try:
            return parse_graph(read_text(source))
        except ParseError as exc:
            raise InputError(f"{source}: {exc}") from exc
    return named_graph(source)


def hypergraph_fingerprint(h: Hypergraph) -> str:
    return fingerprint(serialize_hypergraph(h.canonical()))


def write_output(text: str, output: str | None) -> None:
    if output is None:
        click.echo(text, nl=False)
        return
    Path(output).write_text(text, encoding="utf-8")
    success(f"Wrote {output}")


def emit_hypergraph(h: Hypergraph, output: str | None, title: str) -> None:
    write_output(serialize_hypergraph(h), output)
    if output is not None:
        display_hypergraph_summary(h, title)


def finish_report(
    report_path: str | None,
    command: str,
    digest: str,
    records: list[VerdictRecord],
    timings: dict[str, float] | None,
) -> None:
    if report_path is None:
        return
    report = AnalysisReport(command=command, fingerprint=digest, verdicts=records, timings=timings)
    ReportStore().save(report, report_path)


def run_batch(job, items: list, jobs: int, names: list[str]) -> list:
    """
    Run a picklable job over every item, in input order.

    With several workers the batch shows one progress bar and the jobs run
    without their own bars; sequential runs announce each item instead.
    """
    if jobs > 1 and len(items) > 1:
        results = []
        with progress_bar() as bar:
            task = bar.add_task("Analyzing inputs", total=len(items))
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for result in pool.map(functools.partial(job, show_progress=False), items):
                    results.append(result)
                    bar.advance(task)
        return results
    results = []
    for name, item in zip(names, items):
        if len(items) > 1:
            processing(f"Analyzing {name}")
        results.append(job(item))
    return results


def prefixed(lines: list[str], name: str, batch: bool) -> list[str]:
    return [f"{name}: {line}" for line in lines] if batch else lines


@click.group(invoke_without_command=True)
@click.option("--version", is_flag=True, help="Show version and exit.")
@click.pass_context
def cli(ctx: click.Context, version: bool) -> None:
    """
    hyc - free hypergraph C*-algebras.

    Every hypergraph presents the universal C*-algebra generated by one
    projection per vertex, with the projections of each edge summing to
    the identity.
    """
    if version:
        click.echo(f"hyc {__version__}")
        return

    if ctx.invoked_subcommand is None:
        welcome(__version__, QUICK_START)


# ---------------------------------------------------------------- build


@cli.group()
def build() -> None:
    """Build the named hypergraph families."""


@build.command("qperm")
@click.argument("n", type=click.IntRange(min=1))
@output_option
@reports_input_errors
def build_qperm_command(n: int, output: str | None) -> None:
    """Quantum permutation group: the n x n grid, rows and columns as edges."""
    emit_hypergraph(build_qperm(n), output, f"Quantum permutation hypergraph, n={n}")


@build.command("freeprod")
@click.argument("sizes", nargs=-1, required=True, type=click.IntRange(min=1))
@output_option
@reports_input_errors
def build_freeprod_command(sizes: tuple[int, ...], output: str | None) -> None:
    """Free product of C^n1 * C^n2 * ...: disjoint edges of the given sizes."""
    emit_hypergraph(build_free_product(list(sizes)), output, "Free product")


@build.command("gprod")
@click.argument("orders", nargs=-1, required=True, type=click.IntRange(min=1))
@click.option(
    "--commute", "-c", multiple=True,
    help="Commuting factor pair 'i,j' (1-based); repeat for several pairs."
)
@output_option
@reports_input_errors
def build_gprod_command(orders: tuple[int, ...], commute: tuple[str, ...], output: str | None) -> None:
    """Graph product of cyclic groups: one edge per factor, commutation gadgets per pair."""
    pairs = []
    for item in commute:
        left, sep, right = item.partition(",")
        if not sep or not left.strip().isdigit() or not right.strip().isdigit():
            raise InputError(f"expected --commute i,j, got {item!r}")
        pairs.append((int(left), int(right)))
    emit_hypergraph(build_graph_product_cyclic(list(orders), set(pairs)), output, "Graph product")


@build.command("cep")
@output_option
@reports_input_errors
def build_cep_command(output: str | None) -> None:
    """Graph product presentation tied to the Connes embedding problem (C^2, C^3, C^2, C^3)."""
    h = build_cep()
    emit_hypergraph(h, output, "Connes embedding preset")
    info(
        f"{h.num_vertices} vertices, {h.num_edges} edges; no feasibility claim is made "
        "for this instance"
    )


@build.command("hom")
@click.argument("graph")
@click.argument("target")
@output_option
@reports_input_errors
def build_hom_command(graph: str, target: str, output: str | None) -> None:
    """Quantum graph homomorphisms GRAPH -> TARGET (a .gr file or K<n>, P<n>, C<n>, E<n>)."""
    emit_hypergraph(build_hom_game(load_graph(graph), load_graph(target)), output, "Homomorphism game")


@build.command("iso")
@click.argument("graph")
@click.argument("other")
@output_option
@reports_input_errors
def build_iso_command(graph: str, other: str, output: str | None) -> None:
    """Quantum graph isomorphisms GRAPH <-> OTHER (a .gr file or K<n>, P<n>, C<n>, E<n>)."""
    emit_hypergraph(build_iso_game(load_graph(graph), load_graph(other)), output, "Isomorphism game")


@build.command("zero-gadget")
@output_option
@reports_input_errors
def build_zero_gadget_command(output: str | None) -> None:
    """The four-vertex gadget whose distinguished vertex is forced to zero."""
    h, vertex = build_zero_gadget()
    emit_hypergraph(h, output, "Zero gadget")
    info(f"p_{vertex} = 0 in every representation")


# ------------------------------------------------------------ transform


@cli.group()
def transform() -> None:
    """Rewrite hypergraphs without leaving the class of hypergraph C*-algebras."""


@transform.command("impose")
@click.argument("hypergraph", type=click.Path(exists=True, dir_okay=False))
@click.argument("kind", type=click.Choice([k.value for k in RelationKind]))
@click.argument("v")
@click.argument("w", required=False)
@output_option
@reports_input_errors
def impose_command(hypergraph: str, kind: str, v: str, w: str | None, output: str | None) -> None:
    """
    Impose a relation by gadget: zero V, equal, orthogonal, leq (V <= W),
    commute, or sum-leq-one.
    """
    h = load_hypergraph(hypergraph)
    result = impose_relation(h, Relation(RelationKind(kind), v, w))
    emit_hypergraph(result, output, f"After {kind}")


@transform.command("three-uniform")
@click.argument("hypergraph", type=click.Path(exists=True, dir_okay=False))
@output_option
@reports_input_errors
def three_uniform_command(hypergraph: str, output: str | None) -> None:
    """Normal form with every edge of size 3 and edges meeting in at most one vertex."""
    emit_hypergraph(three_uniform(load_hypergraph(hypergraph)), output, "Three-uniform form")


# ------------------------------------------------------------ translate


@cli.group()
def translate() -> None:
    """Translate between synchronous games, colimit diagrams and hypergraphs."""


@translate.command("game2hg")
@click.argument("game", type=click.Path(exists=True, dir_okay=False))
@click.option("--auto-sync", is_flag=True, help="Add the synchronicity quadruples before translating.")
@output_option
@reports_input_errors
def game2hg_command(game: str, auto_sync: bool, output: str | None) -> None:
    """Hypergraph presenting the algebra of a synchronous game."""
    try:
        g = parse_game(read_text(game), auto_sync=auto_sync)
    except ParseError as exc:
        raise InputError(f"{game}: {exc}") from exc
    violations = validate_game(g)
    if violations:
        for violation in violations[:5]:
            warning(str(violation))
        raise InputError(f"{game}: game is not synchronous ({len(violations)} violations); try --auto-sync")
    emit_hypergraph(game_to_hypergraph(g), output, "Game hypergraph")


@translate.command("hg2game")
@click.argument("hypergraph", type=click.Path(exists=True, dir_okay=False))
@output_option
@reports_input_errors
def hg2game_command(hypergraph: str, output: str | None) -> None:
    """Synchronous game with three answers whose algebra is that of the hypergraph."""
    g = hypergraph_to_game(load_hypergraph(hypergraph))
    write_output(serialize_game(g), output)
    if output is not None:
        info(f"{len(g.inputs)} inputs, {len(g.outputs)} outputs, {len(g.forbidden)} losing quadruples")


@translate.command("colim2hg")
@click.argument("diagram", type=click.Path(exists=True, dir_okay=False))
@click.option("--normalize", is_flag=True, help="Drop duplicate edges.")
@output_option
@reports_input_errors
def colim2hg_command(diagram: str, normalize: bool, output: str | None) -> None:
    """Hypergraph whose algebra is the colimit of a diagram of commutative algebras."""
    try:
        d = parse_diagram(read_text(diagram))
    except ParseError as exc:
        raise InputError(f"{diagram}: {exc}") from exc
    emit_hypergraph(encode_colimit(d, normalize=normalize), output, "Colimit hypergraph")


# -------------------------------------------------------------- analyze


@cli.group()
def analyze() -> None:
    """Semi-decision analyzers: classical solutions, moment relaxations, strategies, representations."""


def classical_job(
    h: Hypergraph,
    count: bool,
    list_all: bool,
    project: bool,
    cap: int,
    show_progress: bool | None = None,
) -> tuple[list[str], VerdictRecord]:
    parameters = {"count": count, "project": project, "cap": cap}
    if not count and not list_all:
        assignment = solve_exact_one(h)
        if assignment is None:
            return ["UNSAT"], VerdictRecord(module="classical", verdict="UNSAT", parameters=parameters)
        shown = assignment.projected() if project else assignment
        return [f"SAT {shown}"], VerdictRecord(
            module="classical", verdict="SAT", parameters=parameters, detail=[str(shown)]
        )

    solutions = enumerate_solutions(h, cap)
    if isinstance(solutions, CapExceeded):
        return [str(solutions)], VerdictRecord(
            module="classical", verdict="SAT", parameters=parameters, detail=[str(solutions)]
        )
    lines = [f"COUNT {len(solutions)}"] if count else []
    if list_all:
        lines += [f"SAT {s.projected() if project else s}" for s in solutions]
    if not solutions and not count:
        lines.append("UNSAT")
    verdict = "SAT" if solutions else "UNSAT"
    return lines, VerdictRecord(
        module="classical", verdict=verdict, parameters=parameters, detail=[f"COUNT {len(solutions)}"]
    )


@analyze.command("classical")
@click.argument("hypergraphs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--count", is_flag=True, help="Count all solutions instead of finding one.")
@click.option("--all", "list_all", is_flag=True, help="Print every solution.")
@click.option("--project", is_flag=True, help="Hide gadget vertices in printed solutions.")
@click.option("--cap", type=click.IntRange(min=1), default=None, help="Enumeration cap (default HYC_ENUM_CAP).")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes for several inputs.")
@report_options
@reports_input_errors
def classical_command(
    hypergraphs: tuple[str, ...],
    count: bool,
    list_all: bool,
    project: bool,
    cap: int | None,
    jobs: int | None,
    report_path: str | None,
    timings: bool,
) -> None:
    """Exactly-one-per-edge assignments: the one-dimensional representations."""
    started = time.perf_counter()
    graphs = [load_hypergraph(path, quiet=True) for path in hypergraphs]
    job = functools.partial(
        classical_job,
        count=count,
        list_all=list_all,
        project=project,
        cap=cap or settings.ENUM_CAP,
    )
    results = run_batch(job, graphs, jobs or settings.JOBS, list(hypergraphs))

    batch = len(graphs) > 1
    records = []
    for path, (lines, record) in zip(hypergraphs, results):
        for line in prefixed(lines, path, batch):
            click.echo(line)
        records.append(record)
    if batch:
        display_verdicts(records, list(hypergraphs))

    digest = fingerprint("".join(serialize_hypergraph(h.canonical()) for h in graphs))
    elapsed = {"total_seconds": time.perf_counter() - started} if timings else None
    finish_report(report_path, "analyze classical", digest, records, elapsed)


def npa_job(
    h: Hypergraph,
    level: int,
    tracial: bool,
    localizing: bool,
    tol_eig: float,
    tol_feas: float,
    max_iter: int,
    show_progress: bool | None = None,
) -> tuple[MomentProblem, FeasibilityVerdict]:
    problem = build_moment_problem(h, level, tracial=tracial, localizing=localizing)
    verdict = solve_feasibility(
        problem, tol_eig=tol_eig, tol_feas=tol_feas, max_iter=max_iter, show_progress=show_progress
    )
    return problem, verdict


def describe_verdict(verdict: FeasibilityVerdict, level: int) -> str:
    parts = [verdict.kind.value, f"level={level}"]
    if verdict.min_eigenvalue is not None:
        parts.append(f"min_eigenvalue={verdict.min_eigenvalue:.6f}")
    if verdict.residual is not None:
        parts.append(f"residual={verdict.residual:.3e}")
    if verdict.iterations:
        parts.append(f"iterations={verdict.iterations}")
    return " ".join(parts)


@analyze.command("npa")
@click.argument("hypergraphs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--level", "-k", type=click.IntRange(min=1), default=None, help="Relaxation level (default HYC_LEVEL).")
@click.option("--tracial", is_flag=True, help="Tracial moments: is there a tracial state?")
@click.option("--no-localizing", is_flag=True, help="Only the plain edge relations, no words around them.")
@click.option("--tol", type=float, default=None, help="Residual accepted as feasible (default HYC_TOL_FEAS).")
@click.option(
    "--tol-eig", type=float, default=None,
    help="Eigenvalue threshold for certificates and approximate feasibility (default HYC_TOL_EIG)."
)
@click.option("--max-iter", type=click.IntRange(min=1), default=None, help="Projection budget (default HYC_MAX_ITER).")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes for several inputs.")
@output_option
@report_options
@reports_input_errors
def npa_command(
    hypergraphs: tuple[str, ...],
    level: int | None,
    tracial: bool,
    no_localizing: bool,
    tol: float | None,
    tol_eig: float | None,
    max_iter: int | None,
    jobs: int | None,
    output: str | None,
    report_path: str | None,
    timings: bool,
) -> None:
    """
    Moment-matrix relaxation of the algebra (plain: is C*(H) nonzero?;
    tracial: does a tracial state exist?). Writes a certificate or a
    residual file per input.
    """
    if output is not None and len(hypergraphs) > 1:
        raise InputError("-o names a single certificate file; drop it when analyzing several inputs")
    started = time.perf_counter()
    level = level or settings.LEVEL
    tolerances = {
        "tol_eig": settings.TOL_EIG if tol_eig is None else tol_eig,
        "tol_feas": settings.TOL_FEAS if tol is None else tol,
    }
    budget = max_iter or settings.MAX_ITER
    graphs = [load_hypergraph(path, quiet=True) for path in hypergraphs]
    job = functools.partial(
        npa_job,
        level=level,
        tracial=tracial,
        localizing=not no_localizing,
        max_iter=budget,
        **tolerances,
    )
    results = run_batch(job, graphs, jobs or settings.JOBS, list(hypergraphs))

    store = ReportStore()
    batch = len(graphs) > 1
    records = []
    for path, h, (problem, verdict) in zip(hypergraphs, graphs, results):
        digest = hypergraph_fingerprint(h)
        line = describe_verdict(verdict, level)
        click.echo(f"{path}: {line}" if batch else line)

        if verdict.certificate is not None:
            document = certificate_to_file(problem, verdict.certificate, digest)
            target = store.save(document, output or store.default_path("certificate", digest))
        else:
            document = ResidualFile(
                fingerprint=digest,
                level=level,
                tracial=tracial,
                verdict=verdict.kind.value,
                residual=verdict.residual,
                residual_trace=verdict.residual_trace,
                iterations=verdict.iterations,
            )
            target = store.save(document, output or store.default_path("residual", digest))
        if verdict.kind is VerdictKind.LIKELY_INFEASIBLE:
            warning("LIKELY_INFEASIBLE is a numerical plateau, not a proof of infeasibility")

        records.append(VerdictRecord(
            module="sdp",
            verdict=verdict.kind.value,
            parameters={
                "level": level,
                "tracial": tracial,
                "localizing": not no_localizing,
                "basis": problem.size,
                "variables": problem.num_variables,
                "constraints": len(problem.constraints),
                "max_iter": budget,
            },
            tolerances=tolerances,
            detail=[line, f"file={target.name}"],
        ))
    if batch:
        display_verdicts(records, list(hypergraphs))

    digest = fingerprint("".join(serialize_hypergraph(h.canonical()) for h in graphs))
    elapsed = {"total_seconds": time.perf_counter() - started} if timings else None
    finish_report(report_path, "analyze npa", digest, records, elapsed)


@analyze.command("strategies")
@click.argument("game", type=click.Path(exists=True, dir_okay=False))
@click.option("--auto-sync", is_flag=True, help="Add the synchronicity quadruples first.")
@click.option("--all", "list_all", is_flag=True, help="Print every strategy.")
@click.option(
    "--propagate/--brute-force", default=None,
    help="Force constraint propagation or brute force (default: brute force within the cap)."
)
@click.option("--cap", type=click.IntRange(min=1), default=None, help="Enumeration cap (default HYC_ENUM_CAP).")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes for brute force.")
@report_options
@reports_input_errors
def strategies_command(
    game: str,
    auto_sync: bool,
    list_all: bool,
    propagate: bool | None,
    cap: int | None,
    jobs: int | None,
    report_path: str | None,
    timings: bool,
) -> None:
    """Perfect deterministic strategies of a synchronous game (its classical solutions)."""
    started = time.perf_counter()
    try:
        g = parse_game(read_text(game), auto_sync=auto_sync)
    except ParseError as exc:
        raise InputError(f"{game}: {exc}") from exc
    for violation in validate_game(g)[:5]:
        warning(str(violation))

    cap = cap or settings.ENUM_CAP
    result = perfect_deterministic_strategies(g, cap=cap, propagate=propagate, jobs=jobs or settings.JOBS)
    parameters = {"cap": cap, "mode": {None: "auto", True: "propagate", False: "brute-force"}[propagate]}
    if isinstance(result, CapExceeded):
        click.echo(str(result))
        record = VerdictRecord(module="games", verdict="SAT", parameters=parameters, detail=[str(result)])
    else:
        click.echo(f"COUNT {len(result)}")
        if list_all:
            for strategy in result:
                click.echo(f"STRATEGY {strategy}")
        record = VerdictRecord(
            module="games",
            verdict="SAT" if result else "UNSAT",
            parameters=parameters,
            detail=[f"COUNT {len(result)}"],
        )

    elapsed = {"total_seconds": time.perf_counter() - started} if timings else None
    finish_report(report_path, "analyze strategies", fingerprint(serialize_game(g)), [record], elapsed)


@analyze.command("repsearch")
@click.argument("hypergraph", type=click.Path(exists=True, dir_okay=False))
@click.option("--dim", "-d", type=click.IntRange(min=1), required=True, help="Representation dimension.")
@click.option("--seed", type=int, default=None, help="Root seed (default HYC_SEED).")
@click.option("--starts", type=click.IntRange(min=1), default=None, help="Random starts (default HYC_REP_STARTS).")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Iterations per start (default HYC_REP_BUDGET).")
@click.option("--tol", type=float, default=None, help="Verification tolerance (default HYC_TOL).")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes for the starts.")
@output_option
@report_options
@reports_input_errors
def repsearch_command(
    hypergraph: str,
    dim: int,
    seed: int | None,
    starts: int | None,
    budget: int | None,
    tol: float | None,
    jobs: int | None,
    output: str | None,
    report_path: str | None,
    timings: bool,
) -> None:
    """Numerical search for a finite-dimensional representation; FOUND is verified."""
    started = time.perf_counter()
    h = load_hypergraph(hypergraph)
    seed = settings.SEED if seed is None else seed
    tol = settings.TOL if tol is None else tol
    result = search_representation(
        h, dim, seed=seed, starts=starts, budget=budget, jobs=jobs or settings.JOBS, tol=tol
    )
    if result.found:
        line = f"FOUND dim={dim} objective={result.objective:.3e} start={result.start}"
        click.echo(line)
        if output is not None:
            Path(output).write_text(serialize_rep(result.rep), encoding="utf-8")
            success(f"Wrote {output}")
    else:
        line = f"NOT_FOUND dim={dim} best_objective={result.objective:.3e}"
        click.echo(line)
        info("NOT_FOUND only means the search budget ran out; it is not evidence of nonexistence")

    record = VerdictRecord(
        module="reps",
        verdict="FOUND" if result.found else "NOT_FOUND",
        parameters={
            "dim": dim,
            "seed": seed,
            "starts": starts or settings.REP_STARTS,
            "budget": budget or settings.REP_BUDGET,
        },
        tolerances={"tol": tol},
        detail=[line],
    )
    elapsed = {"total_seconds": time.perf_counter() - started} if timings else None
    finish_report(report_path, "analyze repsearch", hypergraph_fingerprint(h), [record], elapsed)


@analyze.command("redundant")
@click.argument("hypergraph", type=click.Path(exists=True, dir_okay=False))
@report_options
@reports_input_errors
def redundant_command(hypergraph: str, report_path: str | None, timings: bool) -> None:
    """Edges whose relation is a linear combination of the earlier edges' relations."""
    started = time.perf_counter()
    h = load_hypergraph(hypergraph)
    redundant = sorted(redundant_edges(h))
    lines = [f"REDUNDANT {index} {' '.join(h.sorted_edge(index))}" for index in redundant]
    lines.append(f"COUNT {len(redundant)}")
    for line in lines:
        click.echo(line)
    record = VerdictRecord(module="core", verdict="OK", detail=lines)
    elapsed = {"total_seconds": time.perf_counter() - started} if timings else None
    finish_report(report_path, "analyze redundant", hypergraph_fingerprint(h), [record], elapsed)


# --------------------------------------------------------------- verify


@cli.group()
def verify() -> None:
    """Independent checks of representations and infeasibility certificates."""


@verify.command("rep")
@click.argument("hypergraph", type=click.Path(exists=True, dir_okay=False))
@click.argument("rep_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--tol", type=float, default=None, help="Operator-norm tolerance for float matrices (default HYC_TOL).")
@report_options
@reports_input_errors
def verify_rep_command(
    hypergraph: str,
    rep_file: str,
    tol: float | None,
    report_path: str | None,
    timings: bool,
) -> None:
    """Check that the matrices are projections summing to the identity along every edge."""
    started = time.perf_counter()
    h = load_hypergraph(hypergraph)
    try:
        rep = parse_rep(read_text(rep_file))
    except ParseError as exc:
        raise InputError(f"{rep_file}: {exc}") from exc
    tol = settings.TOL if tol is None else tol
    violations = verify_representation(h, rep, tol)
    if violations:
        click.echo(f"VIOLATED {len(violations)}")
        for violation in violations:
            click.echo(f"VIOLATION {violation}")
    else:
        click.echo(f"OK dim={rep.dimension} {'exact' if rep.exact else 'numeric'}")

    record = VerdictRecord(
        module="reps",
        verdict="VIOLATED" if violations else "OK",
        parameters={"dim": rep.dimension, "exact": rep.exact},
        tolerances={"tol": tol},
        detail=violations,
    )
    elapsed = {"total_seconds": time.perf_counter() - started} if timings else None
    finish_report(report_path, "verify rep", hypergraph_fingerprint(h), [record], elapsed)


@verify.command("certificate")
@click.argument("hypergraph", type=click.Path(exists=True, dir_okay=False))
@click.argument("certificate", type=click.Path(exists=True, dir_okay=False))
@report_options
@reports_input_errors
def verify_certificate_command(
    hypergraph: str,
    certificate: str,
    report_path: str | None,
    timings: bool,
) -> None:
    """Exact rational check of an infeasibility certificate against the rebuilt relaxation."""
    started = time.perf_counter()
    h = load_hypergraph(hypergraph)
    digest = hypergraph_fingerprint(h)
    document = ReportStore().load(certificate, CertificateFile)
    if document.fingerprint != digest:
        warning("certificate was produced for a different hypergraph fingerprint")

    problem = build_moment_problem(
        h, document.level, tracial=document.tracial, localizing=document.localizing
    )
    reason = verify_certificate(problem, certificate_from_file(document))
    line = "ACCEPTED" if reason is None else f"REJECTED {reason}"
    click.echo(line)

    record = VerdictRecord(
        module="sdp",
        verdict="ACCEPTED" if reason is None else "REJECTED",
        parameters={
            "level": document.level,
            "tracial": document.tracial,
            "localizing": document.localizing,
        },
        detail=[line],
    )
    elapsed = {"total_seconds": time.perf_counter() - started} if timings else None
    finish_report(report_path, "verify certificate", digest, [record], elapsed)


def main() -> None:
    """Entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
