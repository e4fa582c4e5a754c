"""
Command Line Interface for polycover
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text
from typer.core import TyperGroup

try:  # typer >= 0.26 vendors click and raises its own exception classes
    from typer._click.exceptions import UsageError
except ImportError:
    from click.exceptions import UsageError

from models import AppendixProcedure
from runner import PolycoverRunner
from utils import (
    ConsistencyError,
    InputError,
    PolycoverError,
    configure_logging,
    dump_json,
    load_json_file,
    validate_graph_input,
    validate_ideal_input,
    validate_matrix_input,
)


class PolycoverGroup(TyperGroup):
    """Usage errors (missing or unparsable options, bad choices) are malformed input"""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except UsageError as e:
            e.exit_code = InputError.exit_code
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except UsageError as e:
            e.exit_code = InputError.exit_code
            raise


# Initialize Typer app and Rich console; stdout carries JSON only
app = typer.Typer(
    name="polycover",
    cls=PolycoverGroup,
    help="Polyhedral invariants of monomial ideals and their filtrations",
    add_completion=False,
)
console = Console(stderr=True)

IDEAL = typer.Option(None, "--ideal", help="JSON file with {vars, gens}")
GRAPH = typer.Option(None, "--graph", help="JSON file with {vertices, edges}, 1-based")
MATRIX = typer.Option(None, "--matrix", help="JSON file with {vars, columns} of a covering matrix")
GENS = typer.Option(None, "--gens", help="Comma-separated monomials, e.g. 't1*t2^2,t3'")
VARS = typer.Option(None, "--vars", help="Number of variables for --gens")
N = typer.Option(None, "--n", min=1, help="Power or filtration index")
MAX_N = typer.Option(4, "--max-n", min=1, help="Range of n checked by filtration consistency tests")
SYMBOLIC = typer.Option(False, "--symbolic", help="Use the symbolic filtration of the ideal")
EDGE_IDEAL = typer.Option(False, "--edge-ideal", help="Use the edge ideal of --graph (default)")
COVER_IDEAL = typer.Option(False, "--cover-ideal", help="Use the cover ideal of --graph")
ACKNOWLEDGE = typer.Option(
    False,
    "--acknowledge-normal-components",
    help="Assume the isolated components of a non-squarefree ideal are normal",
)
OUTPUT = typer.Option(None, "--output", "-o", help="Write the report to a file instead of stdout")
FORMAT = typer.Option("json", "--format", "-f", help="Report format for --output: json or markdown")
TIMING = typer.Option(False, "--timing", help="Include wall-clock timing in the report")
VERBOSE = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr")


def print_header(title: str):
    """Print a header panel on stderr"""
    console.print(Panel(Text(f"🔷 polycover {title}", style="bold blue"), expand=False))


def fail(error: PolycoverError):
    """Print an error and exit with its code"""
    console.print(f"❌ {type(error).__name__}: {error}", style="red")
    raise typer.Exit(error.exit_code)


def load_input(file_path: Path, validator) -> Dict[str, Any]:
    """Load an input file and report every validation error at once"""
    data = load_json_file(file_path)
    errors = validator(data)
    if errors:
        console.print(f"❌ Input validation errors in {file_path}:", style="red")
        for error in errors:
            console.print(f"  - {error}", style="red")
        raise typer.Exit(InputError.exit_code)
    return data


def build_request(
    command: str,
    ideal: Optional[Path] = None,
    graph: Optional[Path] = None,
    matrix: Optional[Path] = None,
    gens: Optional[str] = None,
    num_vars: Optional[int] = None,
    **flags,
) -> Dict[str, Any]:
    request: Dict[str, Any] = {"command": command}
    if ideal is not None:
        request["ideal"] = load_input(ideal, validate_ideal_input)
    elif gens is not None:
        if num_vars is None:
            raise InputError("--gens needs --vars")
        request["ideal"] = {"vars": num_vars, "gens": [g.strip() for g in gens.split(",")]}
    if graph is not None:
        request["graph"] = load_input(graph, validate_graph_input)
    if matrix is not None:
        request["matrix"] = load_input(matrix, validate_matrix_input)
    request.update({key: value for key, value in flags.items() if value is not None})
    return request


def execute(
    command: str,
    output: Optional[str] = None,
    format: str = "json",
    timing: bool = False,
    verbose: bool = False,
    **inputs,
):
    """Run one subcommand and emit its report"""
    configure_logging(verbose)
    try:
        runner = PolycoverRunner(timing=timing)
        report = runner.run(build_request(command, **inputs))
        if output:
            runner.export_report(report, output, format)
            console.print(f"💾 Report saved to: {output}", style="green")
        else:
            typer.echo(dump_json(report.payload()), nl=False)
    except PolycoverError as e:
        fail(e)


@app.command()
def vertices(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    matrix: Optional[Path] = MATRIX,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    symbolic: bool = SYMBOLIC,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Vertices of Q(C), Q(I) or the symbolic polyhedron"""
    execute(
        "vertices", output, format, timing, verbose,
        ideal=ideal, graph=graph, matrix=matrix, gens=gens, num_vars=num_vars,
        symbolic=symbolic, cover_ideal=cover_ideal,
    )


@app.command()
def newton(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """H-representation Q(B) of the Newton polyhedron NP(I)"""
    execute(
        "newton", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars, cover_ideal=cover_ideal,
    )


@app.command("irreducible-polyhedron")
def irreducible_polyhedron(
    ideal: Optional[Path] = IDEAL,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """IP(I) from the irreducible decomposition"""
    execute(
        "irreducible-polyhedron", output, format, timing, verbose,
        ideal=ideal, gens=gens, num_vars=num_vars,
    )


@app.command("rees-facets")
def rees_facets(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    edge_ideal: bool = EDGE_IDEAL,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Primitive facet normals of the Rees cone RC(I)"""
    execute(
        "rees-facets", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars,
        edge_ideal=edge_ideal, cover_ideal=cover_ideal,
    )


@app.command("hilbert-basis")
def hilbert_basis(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    matrix: Optional[Path] = MATRIX,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    symbolic: bool = SYMBOLIC,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Hilbert basis of the Simis cone (--matrix, --symbolic) or the Rees cone"""
    execute(
        "hilbert-basis", output, format, timing, verbose,
        ideal=ideal, graph=graph, matrix=matrix, gens=gens, num_vars=num_vars,
        symbolic=symbolic, cover_ideal=cover_ideal,
    )


@app.command("rees-generators")
def rees_generators(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    matrix: Optional[Path] = MATRIX,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    symbolic: bool = SYMBOLIC,
    cover_ideal: bool = COVER_IDEAL,
    acknowledge: bool = ACKNOWLEDGE,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Generators t^a z^d of the Rees algebra of a filtration"""
    execute(
        "rees-generators", output, format, timing, verbose,
        ideal=ideal, graph=graph, matrix=matrix, gens=gens, num_vars=num_vars,
        symbolic=symbolic, cover_ideal=cover_ideal, acknowledge_normal_components=acknowledge,
    )


@app.command()
def power(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    n: Optional[int] = N,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Ordinary power I^n"""
    execute(
        "power", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars, n=n, cover_ideal=cover_ideal,
    )


@app.command("symbolic-power")
def symbolic_power(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    n: Optional[int] = N,
    cover_ideal: bool = COVER_IDEAL,
    acknowledge: bool = ACKNOWLEDGE,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Symbolic power I^(n)"""
    execute(
        "symbolic-power", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars, n=n,
        cover_ideal=cover_ideal, acknowledge_normal_components=acknowledge,
    )


@app.command("closure-power")
def closure_power(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    n: Optional[int] = N,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Integral closure of I^n"""
    execute(
        "closure-power", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars, n=n, cover_ideal=cover_ideal,
    )


@app.command()
def normal(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Normality of I, with a witness when it fails"""
    execute(
        "normal", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars, cover_ideal=cover_ideal,
    )


@app.command()
def mfmc(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Max-flow min-cut property of a clutter"""
    execute(
        "mfmc", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars,
    )


@app.command("np-eq-ip")
def np_eq_ip(
    ideal: Optional[Path] = IDEAL,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Whether NP(I) equals IP(I)"""
    execute(
        "np-eq-ip", output, format, timing, verbose,
        ideal=ideal, gens=gens, num_vars=num_vars,
    )


@app.command()
def waldschmidt(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    matrix: Optional[Path] = MATRIX,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    symbolic: bool = SYMBOLIC,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Waldschmidt constant with an optimal vertex"""
    execute(
        "waldschmidt", output, format, timing, verbose,
        ideal=ideal, graph=graph, matrix=matrix, gens=gens, num_vars=num_vars,
        symbolic=symbolic, cover_ideal=cover_ideal,
    )


@app.command()
def filtration(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    matrix: Optional[Path] = MATRIX,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    max_n: int = MAX_N,
    symbolic: bool = SYMBOLIC,
    cover_ideal: bool = COVER_IDEAL,
    acknowledge: bool = ACKNOWLEDGE,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """alpha sequence, strictness and equality verdicts of a filtration"""
    execute(
        "filtration", output, format, timing, verbose,
        ideal=ideal, graph=graph, matrix=matrix, gens=gens, num_vars=num_vars, max_n=max_n,
        symbolic=symbolic, cover_ideal=cover_ideal, acknowledge_normal_components=acknowledge,
    )


@app.command("resurgence-ic")
def resurgence_ic(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    matrix: Optional[Path] = MATRIX,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    edge_ideal: bool = EDGE_IDEAL,
    cover_ideal: bool = COVER_IDEAL,
    symbolic: bool = SYMBOLIC,
    assume_strict: bool = typer.Option(
        False, "--assume-strict", help="Accept strictness of the filtration without evidence"
    ),
    acknowledge: bool = ACKNOWLEDGE,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """ic-resurgence of a filtration, or of the symbolic filtration of an ideal"""
    execute(
        "resurgence-ic", output, format, timing, verbose,
        ideal=ideal, graph=graph, matrix=matrix, gens=gens, num_vars=num_vars,
        edge_ideal=edge_ideal, cover_ideal=cover_ideal, symbolic=symbolic,
        assume_strict=assume_strict, acknowledge_normal_components=acknowledge,
    )


@app.command("graph-invariants")
def graph_invariants(
    graph: Optional[Path] = GRAPH,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Clique number, covering number, perfectness and bipartiteness"""
    execute("graph-invariants", output, format, timing, verbose, graph=graph)


@app.command("cover-bound")
def cover_bound(
    graph: Optional[Path] = GRAPH,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """2(omega - 1)/omega for the cover ideal, exact when the graph is perfect"""
    execute("cover-bound", output, format, timing, verbose, graph=graph)


@app.command("edge-bound")
def edge_bound(
    graph: Optional[Path] = GRAPH,
    raise_cap: bool = typer.Option(
        False, "--raise-cap", help="Lift the induced-subgraph cap up to POLYCOVER_MAX_DIM"
    ),
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Lower bound 2 alpha0(H)/|V(H)| for the edge ideal"""
    execute("edge-bound", output, format, timing, verbose, graph=graph, raise_cap=raise_cap)


@app.command()
def decompose(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Irredundant irreducible decomposition"""
    execute(
        "decompose", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars, cover_ideal=cover_ideal,
    )


@app.command("alexander-dual")
def alexander_dual(
    ideal: Optional[Path] = IDEAL,
    graph: Optional[Path] = GRAPH,
    gens: Optional[str] = GENS,
    num_vars: Optional[int] = VARS,
    cover_ideal: bool = COVER_IDEAL,
    output: Optional[str] = OUTPUT,
    format: str = FORMAT,
    timing: bool = TIMING,
    verbose: bool = VERBOSE,
):
    """Alexander dual of a squarefree ideal"""
    execute(
        "alexander-dual", output, format, timing, verbose,
        ideal=ideal, graph=graph, gens=gens, num_vars=num_vars, cover_ideal=cover_ideal,
    )


@app.command()
def replay(
    which: List[AppendixProcedure] = typer.Argument(None, help="Procedures to replay (default: all)"),
    update: bool = typer.Option(False, "--update", help="Rewrite the golden files instead of diffing"),
    verbose: bool = VERBOSE,
):
    """Replay the bundled appendix procedures against their golden files"""
    configure_logging(verbose)
    print_header("replay")
    runner = PolycoverRunner()
    procedures = which or list(AppendixProcedure)

    table = Table(title="📋 Appendix replay")
    table.add_column("Procedure", style="cyan")
    table.add_column("Status", style="green")

    try:
        for procedure in procedures:
            if update:
                path = runner.write_golden(procedure)
                table.add_row(procedure.value, f"💾 wrote {path.name}")
            else:
                runner.replay_appendix(procedure)
                table.add_row(procedure.value, "✅ matches golden file")
    except PolycoverError as e:
        console.print(table)
        fail(e)
    console.print(table)


@app.command()
def verify(
    report: Path = typer.Argument(..., help="JSON report written by another subcommand"),
    verbose: bool = VERBOSE,
):
    """Re-validate the certificate of a JSON report"""
    configure_logging(verbose)
    try:
        problems = PolycoverRunner().verify(load_json_file(report))
    except PolycoverError as e:
        fail(e)
    if problems:
        console.print(f"❌ Certificate of {report} failed:", style="red")
        for problem in problems:
            console.print(f"  - {problem}", style="red")
        raise typer.Exit(ConsistencyError.exit_code)
    console.print(f"✅ Certificate of {report} checks out", style="green")


def main():
    """Entry point for CLI"""
    app()


if __name__ == "__main__":
    main()
