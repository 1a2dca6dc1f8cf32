"""
fibtree 命令行入口

    fibtree count SPEC --depth 5 --root eps
    fibtree entropy SPEC --list-subsystems
    fibtree verify SPEC --naive-depth 4 --dp-depth 8
    fibtree cnn-classify --a 2 --a1=-1 --a2 2 --z 1
    fibtree phase-diagram --a1=-1 --a2 2 --step 0.25 --out phase.csv
    fibtree spec-digest SPEC

退出码：0 成功，2 输入错误，3 校验失败，4 超出资源上限。
"""

import json
import math
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, List

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from .. import __version__
from ..core import (
    LN_GOLDEN,
    DegenerateLogs,
    DepthCap,
    EmptyShift,
    InputError,
    ResourceCap,
    RouteDisagreement,
    SpecDocumentError,
    WorkCap,
    admissible_patterns,
    cnn_entropy,
    cnn_entropy_routes,
    count_colorings_dp,
    critical_a,
    degree1_discrepancies,
    entropy,
    entropy_empirical,
    enumerate_colorings_naive,
    evaluate_subsystems,
    gamma_sequence,
    phase_diagram,
    realizable,
    spec_from_triples,
    spec_from_vertex_matrices,
    write_phase_csv,
)
from ..schemas import CnnTemplate, MarkovFibSpec, RootType, RunReport, SpecDocument
from ..utils import logger, setup_logging

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_CAP = 4

CONSOLE_WIDTH = 160

app = typer.Typer(
    help="Exact counting and entropy of Markov tree-shifts on the Fibonacci-Cayley tree.",
    no_args_is_help=True,
    add_completion=False,
)


class CliState:
    def __init__(self, json_output: bool = False, log2: bool = False):
        self.json_output = json_output
        self.log2 = log2

    @property
    def unit(self) -> str:
        return "bits" if self.log2 else "nats"

    def scale(self, h: float) -> float:
        """--log2 只改变显示"""
        return h / math.log(2) if self.log2 else h


def _console() -> Console:
    return Console(width=CONSOLE_WIDTH, highlight=False, markup=False, soft_wrap=False)


def _fail(message: str, code: int):
    typer.echo(f"error: {message}", err=True)
    raise typer.Exit(code=code)


@contextmanager
def _guard():
    """把库异常映射到退出码"""
    try:
        yield
    except InputError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        _fail(str(e), EXIT_INPUT)
    except ResourceCap as e:
        logger.debug(f"{type(e).__name__}: {e}")
        _fail(str(e), EXIT_CAP)
    except RouteDisagreement as e:
        logger.error(f"{type(e).__name__}: {e}")
        _fail(str(e), EXIT_VERIFY)
    except ValueError as e:
        _fail(str(e), EXIT_INPUT)


# =========================================================================
# 约束文件 (Spec documents)
# =========================================================================


def load_spec_document(path: Path) -> SpecDocument:
    """读取并校验 JSON 约束文件，错误带上行列号或字段路径"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecDocumentError(f"cannot read spec file ({e.strerror})", str(path)) from e

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecDocumentError(e.msg, f"{path}:{e.lineno}:{e.colno}") from e

    try:
        return SpecDocument.model_validate(data)
    except ValidationError as e:
        err = e.errors()[0]
        field = ".".join(str(x) for x in err["loc"]) or "<root>"
        raise SpecDocumentError(err["msg"], f"{path}:{field}") from e


def spec_from_document(doc: SpecDocument) -> MarkovFibSpec:
    if doc.is_vertex:
        return spec_from_vertex_matrices(doc.alphabet, doc.A1, doc.A2)
    return spec_from_triples(doc.alphabet, doc.triples, kind="raw")


def _emit(ctx: typer.Context, report: RunReport, started: float, render) -> None:
    """JSON 模式输出整份报告；否则渲染表格。wall time 总是最后一行"""
    report.wall_time = round(time.perf_counter() - started, 6)
    logger.info(f"{report.command} finished in {report.wall_time:.3f}s")
    state: CliState = ctx.obj
    if state.json_output:
        typer.echo(json.dumps(report.model_dump(), indent=2, ensure_ascii=False))
        return
    console = _console()
    if report.spec_digest:
        console.print(f"spec digest: {report.spec_digest}")
    render(console)
    console.print(f"wall time: {report.wall_time:.3f}s")


# =========================================================================
# 命令 (Commands)
# =========================================================================


@app.callback()
def main(
    ctx: typer.Context,
    json_output: bool = typer.Option(
        False, "--json", help="Emit the run report as JSON instead of tables"
    ),
    log2: bool = typer.Option(False, "--log2", help="Display entropies in bits"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
):
    setup_logging(level="DEBUG" if verbose else None)
    ctx.obj = CliState(json_output=json_output, log2=log2)


@app.command()
def count(
    ctx: typer.Context,
    spec_file: Path = typer.Argument(..., help="JSON spec document"),
    depth: int = typer.Option(5, "--depth", "-n", min=1, help="Largest height"),
    root: RootType = typer.Option(RootType.EPSILON, "--root", help="Root type"),
):
    """
    Tabulate gamma[i][m] for m <= depth with both finite-height entropy estimators.
    """
    started = time.perf_counter()
    # 精确整数完整输出，不受 int -> str 位数限制
    sys.set_int_max_str_digits(0)
    state: CliState = ctx.obj

    with _guard():
        doc = load_spec_document(spec_file)
        spec = spec_from_document(doc)
        logger.info(f"count: {len(spec.alphabet)} symbols, depth {depth}, root {root.value}")
        table = gamma_sequence(spec, depth)

        rows: List[Dict[str, Any]] = []
        for m in range(1, depth + 1):
            estimators = None
            if m >= 3:
                try:
                    estimators = [state.scale(x) for x in entropy_empirical(spec, m)]
                except DegenerateLogs:
                    pass
            rows.append(
                {"n": m, "gamma": list(table.column(m, root)), "estimators": estimators}
            )

    report = RunReport(
        command=f"count --depth {depth} --root {root.value}",
        spec_digest=doc.digest(),
        results={"alphabet": list(spec.alphabet), "root": root.value, "rows": rows},
        version=__version__,
    )

    def render(console: Console):
        t = Table(title=f"gamma ({root.value}-rooted)")
        t.add_column("n", justify="right")
        for label in spec.alphabet:
            t.add_column(label, justify="right", overflow="fold")
        t.add_column(f"ln ln γ_n / n ({state.unit})", justify="right")
        t.add_column(f"ln Σ ln γ_i;n / n ({state.unit})", justify="right")
        for row in rows:
            est = row["estimators"]
            cells = [f"{x:.10f}" for x in est] if est else ["-", "-"]
            t.add_row(str(row["n"]), *(str(g) for g in row["gamma"]), *cells)
        console.print(t)

    _emit(ctx, report, started, render)


@app.command("entropy")
def entropy_cmd(
    ctx: typer.Context,
    spec_file: Path = typer.Argument(..., help="JSON spec document"),
    list_subsystems: bool = typer.Option(
        False, "--list-subsystems", help="List every simple subsystem with its spectral radius"
    ),
):
    """
    Topological entropy, witness subsystem and symbol classification.
    """
    started = time.perf_counter()
    state: CliState = ctx.obj

    with _guard():
        doc = load_spec_document(spec_file)
        spec = spec_from_document(doc)
        logger.info(f"entropy: {len(spec.alphabet)} symbols")
        result = entropy(spec)
        listing = []
        if list_subsystems and result.classification.essential:
            listing = evaluate_subsystems(spec, result.classification)

    alphabet = spec.alphabet
    witness = result.witness.describe(alphabet) if result.witness else None
    classes = {label: c.value for label, c in result.classification.classes().items()}
    results: Dict[str, Any] = {
        "value": state.scale(result.value),
        "unit": state.unit,
        "spectral_radius": result.spectral_radius,
        "witness": witness,
        "classification": classes,
        "subsystem_count": result.subsystem_count,
    }
    if list_subsystems:
        results["subsystems"] = [
            {"choice": sub.describe(alphabet), "spectral_radius": rho} for sub, rho in listing
        ]

    report = RunReport(
        command="entropy" + (" --list-subsystems" if list_subsystems else ""),
        spec_digest=doc.digest(),
        results=results,
        version=__version__,
    )

    def render(console: Console):
        console.print(f"entropy: {results['value']:.10f} {state.unit}")
        console.print(f"witness: {witness or '-'}")
        console.print(f"simple subsystems: {result.subsystem_count}")
        t = Table(title="symbols")
        t.add_column("symbol")
        t.add_column("class")
        for label, cls in classes.items():
            t.add_row(label, cls)
        console.print(t)
        if list_subsystems:
            st = Table(title="simple subsystems")
            st.add_column("#", justify="right")
            st.add_column("choice", overflow="fold")
            st.add_column("ρ", justify="right")
            st.add_column(f"ln ρ ({state.unit})", justify="right")
            for i, (sub, rho) in enumerate(listing, start=1):
                h = state.scale(math.log(max(rho, 1.0)))
                st.add_row(str(i), sub.describe(alphabet), f"{rho:.10f}", f"{h:.10f}")
            console.print(st)

    _emit(ctx, report, started, render)


def _verify_cells(spec: MarkovFibSpec, naive_depth: int, dp_depth: int) -> List[Dict[str, Any]]:
    """每个 (oracle, root type, symbol, height) 一格；上限错误记为 SKIP"""
    table = gamma_sequence(spec, max(naive_depth, dp_depth, 1))
    oracles = (("naive", enumerate_colorings_naive, naive_depth), ("dp", count_colorings_dp, dp_depth))

    cells = []
    for name, oracle, max_n in oracles:
        for root_type in RootType:
            for i, label in enumerate(spec.alphabet):
                for n in range(1, max_n + 1):
                    expected = table.value(root_type, i, n)
                    cell = {
                        "oracle": name,
                        "root": root_type.value,
                        "symbol": label,
                        "n": n,
                        "recursion": expected,
                    }
                    try:
                        got = oracle(spec, root_type, n, i)
                    except (WorkCap, DepthCap) as e:
                        cell.update(oracle_count=None, status="SKIP", note=str(e))
                    else:
                        cell.update(oracle_count=got, status="PASS" if got == expected else "FAIL")
                    cells.append(cell)
    return cells


@app.command()
def verify(
    ctx: typer.Context,
    spec_file: Path = typer.Argument(..., help="JSON spec document"),
    naive_depth: int = typer.Option(4, "--naive-depth", min=0, help="Heights checked by brute force"),
    dp_depth: int = typer.Option(8, "--dp-depth", min=0, help="Heights checked by tree DP"),
):
    """
    Compare the closed recursion against the brute-force and tree-DP oracles.
    """
    started = time.perf_counter()

    with _guard():
        doc = load_spec_document(spec_file)
        try:
            spec = spec_from_document(doc)
        except EmptyShift as e:
            logger.info(f"verify: {e}")
            spec, cells = None, []
        else:
            logger.info(f"verify: naive up to n={naive_depth}, dp up to n={dp_depth}")
            cells = _verify_cells(spec, naive_depth, dp_depth)

    failures = [c for c in cells if c["status"] == "FAIL"]
    results: Dict[str, Any] = {
        "empty_shift": spec is None,
        "cells": cells,
        "passed": sum(c["status"] == "PASS" for c in cells),
        "skipped": sum(c["status"] == "SKIP" for c in cells),
        "failed": len(failures),
        "first_failure": failures[0] if failures else None,
    }
    report = RunReport(
        command=f"verify --naive-depth {naive_depth} --dp-depth {dp_depth}",
        spec_digest=doc.digest(),
        results=results,
        version=__version__,
    )

    def render(console: Console):
        if spec is None:
            console.print("empty shift: nothing to verify (PASS)")
            return
        t = Table(title="oracle equivalence")
        for col in ("oracle", "root", "symbol", "n", "recursion", "oracle count", "status"):
            t.add_column(col, overflow="fold")
        for c in cells:
            got = "-" if c["oracle_count"] is None else str(c["oracle_count"])
            t.add_row(
                c["oracle"], c["root"], c["symbol"], str(c["n"]), str(c["recursion"]), got, c["status"]
            )
        console.print(t)
        console.print(
            f"PASS {results['passed']}  FAIL {results['failed']}  SKIP {results['skipped']}"
        )
        if failures:
            f = failures[0]
            console.print(
                f"first mismatch: {f['oracle']} {f['root']} symbol {f['symbol']} n={f['n']}: "
                f"recursion {f['recursion']} != oracle {f['oracle_count']}"
            )

    _emit(ctx, report, started, render)
    if failures:
        raise typer.Exit(code=EXIT_VERIFY)


@app.command("cnn-classify")
def cnn_classify(
    ctx: typer.Context,
    a: float = typer.Option(..., "--a", help="Self-feedback weight"),
    a1: float = typer.Option(..., "--a1", help="Feedback weight of child 1"),
    a2: float = typer.Option(..., "--a2", help="Feedback weight of child 2"),
    z: float = typer.Option(..., "--z", help="Threshold"),
):
    """
    Admissible local patterns, region [p, q], realizability and entropy of a template.
    """
    started = time.perf_counter()
    state: CliState = ctx.obj

    with _guard():
        t = CnnTemplate(a=a, a1=a1, a2=a2, z=z)
        logger.info(f"cnn-classify: template {t.as_tuple()}")
        B = admissible_patterns(t)
        formula, machinery = cnn_entropy_routes(t)
        h = cnn_entropy(t)
        real = realizable(B)
        discrepancies = degree1_discrepancies(t)

    region = B.region
    patterns = [str(u) for u in B.patterns()]
    results = {
        "template": {"a": a, "a1": a1, "a2": a2, "z": z},
        "region": [region.p, region.q],
        "patterns": patterns,
        "realizable": real.realizable,
        "realizable_condition": real.condition,
        "entropy": state.scale(h),
        "entropy_formula": state.scale(formula),
        "entropy_machinery": state.scale(machinery),
        "unit": state.unit,
        "critical_a": critical_a(a1, a2, z),
        "degree1_discrepancies": [
            {"parent": d.parent, "child": d.child, "restriction": d.restriction, "intrinsic": d.intrinsic}
            for d in discrepancies
        ],
    }
    report = RunReport(
        command=f"cnn-classify --a {a} --a1 {a1} --a2 {a2} --z {z}",
        results=results,
        version=__version__,
    )

    def render(console: Console):
        console.print(f"region: {region}")
        console.print(f"B_{region} = {{{', '.join(patterns)}}}")
        cond = f" ({real.condition})" if real.condition else ""
        console.print(f"realizable: {'yes' if real.realizable else 'no'}{cond}")
        console.print(
            f"entropy: {results['entropy']:.10f} {state.unit} "
            f"(formula {results['entropy_formula']:.10f}, machinery {results['entropy_machinery']:.10f})"
        )
        console.print(f"critical a at z={z}: {results['critical_a']:.10f}")
        if discrepancies:
            console.print(f"degree-1 semantics disagree on {len(discrepancies)} (parent, child) pairs")

    _emit(ctx, report, started, render)


@app.command("phase-diagram")
def phase_diagram_cmd(
    ctx: typer.Context,
    a1: float = typer.Option(..., "--a1", help="Feedback weight of child 1"),
    a2: float = typer.Option(..., "--a2", help="Feedback weight of child 2"),
    a_min: float = typer.Option(-5.0, "--a-min"),
    a_max: float = typer.Option(5.0, "--a-max"),
    z_min: float = typer.Option(-5.0, "--z-min"),
    z_max: float = typer.Option(5.0, "--z-max"),
    step: float = typer.Option(0.25, "--step", help="Grid spacing in a and z"),
    out: Path = typer.Option(..., "--out", "-o", help="CSV output path"),
):
    """
    Sweep the (a, z) grid, write the CSV and summarise regions and entropies.
    """
    started = time.perf_counter()
    state: CliState = ctx.obj

    logger.info(f"phase-diagram: a1={a1}, a2={a2}, step {step}")
    with _guard():
        diagram = phase_diagram(
            a1,
            a2,
            (a_min, a_max),
            (z_min, z_max),
            step,
            show_progress=not state.json_output and sys.stderr.isatty(),
        )
    try:
        write_phase_csv(diagram, out)
    except OSError as e:
        _fail(f"cannot write {out}: {e.strerror or e}", EXIT_INPUT)

    census: Dict[str, int] = {}
    for row in diagram.rows:
        key = f"{state.scale(row.entropy):.10f}"
        census[key] = census.get(key, 0) + 1
    dichotomy = all(
        abs(row.entropy) <= 1e-10 or abs(row.entropy - LN_GOLDEN) <= 1e-10 for row in diagram.rows
    )
    results = {
        "csv": str(out),
        "rows": len(diagram.rows),
        "skipped": len(diagram.skipped),
        "regions": [list(pq) for pq in diagram.regions()],
        "entropy_census": dict(sorted(census.items())),
        "unit": state.unit,
        "dichotomy": dichotomy,
    }
    report = RunReport(
        command=(
            f"phase-diagram --a1 {a1} --a2 {a2} --a-min {a_min} --a-max {a_max} "
            f"--z-min {z_min} --z-max {z_max} --step {step}"
        ),
        results=results,
        version=__version__,
    )

    def render(console: Console):
        console.print(f"wrote {results['rows']} rows to {out}")
        console.print(f"distinct regions: {len(results['regions'])}")
        console.print(f"boundary cells skipped: {results['skipped']}")
        t = Table(title=f"entropy census ({state.unit})")
        t.add_column("entropy", justify="right")
        t.add_column("cells", justify="right")
        for value, n in results["entropy_census"].items():
            t.add_row(value, str(n))
        console.print(t)
        console.print(f"dichotomy holds: {'yes' if dichotomy else 'NO'}")

    _emit(ctx, report, started, render)
    if not dichotomy:
        raise typer.Exit(code=EXIT_VERIFY)


@app.command("spec-digest")
def spec_digest(
    spec_file: Path = typer.Argument(..., help="JSON spec document"),
):
    """
    Print the content digest of the canonicalised spec document.
    """
    with _guard():
        doc = load_spec_document(spec_file)
    typer.echo(doc.digest())


if __name__ == "__main__":
    app()
