"""HTTP service wrapping the reliability engine.

Endpoints accept the network text inline so any client can submit graphs
without shared storage. Parse problems come back as 400 with the offending
line, violated size guards as 422; both carry a structured error body the
CLI maps onto its exit codes.
"""

from __future__ import annotations

import hashlib
import time

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..engine import factor
from ..irrelevance import sweep
from ..network import Network, ParseError, parse_network, serialize_network
from ..oracles import GuardError, enum_exact, enumerate_minpaths, inclusion_exclusion, monte_carlo
from ..reductions import apply_all
from .schemas import (
    CompareRequest,
    CompareResponse,
    CompareRow,
    ComputeRequest,
    IrrelevanceRequest,
    IrrelevanceResponse,
    IrrelevanceRow,
    ReduceRequest,
    ReduceResponse,
    RunReport,
    TraceStepModel,
)

#: Non-sampling methods must agree with enumeration within this bound.
GATE_TOLERANCE = 1e-9


def evaluate_gate(rows: list[CompareRow], tolerance: float = GATE_TOLERANCE) -> bool:
    """The comparison gate: every non-sampling method with a known deviation
    from enumeration must agree within the tolerance. Monte Carlo rows are
    informational only; without an enumeration row there is nothing to gate."""
    return all(
        row.delta_vs_enum is None or row.method == "mc" or row.delta_vs_enum <= tolerance
        for row in rows
    )


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _run_method(net: Network, method: str, seed: int, samples: int) -> tuple[float, dict[str, int | float]]:
    if method == "factor":
        outcome = factor(net)
        return outcome.reliability, {
            "recursion_nodes": outcome.recursion_nodes,
            "leaves_one": outcome.leaves_one,
            "leaves_zero": outcome.leaves_zero,
            "reductions_applied": outcome.reductions_applied,
        }
    if method == "enum":
        return enum_exact(net), {
            "links": len(net.links),
            "states": 2 ** len(net.links),
        }
    if method == "ie":
        value = inclusion_exclusion(net)
        return value, {"minpaths": len(enumerate_minpaths(net))}
    if method == "mc":
        estimate = monte_carlo(net, samples, seed)
        return estimate.estimate, {
            "standard_error": estimate.standard_error,
            "samples": estimate.samples,
            "seed": estimate.seed,
        }
    raise ValueError(f"unknown method {method!r}")


def create_app() -> FastAPI:
    app = FastAPI(title="dcrel", version=__version__)

    @app.exception_handler(ParseError)
    async def parse_error_handler(_request: Request, exc: ParseError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": {"kind": "parse", "message": str(exc), "line": exc.line}},
        )

    @app.exception_handler(GuardError)
    async def guard_error_handler(_request: Request, exc: GuardError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": {"kind": "guard", "message": str(exc), "line": None}},
        )

    @app.get("/healthz")
    def healthz() -> dict[str, str]:
        return {"status": "ok", "version": __version__}

    @app.post("/compute", response_model=RunReport)
    def compute(req: ComputeRequest) -> RunReport:
        net = parse_network(req.network, diameter=req.diameter)
        started = time.perf_counter()
        reliability, stats = _run_method(net, req.method, req.seed, req.samples)
        return RunReport(
            method=req.method,
            reliability=reliability,
            statistics=stats,
            wall_time_seconds=time.perf_counter() - started,
            input_digest=_digest(req.network),
        )

    @app.post("/irrelevant", response_model=IrrelevanceResponse)
    def irrelevant(req: IrrelevanceRequest) -> IrrelevanceResponse:
        net = parse_network(req.network, diameter=req.diameter)
        rows = []
        for report in sweep(net):
            link = net.link(report.link_id)
            threshold = report.relevance_threshold
            rows.append(IrrelevanceRow(
                link_id=report.link_id,
                endpoints=(link.u, link.v),
                cond1=report.cond1,
                cond2=report.cond2,
                cond3=report.cond3,
                exact_irrelevant=report.exact_irrelevant,
                relevance_threshold=None if threshold == float("inf") else int(threshold),
            ))
        return IrrelevanceResponse(
            diameter=net.diameter, rows=rows, input_digest=_digest(req.network)
        )

    @app.post("/reduce", response_model=ReduceResponse)
    def reduce(req: ReduceRequest) -> ReduceResponse:
        net = parse_network(req.network, diameter=req.diameter)
        reduced, trace = apply_all(net)
        return ReduceResponse(
            network=serialize_network(reduced),
            diameter=reduced.diameter,
            trace=[
                TraceStepModel(
                    rule=s.rule,
                    links=s.links,
                    nodes=s.nodes,
                    diameter_delta=s.diameter_delta,
                    factor=s.factor,
                )
                for s in trace.steps
            ],
            total_factor=trace.total_factor,
            total_diameter_delta=trace.total_diameter_delta,
            input_digest=_digest(req.network),
        )

    @app.post("/compare", response_model=CompareResponse)
    def compare(req: CompareRequest) -> CompareResponse:
        net = parse_network(req.network, diameter=req.diameter)
        values: dict[str, tuple[float, float]] = {}
        for method in req.methods:
            started = time.perf_counter()
            reliability, _stats = _run_method(net, method, req.seed, req.samples)
            values[method] = (reliability, time.perf_counter() - started)
        enum_value = values.get("enum", (None, None))[0]
        rows = []
        for method in req.methods:
            reliability, wall = values[method]
            rows.append(CompareRow(
                method=method,
                reliability=reliability,
                delta_vs_enum=None if enum_value is None else abs(reliability - enum_value),
                wall_time_seconds=wall,
            ))
        return CompareResponse(
            rows=rows,
            gate_passed=evaluate_gate(rows),
            gate_tolerance=GATE_TOLERANCE,
            input_digest=_digest(req.network),
        )

    return app
