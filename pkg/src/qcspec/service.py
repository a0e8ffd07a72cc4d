"""FastAPI service exposing the bound reports over HTTP.

Long sweeps and FEM verification runs are natural server-side work; the CLI
is a thin client that either calls these handlers in process or targets a
running instance via ``--server``.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__, report
from .analysis import PolarGrid
from .errors import ConvergenceError, InvalidParameterError
from .models import (
    AnalyzeRequest,
    AnalyzeResponse,
    HealthResponse,
    PaperTableRequest,
    PaperTableResponse,
    SweepRequest,
    SweepResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="qcspec", version=__version__)


def _family(req) -> object:
    return report.make_family(req.family, a=req.a, A=req.A, B=req.B, n=req.n)


def _bad_request(exc: InvalidParameterError) -> HTTPException:
    return HTTPException(status_code=400, detail={"error": "invalid-parameters", "message": str(exc)})


def _solver_failure(exc: ConvergenceError) -> HTTPException:
    return HTTPException(status_code=500, detail={"error": "no-convergence", "message": str(exc)})


@app.get("/health", response_model=HealthResponse)
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze(req: AnalyzeRequest) -> dict:
    try:
        payload = report.analyze_report(_family(req), PolarGrid(req.grid_radial, req.grid_angular))
    except InvalidParameterError as exc:
        raise _bad_request(exc) from exc
    return report.round_floats(payload)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> dict:
    try:
        payload = report.verify_report(_family(req), rings=req.rings, tol=req.tol)
    except InvalidParameterError as exc:
        raise _bad_request(exc) from exc
    except ConvergenceError as exc:
        raise _solver_failure(exc) from exc
    return report.round_floats(payload)


@app.post("/paper-table", response_model=PaperTableResponse)
def paper_table(req: PaperTableRequest) -> dict:
    try:
        payload = report.paper_table(rings=req.rings, rose_petal_rings=req.rose_petal_rings, tol=req.tol)
    except InvalidParameterError as exc:
        raise _bad_request(exc) from exc
    except ConvergenceError as exc:
        raise _solver_failure(exc) from exc
    return report.round_floats(payload)


@app.post("/sweep", response_model=SweepResponse)
def sweep(req: SweepRequest) -> dict:
    base = {k: v for k, v in (("a", req.a), ("A", req.A), ("B", req.B), ("n", req.n)) if v is not None}
    base.pop(req.param, None)
    try:
        payload = report.sweep(
            req.family,
            req.param,
            req.start,
            req.stop,
            req.step,
            with_fem=req.with_fem,
            rings=req.rings,
            tol=req.tol,
            base_params=base,
        )
    except InvalidParameterError as exc:
        raise _bad_request(exc) from exc
    except ConvergenceError as exc:
        raise _solver_failure(exc) from exc
    return report.round_floats(payload)
