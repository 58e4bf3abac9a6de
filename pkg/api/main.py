#!/usr/bin/env python3
"""
FastAPI application for quadzeros
Point queries on the zero-containing interval, reality verdicts, theta samples
and the limit-set test
"""

from typing import List, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from loguru import logger
from pydantic import BaseModel

from quadzeros import __version__
from quadzeros.asymptotics import confirm_nonreal, dominance
from quadzeros.config import load_settings
from quadzeros.errors import InvalidParams, QuadZerosError
from quadzeros.realroots import verdict
from quadzeros.recurrence import NormParams, gen_H
from quadzeros.thetaengine import sample
from quadzeros.zerolocus import interval_H, reality_condition, zeta0

# Initialize FastAPI app
app = FastAPI(
    title="quadzeros API",
    description="Zeros of four-term recurrence polynomials: verdicts, intervals and limit points",
    version=__version__,
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Pydantic models for API responses
class IntervalResponse(BaseModel):
    a: str
    b: str
    zeta0: Optional[float] = None
    endpoint: float
    degenerate: bool
    interval: str


class VerdictResponse(BaseModel):
    a: str
    b: str
    m: int
    degree: int
    real_count: int
    all_real: bool
    coefficients: List[str]


class SampleResponse(BaseModel):
    theta: float
    zeta: float
    tau: float
    z: float
    residual: float


class DominanceResponse(BaseModel):
    z_re: float
    z_im: float
    moduli: List[float]
    gap: float
    in_limit_set: bool


class ClassifyResponse(BaseModel):
    a: str
    b: str
    condition: bool
    counterexample_m: Optional[int] = None


def _params(a: str, b: str) -> NormParams:
    try:
        return NormParams(a, b)
    except InvalidParams as e:
        raise HTTPException(status_code=422, detail=str(e))


def _library_error(e: QuadZerosError, what: str) -> HTTPException:
    if isinstance(e, InvalidParams):
        logger.warning(f"Rejected {what}: {e}")
        return HTTPException(status_code=422, detail=str(e))
    logger.error(f"Error computing {what}: {e}")
    return HTTPException(status_code=500, detail=f"{type(e).__name__}: {e}")


# API Endpoints

@app.get("/")
async def root():
    """Root endpoint with API information"""
    return {
        "message": "quadzeros API",
        "version": __version__,
        "endpoints": {
            "interval": "/api/v1/interval",
            "verdict": "/api/v1/verdict",
            "sample": "/api/v1/sample",
            "dominance": "/api/v1/dominance",
            "classify": "/api/v1/classify",
            "health": "/health",
        },
    }


@app.get("/health")
async def health_check():
    """Health check endpoint: settings load and a known interval evaluates"""
    try:
        settings = load_settings()
        zeta0(NormParams(0, 0))
        return {"status": "healthy", "threads": settings.threads}
    except Exception as e:
        logger.error(f"Health check failed: {e}")
        raise HTTPException(status_code=500, detail="Self-check failed")


@app.get("/api/v1/interval", response_model=IntervalResponse)
def get_interval(
    a: str = Query(..., description="Exact rational a, e.g. 1/3"),
    b: str = Query(..., description="Exact rational b >= 0"),
):
    p = _params(a, b)
    try:
        span = interval_H(p)
    except QuadZerosError as e:
        raise _library_error(e, "interval")
    return IntervalResponse(
        a=str(p.a), b=str(p.b), endpoint=span.finite_endpoint,
        zeta0=None if span.degenerate else span.zeta0,
        degenerate=span.degenerate, interval=str(span),
    )


@app.get("/api/v1/verdict", response_model=VerdictResponse)
def get_verdict(
    a: str = Query(...),
    b: str = Query(...),
    m: int = Query(10, ge=0, le=200, description="Index of H_m"),
):
    p = _params(a, b)
    try:
        h = gen_H(p, m)[m]
        v = verdict(h, isolate_roots=False)
    except QuadZerosError as e:
        raise _library_error(e, "verdict")
    return VerdictResponse(
        a=str(p.a), b=str(p.b), m=m, degree=v.degree, real_count=v.real_count,
        all_real=v.all_real, coefficients=[str(c) for c in h.coeffs],
    )


@app.get("/api/v1/sample", response_model=SampleResponse)
def get_sample(a: str = Query(...), b: str = Query(...), theta: float = Query(..., description="Radians in (pi/2, pi)")):
    p = _params(a, b)
    try:
        s = sample(p, theta)
    except QuadZerosError as e:
        raise _library_error(e, "sample")
    return SampleResponse(**s.as_row())


@app.get("/api/v1/dominance", response_model=DominanceResponse)
def get_dominance(
    a: str = Query(...),
    b: str = Query(...),
    z_re: float = Query(...),
    z_im: float = Query(0.0),
    tol: float = Query(1e-8, gt=0),
):
    p = _params(a, b)
    try:
        d = dominance(p, complex(z_re, z_im), tol)
    except QuadZerosError as e:
        raise _library_error(e, "dominance")
    return DominanceResponse(z_re=z_re, z_im=z_im, moduli=list(d.moduli), gap=d.gap, in_limit_set=d.in_limit_set)


@app.get("/api/v1/classify", response_model=ClassifyResponse)
def get_classification(
    a: str = Query(...),
    b: str = Query(...),
    mcap: int = Query(30, ge=1, le=120, description="Largest m searched when the condition fails"),
):
    p = _params(a, b)
    holds = reality_condition(p)
    counterexample = None
    if not holds:
        try:
            counterexample = confirm_nonreal(p, mcap)
        except QuadZerosError as e:
            raise _library_error(e, "classification")
    return ClassifyResponse(a=str(p.a), b=str(p.b), condition=holds, counterexample_m=counterexample)


if __name__ == "__main__":
    import uvicorn

    settings = load_settings()
    uvicorn.run(app, host=settings.api_host, port=settings.api_port)
