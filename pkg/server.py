"""Filbert: FastAPI backend.
Same verbs as the command line, as JSON endpoints."""
import time
import logging
import uvicorn
from logging_config import setup_logging
setup_logging()
from fastapi import FastAPI, Request, HTTPException
from pydantic import BaseModel, Field
from typing import List, Literal, Optional

import config
from certificates import CertGrid, CertificateId, check_certificate, default_grid
from closedform import DEFAULT_SIGN_VARIANT, MatrixSpec, SignVariant
from errors import FilbertError
from operations import hankel_matrix, inverse_matrix
from sequences import Family
from serialize import certificate_doc, matrix_doc, scan_row_doc, verification_doc
from verifier import fibonomial_scan, integrality_scan, verify_inverse

app = FastAPI(title="Filbert")


@app.middleware("http")
async def log_requests(request: Request, call_next):
    start = time.time()
    response = await call_next(request)
    elapsed = time.time() - start

    # Only log errors or slow requests (>2s)
    if response.status_code >= 400 or elapsed > 2.0:
        logger = logging.getLogger('filbert.access')
        msg = f"{request.method} {request.url.path} → {response.status_code} ({elapsed:.2f}s)"
        if response.status_code >= 500:
            logger.error(msg)
        else:
            logger.warning(msg)
    return response


# ─── Request models ───

class MatrixRequest(BaseModel):
    family: Family
    n: int = Field(ge=1, le=config.API_MAX_N)
    r: Optional[int] = Field(default=None, ge=1)
    sign_variant: SignVariant = DEFAULT_SIGN_VARIANT
    x: Optional[int] = Field(default=None, ge=1)


class InverseRequest(MatrixRequest):
    method: Literal["closed", "bareiss"] = "closed"


class ScanRequest(BaseModel):
    conjecture: Literal["integrality", "fibonomial"] = "integrality"
    n_max: Optional[int] = Field(default=None, ge=1, le=config.API_MAX_SCAN_N)
    r_max: Optional[int] = Field(default=None, ge=1, le=config.API_MAX_SCAN_R)
    sign_variant: SignVariant = DEFAULT_SIGN_VARIANT


class CertifyRequest(BaseModel):
    cert: CertificateId
    n_max: Optional[int] = Field(default=None, ge=1, le=config.API_MAX_CERT_N)
    x_values: List[int] = Field(default_factory=lambda: list(config.CERT_X_VALUES))
    r_values: List[int] = Field(default_factory=lambda: list(config.CERT_R_VALUES))
    timing: bool = True


def _bad_request(e):
    return HTTPException(status_code=400, detail=str(e))


# ─── Endpoints ───

@app.get("/api/health")
def health():
    return {"ok": True}


@app.get("/api/families")
def families():
    return [{"family": f.value, "needs_r": f.needs_r, "polynomial": f.is_polynomial} for f in Family]


@app.post("/api/gen")
def gen(req: MatrixRequest):
    try:
        matrix = hankel_matrix(req.family, req.n, req.r, req.x)
    except FilbertError as e:
        raise _bad_request(e)
    return matrix_doc(matrix, req.family, req.n, req.r, x=req.x)


@app.post("/api/inv")
def inv(req: InverseRequest):
    try:
        matrix = inverse_matrix(req.family, req.n, req.r, req.method, req.sign_variant, req.x)
    except FilbertError as e:
        raise _bad_request(e)
    x = req.x if req.family is Family.fibpoly else None
    return matrix_doc(matrix, req.family, req.n, req.r, req.sign_variant, x=x)


@app.post("/api/verify")
def verify(req: MatrixRequest):
    try:
        report = verify_inverse(MatrixSpec.of(req.family, req.n, req.r, req.sign_variant))
    except FilbertError as e:
        raise _bad_request(e)
    return verification_doc(report)


@app.post("/api/scan")
def scan(req: ScanRequest):
    if req.conjecture == "integrality":
        n_max, r_max = req.n_max or config.SCAN_N_MAX, req.r_max or config.SCAN_R_MAX
    else:
        n_max, r_max = req.n_max or config.FIBO_SCAN_N_MAX, req.r_max or config.FIBO_SCAN_R_MAX
    try:
        if req.conjecture == "integrality":
            rows = integrality_scan(n_max, r_max)
        else:
            rows = fibonomial_scan(n_max, r_max, req.sign_variant)
    except FilbertError as e:
        raise _bad_request(e)
    return [scan_row_doc(row) for row in rows]


@app.post("/api/certify")
def certify(req: CertifyRequest):
    try:
        grid = CertGrid(n_max=req.n_max or default_grid(req.cert).n_max, r_values=tuple(req.r_values))
        report = check_certificate(req.cert, grid, tuple(req.x_values))
    except FilbertError as e:
        raise _bad_request(e)
    return certificate_doc(report, timing=req.timing)


if __name__ == "__main__":
    uvicorn.run(app, host=config.HOST, port=config.PORT)
