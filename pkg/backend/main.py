import json
from datetime import datetime
from typing import List, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from config import settings
from core.errors import FibredError, OracleDisagreementError
from core.omega import omega_group
from services.report import (
    DiagramSummary,
    Report,
    build_report,
    pair_from_specs,
    require_agreement,
    summarize_diagram,
)
from services.specs import MapSpec
from services.tables import build_table


# Pydantic models for request/response
class PairRequest(BaseModel):
    f1: MapSpec
    f2: Optional[MapSpec] = None
    # pair f1 with s_{+1} o p instead of f2
    root_invariant: bool = False


class InvariantsRequest(PairRequest):
    window: Optional[int] = None


class DiagramRequest(PairRequest):
    raw: bool = False


class OmegaGroupResponse(BaseModel):
    domain: str
    codomain: str
    summands: List[str]
    rendering: str


def _get_cors_origins() -> List[str]:
    configured = settings.CORS_ALLOWED_ORIGINS.strip()
    if not configured:
        return []
    return [origin.strip() for origin in configured.split(",") if origin.strip()]


def _unprocessable(exc: Exception) -> HTTPException:
    return HTTPException(status_code=422, detail=str(exc))


app = FastAPI(
    title="Fibred Coincidence API",
    description="Nielsen and Reidemeister numbers, MCC and omega invariants of maps over S^1",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=_get_cors_origins(),
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/health")
async def health_check():
    return {"status": "ok", "timestamp": datetime.utcnow().isoformat()}


@app.post("/invariants", response_model=Report)
def compute_invariants(request: InvariantsRequest):
    """Invariant report of a pair, or of one map against s_{+1} o p."""
    window = settings.DEFAULT_WINDOW if request.window is None else request.window
    try:
        report = build_report(request.f1, request.f2, root=request.root_invariant, window=window)
        return require_agreement(report)
    except OracleDisagreementError as exc:
        raise HTTPException(status_code=500, detail=f"Oracle disagreement: {exc}") from exc
    except (FibredError, ValueError) as exc:
        raise _unprocessable(exc) from exc


@app.post("/diagram", response_model=DiagramSummary)
def coincidence_diagram(request: DiagramRequest):
    try:
        pair = pair_from_specs(request.f1, request.f2, request.root_invariant)
        return summarize_diagram(pair, raw=request.raw)
    except OracleDisagreementError as exc:
        raise HTTPException(status_code=500, detail=f"Oracle disagreement: {exc}") from exc
    except (FibredError, ValueError) as exc:
        raise _unprocessable(exc) from exc


@app.get("/table")
def formula_table(
    combo: str = Query("TT", description="TT, KK, KT or TK"),
    qmin: int = -10,
    qmax: int = 10,
    rmin: int = -10,
    rmax: int = 10,
):
    try:
        frame = build_table(combo, (qmin, qmax), (rmin, rmax))
    except (FibredError, ValueError) as exc:
        raise _unprocessable(exc) from exc
    return json.loads(frame.to_json(orient="records"))


@app.get("/omega-group/{domain}/{codomain}", response_model=OmegaGroupResponse)
def get_omega_group(domain: str, codomain: str):
    try:
        group = omega_group(domain, codomain)
    except ValueError as exc:
        raise _unprocessable(exc) from exc
    source, target = group.combo
    return OmegaGroupResponse(
        domain=source.value,
        codomain=target.value,
        summands=[summand.value for summand in group.summands],
        rendering=str(group),
    )


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=8000)
