"""HTTP service exposing the circuit verifiers and cost models.

All computation happens in the core modules; this layer only validates
requests, dispatches, and shapes responses.  The CLI talks to this app
in-process, and the same app can be served standalone with uvicorn.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .adders import (
    check_adder,
    cdkm_counts,
    csla_counts,
    csum_counts,
    gen_cdkm,
    gen_csla,
    gen_csum,
    gen_qcla,
    gen_vbe,
    qcla_counts,
    vbe_counts,
)
from .arch import count_gates
from .network import (
    NodeSpec,
    TimingParams,
    fastest_adder,
    full_modexp_time,
    latency_timed,
)
from .reliability import (
    GOLAY_2317,
    STEANE_713,
    CodeStack,
    p_alg,
    required_pt,
    required_pt_numeric,
)
from .tables import TABLES, get_table, render_csv

__all__ = ["app", "VERIFY_N_MAX"]

# Exhaustive verification covers 2^(2n) input pairs per circuit; keep
# the whole sweep comfortably interactive.
VERIFY_N_MAX = 6

app = FastAPI(title="qarith", version=__version__)


class VerifyRequest(BaseModel):
    n_max: int = Field(default=4, ge=1)


class VerifyResult(BaseModel):
    adder: str
    n: int
    params: dict[str, int] = {}
    ccnot: int
    cnot: int
    nots: int
    counts_match: bool
    correct: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    passed: bool
    results: list[VerifyResult]


def _verify_cases(n_max: int):
    """(adder, n, params, generator, closed-form counts or None)."""
    for n in range(1, n_max + 1):
        yield ("VBE", n, {}, lambda n=n: gen_vbe(n),
               vbe_counts(n) if n >= 2 else None)
        yield ("CDKM", n, {}, lambda n=n: gen_cdkm(n),
               cdkm_counts(n) if n >= 3 else None)
        if n >= 2 and n & (n - 1) == 0:
            yield ("QCLA", n, {}, lambda n=n: gen_qcla(n), qcla_counts(n))
        if n >= 2:  # smallest legal carry-select split: m=1, f=1
            yield ("CSLA", n, {"m": 1, "f": 1},
                   lambda n=n: gen_csla(n, 1, 1), csla_counts(n, 1, 1))
        if n >= 3:  # smallest legal conditional-sum tree: m=1, g=3
            yield ("CSUM", n, {"m": 1, "g": 3},
                   lambda n=n: gen_csum(n, 1, 3), csum_counts(n, 1, 3))


def run_verification(n_max: int) -> VerifyResponse:
    if n_max > VERIFY_N_MAX:
        raise ValueError(
            f"n_max must be <= {VERIFY_N_MAX} (exhaustive bound)")
    results = []
    for adder, n, params, make, closed in _verify_cases(n_max):
        circuit = make()
        counts = count_gates(circuit.circuit).counts()
        counts_match = closed is None or counts == closed
        correct, detail = True, ""
        try:
            # The 1-bit carry-ripple adder is a bare CNOT with no
            # carry-out wire; sums wrap modulo 2.
            check_adder(circuit,
                        include_cout=not (adder == "VBE" and n == 1))
        except AssertionError as exc:
            correct, detail = False, str(exc)
        if not counts_match:
            detail = (detail + f" counts {counts} != closed form "
                      f"{closed}").strip()
        results.append(VerifyResult(
            adder=adder, n=n, params=params, ccnot=counts[0],
            cnot=counts[1], nots=counts[2],
            counts_match=counts_match, correct=correct, detail=detail))
    return VerifyResponse(
        passed=all(r.correct and r.counts_match for r in results),
        results=results)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/verify")
def verify(req: VerifyRequest) -> VerifyResponse:
    try:
        return run_verification(req.n_max)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


class TableInfo(BaseModel):
    name: str
    description: str


@app.get("/tables")
def list_tables() -> list[TableInfo]:
    return [TableInfo(name=t.name, description=t.description)
            for t in TABLES.values()]


class TableResponse(BaseModel):
    name: str
    description: str
    columns: list[str]
    rows: list[dict]
    csv: str


@app.get("/tables/{name}")
def table(name: str) -> TableResponse:
    try:
        t = get_table(name)
    except KeyError as exc:
        raise HTTPException(status_code=404, detail=exc.args[0])
    return TableResponse(name=t.name, description=t.description,
                         columns=list(t.columns), rows=t.rows(),
                         csv=render_csv(t))


class TimingModel(BaseModel):
    epr_ns: float = 10.0
    classical_ns: float = 10.0
    ccnot_ns: float = 50.0
    cnot_ns: float = 10.0
    not_ns: float = 1.0

    def to_params(self) -> TimingParams:
        return TimingParams(**self.model_dump())


class NodeModel(BaseModel):
    capacity: int
    transceivers: int = 1

    def to_spec(self) -> NodeSpec:
        return NodeSpec(**self.model_dump())


class SweepRequest(BaseModel):
    n_values: list[int] = [16, 32, 64, 128, 256, 512, 1024]
    epr_values: list[float] = [10.0, 160.0, 1280.0]
    method: str = "teledata"


class SweepCell(BaseModel):
    n: int
    epr_ns: float
    vbe_line_ns: float
    cdkm_line_ns: float
    qcla_2fully_ns: float | None
    fastest: str


@app.post("/sweep")
def sweep(req: SweepRequest) -> list[SweepCell]:
    if not req.n_values or not req.epr_values:
        raise HTTPException(status_code=422, detail="empty sweep axes")
    cells = []
    try:
        for epr in req.epr_values:
            timing = TimingModel(epr_ns=epr).to_params()
            for n in req.n_values:
                qcla = None
                if n >= 2 and n & (n - 1) == 0:
                    qcla = latency_timed("QCLA", "2fully", n, req.method,
                                         timing=timing).ns
                cells.append(SweepCell(
                    n=n, epr_ns=epr,
                    vbe_line_ns=latency_timed(
                        "VBE", "line", n, req.method, timing=timing).ns,
                    cdkm_line_ns=latency_timed(
                        "CDKM", "line", n, req.method, timing=timing).ns,
                    qcla_2fully_ns=qcla,
                    fastest=fastest_adder(n, req.method, timing=timing)))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return cells


class SimulateRequest(BaseModel):
    adder: str
    topology: str
    n: int
    method: str = "teledata"
    timing: TimingModel = TimingModel()
    node: NodeModel | None = None
    modexp: bool = False


class SimulateResponse(BaseModel):
    adder_ns: float
    fastest: str
    modexp_seconds: float | None = None
    adder_calls: int | None = None
    calls_source: str | None = None
    teleports_low: int | None = None
    teleports_high: int | None = None


@app.post("/simulate")
def simulate(req: SimulateRequest) -> SimulateResponse:
    try:
        timing = req.timing.to_params()
        kwargs = {"timing": timing}
        if req.node is not None:
            kwargs["node"] = req.node.to_spec()
        timed = latency_timed(req.adder, req.topology, req.n, req.method,
                              **kwargs)
        resp = SimulateResponse(adder_ns=timed.ns, fastest=timed.fastest)
        if req.modexp:
            r = full_modexp_time(req.n, req.adder, req.topology, timing,
                                 method=req.method)
            resp.modexp_seconds = r.seconds
            resp.adder_calls = r.adder_calls
            resp.calls_source = r.calls_source
            resp.teleports_low = r.teleports_low
            resp.teleports_high = r.teleports_high
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return resp


_CODES = {"[[7,1,3]]": STEANE_713, "[[23,1,7]]": GOLAY_2317}


class ReliabilityRequest(BaseModel):
    inner: str | None = None
    outer: str | None = None
    teleportations: float = Field(gt=0)
    target_pa: float = 0.1


class ReliabilityResponse(BaseModel):
    code: str
    scale_up: int
    teleportations: float
    required_pt: float
    required_pt_numeric: float
    achieved_pa: float


def _code(name: str | None):
    if name is None:
        return None
    code = _CODES.get(name)
    if code is None:
        raise HTTPException(status_code=422,
                            detail=f"unknown code {name!r}; "
                                   f"valid: {sorted(_CODES)}")
    return code


@app.post("/reliability")
def reliability(req: ReliabilityRequest) -> ReliabilityResponse:
    try:
        stack = CodeStack(_code(req.inner), _code(req.outer))
        pt = required_pt(stack, req.teleportations, req.target_pa)
        return ReliabilityResponse(
            code=str(stack), scale_up=stack.scale_up,
            teleportations=req.teleportations, required_pt=pt,
            required_pt_numeric=required_pt_numeric(
                stack, req.teleportations, req.target_pa),
            achieved_pa=p_alg(req.teleportations, stack, pt))
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
