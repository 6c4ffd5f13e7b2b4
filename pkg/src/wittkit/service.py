"""HTTP service exposing the library's public operations.

The CLI talks to this app in-process by default (ASGI transport), so every
operation has exactly one implementation path.  Input errors surface as
400 with a detail string; internal invariant breaches surface as 500.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from .algebra import Params, Poly, iter_box
from .errors import AlgebraError, InvariantViolation
from .fgl import iterativity_constants, make_fgl
from .hsd import (canonical_witt_derivation, delta_poly, operator_eval,
                  parse_operator)
from .pbasis import derivation_via_pbasis, p_power_decompose
from .ratfun import RatFun
from .schemas import (ApplyRequest, ApplyResponse, CheckReportModel,
                      DecomposeRequest, DecomposeResponse,
                      DeltaTableRequest, DeltaTableResponse,
                      DerivePBasisRequest, DerivePBasisResponse,
                      HealthResponse, IterativityRequest, IterativityResponse,
                      ParamsModel, PolyModel, RatFunModel, TermModel,
                      VerifyRequest, VerifyResponse, WittLawRequest,
                      WittLawResponse)
from .textio import (check_multiindex, multiindex_key, parse_poly,
                     parse_ratfun, poly_to_json)
from .verifier import VerifyOptions, run_suite
from .witt import witt_addition_law

app = FastAPI(title="wittkit", version=__version__)


@app.exception_handler(AlgebraError)
async def algebra_error_handler(request: Request, exc: AlgebraError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(InvariantViolation)
async def invariant_handler(request: Request, exc: InvariantViolation):
    return JSONResponse(status_code=500, content={"detail": str(exc)})


def _params(req: ParamsModel) -> Params:
    return Params(req.p, req.e)


def _poly_model(f: Poly) -> PolyModel:
    return PolyModel(text=f.text(),
                     terms=[TermModel(**t) for t in poly_to_json(f)])


def _ratfun_model(r: RatFun) -> RatFunModel:
    return RatFunModel(text=r.text(), num=_poly_model(r.num),
                       den=_poly_model(r.den))


@app.get("/health", response_model=HealthResponse)
async def health() -> HealthResponse:
    return HealthResponse(status="ok", name="wittkit", version=__version__)


@app.post("/witt-law", response_model=WittLawResponse)
async def witt_law(req: WittLawRequest) -> WittLawResponse:
    params = _params(req)
    law = witt_addition_law(params)
    comps = law.integral if req.integral else law.reduced
    prefix = "S" if req.integral else "H"
    names = ["%s%d" % (prefix, k + 1) for k in range(params.e)]
    text = " ; ".join("%s = %s" % (n, c.text()) for n, c in zip(names, comps))
    return WittLawResponse(p=params.p, e=params.e, integral=req.integral,
                           names=names,
                           components=[_poly_model(c) for c in comps],
                           text=text)


@app.post("/iterativity", response_model=IterativityResponse)
async def iterativity(req: IterativityRequest) -> IterativityResponse:
    params = _params(req)
    F = make_fgl(req.law, params)
    i = check_multiindex(req.i, params.e)
    j = check_multiindex(req.j, params.e)
    table = iterativity_constants(F, i, j)
    constants = {multiindex_key(l): c for l, c in table.items()}
    return IterativityResponse(p=params.p, e=params.e, law=F.kind,
                               i=list(i), j=list(j), constants=constants)


@app.post("/delta-table", response_model=DeltaTableResponse)
async def delta_table_endpoint(req: DeltaTableRequest) -> DeltaTableResponse:
    params = _params(req)
    max_i = check_multiindex(req.max_i, params.e)
    max_j = check_multiindex(req.max_j, params.e)
    entries = {}
    for i in iter_box(max_i):
        row = {}
        for j in iter_box(max_j):
            val = delta_poly(params, i, j)
            if not val.is_zero():
                row[multiindex_key(j)] = _poly_model(val)
        entries[multiindex_key(i)] = row
    return DeltaTableResponse(p=params.p, e=params.e, entries=entries)


@app.post("/apply", response_model=ApplyResponse)
async def apply_operator(req: ApplyRequest) -> ApplyResponse:
    params = _params(req)
    expr = parse_operator(req.operator, params)
    f = parse_poly(req.poly, params.e, params.p)
    D = canonical_witt_derivation(params)
    result = operator_eval(D, expr, f)
    return ApplyResponse(p=params.p, e=params.e, operator=req.operator,
                         input=_poly_model(f), result=_poly_model(result))


@app.post("/decompose", response_model=DecomposeResponse)
async def decompose(req: DecomposeRequest) -> DecomposeResponse:
    params = _params(req)
    x = parse_ratfun(req.x, params.e, params.p)
    pieces = p_power_decompose(x, req.n)
    out = {multiindex_key(i): _ratfun_model(a) for i, a in sorted(pieces.items())}
    return DecomposeResponse(p=params.p, e=params.e, n=req.n, pieces=out)


@app.post("/derive-pbasis", response_model=DerivePBasisResponse)
async def derive_pbasis(req: DerivePBasisRequest) -> DerivePBasisResponse:
    params = _params(req)
    x = parse_ratfun(req.x, params.e, params.p)
    j = check_multiindex(req.j, params.e)
    value = derivation_via_pbasis(params, x, j, req.n)
    return DerivePBasisResponse(p=params.p, e=params.e, j=list(j), n=req.n,
                                value=_ratfun_model(value))


@app.post("/verify", response_model=VerifyResponse)
async def verify(req: VerifyRequest) -> VerifyResponse:
    params = _params(req)
    opts = VerifyOptions(deg_bound=req.deg_bound, order_bound=req.order_bound,
                         n=req.n, seed=req.seed, samples=req.samples)
    reports = run_suite(req.suite, params, opts)
    models = []
    for r in reports:
        models.append(CheckReportModel(
            check_id=r.check_id, params=r.params, verdict=r.verdict,
            witness=r.witness,
            wall_ms=r.wall_ms if req.timings else None))
    return VerifyResponse(suite=req.suite, p=params.p, e=params.e,
                          all_passed=all(r.ok for r in reports),
                          reports=models)
