"""HTTP service exposing the pipeline, one endpoint per stage.

Domain errors map to status 422 with a structured body; request shape
errors map to 400 the same way. The app holds no state: every request
carries its problem file.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import schemas as s
from .arrangement import render_arrangement
from .errors import GkzError, InputValidationError
from .frobenius import (frobenius_method1, frobenius_method1_extra,
                        frobenius_method2)
from .linalg import dot
from .problem import Pipeline, format_rational, parse_rational
from .series import phi_series
from .verifier import verify


def create_app() -> FastAPI:
    app = FastAPI(title="gkzseries", version="0.1.0")

    @app.exception_handler(GkzError)
    async def domain_error(_request: Request, exc: GkzError) -> JSONResponse:
        body = s.ErrorResponse(error=s.ErrorBody(**exc.payload()))
        return JSONResponse(status_code=422, content=body.model_dump())

    @app.exception_handler(RequestValidationError)
    async def shape_error(_request: Request,
                          exc: RequestValidationError) -> JSONResponse:
        body = s.ErrorResponse(error=s.ErrorBody(
            code="request-invalid",
            message="request body failed validation",
            detail=[{"loc": list(map(str, e["loc"])), "msg": e["msg"]}
                    for e in exc.errors()]))
        return JSONResponse(status_code=400, content=body.model_dump())

    @app.post("/v1/lattice", response_model=s.LatticeResponse)
    def lattice(req: s.LatticeRequest) -> s.LatticeResponse:
        pipe = Pipeline(req.problem)
        from .linalg import require_homogeneous
        cov = require_homogeneous(pipe.matrix)
        return s.LatticeResponse(
            n=pipe.ncols, d=pipe.nrows,
            basis=[list(col) for col in pipe.basis.columns],
            dual_rows=[list(row) for row in pipe.basis.rows],
            homogeneity_covector=[format_rational(q) for q in cov],
        )

    @app.post("/v1/toric", response_model=s.ToricResponse)
    def toric(req: s.ToricRequest) -> s.ToricResponse:
        pipe = Pipeline(req.problem)
        return s.ToricResponse(
            generators=[s.binomial_model(g) for g in pipe.toric],
            saturated=req.problem.toric_generators is None,
        )

    @app.post("/v1/groebner", response_model=s.GroebnerResponse)
    def groebner(req: s.GroebnerRequest) -> s.GroebnerResponse:
        pipe = Pipeline(req.problem)
        gb = pipe.groebner
        return s.GroebnerResponse(
            weight=[format_rational(q) for q in pipe.w],
            tie_break=gb.tie_break,
            elements=[s.binomial_model(g) for g in gb.elements],
            initial_generators=[list(m) for m in pipe.initial.generators],
        )

    @app.post("/v1/standard-pairs", response_model=s.StandardPairsResponse)
    def pairs(req: s.StandardPairsRequest) -> s.StandardPairsResponse:
        pipe = Pipeline(req.problem)
        return s.StandardPairsResponse(
            pairs=[s.pair_model(p) for p in pipe.pairs],
            count=len(pipe.pairs),
        )

    @app.post("/v1/fake-exponents", response_model=s.FakeExponentsResponse)
    def exponents(req: s.FakeExponentsRequest) -> s.FakeExponentsResponse:
        pipe = Pipeline(req.problem, radius=req.radius)
        return s.FakeExponentsResponse(
            exponents=[s.exponent_model(e, pipe.w) for e in pipe.exponents],
            count=len(pipe.exponents),
        )

    @app.post("/v1/ns-classes", response_model=s.NsClassesResponse)
    def ns_classes(req: s.NsClassesRequest) -> s.NsClassesResponse:
        pipe = Pipeline(req.problem, radius=req.radius,
                        restriction=req.restrict)
        if req.exponent is not None:
            targets = [pipe.find_exponent(req.exponent)]
        else:
            targets = list(pipe.exponents)
        out = []
        for e in targets:
            cls = pipe.classification(e.v)
            out.append(s.classification_model(cls, pipe.ncols, pipe.nrows))
        return s.NsClassesResponse(classifications=out)

    @app.post("/v1/phi", response_model=s.SeriesResponse)
    def phi(req: s.PhiRequest) -> s.SeriesResponse:
        pipe = Pipeline(req.problem, radius=req.radius,
                        weight_cap=req.weight_cap)
        target = pipe.find_exponent(req.exponent)
        warnings = []
        if target.minimal == "no":
            if not req.allow_nonminimal:
                raise InputValidationError(
                    "exponent does not have minimal negative support; its "
                    "naive series need not solve the system (pass "
                    "allow_nonminimal to build it anyway)")
            warnings.append(
                "exponent is not minimal: the naive series need not solve "
                "the system")
        elif target.minimal == "at-radius":
            warnings.append(
                f"minimality is radius-limited at radius {pipe.radius}")
        series = phi_series(target.v, pipe.basis, pipe.w, pipe.weight_cap,
                            pipe.radius,
                            directions=pipe.groebner.directions,
                            warnings=warnings)
        return s.SeriesResponse(
            method="phi",
            exponent=[format_rational(q) for q in target.v],
            parameters={"weight_cap": format_rational(pipe.weight_cap),
                        "radius": pipe.radius},
            series=s.series_to_document(series),
        )

    @app.post("/v1/frobenius1", response_model=s.SeriesResponse)
    def frobenius1(req: s.Frobenius1Request) -> s.SeriesResponse:
        pipe = Pipeline(req.problem, radius=req.radius,
                        weight_cap=req.weight_cap, s_degree=req.s_degree,
                        restriction=req.restrict)
        target = pipe.find_exponent(req.exponent)
        bs = [req.b] if req.b is not None else pipe.default_directions()[:1]
        cls = pipe.classification(target.v)
        series = frobenius_method1(target.v, bs[0], cls, req.j,
                                   pipe.weight_cap, pipe.radius,
                                   degree=pipe.s_degree)
        return s.SeriesResponse(
            method="frobenius1",
            exponent=[format_rational(q) for q in target.v],
            parameters={"b": list(bs[0]), "j": req.j,
                        "weight_cap": format_rational(pipe.weight_cap),
                        "radius": pipe.radius},
            series=s.series_to_document(series),
        )

    @app.post("/v1/frobenius1-combo", response_model=s.SeriesResponse)
    def frobenius1_combo(req: s.Frobenius1ComboRequest) -> s.SeriesResponse:
        pipe = Pipeline(req.problem, radius=req.radius,
                        weight_cap=req.weight_cap, s_degree=req.s_degree,
                        restriction=req.restrict)
        target = pipe.find_exponent(req.exponent)
        bs = req.bs if req.bs is not None else pipe.default_directions()
        cls = pipe.classification(target.v)
        series, cert = frobenius_method1_extra(target.v, bs, cls,
                                               pipe.weight_cap, pipe.radius)
        return s.SeriesResponse(
            method="frobenius1-combo",
            exponent=[format_rational(q) for q in target.v],
            parameters={"bs": [list(b) for b in bs],
                        "j": cls.derivative_bound(),
                        "weight_cap": format_rational(pipe.weight_cap),
                        "radius": pipe.radius},
            series=s.series_to_document(series),
            certificate=s.certificate_models(cert),
        )

    @app.post("/v1/frobenius2", response_model=s.SeriesResponse)
    def frobenius2(req: s.Frobenius2Request) -> s.SeriesResponse:
        pipe = Pipeline(req.problem, radius=req.radius,
                        weight_cap=req.weight_cap, s_degree=req.s_degree,
                        restriction=req.restrict)
        target = pipe.find_exponent(req.exponent)
        bs = req.bs if req.bs is not None else pipe.default_directions()
        cls = pipe.classification(target.v)
        series, cert = frobenius_method2(target.v, bs, cls, req.p,
                                         pipe.weight_cap, pipe.radius,
                                         degree=pipe.s_degree)
        return s.SeriesResponse(
            method="frobenius2",
            exponent=[format_rational(q) for q in target.v],
            parameters={"bs": [list(b) for b in bs], "p": list(req.p),
                        "weight_cap": format_rational(pipe.weight_cap),
                        "radius": pipe.radius},
            series=s.series_to_document(series),
            certificate=s.certificate_models(cert) if cert else None,
        )

    @app.post("/v1/verify", response_model=s.VerifyResponse)
    def verify_series(req: s.VerifyRequest) -> s.VerifyResponse:
        pipe = Pipeline(req.problem)
        series = s.document_to_series(req.series, pipe.basis)
        margin = parse_rational(req.margin) if req.margin is not None else None
        report = verify(series, pipe.system, margin=margin)
        return s.verify_response(report)

    @app.post("/v1/arrangement", response_model=s.ArrangementResponse)
    def arrangement(req: s.ArrangementRequest) -> s.ArrangementResponse:
        pipe = Pipeline(req.problem)
        target = pipe.find_exponent(req.exponent)
        window = req.window if req.window is not None else pipe.radius
        if window < 1:
            raise InputValidationError("window must be positive")
        svg = render_arrangement(target.v, pipe.basis, window)
        return s.ArrangementResponse(svg=svg, window=window)

    return app


app = create_app()
