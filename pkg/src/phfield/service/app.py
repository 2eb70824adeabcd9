"""FastAPI service exposing the library over HTTP.

Domain errors map to 422 with a structured detail; everything heavier than
parameter shuffling happens in the core package.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..analysis import betti_table, convex_sum, diagrams_equal, parse_functional
from ..diagram import Diagram
from ..domains import DomainError
from ..errors import (
    FiltrationError,
    InfiniteLifetimeError,
    ParseError,
)
from ..experiment import GeneratorSpec, run_experiment
from ..filtration import parse_filtration, write_filtration
from ..generators import (
    loop_pointcloud,
    parse_pointcloud,
    rips_filtration,
    uniform_pointcloud,
    write_pointcloud,
)
from ..oracle import smith_normal_form, torsion_scan
from ..reduction import compute_diagram
from ..torsion import check_field_independence, check_field_independence_upto
from . import models

_CLIENT_ERRORS = (DomainError, FiltrationError, ParseError, InfiniteLifetimeError,
                  ValueError, KeyError)


def _fail(exc: Exception) -> HTTPException:
    detail = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        detail["line"] = exc.line
    return HTTPException(status_code=422, detail=detail)


def _diagram_in(model: models.DiagramModel) -> Diagram:
    return Diagram.build(
        field=model.field,
        n_cells=model.n_cells,
        pairs=[(p.birth, p.death, p.degree) for p in model.pairs],
    )


def _parse_labels(labels):
    if labels is None:
        return None
    from fractions import Fraction

    out = []
    for s in labels:
        s = s.strip()
        if "/" in s or s.lstrip("+-").isdigit():
            out.append(Fraction(s))
        else:
            out.append(float(s))
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="phfield", version=__version__)

    @app.get("/health", response_model=models.HealthResponse)
    def health():
        return models.HealthResponse(version=__version__)

    @app.post("/pd", response_model=models.DiagramModel)
    def pd(req: models.PdRequest):
        try:
            f = parse_filtration(req.content, req.format)
            d = compute_diagram(f, req.field, twist=req.twist)
            if req.degree is not None:
                d = d.restrict(req.degree)
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.DiagramModel(**d.to_json_dict())

    @app.post("/check-field", response_model=models.CheckFieldResponse)
    def check_field(req: models.CheckFieldRequest):
        try:
            f = parse_filtration(req.content, req.format)
            if req.max_degree is None:
                v = check_field_independence(f)
            else:
                v = check_field_independence_upto(f, req.max_degree)
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.CheckFieldResponse(**v.to_json_dict())

    @app.post("/betti", response_model=models.BettiResponse)
    def betti(req: models.BettiRequest):
        try:
            table = betti_table(_diagram_in(req.diagram), req.degree)
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.BettiResponse(
            degree=table.degree,
            n_cells=table.n_cells,
            rows=[list(r) for r in table.rows],
        )

    @app.post("/compare", response_model=models.CompareResponse)
    def compare(req: models.CompareRequest):
        try:
            res = diagrams_equal(_diagram_in(req.a), _diagram_in(req.b))
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.CompareResponse(**res.to_json_dict())

    @app.post("/functional", response_model=models.FunctionalResponse)
    def functional(req: models.FunctionalRequest):
        from fractions import Fraction

        try:
            d = _diagram_in(req.diagram)
            f = parse_functional(req.functional)
            value = convex_sum(d, req.degree, f, labels=_parse_labels(req.labels))
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        if isinstance(value, Fraction):
            return models.FunctionalResponse(value=str(value), exact=True)
        return models.FunctionalResponse(value=repr(value), exact=False)

    @app.post("/gen", response_model=models.GenResponse)
    def gen(req: models.GenRequest):
        try:
            if req.kind in ("loop", "cloud"):
                p = req.params
                if req.kind == "loop":
                    pc = loop_pointcloud(
                        p.get("loop", "double"),
                        int(p.get("n_points", 120)),
                        float(p.get("noise", 0.0)),
                        req.seed,
                    )
                else:
                    pc = uniform_pointcloud(
                        int(p.get("n_points", 100)), int(p.get("dim", 3)), req.seed
                    )
                return models.GenResponse(
                    kind=req.kind, content=write_pointcloud(pc), n_points=pc.n_points
                )
            spec = GeneratorSpec(kind=req.kind, params=req.params)
            f = spec.build(req.seed)
            content = write_filtration(f, req.format)
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.GenResponse(kind=req.kind, content=content, n_cells=f.n_cells)

    @app.post("/rips", response_model=models.RipsResponse)
    def rips(req: models.RipsRequest):
        try:
            pc = parse_pointcloud(req.points)
            f = rips_filtration(pc, req.max_dim, req.max_radius)
            content = write_filtration(f, req.format)
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.RipsResponse(content=content, n_cells=f.n_cells)

    @app.post("/oracle/scan", response_model=models.OracleScanResponse)
    def oracle_scan(req: models.OracleScanRequest):
        try:
            f = parse_filtration(req.content, req.format)
            res = torsion_scan(f)
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.OracleScanResponse(**res.to_json_dict())

    @app.post("/oracle/snf", response_model=models.OracleSnfResponse)
    def oracle_snf(req: models.OracleSnfRequest):
        try:
            rows = []
            for lineno, raw in enumerate(req.matrix.splitlines(), 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                try:
                    rows.append([int(t) for t in line.split()])
                except ValueError:
                    raise ParseError(lineno, f"non-integer entry in {line!r}") from None
            snf = smith_normal_form(rows)
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.OracleSnfResponse(
            invariant_factors=[str(a) for a in snf.invariant_factors],
            rank=snf.rank,
            shape=snf.shape,
        )

    @app.post("/experiment", response_model=models.ExperimentResponse)
    def experiment(req: models.ExperimentRequest):
        try:
            spec = GeneratorSpec(kind=req.kind, params=req.params)
            report = run_experiment(spec, req.seed_start, req.seed_end,
                                    parallelism=req.parallelism, digest=req.digest)
        except _CLIENT_ERRORS as e:
            raise _fail(e) from None
        return models.ExperimentResponse(**report.to_json_dict())

    return app


app = create_app()
