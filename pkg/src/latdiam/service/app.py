"""HTTP service exposing the exact-polytope toolkit.

Long-running by design: skeletons are cached per canonical vertex set, so
repeated diameter/path queries against the same polytope amortize the LP
work across requests and clients.  Input problems map to 400, violated
internal invariants (including property-suite violations, which carry a
reproducer) map to 500 with the diagnostic dump in the body.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import InputError, InternalError
from ..exactlp import affine_rank
from ..experiments import SuiteSpec, report_to_json, run_suite
from ..generators import GeneratorSpec, generate
from ..paths import certificate_to_json, construct_path, diameter_bound, verify_certificate
from ..polytope import canonicalize_vertices, polytope_from_json, polytope_to_json
from ..skeleton import bfs_distance, build_skeleton, diameter, skeleton_to_dot, skeleton_to_json
from .schemas import (
    DiameterResponse,
    GeneratorSpecModel,
    HealthResponse,
    PathRequest,
    PathResponse,
    PolytopeModel,
    SkeletonResponse,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="latdiam",
    description="Exact skeletons, diameters, and constructive short paths for lattice polytopes.",
    version=__version__,
)


@app.exception_handler(InputError)
def _input_error(_: Request, exc: InputError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(InternalError)
def _internal_error(_: Request, exc: InternalError):
    return JSONResponse(status_code=500, content={"detail": str(exc), "dump": exc.dump})


def _load(model: PolytopeModel):
    return canonicalize_vertices(polytope_from_json(model.model_dump()))


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/generate", response_model=PolytopeModel)
def generate_endpoint(spec: GeneratorSpecModel) -> PolytopeModel:
    poly = generate(GeneratorSpec.from_json(spec.model_dump()))
    return PolytopeModel(**polytope_to_json(poly))


@app.post("/skeleton", response_model=SkeletonResponse)
def skeleton_endpoint(polytope: PolytopeModel) -> SkeletonResponse:
    poly = _load(polytope)
    skel = build_skeleton(poly)
    labels = ["(" + ",".join(str(c) for c in pt) + ")" for pt in poly.points]
    return SkeletonResponse(dot=skeleton_to_dot(skel, labels), **skeleton_to_json(skel))


@app.post("/diameter", response_model=DiameterResponse)
def diameter_endpoint(polytope: PolytopeModel) -> DiameterResponse:
    poly = _load(polytope)
    rank = affine_rank(poly.points)
    diam = diameter(build_skeleton(poly))
    bound = diameter_bound(rank, poly.k)
    return DiameterResponse(
        ambient_dim=poly.ambient_dim,
        k=poly.k,
        rank=rank,
        vertex_count=len(poly.points),
        diameter=diam,
        bound=bound,
        ko_bound=poly.k * rank,
        tight=diam == bound,
        slack=bound - diam,
    )


@app.post("/path", response_model=PathResponse)
def path_endpoint(request: PathRequest) -> PathResponse:
    poly = _load(request.polytope)
    if request.source == request.target:
        raise InputError("source and target must be distinct vertices")
    skel = build_skeleton(poly)
    path, cert = construct_path(poly, request.source, request.target, skel)
    return PathResponse(
        certificate=certificate_to_json(path, cert),
        valid=verify_certificate(path, cert, skel),
        bfs_distance=bfs_distance(skel, request.source, request.target).distance,
    )


@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(request: VerifyRequest) -> VerifyResponse:
    suite = SuiteSpec.from_json(request.suite.model_dump())
    report = run_suite(suite, jobs=request.jobs)
    return VerifyResponse(**report_to_json(report))
