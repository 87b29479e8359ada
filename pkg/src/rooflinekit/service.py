"""HTTP API over the dataset store, geometry, analysis, search and repo sync.

Every error body uses one envelope: {"error": {"code": ..., "message": ...}}.
Read endpoints are pure functions of the stored datasets and query params;
the store itself only ever serves complete files (write-temp-then-rename).
"""

from dataclasses import asdict, dataclass
import os
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from . import repo as repo_mod
from .datafile import Dataset, load_dataset
from .datafile import search as dataset_search
from .errors import (NotFoundError, ParseError, RooflineError, ValidationError,
                     VersionError)
from .geometry import ChartDomain, ChartGeometry, build_geometry, default_domain
from .model import BoundAnalysis, KernelTrial, analyze_kernel
from .store import DatasetStore, summarize


@dataclass
class ServiceConfig:
    data_dir: str
    listen_port: int = 8080
    remote_repo_url: Optional[str] = None
    cors_allowed_origin: Optional[str] = None

    def __post_init__(self):
        if not 1 <= int(self.listen_port) <= 65535:
            raise ValidationError(f"listen_port must be in 1..65535, got {self.listen_port}")


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _envelope(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": {"code": code, "message": message}})


def _geometry_payload(geometry: ChartGeometry) -> dict:
    return {
        "dataset_id": geometry.dataset_id,
        "domain": asdict(geometry.domain),
        "segments": [
            {"ceiling_name": s.ceiling_name, "kind": s.kind,
             "p0": list(s.p0), "p1": list(s.p1), "is_top": s.is_top}
            for s in geometry.segments
        ],
        "points": [
            {"x": p.x, "y": p.y, "label": p.label, "kind": p.kind,
             "source": list(p.source) if isinstance(p.source, tuple) else p.source}
            for p in geometry.points
        ],
        "x_ticks": list(geometry.x_ticks),
        "y_ticks": list(geometry.y_ticks),
    }


def _analysis_payload(rows: list[BoundAnalysis]) -> list[dict]:
    return [
        {"ceiling_pair": list(r.ceiling_pair), "ridge_point": r.ridge_point,
         "attainable_gflops": r.attainable_gflops, "classification": r.classification,
         "efficiency": r.efficiency, "is_top": r.is_top}
        for r in rows
    ]


def _positive_float(raw: str, name: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ApiError(400, "bad_request", f"{name} must be a decimal, got {raw!r}") from None
    if not value > 0:
        raise ApiError(400, "bad_request", f"{name} must be > 0, got {raw!r}")
    return value


def create_app(config: ServiceConfig) -> FastAPI:
    store = DatasetStore(config.data_dir)
    if not os.access(store.data_dir, os.W_OK):
        raise ValidationError(f"data_dir {config.data_dir!r} is not writable")

    app = FastAPI(title="roofline service", docs_url=None, redoc_url=None)
    app.state.config = config
    app.state.store = store

    if config.cors_allowed_origin:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(CORSMiddleware, allow_origins=[config.cors_allowed_origin],
                           allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(ApiError)
    async def _api_error(_request, exc: ApiError):
        return _envelope(exc.status, exc.code, exc.message)

    @app.exception_handler(404)
    async def _not_found(_request, exc):
        return _envelope(404, "not_found", getattr(exc, "detail", "not found"))

    @app.exception_handler(405)
    async def _bad_method(_request, exc):
        return _envelope(405, "method_not_allowed", getattr(exc, "detail", "method not allowed"))

    @app.exception_handler(RooflineError)
    async def _roofline_error(_request, exc: RooflineError):
        return _envelope(500, "internal_error", str(exc))

    def _load_or_404(dataset_id: str) -> Dataset:
        try:
            return store.load(dataset_id)
        except NotFoundError:
            raise ApiError(404, "not_found", f"no dataset with id {dataset_id!r}") from None

    @app.get("/api/v1/machines")
    def list_machines():
        return [summarize(ds_id, ds) for ds_id, ds in store.items()]

    @app.get("/api/v1/machines/{dataset_id}")
    def get_machine(dataset_id: str):
        try:
            raw = store.raw(dataset_id)
        except NotFoundError:
            raise ApiError(404, "not_found", f"no dataset with id {dataset_id!r}") from None
        # canonical bytes straight from disk: byte-equal to save_dataset output
        return Response(content=raw, media_type="application/json")

    @app.get("/api/v1/machines/{dataset_id}/geometry")
    def get_geometry(dataset_id: str, x_min: Optional[str] = None,
                     x_max: Optional[str] = None):
        dataset = _load_or_404(dataset_id)
        domain = default_domain([dataset.machine], dataset.trials)
        if x_min is not None or x_max is not None:
            lo = _positive_float(x_min, "x_min") if x_min is not None else domain.x_min
            hi = _positive_float(x_max, "x_max") if x_max is not None else domain.x_max
            try:
                domain = ChartDomain(x_min=lo, x_max=hi,
                                     y_min=domain.y_min, y_max=domain.y_max)
            except ValidationError as e:
                raise ApiError(400, "bad_request", str(e)) from None
        geometry = build_geometry(dataset.machine, dataset.trials, domain=domain,
                                  dataset_id=dataset_id)
        return _geometry_payload(geometry)

    @app.get("/api/v1/machines/{dataset_id}/analyze")
    def analyze(dataset_id: str, ai: Optional[str] = None, gflops: Optional[str] = None):
        dataset = _load_or_404(dataset_id)
        if ai is None or gflops is None:
            raise ApiError(400, "bad_request", "query params ai and gflops are required")
        trial = KernelTrial(name="adhoc",
                            arithmetic_intensity=_positive_float(ai, "ai"),
                            achieved_gflops=_positive_float(gflops, "gflops"))
        return _analysis_payload(analyze_kernel(trial, dataset.machine))

    @app.post("/api/v1/machines", status_code=201)
    async def import_machine(request: Request):
        body = await request.body()
        try:
            dataset = load_dataset(body)
        except (ParseError, ValidationError, VersionError) as e:
            raise ApiError(422, "invalid_dataset", str(e)) from None
        dataset_id, duplicates = store.add(dataset)
        return {"id": dataset_id, "fingerprint": dataset.fingerprint,
                "duplicates": duplicates}

    @app.get("/api/v1/search")
    def search_machines(request: Request):
        name = None
        constraints = []
        for key, value in request.query_params.multi_items():
            if key == "name":
                name = value
            elif key.startswith("meta."):
                constraints.append((key[len("meta."):], value))
        return dataset_search(store.items(), constraints, name)

    @app.post("/api/v1/repo/sync")
    def repo_sync():
        url = config.remote_repo_url
        if not url:
            raise ApiError(409, "no_repository", "no remote repository configured")
        try:
            index = repo_mod.fetch_index(url)
        except RooflineError as e:
            raise ApiError(502, "remote_error", str(e)) from None
        report = repo_mod.sync(index, repo_mod.default_cache_dir())
        return {"pulled": report.pulled, "cached": report.cached,
                "errors": report.errors}

    return app


def config_from_env(data_dir: str, port: int = 8080,
                    cors_allowed_origin: Optional[str] = None) -> ServiceConfig:
    return ServiceConfig(
        data_dir=data_dir,
        listen_port=port,
        remote_repo_url=os.environ.get("ROOFLINE_REPO_URL") or None,
        cors_allowed_origin=cors_allowed_origin,
    )
