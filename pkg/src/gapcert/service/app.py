"""FastAPI service wrapping the certification library.

Datasets are parsed per request (inline content or a server-visible path);
the heavy objects (expanded geodesic terms) are cached per dataset text so a
client can iterate sweeps against the same spectrum cheaply.
"""

from __future__ import annotations

import hashlib
import math

from fastapi import FastAPI, HTTPException

from .. import __version__, homology, words
from ..certify import (
    CertResult,
    ManifoldModel,
    SweepConfig,
    TestFunction,
    certify_existence,
    certify_gap,
    default_base,
    delta_interval,
    j_sweep,
)
from ..selftest import run_selftest
from ..spectra import DatasetError, load_dataset, parse_dataset, validate_consistency
from . import models as m

_MODEL_CACHE: dict[str, ManifoldModel] = {}
_MODEL_CACHE_LIMIT = 8


def _word_report(text: str, genus: int) -> m.WordReport:
    try:
        w = words.parse_word(text, genus)
    except words.WordError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    rep = homology.screen(w)
    return m.WordReport(
        word=rep.word,
        genus=rep.genus,
        reverse_palindromic=rep.reverse_palindromic,
        involution_conjugation_ok=rep.involution_conjugation_ok,
        unit_circle_free=rep.homology.unit_circle_free,
        b1_cover_ok=rep.homology.b1_cover_ok,
        torsion_factors=rep.homology.torsion_factors,
        det_abs=rep.homology.det_abs,
        char_poly=rep.homology.char_poly,
        passes=rep.passes,
    )


def _resolve_dataset(source: m.DatasetSource):
    if (source.content is None) == (source.path is None):
        raise HTTPException(
            status_code=422, detail="provide exactly one of dataset.content / dataset.path"
        )
    try:
        if source.content is not None:
            text = source.content
        else:
            with open(source.path, "r", encoding="utf-8") as fh:
                text = fh.read()
        dataset = parse_dataset(text)
    except FileNotFoundError as e:
        raise HTTPException(status_code=422, detail=f"dataset path not found: {e}") from e
    except DatasetError as e:
        raise HTTPException(status_code=422, detail=f"invalid dataset: {e}") from e
    key = hashlib.sha256(text.encode()).hexdigest()
    if key not in _MODEL_CACHE:
        if len(_MODEL_CACHE) >= _MODEL_CACHE_LIMIT:
            _MODEL_CACHE.pop(next(iter(_MODEL_CACHE)))
        _MODEL_CACHE[key] = ManifoldModel(dataset)
    return _MODEL_CACHE[key]


def _config(settings: m.SweepSettings) -> SweepConfig:
    try:
        return SweepConfig(
            t_max=settings.t_max,
            t_step=settings.t_step,
            theta_step=settings.theta_step,
            margin=settings.margin,
            m_min=settings.m_min,
            coeff_count=settings.coeff_count,
            half_support=settings.half_support,
            seed=settings.seed,
            workers=settings.workers,
        )
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


def _base_tf(model: ManifoldModel, cfg: SweepConfig, settings: m.SweepSettings) -> TestFunction:
    if settings.coeffs:
        r1 = cfg.half_support if cfg.half_support is not None else model.default_half_support
        return TestFunction(r1, tuple(settings.coeffs))
    return default_base(model, cfg)


def _cert_model(res: CertResult) -> m.CertResultModel:
    hi = res.interval[1]
    return m.CertResultModel(
        kind=res.kind,
        status=res.status,
        interval=(res.interval[0], hi if math.isfinite(hi) else None),
        witness=res.witness,
        config=res.config,
        details=res.details,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="gapcert", version=__version__)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/words/check", response_model=m.WordReport)
    def word_check(req: m.WordCheckRequest) -> m.WordReport:
        return _word_report(req.word, req.genus)

    @app.post("/words/search", response_model=m.WordSearchResponse)
    def word_search(req: m.WordSearchRequest) -> m.WordSearchResponse:
        found: list[m.WordReport] = []
        attempts = 0
        seed = req.seed
        while len(found) < req.count and attempts < req.max_attempts:
            w = words.random_reverse_palindromic(req.genus, req.length, seed)
            seed += 1
            attempts += 1
            rep = homology.screen(w)
            if rep.passes:
                found.append(_word_report(rep.word, req.genus))
        return m.WordSearchResponse(candidates=found, attempts=attempts)

    @app.post("/datasets/validate", response_model=m.DatasetValidateResponse)
    def dataset_validate(source: m.DatasetSource) -> m.DatasetValidateResponse:
        try:
            model = _resolve_dataset(source)
        except HTTPException as e:
            return m.DatasetValidateResponse(ok=False, error=str(e.detail))
        report = validate_consistency(model.dataset)
        d = model.dataset
        return m.DatasetValidateResponse(
            ok=True,
            name=d.manifold_name,
            volume=d.volume,
            cutoff_R=d.cutoff_R,
            primitive_count=len(d.primitives),
            even_multiplicity=d.even_multiplicity,
            warnings=report.warnings,
        )

    @app.post("/certify", response_model=m.CertResultModel)
    def certify(req: m.CertifyRequest) -> m.CertResultModel:
        model = _resolve_dataset(req.dataset)
        cfg = _config(req.settings)
        tf = _base_tf(model, cfg, req.settings)
        try:
            if req.mode == "gap":
                if req.delta_candidate is None:
                    raise HTTPException(status_code=422, detail="gap mode needs delta_candidate")
                res = certify_gap(model, tf, req.delta_candidate, cfg)
            elif req.mode == "exists":
                if req.band is None or req.theta is None:
                    raise HTTPException(status_code=422, detail="exists mode needs band and theta")
                res = certify_existence(model, tf, req.band, req.theta, cfg)
            else:
                res = delta_interval(model, cfg)
        except ValueError as e:
            raise HTTPException(status_code=422, detail=str(e)) from e
        return _cert_model(res)

    @app.post("/sweep", response_model=m.SweepResponse)
    def sweep(req: m.SweepRequest) -> m.SweepResponse:
        model = _resolve_dataset(req.dataset)
        cfg = _config(req.settings)
        tf = _base_tf(model, cfg, req.settings)
        try:
            table = j_sweep(model, tf, cfg)
        except ValueError as e:
            raise HTTPException(status_code=422, detail=str(e)) from e
        ts, th, col = table.rows_at_theta(req.theta)
        rows = [m.SweepRow(t=float(t), theta=th, j=float(v)) for t, v in zip(ts, col)]
        return m.SweepResponse(rows=rows, theta_lipschitz=table.theta_lipschitz)

    @app.post("/selftest", response_model=m.SelftestResponse)
    def selftest(req: m.SelftestRequest | None = None) -> m.SelftestResponse:
        req = req or m.SelftestRequest()
        rep = run_selftest(poisson_tol=req.poisson_tol, fourier_tol=req.fourier_tol)
        return m.SelftestResponse(
            passed=rep.passed,
            checks=[m.SelftestCheck(name=c.name, ok=c.ok, detail=c.detail) for c in rep.checks],
        )

    return app


app = create_app()
