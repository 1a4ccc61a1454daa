"""Read-only HTTP facade over precomputed study summaries.

Posterior sampling happens once at startup; every endpoint afterwards
works from the stored summaries, so threshold exploration costs one
comparison per study regardless of the Monte Carlo sample count.

Endpoints: GET /api/studies, POST /api/classify, GET /api/plot.svg.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from fastapi import FastAPI, HTTPException, Request, Response
from pydantic import BaseModel

from . import effectsize, ingest, plotting, posterior
from .cli import summarize_all, summary_record


@dataclass(frozen=True)
class SessionState:
    """Immutable analysis state computed at startup."""

    fixture_name: str
    pairs: list  # (StudySummary, EffectSizeSummary), center-out order
    k: int
    seed: int


class ClassifyRequest(BaseModel):
    negligible_threshold: float
    meaningful_threshold: float | None = None


def build_session(fixture_path: str | None, k: int, seed: int) -> SessionState:
    if fixture_path is None:
        return SessionState(fixture_name="", pairs=[], k=k, seed=seed)
    studies = ingest.load_studies_file(fixture_path)
    summaries = summarize_all(studies, k, seed)
    pairs = plotting.sort_studies(list(zip(studies, summaries)))
    return SessionState(fixture_name=str(fixture_path), pairs=pairs, k=k, seed=seed)


def _check_positive(name: str, value: float | None):
    if value is not None and value <= 0:
        raise HTTPException(status_code=400, detail=f"{name} must be positive")


def create_app(session: SessionState, cors_origin: str | None = None) -> FastAPI:
    app = FastAPI(title="contra", docs_url=None, redoc_url=None)
    app.state.session = session

    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.get("/api/studies")
    def get_studies():
        return [
            {**ingest.study_to_dict(s), **summary_record(e, None, None)}
            for s, e in session.pairs
        ]

    @app.post("/api/classify")
    def post_classify(body: ClassifyRequest):
        _check_positive("negligible_threshold", body.negligible_threshold)
        _check_positive("meaningful_threshold", body.meaningful_threshold)
        decisions = []
        for _, e in session.pairs:
            d = effectsize.decide(e, body.negligible_threshold,
                                  body.meaningful_threshold)
            decisions.append({
                "id": d.study_id,
                "negligible": d.is_negligible,
                "meaningful": d.is_meaningful,
            })
        return {
            "negligible_threshold": body.negligible_threshold,
            "meaningful_threshold": body.meaningful_threshold,
            "decisions": decisions,
        }

    @app.get("/api/plot.svg")
    def get_plot(request: Request):
        params = {}
        for name in ("negligible_threshold", "meaningful_threshold"):
            raw = request.query_params.get(name)
            if raw is None:
                params[name] = None
                continue
            try:
                value = float(raw)
            except ValueError:
                raise HTTPException(status_code=400,
                                    detail=f"{name} must be a number")
            _check_positive(name, value)
            params[name] = value
        if not session.pairs:
            raise HTTPException(status_code=400, detail="no studies loaded")
        spec = plotting.ContraPlotSpec(
            studies=session.pairs,
            negligible_threshold=params["negligible_threshold"],
            meaningful_threshold=params["meaningful_threshold"],
            title=session.fixture_name,
        )
        return Response(content=plotting.render_contra_plot(spec),
                        media_type="image/svg+xml")

    return app


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="contra-server",
        description="Serve precomputed negligible-effect summaries.",
    )
    parser.add_argument("--fixture", required=True, help="study table CSV")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument("--samples", type=int, default=posterior.DEFAULT_SAMPLES)
    parser.add_argument("--seed", type=int, default=posterior.DEFAULT_SEED)
    parser.add_argument("--cors-origin", default=None,
                        help="origin allowed to call the API (e.g. the frontend dev server)")
    args = parser.parse_args(argv)

    session = build_session(args.fixture, args.samples, args.seed)
    app = create_app(session, cors_origin=args.cors_origin)

    import uvicorn
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
