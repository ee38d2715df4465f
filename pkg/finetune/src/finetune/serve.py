"""Embedding HTTP service.

Wire protocol (shared with the documentation pipeline's dense backend):
POST /embed with {"texts": ["..."]} returns {"vectors": [[...], ...],
"dim": N}. Vectors are unit-norm. The model is read-only, so concurrent
requests are safe.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .model import HashedBiEncoder, load_model


class EmbedRequest(BaseModel):
    texts: list[str]


def create_app(model: HashedBiEncoder | str | Path) -> FastAPI:
    if not isinstance(model, HashedBiEncoder):
        model = load_model(model)
    app = FastAPI()

    @app.post("/embed")
    def embed(request: EmbedRequest):
        if not request.texts:
            raise HTTPException(status_code=400, detail="texts must be non-empty")
        vectors = model.embed(request.texts)
        return {"vectors": vectors.tolist(), "dim": model.dim}

    return app


def serve(model_dir: str | Path, port: int, host: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(create_app(model_dir), host=host, port=port)
