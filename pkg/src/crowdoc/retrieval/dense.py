"""Dense retrieval backend: embedding-service client, corpus sidecar,
and cosine top-k search."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import requests

from ..corpus.filters import effective_tags, post_passes
from ..corpus.models import CorpusFilter
from ..corpus.store import PostStore
from ..errors import DimensionMismatch, EmbeddingServiceUnavailable
from .index import ScoredPost, index_text
from .knowledge import RetrievalQuery


class EmbeddingClient:
    """HTTP client for the /embed wire protocol:
    request {"texts": [...]}, response {"vectors": [[...]...], "dim": N}."""

    def __init__(self, base_url: str, timeout: float = 30.0, session=None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.session = session or requests.Session()

    def embed(self, texts: list[str]) -> np.ndarray:
        try:
            resp = self.session.post(
                f"{self.base_url}/embed", json={"texts": texts}, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise EmbeddingServiceUnavailable(str(exc)) from exc
        if resp.status_code != 200:
            raise EmbeddingServiceUnavailable(
                f"embedding service returned {resp.status_code}"
            )
        data = resp.json()
        vectors = np.asarray(data["vectors"], dtype=np.float64)
        if vectors.shape[0] != len(texts):
            raise EmbeddingServiceUnavailable(
                f"expected {len(texts)} vectors, got {vectors.shape[0]}"
            )
        if "dim" in data and vectors.shape[1] != data["dim"]:
            raise DimensionMismatch(data["dim"], vectors.shape[1])
        return vectors


def embed_corpus(
    client: EmbeddingClient,
    store: PostStore,
    scope: CorpusFilter | None,
    out_path: str | Path,
    batch_size: int = 32,
) -> int:
    """Precompute post embeddings into a .npz sidecar (ids + matrix)."""
    question_tags = store.question_tag_map() if scope and scope.required_tags else {}
    ids: list[int] = []
    texts: list[str] = []
    for post in store:
        if scope is not None:
            tags = effective_tags(post, question_tags)
            if not post_passes(post, scope, tags):
                continue
        ids.append(post.id)
        texts.append(index_text(post))
    chunks = []
    for start in range(0, len(texts), batch_size):
        chunks.append(client.embed(texts[start : start + batch_size]))
    matrix = np.vstack(chunks) if chunks else np.zeros((0, 0))
    np.savez(out_path, ids=np.asarray(ids, dtype=np.int64), vectors=matrix)
    return len(ids)


def load_sidecar(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    data = np.load(path)
    return data["ids"], data["vectors"]


def dense_search(
    client: EmbeddingClient,
    sidecar_path: str | Path,
    query: RetrievalQuery | str,
    k: int = 10,
) -> list[ScoredPost]:
    """Cosine-similarity top-k against the precomputed embedding sidecar."""
    text = query.text if isinstance(query, RetrievalQuery) else query
    ids, vectors = load_sidecar(sidecar_path)
    if len(ids) == 0:
        return []
    qvec = client.embed([text])[0]
    if qvec.shape[0] != vectors.shape[1]:
        raise DimensionMismatch(vectors.shape[1], qvec.shape[0])
    qnorm = np.linalg.norm(qvec)
    dnorms = np.linalg.norm(vectors, axis=1)
    denom = np.where(dnorms * qnorm > 0, dnorms * qnorm, 1.0)
    sims = vectors @ qvec / denom
    order = sorted(range(len(ids)), key=lambda i: (-sims[i], ids[i]))
    return [ScoredPost(int(ids[i]), float(sims[i])) for i in order[:k]]
