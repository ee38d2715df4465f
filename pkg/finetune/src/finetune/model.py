"""Hashed bag-of-tokens bi-encoder.

A deliberately small trainable encoder: tokens hash into a fixed bucket
space, the bucket-count vector passes through one linear projection, and
the output is L2-normalized. Small enough to train on hundreds of pairs
in seconds on a CPU while still exercising the real contrastive
procedure end to end.
"""

from __future__ import annotations

import hashlib
import json
import re
from pathlib import Path

import torch
from torch import nn

from .errors import UnknownEncoder

_TOKEN = re.compile(r"[a-z0-9]+")

MODEL_FILE = "weights.pt"
CONFIG_FILE = "model.json"


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def token_bucket(token: str, buckets: int) -> int:
    # md5 rather than hash(): stable across processes and PYTHONHASHSEED.
    digest = hashlib.md5(token.encode("utf-8")).hexdigest()
    return int(digest[:8], 16) % buckets


class HashedBiEncoder(nn.Module):
    def __init__(self, buckets: int = 4096, dim: int = 128):
        super().__init__()
        self.buckets = buckets
        self.dim = dim
        self.projection = nn.Linear(buckets, dim, bias=True)

    def featurize(self, texts: list[str]) -> torch.Tensor:
        features = torch.zeros(len(texts), self.buckets)
        for row, text in enumerate(texts):
            tokens = tokenize(text)
            for token in tokens:
                features[row, token_bucket(token, self.buckets)] += 1.0
            if tokens:
                features[row] /= len(tokens)
        return features

    def forward(self, texts: list[str]) -> torch.Tensor:
        projected = self.projection(self.featurize(texts))
        # The bias keeps empty inputs away from the zero vector, so
        # normalization is always well defined.
        return nn.functional.normalize(projected, dim=1)

    @torch.no_grad()
    def embed(self, texts: list[str]) -> torch.Tensor:
        self.eval()
        return self.forward(texts)


def build_encoder(identifier: str, seed: int = 0) -> HashedBiEncoder:
    """Instantiate a base encoder from its identifier.

    Format: "hashed-bow-v1" or "hashed-bow-v1:<buckets>:<dim>". The seed
    fixes the random projection so "untrained" is a reproducible baseline.
    """
    parts = identifier.split(":")
    if parts[0] != "hashed-bow-v1" or len(parts) not in (1, 3):
        raise UnknownEncoder(f"unknown base encoder {identifier!r}")
    buckets, dim = (4096, 128) if len(parts) == 1 else (int(parts[1]), int(parts[2]))
    torch.manual_seed(seed)
    return HashedBiEncoder(buckets=buckets, dim=dim)


def save_model(model: HashedBiEncoder, identifier: str, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    torch.save(model.state_dict(), out / MODEL_FILE)
    (out / CONFIG_FILE).write_text(
        json.dumps(
            {
                "base_encoder": identifier,
                "buckets": model.buckets,
                "dim": model.dim,
            },
            sort_keys=True,
        ),
        encoding="utf-8",
    )
    return out


def load_model(model_dir: str | Path) -> HashedBiEncoder:
    directory = Path(model_dir)
    config = json.loads((directory / CONFIG_FILE).read_text("utf-8"))
    model = HashedBiEncoder(buckets=config["buckets"], dim=config["dim"])
    model.load_state_dict(torch.load(directory / MODEL_FILE, weights_only=True))
    model.eval()
    return model
