"""Contrastive training with in-batch negatives.

Each batch of (query, positive) pairs scores every query against every
positive in the batch; the diagonal entries are the targets and the other
rows' positives serve as negatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import torch
from torch import nn

from .data import load_dataset, training_pairs
from .errors import DatasetTooSmall
from .model import build_encoder, save_model

LOSS_CURVE_FILE = "loss.csv"
TEMPERATURE = 0.05


@dataclass
class TrainConfig:
    dataset_path: str
    output_dir: str
    base_encoder: str = "hashed-bow-v1"
    epochs: int = 1
    batch_size: int = 16
    gradient_accumulation: int = 8
    learning_rate: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.batch_size < 2:
            raise DatasetTooSmall(
                "batch_size must be >= 2: in-batch negatives need at least "
                "two examples per batch"
            )
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.gradient_accumulation < 1:
            raise ValueError("gradient_accumulation must be >= 1")


def contrastive_loss(
    query_vectors: torch.Tensor, positive_vectors: torch.Tensor
) -> torch.Tensor:
    logits = query_vectors @ positive_vectors.T / TEMPERATURE
    targets = torch.arange(len(query_vectors))
    return nn.functional.cross_entropy(logits, targets)


def train(config: TrainConfig) -> Path:
    """Train the encoder; returns the model directory.

    Writes weights, model config, and a per-step loss curve (step,loss
    CSV) to the output directory. Deterministic for a fixed seed.
    """
    pairs = training_pairs(load_dataset(config.dataset_path))
    if len(pairs) < config.batch_size:
        raise DatasetTooSmall(
            f"dataset has {len(pairs)} pairs, need at least {config.batch_size}"
        )

    torch.manual_seed(config.seed)
    model = build_encoder(config.base_encoder, seed=config.seed)
    model.train()
    optimizer = torch.optim.SGD(model.parameters(), lr=config.learning_rate)
    generator = torch.Generator().manual_seed(config.seed)

    losses: list[float] = []
    step = 0
    optimizer.zero_grad()
    for _ in range(config.epochs):
        order = torch.randperm(len(pairs), generator=generator).tolist()
        for start in range(0, len(order) - config.batch_size + 1, config.batch_size):
            batch = [pairs[i] for i in order[start : start + config.batch_size]]
            queries = model([q for q, _ in batch])
            positives = model([p for _, p in batch])
            loss = contrastive_loss(queries, positives)
            (loss / config.gradient_accumulation).backward()
            step += 1
            losses.append(loss.item())
            if step % config.gradient_accumulation == 0:
                optimizer.step()
                optimizer.zero_grad()
    if step % config.gradient_accumulation != 0:
        optimizer.step()
        optimizer.zero_grad()

    out = save_model(model, config.base_encoder, config.output_dir)
    curve = "\n".join(f"{i},{loss:.6f}" for i, loss in enumerate(losses, start=1))
    (out / LOSS_CURVE_FILE).write_text("step,loss\n" + curve + "\n", encoding="utf-8")
    return out


def load_loss_curve(model_dir: str | Path) -> list[float]:
    lines = (Path(model_dir) / LOSS_CURVE_FILE).read_text("utf-8").strip().split("\n")
    return [float(line.split(",")[1]) for line in lines[1:]]
