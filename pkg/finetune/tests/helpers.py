"""Synthetic {query, positives} dataset generation.

Records follow the documentation pipeline's export-finetune line-JSON
format. Queries and their positive answers share a topic vocabulary so
contrastive training has real signal to pick up.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

TOPICS = [
    ["toolbar", "actionbar", "title", "navigation", "menu", "icon"],
    ["bytearray", "bytes", "index", "buffer", "stream", "charset"],
    ["fragment", "activity", "lifecycle", "rotation", "state", "bundle"],
    ["coroutine", "suspend", "dispatcher", "scope", "flow", "channel"],
    ["gradle", "build", "dependency", "cache", "task", "plugin"],
    ["tensor", "gradient", "layer", "training", "epoch", "batch"],
    ["socket", "request", "timeout", "retry", "header", "response"],
    ["theme", "style", "color", "attribute", "resource", "inflate"],
]
NOISE = ["the", "a", "how", "why", "can", "should", "use", "with", "in", "my"]


def synthetic_records(n: int, seed: int = 0, positives_per_query: int = 1) -> list[dict]:
    rng = random.Random(seed)
    records = []
    for i in range(n):
        topic = TOPICS[i % len(TOPICS)]
        query = " ".join(
            rng.sample(NOISE, 2) + rng.sample(topic, 3) + [f"q{i}"]
        )
        positives = [
            " ".join(rng.sample(topic, 4) + rng.sample(NOISE, 3) + [f"a{i}_{j}"])
            for j in range(positives_per_query)
        ]
        records.append({"query": query, "positives": positives})
    return records


def write_dataset(records: list[dict], path: Path) -> Path:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return path
