"""Record/replay cassettes: the deterministic testing seam for LLM calls.

A cassette maps a canonical request hash to the recorded response text.
The hash is invariant under trailing-whitespace differences in message
content and nothing else.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from ..errors import CassetteMiss


def _normalize(content: str) -> str:
    return "\n".join(line.rstrip() for line in content.split("\n")).rstrip()


def request_hash(model: str, temperature: float, messages) -> str:
    parts = [model, f"{temperature:.4f}"]
    for msg in messages:
        parts.append(msg.role)
        parts.append(_normalize(msg.content))
    blob = "\x1e".join(parts).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


class Cassette:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.responses: dict[str, str] = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        entry = json.loads(line)
                        self.responses[entry["hash"]] = entry["response_text"]

    def __contains__(self, request_hash: str) -> bool:
        return request_hash in self.responses

    def get(self, request_hash: str) -> str:
        if request_hash not in self.responses:
            raise CassetteMiss(request_hash)
        return self.responses[request_hash]

    def record(self, request_hash: str, request_summary: str, response_text: str) -> None:
        if request_hash in self.responses:
            return
        self.responses[request_hash] = response_text
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(
                json.dumps(
                    {
                        "hash": request_hash,
                        "request_summary": request_summary,
                        "response_text": response_text,
                    },
                    sort_keys=True,
                )
                + "\n"
            )
