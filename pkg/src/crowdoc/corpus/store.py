"""On-disk post store: length-prefixed records plus sidecar indexes.

Layout inside the store directory:
  records.bin  header + [u32 length][json post bytes]...
  id.idx       json: post id -> byte offset of its record
  tag.idx      json: tag -> sorted post ids (questions carry tags)
  parent.idx   json: question id -> sorted answer ids, plus orphan list

Single-pass build, O(1) lookup, no external database. The store is
immutable after build and safe for concurrent readers.
"""

from __future__ import annotations

import json
import os
import struct
from pathlib import Path
from typing import Iterable, Iterator

from ..errors import NotFound
from .models import Post, PostKind

HEADER = b"CROWDOC-STORE-v1\n"
_LEN = struct.Struct(">I")


def build_store(posts: Iterable[Post], out_dir: str | Path) -> "PostStore":
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    offsets: dict[int, int] = {}
    tag_index: dict[str, list[int]] = {}
    children: dict[int, list[int]] = {}
    answer_parents: dict[int, int] = {}

    with open(out / "records.bin", "wb") as fh:
        fh.write(HEADER)
        for post in posts:
            payload = json.dumps(post.to_dict(), sort_keys=True).encode("utf-8")
            offsets[post.id] = fh.tell()
            fh.write(_LEN.pack(len(payload)))
            fh.write(payload)
            for tag in post.tags:
                tag_index.setdefault(tag, []).append(post.id)
            if post.kind is PostKind.ANSWER and post.parent_id is not None:
                children.setdefault(post.parent_id, []).append(post.id)
                answer_parents[post.id] = post.parent_id

    orphans = sorted(
        aid for aid, pid in answer_parents.items() if pid not in offsets
    )
    _write_json(out / "id.idx", {"version": 1, "offsets": offsets})
    _write_json(
        out / "tag.idx",
        {"version": 1, "tags": {t: sorted(ids) for t, ids in tag_index.items()}},
    )
    _write_json(
        out / "parent.idx",
        {
            "version": 1,
            "children": {str(q): sorted(a) for q, a in children.items()},
            "orphans": orphans,
        },
    )
    return PostStore(out)


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, sort_keys=True), encoding="utf-8")


class PostStore:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        id_idx = json.loads((self.directory / "id.idx").read_text("utf-8"))
        parent_idx = json.loads((self.directory / "parent.idx").read_text("utf-8"))
        tag_idx = json.loads((self.directory / "tag.idx").read_text("utf-8"))
        self._offsets = {int(k): v for k, v in id_idx["offsets"].items()}
        self._children = {int(k): v for k, v in parent_idx["children"].items()}
        self.orphaned_answer_ids = list(parent_idx["orphans"])
        self._tags = tag_idx["tags"]
        self._records = open(self.directory / "records.bin", "rb")
        if self._records.read(len(HEADER)) != HEADER:
            raise ValueError(f"not a crowdoc store: {self.directory}")

    def close(self) -> None:
        self._records.close()

    def __len__(self) -> int:
        return len(self._offsets)

    def __contains__(self, post_id: int) -> bool:
        return post_id in self._offsets

    def lookup(self, post_id: int) -> Post:
        if post_id not in self._offsets:
            raise NotFound(post_id)
        offset = self._offsets[post_id]
        # pread keeps lookups thread-safe: no shared file position to race on.
        fd = self._records.fileno()
        (length,) = _LEN.unpack(os.pread(fd, _LEN.size, offset))
        return Post.from_dict(json.loads(os.pread(fd, length, offset + _LEN.size)))

    def answers_of(self, question_id: int) -> list[Post]:
        return [self.lookup(a) for a in self._children.get(question_id, [])]

    def ids(self) -> list[int]:
        return sorted(self._offsets)

    def question_ids(self) -> list[int]:
        return sorted(
            i for i in self._offsets if self.lookup(i).kind is PostKind.QUESTION
        )

    def ids_with_tag(self, tag: str) -> list[int]:
        return list(self._tags.get(tag.lower(), []))

    def question_tag_map(self) -> dict[int, frozenset[str]]:
        out: dict[int, frozenset[str]] = {}
        for post in self:
            if post.kind is PostKind.QUESTION:
                out[post.id] = post.tags
        return out

    def __iter__(self) -> Iterator[Post]:
        for post_id in self.ids():
            yield self.lookup(post_id)
