"""Shared test fixtures: synthetic dump generation and corpus builders."""

from __future__ import annotations

import io
import random
from pathlib import Path
from xml.sax.saxutils import quoteattr

from crowdoc.corpus.filters import filter_posts
from crowdoc.corpus.htmltext import normalize_post
from crowdoc.corpus.models import CorpusFilter, ParseStats
from crowdoc.corpus.store import build_store
from crowdoc.corpus.xmldump import parse_dump

TAG_POOL = ["android", "kotlin", "java", "tensorflow", "python"]


def row_xml(
    id,
    post_type_id,
    score=0,
    parent_id=None,
    tags=None,
    title=None,
    body="<p>body</p>",
    creation_date="2021-06-01T12:00:00.000",
):
    attrs = [
        f"Id={quoteattr(str(id))}",
        f"PostTypeId={quoteattr(str(post_type_id))}",
        f"Score={quoteattr(str(score))}",
        f"Body={quoteattr(body)}",
        f"CreationDate={quoteattr(creation_date)}",
    ]
    if parent_id is not None:
        attrs.append(f"ParentId={quoteattr(str(parent_id))}")
    if tags is not None:
        tag_str = "".join(f"<{t}>" for t in tags)
        attrs.append(f"Tags={quoteattr(tag_str)}")
    if title is not None:
        attrs.append(f"Title={quoteattr(title)}")
    return f'  <row {" ".join(attrs)} />'


def dump_xml(rows: list[str]) -> bytes:
    return ("\n".join(['<?xml version="1.0"?>', "<posts>"] + rows + ["</posts>"])).encode(
        "utf-8"
    )


def random_dump(n_rows: int, seed: int = 7) -> bytes:
    """Synthetic dump with a mix of questions, answers, and junk types."""
    rng = random.Random(seed)
    rows = []
    question_ids = []
    next_id = 1
    for _ in range(n_rows):
        roll = rng.random()
        year = rng.randint(2016, 2023)
        date = f"{year}-0{rng.randint(1, 9)}-1{rng.randint(0, 9)}T0{rng.randint(0, 9)}:30:00.000"
        if roll < 0.05:
            rows.append(
                row_xml(next_id, rng.choice([4, 5, 6]), score=rng.randint(0, 3), creation_date=date)
            )
        elif roll < 0.55 or not question_ids:
            tags = rng.sample(TAG_POOL, rng.randint(1, 3))
            rows.append(
                row_xml(
                    next_id,
                    1,
                    score=rng.randint(-2, 20),
                    tags=tags,
                    title=f"Question about {tags[0]} number {next_id}",
                    body=f"<p>How do I do thing {next_id} in {tags[0]}?</p>",
                    creation_date=date,
                )
            )
            question_ids.append(next_id)
        else:
            parent = rng.choice(question_ids)
            rows.append(
                row_xml(
                    next_id,
                    2,
                    score=rng.randint(-2, 20),
                    parent_id=parent,
                    body=f"<p>Answer {next_id}: use <code>doThing{next_id}()</code>.</p>",
                    creation_date=date,
                )
            )
        next_id += 1
    return dump_xml(rows)


def build_store_from_dump(dump_bytes: bytes, out_dir: Path, flt: CorpusFilter | None = None):
    stats = ParseStats()
    rows = parse_dump(io.BytesIO(dump_bytes), stats)
    posts = (normalize_post(r) for r in rows)
    if flt is not None:
        posts = filter_posts(posts, flt, stats)
    store = build_store(posts, out_dir)
    return store, stats


# --- fixture corpus for the end-to-end pipeline -------------------------

APIS = {
    "ActionBar": {
        "library": "android",
        "description": (
            "The ActionBar class in Android provides a dedicated space at the "
            "top of an activity for title and navigation controls."
        ),
    },
    "ByteArray": {
        "library": "kotlin",
        "description": (
            "The ByteArray class in Kotlin represents a fixed-size array of "
            "byte values accessed by index."
        ),
    },
}

_KTYPE_SENTENCES = {
    "Functionality": "{api} can {verb} operations such as displaying controls and it performs useful actions.",
    "Concept": "{api} models the concept of {noun} and its terminology is central to the framework.",
    "Pattern": "A common use case example is to call {api}.configure() first and then use it in code.",
    "Directive": "A best practice caveat is to avoid calling {api} before initialization when using it.",
    "Performance": "The time and memory performance of {api} is good because allocation is cheap.",
    "Environment": "{api} needs version 21 or newer and specific configurations or system requirements.",
    "Alternative": "Toolbar and other alternatives can replace {api} in modern code.",
}


def fixture_dump() -> bytes:
    """~50 posts across two libraries, each answer carrying one knowledge
    type's vocabulary so BM25 retrieval is discriminative.

    Special markers consumed by the scripted provider:
      IRRELEVANT -> extraction replies "No such knowledge."
      WRONGFACT  -> validation replies "No" for snippets from this post.
    """
    rows = []
    next_id = [100]

    def add(api_name, tag, qid_holder):
        api = APIS[api_name]
        qid = next_id[0]
        rows.append(
            row_xml(
                qid,
                1,
                score=10,
                tags=[tag],
                title=f"How to use {api_name} in {tag}?",
                body=f"<p>I want to learn about {api_name}.</p>",
                creation_date="2020-01-10T10:00:00.000",
            )
        )
        next_id[0] += 1
        for i, (ktype, template) in enumerate(_KTYPE_SENTENCES.items()):
            sentence = template.format(api=api_name, verb="perform", noun="surfaces")
            body = f"<p>{sentence}</p><p>Also {api_name} is widely used in {tag} code {ktype.lower()}.</p>"
            rows.append(
                row_xml(
                    next_id[0],
                    2,
                    score=8 + i,
                    parent_id=qid,
                    body=body,
                    creation_date="2020-02-10T10:00:00.000",
                )
            )
            next_id[0] += 1
        # One irrelevant answer (extraction refusal) and one wrong-fact
        # answer (validation rejection) per API.
        rows.append(
            row_xml(
                next_id[0],
                2,
                score=9,
                parent_id=qid,
                body=f"<p>IRRELEVANT I solved it, it had nothing to do with {api_name}. Thanks! operations actions perform</p>",
                creation_date="2020-03-01T10:00:00.000",
            )
        )
        next_id[0] += 1
        rows.append(
            row_xml(
                next_id[0],
                2,
                score=9,
                parent_id=qid,
                body=f"<p>WRONGFACT {api_name} secretly formats your disk when misused and performs operations.</p>",
                creation_date="2020-03-02T10:00:00.000",
            )
        )
        next_id[0] += 1

    for api_name, info in APIS.items():
        add(api_name, info["library"], None)
        add(api_name, info["library"], None)

    # Distractor posts in an unrelated library.
    for _ in range(10):
        qid = next_id[0]
        rows.append(
            row_xml(
                qid,
                1,
                score=6,
                tags=["python"],
                title=f"Unrelated python question {qid}",
                body="<p>Totally unrelated question about pandas.</p>",
                creation_date="2020-04-01T10:00:00.000",
            )
        )
        next_id[0] += 1
        rows.append(
            row_xml(
                next_id[0],
                2,
                score=7,
                parent_id=qid,
                body="<p>Unrelated answer about dataframes.</p>",
                creation_date="2020-04-02T10:00:00.000",
            )
        )
        next_id[0] += 1
    return dump_xml(rows)
