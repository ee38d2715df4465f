"""crowdoc command line: ingest, index, retrieve, generate, eval,
export-finetune, embed-corpus."""

from __future__ import annotations

import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import click

from .config import Config, load_config
from .corpus.filters import filter_posts
from .corpus.htmltext import normalize_post
from .corpus.models import CorpusFilter, ParseStats, PostKind
from .corpus.store import PostStore, build_store
from .corpus.xmldump import parse_dump
from .errors import CrowdocError
from .evalharness.metrics import compute_metrics, load_labels
from .evalharness.overlap import estimate_overlap
from .evalharness.report import render_comparison, render_metrics_figure
from .llm.cassette import Cassette
from .llm.client import CassetteProvider, LiveProvider, LlmClient, RecordingProvider
from .pipeline.document import ApiDocument
from .pipeline.generate import PipelineConfig, generate_document
from .pipeline.markdown import render_markdown
from .retrieval.dense import EmbeddingClient, dense_search, embed_corpus
from .retrieval.finetune_export import export_finetune_dataset
from .retrieval.index import InvertedIndex, bm25_search, build_index
from .retrieval.knowledge import ApiProfile, KnowledgeType

REPLAY_TIMESTAMP = "1970-01-01T00:00:00+00:00"


def _err(message: str) -> None:
    click.echo(message, err=True)


def _parse_kinds(kinds: str) -> frozenset[PostKind]:
    out = set()
    for piece in kinds.split(","):
        piece = piece.strip().lower()
        if piece == "question":
            out.add(PostKind.QUESTION)
        elif piece == "answer":
            out.add(PostKind.ANSWER)
        elif piece:
            raise click.UsageError(f"unknown kind {piece!r}")
    if not out:
        raise click.UsageError("at least one kind required")
    return frozenset(out)


def _parse_tags(tags: str | None) -> frozenset[str]:
    if not tags:
        return frozenset()
    return frozenset(t.strip().lower() for t in tags.split(",") if t.strip())


@click.group()
def cli():
    """Generate seven-section API documents from Stack Exchange dumps."""


@cli.command()
@click.option("--dump", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--tags", default=None, help="comma-separated any-match tag filter")
@click.option("--min-score", default=0, type=int, show_default=True)
@click.option("--kinds", default="question,answer", show_default=True)
def ingest(dump, out_dir, tags, min_score, kinds):
    """Parse a Posts.xml dump into a local post store."""
    flt = CorpusFilter(
        required_tags=_parse_tags(tags),
        min_score=min_score,
        kinds=_parse_kinds(kinds),
    )
    stats = ParseStats()
    with open(dump, "rb") as fh:
        rows = parse_dump(fh, stats)
        posts = (normalize_post(row) for row in rows)
        store = build_store(filter_posts(posts, flt, stats), out_dir)
    _err(
        f"ingested {len(store)} posts "
        f"(rows seen {stats.rows_seen}, skipped type {stats.skipped_type}, "
        f"skipped malformed {stats.skipped_missing_attr}, "
        f"orphaned answers {stats.orphaned_answers})"
    )


@cli.command("index")
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--tags", default=None)
@click.option("--min-score", default=0, type=int, show_default=True)
@click.option("--kinds", default="answer", show_default=True, help="retrieval corpus defaults to answers only")
def index_cmd(store_dir, out_dir, tags, min_score, kinds):
    """Build the BM25 inverted index over the store."""
    store = PostStore(store_dir)
    scope = CorpusFilter(
        required_tags=_parse_tags(tags),
        min_score=min_score,
        kinds=_parse_kinds(kinds),
    )
    idx = build_index(store, scope)
    idx.save(out_dir)
    _err(f"indexed {idx.doc_count} posts, {len(idx.postings)} terms")


def _ktypes(value: str) -> list[KnowledgeType]:
    if value.lower() == "all":
        return list(KnowledgeType)
    return [KnowledgeType.parse(value)]


@cli.command()
@click.option("--api", "api_name", required=True)
@click.option("--library", required=True)
@click.option("--ktype", default="all", show_default=True)
@click.option("--backend", default="bm25", type=click.Choice(["bm25", "dense"]), show_default=True)
@click.option("-k", "k", default=None, type=int)
@click.option("--index", "index_dir", default=None, type=click.Path(file_okay=False))
@click.option("--config", "config_path", default=None, type=click.Path(dir_okay=False))
def retrieve(api_name, library, ktype, backend, k, index_dir, config_path):
    """Print top-k posts per knowledge type as tab-separated lines."""
    cfg = load_config(config_path, {"k": k, "index_dir": index_dir})
    api = ApiProfile(name=api_name, library=library, description=f"The {api_name} API.")
    searcher = _make_searcher(cfg, backend)
    ktypes = _ktypes(ktype)
    from .retrieval.knowledge import build_query

    for kt in ktypes:
        hits = searcher(build_query(api, kt, cfg.templates()), cfg.k)
        for sp in hits:
            if len(ktypes) > 1:
                click.echo(f"{kt.value}\t{sp.post_id}\t{sp.score:.6f}")
            else:
                click.echo(f"{sp.post_id}\t{sp.score:.6f}")


def _make_searcher(cfg: Config, backend: str):
    if backend == "bm25":
        idx = InvertedIndex.load(cfg.index_dir)
        return lambda query, k: bm25_search(idx, query, k)
    client = EmbeddingClient(cfg.embedding_url)
    sidecar = cfg.embedding_sidecar
    return lambda query, k: dense_search(client, sidecar, query, k)


@cli.command()
@click.option("--api", "api_name", required=True)
@click.option("--library", required=True)
@click.option("--description", required=True, help="one-sentence API description, or @file")
@click.option("--backend", default="bm25", type=click.Choice(["bm25", "dense"]), show_default=True)
@click.option("--policy", default=None, type=click.Choice(["strict", "lenient"]))
@click.option("--cassette", "cassette_path", default=None, type=click.Path(dir_okay=False))
@click.option("--record", is_flag=True, default=False)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--store", "store_dir", default=None, type=click.Path(file_okay=False))
@click.option("--index", "index_dir", default=None, type=click.Path(file_okay=False))
@click.option("--config", "config_path", default=None, type=click.Path(dir_okay=False))
def generate(api_name, library, description, backend, policy, cassette_path, record,
             out_dir, store_dir, index_dir, config_path):
    """Run the full pipeline and write <api>.md plus trace and doc files."""
    cfg = load_config(
        config_path,
        {"policy": policy, "store_dir": store_dir, "index_dir": index_dir},
    )
    if description.startswith("@"):
        description = Path(description[1:]).read_text("utf-8").strip()
    api = ApiProfile(name=api_name, library=library, description=description)
    store = PostStore(cfg.store_dir)
    searcher = _make_searcher(cfg, backend)

    replay = cassette_path is not None and not record
    if cassette_path is not None:
        cassette = Cassette(cassette_path)
        if record:
            provider = RecordingProvider(LiveProvider(cfg.endpoint), cassette)
        else:
            provider = CassetteProvider(cassette, strict=True)
    else:
        provider = LiveProvider(cfg.endpoint)
    # Replay is offline; only live traffic needs rate limiting.
    client = LlmClient(
        provider,
        requests_per_minute=None if replay else cfg.requests_per_minute,
    )

    timestamp = (
        REPLAY_TIMESTAMP
        if replay
        else datetime.now(timezone.utc).isoformat(timespec="seconds")
    )
    pipe_cfg = PipelineConfig(
        model=cfg.model,
        temperature=cfg.temperature,
        k=cfg.k,
        backend=backend,
        policy=cfg.policy,
        parallelism=cfg.parallelism,
        query_templates=cfg.templates(),
        timestamp=timestamp,
    )
    document, trace = generate_document(api, store, searcher, client, pipe_cfg)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{api.name}.md").write_text(render_markdown(document), encoding="utf-8")
    (out / f"{api.name}.doc.json").write_text(
        json.dumps(document.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    (out / f"{api.name}.trace.json").write_text(
        json.dumps(trace.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    for warning in trace.warnings:
        _err(f"warning: {warning}")
    _err(f"wrote {out / (api.name + '.md')}")


@cli.command("export-finetune")
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--min-score", default=5, type=int, show_default=True)
def export_finetune(store_dir, out_path, min_score):
    """Export the {query, positives} contrastive fine-tuning dataset."""
    store = PostStore(store_dir)
    flt = CorpusFilter(min_score=min_score)
    count = export_finetune_dataset(store, out_path, flt)
    _err(f"wrote {count} records to {out_path}")


@cli.command("embed-corpus")
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--embedding-url", default=None)
@click.option("--tags", default=None)
@click.option("--min-score", default=0, type=int)
@click.option("--kinds", default="answer", show_default=True)
@click.option("--config", "config_path", default=None, type=click.Path(dir_okay=False))
def embed_corpus_cmd(store_dir, out_path, embedding_url, tags, min_score, kinds, config_path):
    """Precompute post embeddings into the dense-retrieval sidecar."""
    cfg = load_config(config_path, {"embedding_url": embedding_url})
    store = PostStore(store_dir)
    scope = CorpusFilter(
        required_tags=_parse_tags(tags),
        min_score=min_score,
        kinds=_parse_kinds(kinds),
    )
    client = EmbeddingClient(cfg.embedding_url)
    count = embed_corpus(client, store, scope, out_path)
    _err(f"embedded {count} posts into {out_path}")


@cli.command("eval")
@click.option("--docs", "docs_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--labels", "labels_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--official", "official_dir", default=None, type=click.Path(file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--name", default="crowdoc", show_default=True, help="method name in the report")
def eval_cmd(docs_dir, labels_path, official_dir, out_path, name):
    """Compute correctness/uniqueness/overlap from a label file."""
    documents = []
    for path in sorted(Path(docs_dir).glob("*.doc.json")):
        documents.append(ApiDocument.from_dict(json.loads(path.read_text("utf-8"))))
    if not documents:
        raise CrowdocError(f"no *.doc.json documents in {docs_dir}")
    labels = load_labels(labels_path)
    report = compute_metrics(documents, labels)
    table = render_comparison([(name, report)])

    sections = [table]
    if official_dir is not None:
        lines = ["", "Overlap suggestions (suggested, requires human confirmation):"]
        for doc in documents:
            official = Path(official_dir) / f"{doc.api.name}.txt"
            if not official.exists():
                lines.append(f"  {doc.api.name}: no official text found")
                continue
            for s in estimate_overlap(doc, official.read_text("utf-8")):
                flag = "overlap?" if s.suggested_overlap else "-"
                lines.append(
                    f"  {s.api}/{s.section}[{s.index}] score={s.score:.2f} {flag}"
                )
        sections.append("\n".join(lines) + "\n")
    text = "\n".join(sections)
    Path(out_path).write_text(text, encoding="utf-8")
    figure = Path(out_path).with_suffix(".png")
    render_metrics_figure([(name, report)], figure)
    _err(f"wrote {out_path} and {figure}")
    click.echo(table, nl=False)


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        _err(f"usage error: {exc.format_message()}")
        if exc.ctx is not None:
            _err(exc.ctx.get_usage())
        return 2
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        return 1
    except CrowdocError as exc:
        _err(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
