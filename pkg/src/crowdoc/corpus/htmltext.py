"""HTML-to-plain-text conversion that keeps code blocks verbatim.

Post bodies in the dump are HTML. Pattern knowledge depends on code tokens
like setSupportActionBar(), so <code>/<pre> content is wrapped in fenced
blocks instead of being flattened with the prose.
"""

from __future__ import annotations

import re
from html.parser import HTMLParser

from .models import Post, PostKind, RawPostRow

_BLOCK_TAGS = {
    "p", "div", "br", "li", "ul", "ol", "blockquote", "table", "tr",
    "h1", "h2", "h3", "h4", "h5", "h6", "hr",
}
_CODE_TAGS = {"code", "pre"}
FENCE = "```"


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self.code_depth = 0
        self.code_buf: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag in _CODE_TAGS:
            if self.code_depth == 0:
                self.code_buf = []
            self.code_depth += 1
        elif tag in _BLOCK_TAGS and self.code_depth == 0:
            self.parts.append("\n")

    def handle_endtag(self, tag):
        if tag in _CODE_TAGS and self.code_depth > 0:
            self.code_depth -= 1
            if self.code_depth == 0:
                code = "".join(self.code_buf).strip("\n")
                self.parts.append(f"\n{FENCE}\n{code}\n{FENCE}\n")
        elif tag in _BLOCK_TAGS and self.code_depth == 0:
            self.parts.append("\n")

    def handle_data(self, data):
        if self.code_depth > 0:
            self.code_buf.append(data)
        else:
            self.parts.append(data)

    def result(self) -> str:
        # Unterminated code tag: flush whatever was buffered as a fence.
        if self.code_depth > 0:
            code = "".join(self.code_buf).strip("\n")
            if code:
                self.parts.append(f"\n{FENCE}\n{code}\n{FENCE}\n")
        return "".join(self.parts)


def html_to_text(html: str) -> str:
    """Strip tags, decode entities, and fence <code>/<pre> content.

    Whitespace outside code is collapsed; fenced code is preserved verbatim.
    """
    extractor = _TextExtractor()
    try:
        extractor.feed(html)
        extractor.close()
    except Exception:
        # Pathological HTML: degrade to a crude tag strip.
        return _collapse(re.sub(r"<[^>]*>", " ", html))
    raw = extractor.result()
    return _reflow(raw)


def _reflow(raw: str) -> str:
    """Collapse whitespace outside fences, keep fenced regions intact."""
    out: list[str] = []
    in_code = False
    pending: list[str] = []

    def flush():
        text = _collapse(" ".join(pending))
        if text:
            out.append(text)
        pending.clear()

    for line in raw.split("\n"):
        if line.strip() == FENCE:
            flush()
            out.append(FENCE)
            in_code = not in_code
        elif in_code:
            out.append(line)
        elif line.strip():
            pending.append(line)
        else:
            flush()
    flush()
    return "\n".join(out).strip()


def _collapse(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


_TAG_ANGLE = re.compile(r"<([^<>]+)>")


def parse_tag_string(tags: str | None) -> frozenset[str]:
    """Parse the dump's Tags attribute ("<java><android>" after XML
    decoding) into a lowercase tag set; tolerates |-delimited variants."""
    if not tags:
        return frozenset()
    found = _TAG_ANGLE.findall(tags)
    if not found:
        found = [t for t in re.split(r"[|\s]+", tags) if t]
    return frozenset(t.strip().lower() for t in found if t.strip())


def normalize_post(row: RawPostRow) -> Post:
    """Turn a raw dump row into a normalized Post (total, never raises)."""
    return Post(
        id=row.id,
        kind=PostKind.QUESTION if row.post_type_id == 1 else PostKind.ANSWER,
        parent_id=row.parent_id,
        score=row.score,
        tags=parse_tag_string(row.tags),
        title=row.title,
        body_text=html_to_text(row.body_html),
        creation_date=row.creation_date,
    )
