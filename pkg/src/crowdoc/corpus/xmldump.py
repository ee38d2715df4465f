"""Streaming parser for Stack Exchange Posts.xml dumps.

Uses iterparse so memory stays bounded by the largest single row, not the
file size. Elements are cleared as soon as each row is consumed.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from datetime import datetime, timezone
from typing import BinaryIO, Iterator

from ..errors import MalformedXml
from .models import ParseStats, RawPostRow

REQUIRED_ATTRS = ("Id", "PostTypeId", "Score", "Body", "CreationDate")


def _parse_creation_date(value: str) -> datetime:
    # Dump format: 2020-06-27T10:40:09.400 (naive, UTC by convention)
    dt = datetime.fromisoformat(value)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt


def parse_dump(stream: BinaryIO, stats: ParseStats | None = None) -> Iterator[RawPostRow]:
    """Yield one RawPostRow per <row> element, in file order.

    Rows with PostTypeId outside {1, 2} (wiki, moderation, ...) are skipped
    and counted, as are rows missing a required attribute. Malformed XML
    aborts with MalformedXml.
    """
    if stats is None:
        stats = ParseStats()
    try:
        for event, elem in ET.iterparse(stream, events=("end",)):
            if elem.tag != "row":
                continue
            stats.rows_seen += 1
            row = _row_from_element(elem, stats)
            if row is not None:
                stats.rows_yielded += 1
                yield row
            elem.clear()
    except ET.ParseError as exc:
        raise MalformedXml(exc.position, str(exc)) from exc


def _row_from_element(elem, stats: ParseStats) -> RawPostRow | None:
    attrs = elem.attrib
    missing = [name for name in REQUIRED_ATTRS if name not in attrs]
    if missing:
        stats.skipped_missing_attr += 1
        return None
    try:
        post_type_id = int(attrs["PostTypeId"])
    except ValueError:
        stats.skipped_missing_attr += 1
        return None
    if post_type_id not in (1, 2):
        stats.skipped_type += 1
        return None
    try:
        return RawPostRow(
            id=int(attrs["Id"]),
            post_type_id=post_type_id,
            parent_id=int(attrs["ParentId"]) if "ParentId" in attrs else None,
            score=int(attrs["Score"]),
            tags=attrs.get("Tags"),
            title=attrs.get("Title"),
            body_html=attrs["Body"],
            creation_date=_parse_creation_date(attrs["CreationDate"]),
        )
    except ValueError:
        stats.skipped_missing_attr += 1
        return None
