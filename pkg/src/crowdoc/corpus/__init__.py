from .models import RawPostRow, Post, PostKind, CorpusFilter, ParseStats
from .xmldump import parse_dump
from .htmltext import html_to_text, parse_tag_string, normalize_post
from .filters import filter_posts, post_passes
from .store import PostStore, build_store

__all__ = [
    "RawPostRow",
    "Post",
    "PostKind",
    "CorpusFilter",
    "ParseStats",
    "parse_dump",
    "html_to_text",
    "parse_tag_string",
    "normalize_post",
    "filter_posts",
    "post_passes",
    "PostStore",
    "build_store",
]
