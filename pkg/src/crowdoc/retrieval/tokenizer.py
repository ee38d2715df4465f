"""Identifier-aware tokenizer shared by index build and query parsing.

Splits on non-alphanumerics, then additionally emits camelCase and digit
subtokens alongside the whole (lowercased) identifier, so that
"setSupportActionBar" matches queries for "action bar".
"""

from __future__ import annotations

import re

TOKENIZER_VERSION = "ident-subtok-1"

_WORD = re.compile(r"[A-Za-z0-9]+")
_CAMEL = re.compile(
    r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+"
)


def tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    for word in _WORD.findall(text):
        tokens.append(word.lower())
        parts = _CAMEL.findall(word)
        if len(parts) > 1:
            tokens.extend(p.lower() for p in parts)
    return tokens
