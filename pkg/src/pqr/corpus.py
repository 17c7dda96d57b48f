"""Documents, corpus files and tokenization.

Token positions always index the original token sequence: a stopword or a
too-short token still occupies its slot, so distances measured between
surviving tokens reflect the real text.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .errors import CorpusError, DuplicateDocumentError

# alphanumeric runs in any script; underscore is a separator
_TOKEN_RE = re.compile(r"[^\W_]+")


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    title: str | None = None


class Token(NamedTuple):
    term: str
    position: int


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = True
    stopwords: frozenset[str] = field(default_factory=frozenset)
    min_token_len: int = 1

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ValueError("min_token_len must be >= 1")
        # stopwords are compared against normalized tokens
        words = frozenset(w.casefold() if self.lowercase else w for w in self.stopwords)
        object.__setattr__(self, "stopwords", words)

    def to_dict(self) -> dict:
        return {
            "lowercase": self.lowercase,
            "stopwords": sorted(self.stopwords),
            "min_token_len": self.min_token_len,
        }

    @classmethod
    def from_dict(cls, data: dict) -> TokenizerConfig:
        return cls(
            lowercase=bool(data.get("lowercase", True)),
            stopwords=frozenset(data.get("stopwords", ())),
            min_token_len=int(data.get("min_token_len", 1)),
        )


def split_words(text: str) -> list[str]:
    """Raw alphanumeric runs of ``text``, before any filtering."""
    return _TOKEN_RE.findall(text)


def tokenize(text: str, cfg: TokenizerConfig | None = None) -> list[Token]:
    """Split ``text`` into ``(term, position)`` tokens.

    Filtered tokens (stopwords, tokens shorter than ``min_token_len``) keep
    their position but are left out of the result.
    """
    cfg = cfg or TokenizerConfig()
    out = []
    for pos, word in enumerate(split_words(text)):
        term = word.casefold() if cfg.lowercase else word
        if len(term) < cfg.min_token_len or term in cfg.stopwords:
            continue
        out.append(Token(term, pos))
    return out


def query_terms(query: str, cfg: TokenizerConfig | None = None) -> list[str]:
    """Distinct normalized terms of a query string, in first-seen order."""
    return list(dict.fromkeys(tok.term for tok in tokenize(query, cfg)))


def load_corpus(path) -> list[Document]:
    """Read a JSON-lines corpus file.

    Each non-blank line is an object with ``doc_id`` and ``text`` and an
    optional ``title``. Documents are returned in file order.
    """
    path = Path(path)
    docs = []
    seen = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"invalid JSON ({exc.msg})", path, lineno) from None
            if not isinstance(rec, dict):
                raise CorpusError("record is not a JSON object", path, lineno)
            doc_id = rec.get("doc_id")
            text = rec.get("text")
            title = rec.get("title")
            if not isinstance(doc_id, str) or not doc_id:
                raise CorpusError("missing or empty 'doc_id'", path, lineno)
            if not isinstance(text, str):
                raise CorpusError("missing or non-string 'text'", path, lineno)
            if title is not None and not isinstance(title, str):
                raise CorpusError("'title' must be a string", path, lineno)
            if doc_id in seen:
                raise DuplicateDocumentError(doc_id, path, lineno)
            seen[doc_id] = lineno
            docs.append(Document(doc_id, text, title))
    return docs


def write_corpus(docs, path) -> None:
    """Write documents in the format read by :func:`load_corpus`."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for doc in docs:
            rec = {"doc_id": doc.doc_id, "text": doc.text}
            if doc.title is not None:
                rec["title"] = doc.title
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
