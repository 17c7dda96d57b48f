"""Positional inverted index.

For each term the index keeps, per document, the sorted token positions at
which the term occurs. An index on disk is a directory holding
``manifest.json``, ``docs.jsonl`` and ``postings.jsonl``.
"""

from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .corpus import Document, TokenizerConfig, split_words, tokenize
from .errors import DuplicateDocumentError, IndexFormatError, UnknownDocumentError, VersionMismatchError

INDEX_VERSION = 1

MANIFEST = "manifest.json"
DOCS_FILE = "docs.jsonl"
POSTINGS_FILE = "postings.jsonl"


class DocInfo(NamedTuple):
    token_count: int
    title: str | None = None


@dataclass
class PositionalIndex:
    """term -> {doc_id -> positions}, plus per-document metadata.

    Inner dictionaries are ordered by doc_id and positions are ascending
    tuples, so two indexes built from the same corpus compare equal.
    """

    postings: dict[str, dict[str, tuple[int, ...]]] = field(default_factory=dict)
    doc_table: dict[str, DocInfo] = field(default_factory=dict)
    tokenizer: TokenizerConfig = field(default_factory=TokenizerConfig)
    version: int = INDEX_VERSION

    @property
    def num_docs(self) -> int:
        return len(self.doc_table)

    @property
    def num_terms(self) -> int:
        return len(self.postings)

    def postings_list(self, term: str) -> list[tuple[str, tuple[int, ...]]]:
        """``[(doc_id, positions), ...]`` sorted by doc_id; empty for unknown terms."""
        return list(self.postings.get(term, {}).items())

    def positions_of(self, term: str, doc_id: str) -> tuple[int, ...]:
        if doc_id not in self.doc_table:
            raise UnknownDocumentError(doc_id)
        return self.postings.get(term, {}).get(doc_id, ())

    def doc_freq(self, term: str) -> int:
        return len(self.postings.get(term, ()))

    def candidate_documents(self, terms, mode: str = "strict") -> list[str]:
        """Documents eligible for passage scoring.

        ``strict`` keeps documents containing every term; ``relaxed`` keeps
        documents with at least two distinct terms (one, for a single-term
        query). Result is sorted by doc_id.
        """
        terms = set(terms)
        if not terms:
            raise ValueError("candidate_documents needs at least one term")
        if mode not in ("strict", "relaxed"):
            raise ValueError(f"unknown mode {mode!r}")
        counts: dict[str, int] = defaultdict(int)
        for term in terms:
            for doc_id in self.postings.get(term, ()):
                counts[doc_id] += 1
        if mode == "strict":
            need = len(terms)
        else:
            need = min(2, len(terms))
        return sorted(d for d, c in counts.items() if c >= need)

    def save(self, directory) -> None:
        save_index(self, directory)

    @classmethod
    def load(cls, directory) -> PositionalIndex:
        return load_index(directory)


def build_index(corpus, cfg: TokenizerConfig | None = None) -> PositionalIndex:
    cfg = cfg or TokenizerConfig()
    docs: list[Document] = sorted(corpus, key=lambda d: d.doc_id)
    doc_table = {}
    raw: dict[str, dict[str, list[int]]] = defaultdict(dict)
    for doc in docs:
        if doc.doc_id in doc_table:
            raise DuplicateDocumentError(doc.doc_id)
        doc_table[doc.doc_id] = DocInfo(len(split_words(doc.text)), doc.title)
        for term, pos in tokenize(doc.text, cfg):
            raw[term].setdefault(doc.doc_id, []).append(pos)
    postings = {
        term: {doc_id: tuple(pos) for doc_id, pos in by_doc.items()}
        for term, by_doc in sorted(raw.items())
    }
    return PositionalIndex(postings, doc_table, cfg)


def positions_of(index: PositionalIndex, term: str, doc_id: str) -> tuple[int, ...]:
    return index.positions_of(term, doc_id)


def candidate_documents(index: PositionalIndex, terms, mode: str = "strict") -> list[str]:
    return index.candidate_documents(terms, mode)


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def save_index(index: PositionalIndex, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    with (directory / DOCS_FILE).open("w", encoding="utf-8") as fh:
        for doc_id in sorted(index.doc_table):
            info = index.doc_table[doc_id]
            rec = {"doc_id": doc_id, "token_count": info.token_count, "title": info.title}
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    with (directory / POSTINGS_FILE).open("w", encoding="utf-8") as fh:
        for term in sorted(index.postings):
            entries = [[d, list(p)] for d, p in sorted(index.postings[term].items())]
            fh.write(json.dumps({"term": term, "entries": entries}, ensure_ascii=False) + "\n")
    manifest = {
        "version": index.version,
        "tokenizer": index.tokenizer.to_dict(),
        "doc_count": index.num_docs,
        "term_count": index.num_terms,
        "checksums": {
            DOCS_FILE: _sha256(directory / DOCS_FILE),
            POSTINGS_FILE: _sha256(directory / POSTINGS_FILE),
        },
    }
    with (directory / MANIFEST).open("w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _read_jsonl(path: Path):
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise IndexFormatError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from None


def load_index(directory) -> PositionalIndex:
    directory = Path(directory)
    manifest_path = directory / MANIFEST
    if not manifest_path.is_file():
        raise IndexFormatError(f"missing {MANIFEST} in {directory}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise IndexFormatError(f"{manifest_path}: invalid JSON ({exc.msg})") from None
    version = manifest.get("version")
    if version != INDEX_VERSION:
        raise VersionMismatchError(version, INDEX_VERSION)

    checksums = manifest.get("checksums", {})
    for name in (DOCS_FILE, POSTINGS_FILE):
        path = directory / name
        if not path.is_file():
            raise IndexFormatError(f"missing {name} in {directory}")
        if checksums.get(name) != _sha256(path):
            raise IndexFormatError(f"checksum mismatch for {path}")

    try:
        cfg = TokenizerConfig.from_dict(manifest["tokenizer"])
        doc_table = {}
        for _, rec in _read_jsonl(directory / DOCS_FILE):
            doc_table[rec["doc_id"]] = DocInfo(int(rec["token_count"]), rec.get("title"))
        postings = {}
        for _, rec in _read_jsonl(directory / POSTINGS_FILE):
            postings[rec["term"]] = {d: tuple(int(p) for p in pos) for d, pos in rec["entries"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise IndexFormatError(f"corrupt index in {directory}: {exc!r}") from None

    if len(doc_table) != manifest.get("doc_count"):
        raise IndexFormatError("doc_count in manifest does not match docs.jsonl")
    return PositionalIndex(postings, doc_table, cfg, version)
