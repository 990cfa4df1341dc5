"""Document ingestion and whole-word token evidence.

Corpus files are UTF-8 JSON Lines, one object per line::

    {"id": "doc-1", "year": 2023, "text": "...", "categories": ["engineering"]}

``categories`` is optional. Tokenization is deliberately plain: maximal runs
of Unicode letters, case-folded, with single hyphens or apostrophes joining
two letter runs kept inside the token. No stemming, so "meticulous" and
"meticulously" stay distinct. A term counts at most once per document
(presence, not in-text frequency).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import CorpusFormatError

DEFAULT_MIN_YEAR = 2000
DEFAULT_MAX_YEAR = 2100

# A token is letters optionally chained by single internal hyphens or
# apostrophes; digits and underscores terminate a token ("gpt-4" -> "gpt").
_LETTER = r"[^\W\d_]"
_TOKEN_RE = re.compile(rf"{_LETTER}+(?:['’-]{_LETTER}+)*")

_JOINERS = "'’-"


def _letter_runs(text: str) -> list[str]:
    # The regex class is "word chars minus decimal digits", which still
    # admits a few numeric characters (superscripts, vulgar fractions, Roman
    # numerals). Those are not letters and must split a token like a digit
    # does; ASCII tokens cannot contain them, so only non-ASCII tokens get a
    # second look.
    out: list[str] = []
    for tok in _TOKEN_RE.findall(text):
        if tok.isascii() or all(ch.isalpha() or ch in _JOINERS for ch in tok):
            out.append(tok)
        else:
            cleaned = "".join(
                ch if ch.isalpha() or ch in _JOINERS else " " for ch in tok
            )
            out.extend(_TOKEN_RE.findall(cleaned))
    return out


def tokenize(text: str) -> list[str]:
    """Case-folded whole-word tokens of *text*, in document order."""
    return [t.replace("’", "'") for t in _letter_runs(text.casefold())]


def raw_tokens(text: str) -> list[str]:
    """Tokens without case folding, for case-sensitive term matching."""
    return [t.replace("’", "'") for t in _letter_runs(text)]


@dataclass(frozen=True)
class Document:
    """One corpus record: a published document with full text."""

    id: str
    year: int
    text: str
    categories: tuple[str, ...] = ()


@dataclass(frozen=True)
class TokenSet:
    """Distinct case-folded tokens of one document, with the ordered
    sequence retained when phrase matching is needed."""

    doc_id: str
    year: int
    tokens: frozenset[str]
    sequence: tuple[str, ...] | None = None

    @property
    def token_sequence_available(self) -> bool:
        return self.sequence is not None


def token_evidence(doc: Document) -> TokenSet:
    seq = tuple(tokenize(doc.text))
    return TokenSet(doc.id, doc.year, frozenset(seq), seq)


def contains_sequence(sequence: Sequence[str], phrase: Sequence[str]) -> bool:
    """True if *phrase* occurs in *sequence* as a contiguous token run."""
    n = len(phrase)
    if n == 0:
        return False
    first = phrase[0]
    last_start = len(sequence) - n
    for i, tok in enumerate(sequence):
        if i > last_start:
            return False
        if tok == first and tuple(sequence[i : i + n]) == tuple(phrase):
            return True
    return False


def term_presence(doc: Document, vocabulary: Iterable[str]) -> tuple[TokenSet, set[str]]:
    """Which vocabulary terms appear in *doc*.

    Single terms match by whole-token equality after case folding; entries
    with spaces match as contiguous token sequences. Returns the document's
    token evidence and the set of matched vocabulary entries (as given).
    """
    vocab = list(vocabulary)
    if not vocab:
        raise ValueError("vocabulary is empty")
    evidence = token_evidence(doc)
    matched: set[str] = set()
    for term in vocab:
        toks = tokenize(term)
        if not toks:
            continue
        if len(toks) == 1:
            if toks[0] in evidence.tokens:
                matched.add(term)
        elif contains_sequence(evidence.sequence or (), toks):
            matched.add(term)
    return evidence, matched


def _record_problem(
    record: object,
    seen: dict[str, int],
    min_year: int,
    max_year: int,
) -> str | None:
    if not isinstance(record, dict):
        return "record is not a JSON object"
    for key in ("id", "year", "text"):
        if key not in record:
            return f"missing field {key!r}"
    doc_id = record["id"]
    if not isinstance(doc_id, str) or not doc_id:
        return "field 'id' must be a non-empty string"
    if doc_id in seen:
        return f"duplicate id {doc_id!r} (first seen on line {seen[doc_id]})"
    year = record["year"]
    if isinstance(year, bool) or not isinstance(year, int):
        return f"field 'year' must be an integer, got {year!r}"
    if not min_year <= year <= max_year:
        return f"year {year} outside allowed range {min_year}-{max_year}"
    if not isinstance(record["text"], str):
        return "field 'text' must be a string"
    cats = record.get("categories", [])
    if not isinstance(cats, list) or not all(isinstance(c, str) for c in cats):
        return "field 'categories' must be a list of strings"
    return None


def iter_corpus(
    source,
    *,
    on_error: str = "abort",
    min_year: int = DEFAULT_MIN_YEAR,
    max_year: int = DEFAULT_MAX_YEAR,
    errors: list[CorpusFormatError] | None = None,
) -> Iterator[Document]:
    """Stream Documents from a JSONL file path or an iterable of lines.

    ``on_error="abort"`` raises CorpusFormatError at the first malformed
    record; ``"skip"`` collects the error (into *errors*, if given) and
    continues. Errors carry 1-based line numbers.
    """
    if on_error not in ("abort", "skip"):
        raise ValueError(f"unknown error policy {on_error!r}")
    stream = source
    close = False
    if isinstance(source, (str, Path)):
        stream = open(source, "r", encoding="utf-8")
        close = True
    try:
        seen: dict[str, int] = {}
        for lineno, line in enumerate(stream, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                problem: str | None = f"invalid JSON ({exc.msg})"
            else:
                problem = _record_problem(record, seen, min_year, max_year)
            if problem is not None:
                err = CorpusFormatError(f"line {lineno}: {problem}", line=lineno)
                if on_error == "abort":
                    raise err
                if errors is not None:
                    errors.append(err)
                continue
            seen[record["id"]] = lineno
            yield Document(
                id=record["id"],
                year=record["year"],
                text=record["text"],
                categories=tuple(record.get("categories", [])),
            )
    finally:
        if close:
            stream.close()


def load_corpus(source, **kwargs) -> list[Document]:
    """Eager variant of :func:`iter_corpus`."""
    return list(iter_corpus(source, **kwargs))
