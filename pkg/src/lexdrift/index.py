"""Immutable per-year index of lexicon-term evidence.

Each document is reduced at build time to a bitset over the lexicon
vocabulary (phrases included as ordinary entries), so boolean counting,
at-least-k queries and pairwise co-occurrence are cheap afterwards. Builds
are deterministic: document order and any partitioning of the corpus across
builders produce identical indexes. The finished index is immutable and safe
for concurrent readers.

Index files are a single binary container: magic, format version, payload
length and SHA-256 checksum, then a zlib-compressed canonical JSON payload.
"""

from __future__ import annotations

import hashlib
import json
import struct
import zlib
from collections import Counter
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .corpus import Document, DEFAULT_MAX_YEAR, DEFAULT_MIN_YEAR, raw_tokens, tokenize
from .errors import (
    IndexBuildError,
    IndexChecksumError,
    IndexFileError,
    IndexVersionError,
    UnindexedTermError,
    UnknownYearError,
)
from .lexicon import Lexicon, lexicon_from_dict, lexicon_to_dict
from .query import And, AnyOf, AtLeastK, Or, Phrase, Query, Term

_MAGIC = b"LXDX"
_VERSION = 1
_HEADER = struct.Struct("<4sHQ32s")

# One mark per document: (doc_id, year, vocabulary bitmask, categories).
Mark = tuple[str, int, int, tuple[str, ...]]


class YearTermIndex:
    """Per-year document counts for every lexicon term, pair co-occurrence,
    yearly totals and per-document term bitsets."""

    def __init__(self, lexicon: Lexicon, min_year: int, max_year: int,
                 marks: Iterable[Mark]):
        self._lexicon = lexicon
        self._min_year = min_year
        self._max_year = max_year
        self._terms = lexicon.terms()
        self._bit = {t: i for i, t in enumerate(self._terms)}
        self._bit_folded = {t.casefold(): i for i, t in enumerate(self._terms)}

        per_year: dict[int, list[Mark]] = {}
        for mark in marks:
            per_year.setdefault(mark[1], []).append(mark)
        self._years = tuple(sorted(per_year))
        self._ids: dict[int, tuple[str, ...]] = {}
        self._masks: dict[int, tuple[int, ...]] = {}
        self._cats: dict[int, tuple[tuple[str, ...], ...]] = {}
        self._totals: dict[int, int] = {}
        cat_totals: Counter = Counter()
        mask_hist: Counter = Counter()
        for year in self._years:
            rows = sorted(per_year[year])
            self._ids[year] = tuple(r[0] for r in rows)
            self._masks[year] = tuple(r[2] for r in rows)
            self._cats[year] = tuple(r[3] for r in rows)
            self._totals[year] = len(rows)
            for _, _, mask, cats in rows:
                mask_hist[(year, mask)] += 1
                for cat in cats:
                    cat_totals[(cat, year)] += 1
        self._cat_totals = dict(cat_totals)

        df: Counter = Counter()
        pair: Counter = Counter()
        for (year, mask), n in mask_hist.items():
            bits = []
            m = mask
            while m:
                low = m & -m
                bits.append(low.bit_length() - 1)
                m ^= low
            for i, a in enumerate(bits):
                df[(self._terms[a], year)] += n
                for b in bits[i + 1:]:
                    pair[(a, b, year)] += n
        self._df = dict(df)
        self._pair = dict(pair)

    @property
    def lexicon(self) -> Lexicon:
        return self._lexicon

    @property
    def vocabulary(self) -> tuple[str, ...]:
        return self._terms

    @property
    def years(self) -> tuple[int, ...]:
        return self._years

    @property
    def year_range(self) -> tuple[int, int]:
        return self._min_year, self._max_year

    @property
    def doc_count(self) -> int:
        return sum(self._totals.values())

    def total(self, year: int) -> int:
        return self._totals.get(year, 0)

    def term_bit(self, term: str) -> int:
        """Bit position of a vocabulary entry; accepts the entry verbatim or
        its case-folded form."""
        bit = self._bit.get(term)
        if bit is None:
            bit = self._bit_folded.get(term.casefold())
        if bit is None:
            raise UnindexedTermError(term)
        return bit

    def df(self, term: str, year: int) -> int:
        return self._df.get((self._terms[self.term_bit(term)], year), 0)

    def pair_count(self, term_a: str, term_b: str, year: int) -> int:
        a, b = self.term_bit(term_a), self.term_bit(term_b)
        if a == b:
            return self.df(term_a, year)
        if a > b:
            a, b = b, a
        return self._pair.get((a, b, year), 0)

    def categories(self) -> tuple[str, ...]:
        return tuple(sorted({c for c, _ in self._cat_totals}))

    def category_total(self, category: str, year: int) -> int:
        return self._cat_totals.get((category, year), 0)

    def year_marks(self, year: int) -> Iterator[tuple[int, tuple[str, ...]]]:
        """(bitmask, categories) for every document of *year*."""
        if year not in self._totals:
            raise UnknownYearError(f"year {year} is not in the index")
        return zip(self._masks[year], self._cats[year])

    def doc_marks(self) -> Iterator[Mark]:
        """All (doc_id, year, bitmask, categories) rows, ordered by id
        within each year."""
        for year in self._years:
            yield from zip(
                self._ids[year],
                (year,) * self._totals[year],
                self._masks[year],
                self._cats[year],
            )


class _CompiledVocab:
    """Lexicon entries prepared for fast per-document matching."""

    def __init__(self, lexicon: Lexicon):
        self.fold_single: dict[str, int] = {}
        self.fold_phrases: list[tuple[str, list[str], int]] = []
        self.raw_single: dict[str, int] = {}
        self.raw_phrases: list[tuple[str, list[str], int]] = []
        for bit, entry in enumerate(lexicon.entries):
            mask = 1 << bit
            if entry.case_sensitive:
                toks = raw_tokens(entry.term)
                if len(toks) == 1:
                    self.raw_single[toks[0]] = mask
                else:
                    self.raw_phrases.append((toks[0], toks, mask))
            else:
                toks = tokenize(entry.term)
                if len(toks) == 1:
                    self.fold_single[toks[0]] = mask
                else:
                    self.fold_phrases.append((toks[0], toks, mask))
        self.fold_single_set = frozenset(self.fold_single)
        self.raw_single_set = frozenset(self.raw_single)
        self.needs_raw = bool(self.raw_single or self.raw_phrases)

    def mask_for(self, text: str) -> int:
        seq = tokenize(text)
        uniq = set(seq)
        mask = 0
        for tok in self.fold_single_set & uniq:
            mask |= self.fold_single[tok]
        for first, toks, bm in self.fold_phrases:
            if first in uniq and _seq_contains(seq, toks):
                mask |= bm
        if self.needs_raw:
            rseq = raw_tokens(text)
            runiq = set(rseq)
            for tok in self.raw_single_set & runiq:
                mask |= self.raw_single[tok]
            for first, toks, bm in self.raw_phrases:
                if first in runiq and _seq_contains(rseq, toks):
                    mask |= bm
        return mask


def _seq_contains(seq: list[str], toks: list[str]) -> bool:
    first = toks[0]
    n = len(toks)
    last_start = len(seq) - n
    for i, tok in enumerate(seq):
        if i > last_start:
            return False
        if tok == first and seq[i : i + n] == toks:
            return True
    return False


class IndexBuilder:
    """Accumulates document marks; partitions built separately merge into
    the same index as a single sequential build."""

    def __init__(self, lexicon: Lexicon, *, min_year: int = DEFAULT_MIN_YEAR,
                 max_year: int = DEFAULT_MAX_YEAR):
        self.lexicon = lexicon
        self.min_year = min_year
        self.max_year = max_year
        self._vocab = _CompiledVocab(lexicon)
        self._marks: list[Mark] = []
        self._seen: set[str] = set()

    def add(self, doc: Document) -> None:
        if not self.min_year <= doc.year <= self.max_year:
            raise IndexBuildError(
                f"document {doc.id!r}: year {doc.year} outside allowed range "
                f"{self.min_year}-{self.max_year}"
            )
        if doc.id in self._seen:
            raise IndexBuildError(f"duplicate document id {doc.id!r}")
        self._seen.add(doc.id)
        self._marks.append(
            (doc.id, doc.year, self._vocab.mask_for(doc.text), tuple(doc.categories))
        )

    def add_all(self, corpus: Iterable[Document]) -> None:
        for doc in corpus:
            self.add(doc)

    def merge(self, other: "IndexBuilder") -> None:
        if other.lexicon is not self.lexicon and other.lexicon != self.lexicon:
            raise IndexBuildError("cannot merge builders with different lexicons")
        overlap = self._seen & other._seen
        if overlap:
            raise IndexBuildError(
                f"duplicate document id {sorted(overlap)[0]!r} across partitions"
            )
        self._seen |= other._seen
        self._marks.extend(other._marks)

    def finish(self) -> YearTermIndex:
        return YearTermIndex(self.lexicon, self.min_year, self.max_year, self._marks)


def build_index(corpus: Iterable[Document], lexicon: Lexicon, *,
                min_year: int = DEFAULT_MIN_YEAR,
                max_year: int = DEFAULT_MAX_YEAR) -> YearTermIndex:
    """Index a document sequence against a lexicon vocabulary."""
    builder = IndexBuilder(lexicon, min_year=min_year, max_year=max_year)
    builder.add_all(corpus)
    return builder.finish()


def compile_predicate(index: YearTermIndex, q: Query) -> Callable[[int], bool]:
    """Turn a query into a predicate over document bitmasks.

    Raises UnindexedTermError when the query mentions vocabulary the index
    does not carry (use :func:`eval_count_scan` for those).
    """
    if isinstance(q, Term):
        mask = 1 << index.term_bit(q.term)
        return lambda m: m & mask != 0
    if isinstance(q, Phrase):
        mask = 1 << index.term_bit(q.text)
        return lambda m: m & mask != 0
    if isinstance(q, AnyOf):
        mask = 0
        for member in q.members:
            mask |= 1 << index.term_bit(member)
        return lambda m: m & mask != 0
    if isinstance(q, AtLeastK):
        mask = 0
        for member in q.members:
            mask |= 1 << index.term_bit(member)
        k = q.k
        return lambda m: (m & mask).bit_count() >= k
    if isinstance(q, And):
        parts = [compile_predicate(index, p) for p in q.parts]
        return lambda m: all(p(m) for p in parts)
    if isinstance(q, Or):
        parts = [compile_predicate(index, p) for p in q.parts]
        return lambda m: any(p(m) for p in parts)
    raise TypeError(f"not a query node: {q!r}")


def eval_count(index: YearTermIndex, q: Query, year: int) -> int:
    """Exact number of documents in *year* satisfying *q* (presence
    semantics, each document counted once)."""
    if year not in index._totals:
        raise UnknownYearError(f"year {year} is not in the index")
    pred = compile_predicate(index, q)
    return sum(1 for mask in index._masks[year] if pred(mask))


class _ScanEvidence:
    def __init__(self, doc: Document, lexicon: Lexicon):
        self.seq = tokenize(doc.text)
        self.tokens = set(self.seq)
        self._doc = doc
        self._raw_seq: list[str] | None = None
        self._entries = {e.term: e for e in lexicon.entries}

    def _raw(self) -> list[str]:
        if self._raw_seq is None:
            self._raw_seq = raw_tokens(self._doc.text)
        return self._raw_seq

    def present(self, member: str) -> bool:
        entry = self._entries.get(member)
        if entry is not None and entry.case_sensitive:
            toks = raw_tokens(member)
            seq = self._raw()
            return toks[0] in seq if len(toks) == 1 else _seq_contains(seq, toks)
        toks = tokenize(member)
        if not toks:
            return False
        if len(toks) == 1:
            return toks[0] in self.tokens
        return _seq_contains(self.seq, toks)


def _eval_on(ev: _ScanEvidence, q: Query) -> bool:
    if isinstance(q, Term):
        return ev.present(q.term)
    if isinstance(q, Phrase):
        return ev.present(q.text)
    if isinstance(q, AnyOf):
        return any(ev.present(m) for m in q.members)
    if isinstance(q, AtLeastK):
        return sum(1 for m in q.members if ev.present(m)) >= q.k
    if isinstance(q, And):
        return all(_eval_on(ev, p) for p in q.parts)
    if isinstance(q, Or):
        return any(_eval_on(ev, p) for p in q.parts)
    raise TypeError(f"not a query node: {q!r}")


def eval_count_scan(corpus: Iterable[Document], lexicon: Lexicon, q: Query,
                    year: int) -> int:
    """Document-by-document fallback for :func:`eval_count`; handles terms
    outside the indexed vocabulary. Equal to eval_count on indexed queries."""
    count = 0
    for doc in corpus:
        if doc.year != year:
            continue
        if _eval_on(_ScanEvidence(doc, lexicon), q):
            count += 1
    return count


def save_index(index: YearTermIndex, path) -> None:
    payload = {
        "format": "lexdrift.index",
        "lexicon": lexicon_to_dict(index.lexicon),
        "min_year": index.year_range[0],
        "max_year": index.year_range[1],
        "docs": [[i, y, m, list(c)] for i, y, m, c in index.doc_marks()],
    }
    blob = zlib.compress(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8"), 9
    )
    header = _HEADER.pack(_MAGIC, _VERSION, len(blob), hashlib.sha256(blob).digest())
    Path(path).write_bytes(header + blob)


def load_index(path) -> YearTermIndex:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size or data[:4] != _MAGIC:
        raise IndexFileError(f"{path}: not an index file")
    magic, version, length, digest = _HEADER.unpack(data[: _HEADER.size])
    if version != _VERSION:
        raise IndexVersionError(
            f"{path}: unsupported index version {version} (supported: {_VERSION})"
        )
    blob = data[_HEADER.size:]
    if len(blob) != length or hashlib.sha256(blob).digest() != digest:
        raise IndexChecksumError(f"{path}: checksum mismatch (truncated or corrupt)")
    payload = json.loads(zlib.decompress(blob).decode("utf-8"))
    if payload.get("format") != "lexdrift.index":
        raise IndexFileError(f"{path}: unrecognized payload")
    lexicon = lexicon_from_dict(payload["lexicon"])
    marks = [(i, y, m, tuple(c)) for i, y, m, c in payload["docs"]]
    return YearTermIndex(lexicon, payload["min_year"], payload["max_year"], marks)
