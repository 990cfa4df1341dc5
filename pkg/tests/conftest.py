"""Shared test helpers: random corpora, random queries, and a brute-force
oracle evaluator that never touches the index machinery."""

from __future__ import annotations

import random

import pytest

from lexdrift import (
    And,
    AnyOf,
    AtLeastK,
    Document,
    Lexicon,
    Or,
    Phrase,
    Query,
    Term,
    TermEntry,
    builtin_lexicon,
    tokenize,
)

FILLER = (
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "theta", "kappa",
    "sigma", "omega", "north", "south", "east", "west", "river", "stone",
)


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return builtin_lexicon()


def make_random_corpus(rng: random.Random, lexicon: Lexicon, n_docs: int,
                       years: tuple[int, ...]) -> list[Document]:
    """Documents with random filler plus random vocabulary placements,
    including multi-token phrases dropped in verbatim."""
    vocab = sorted(lexicon.terms())
    docs = []
    for i in range(n_docs):
        words = [rng.choice(FILLER) for _ in range(rng.randrange(3, 12))]
        for _ in range(rng.randrange(0, 5)):
            words.insert(rng.randrange(len(words) + 1), rng.choice(vocab))
        # sometimes concatenate a vocab word with filler so that substring
        # (non-whole-word) occurrences exist and must NOT match
        if rng.random() < 0.3:
            words.append(rng.choice(vocab).replace(" ", "") + "ish")
        docs.append(Document(
            id=f"d{i:04d}",
            year=rng.choice(years),
            text=" ".join(words),
            categories=(rng.choice(("x", "y", "z")),),
        ))
    return docs


def brute_force_count(docs: list[Document], q: Query, year: int) -> int:
    """Per-document reference evaluation, straight from the query semantics."""
    return sum(
        1 for d in docs if d.year == year and _matches(tokenize(d.text), q)
    )


def _contains_phrase(tokens: list[str], phrase: tuple[str, ...]) -> bool:
    n = len(phrase)
    return any(
        tuple(tokens[i:i + n]) == phrase for i in range(len(tokens) - n + 1)
    )


def _member_present(tokens: list[str], token_set: set[str], member: str) -> bool:
    toks = tuple(tokenize(member))
    if len(toks) == 1:
        return toks[0] in token_set
    return _contains_phrase(tokens, toks)


def _matches(tokens: list[str], q: Query) -> bool:
    token_set = set(tokens)
    if isinstance(q, Term):
        return _member_present(tokens, token_set, q.term)
    if isinstance(q, Phrase):
        return _contains_phrase(tokens, q.tokens)
    if isinstance(q, AnyOf):
        return any(_member_present(tokens, token_set, m) for m in q.members)
    if isinstance(q, AtLeastK):
        hits = sum(1 for m in q.members if _member_present(tokens, token_set, m))
        return hits >= q.k
    if isinstance(q, And):
        return all(_matches(tokens, part) for part in q.parts)
    if isinstance(q, Or):
        return any(_matches(tokens, part) for part in q.parts)
    raise TypeError(f"unknown query node {type(q).__name__}")


def make_random_query(rng: random.Random, lexicon: Lexicon, depth: int = 3) -> Query:
    """Random AST over the lexicon vocabulary, nesting depth <= *depth*."""
    vocab = sorted(lexicon.terms())
    phrases = [t for t in vocab if " " in t]
    singles = [t for t in vocab if " " not in t]

    def leaf() -> Query:
        kind = rng.randrange(4)
        if kind == 0 and phrases:
            return Phrase(tuple(tokenize(rng.choice(phrases))))
        if kind == 1:
            members = tuple(rng.sample(vocab, rng.randrange(2, 6)))
            return AnyOf(members)
        if kind == 2:
            members = tuple(rng.sample(vocab, rng.randrange(2, 6)))
            return AtLeastK(rng.randrange(1, len(members) + 1), members)
        return Term(rng.choice(singles))

    def node(d: int) -> Query:
        if d <= 0 or rng.random() < 0.4:
            return leaf()
        parts = tuple(node(d - 1) for _ in range(rng.randrange(2, 4)))
        return And(parts) if rng.random() < 0.5 else Or(parts)

    return node(depth)
