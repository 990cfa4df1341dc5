"""Boolean marker-query language.

Surface syntax (keywords are case-insensitive)::

    query := or
    or    := and ( OR and )*
    and   := atom ( AND atom )*
    atom  := '(' or ')'
           | '"..."'                       quoted phrase
           | ANY '(' name {',' name} ')'
           | ATLEAST '(' k ',' name {',' name} ')'
           | word

AND binds tighter than OR. Inside ``any()`` / ``atleast()``, a bare name must
resolve against the active lexicon: either a group name (adjective, adverb,
control, extra, disclosure, strong, medium, weak) which expands to its member
terms, or a lexicon term. Quoted strings in those lists are taken literally.
A bare word outside the operators is a plain term and need not be in the
lexicon (such terms can only be counted by a corpus scan, not via an index).

Syntax errors report the byte offset of the offending input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .corpus import tokenize
from .errors import QuerySyntaxError, UnknownNameError
from .lexicon import Lexicon


@dataclass(frozen=True)
class Term:
    term: str


@dataclass(frozen=True)
class Phrase:
    tokens: tuple[str, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("phrase needs at least one token")

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass(frozen=True)
class AnyOf:
    members: tuple[str, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("any() needs at least one member")


@dataclass(frozen=True)
class AtLeastK:
    k: int
    members: tuple[str, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.k > len(self.members):
            raise ValueError(
                f"k={self.k} exceeds the {len(self.members)} listed members"
            )


@dataclass(frozen=True)
class And:
    parts: tuple["Query", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("and needs at least one operand")


@dataclass(frozen=True)
class Or:
    parts: tuple["Query", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("or needs at least one operand")


Query = Union[Term, Phrase, AnyOf, AtLeastK, And, Or]

_WORD = r"[^\W\d_]+(?:['’-][^\W\d_]+)*"
_LEX_RE = re.compile(
    rf"""(?P<space>\s+)
      | (?P<lparen>\()
      | (?P<rparen>\))
      | (?P<comma>,)
      | (?P<number>\d+)
      | (?P<quoted>"[^"]*")
      | (?P<word>{_WORD})
    """,
    re.VERBOSE,
)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _scan(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _LEX_RE.match(text, pos)
        if m is None:
            off = _byte_offset(text, pos)
            if text[pos] == '"':
                raise QuerySyntaxError("unterminated quoted phrase", off)
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", off)
        kind = m.lastgroup
        if kind != "space":
            tokens.append((kind, m.group(), m.start()))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


def query_vocabulary(q: Query) -> set[str]:
    """All term/phrase strings the query refers to."""
    if isinstance(q, Term):
        return {q.term}
    if isinstance(q, Phrase):
        return {q.text}
    if isinstance(q, (AnyOf, AtLeastK)):
        return set(q.members)
    return set().union(*(query_vocabulary(p) for p in q.parts))


class _Parser:
    def __init__(self, text: str, lexicon: Lexicon):
        self.text = text
        self.tokens = _scan(text)
        self.pos = 0
        self.lexicon = lexicon
        self.groups = {g.casefold(): ts for g, ts in lexicon.groups().items()}
        self.terms = {e.term.casefold(): e.term for e in lexicon.entries}

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, pos: int, cls=QuerySyntaxError):
        raise cls(message, _byte_offset(self.text, pos))

    def expect(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            self.error(f"expected {what}", tok[2])
        return tok

    def parse(self) -> Query:
        q = self.parse_or()
        tok = self.peek()
        if tok[0] != "eof":
            self.error(f"unexpected input {tok[1]!r}", tok[2])
        return q

    def parse_or(self) -> Query:
        parts = [self.parse_and()]
        while self.peek()[0] == "word" and self.peek()[1].casefold() == "or":
            self.next()
            parts.append(self.parse_and())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def parse_and(self) -> Query:
        parts = [self.parse_atom()]
        while self.peek()[0] == "word" and self.peek()[1].casefold() == "and":
            self.next()
            parts.append(self.parse_atom())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def parse_atom(self) -> Query:
        kind, value, pos = self.next()
        if kind == "lparen":
            q = self.parse_or()
            self.expect("rparen", "')'")
            return q
        if kind == "quoted":
            return self.quoted_atom(value, pos)
        if kind == "word":
            keyword = value.casefold()
            if keyword in ("and", "or"):
                self.error(f"unexpected keyword {value!r}", pos)
            if keyword in ("any", "atleast") and self.peek()[0] == "lparen":
                return self.call_atom(keyword, pos)
            return Term(tokenize(value)[0])
        self.error("expected a term, phrase, group operator or '('", pos)

    def quoted_atom(self, value: str, pos: int) -> Query:
        toks = tokenize(value[1:-1])
        if not toks:
            self.error("quoted phrase contains no tokens", pos)
        if len(toks) == 1:
            return Term(toks[0])
        return Phrase(tuple(toks))

    def call_atom(self, keyword: str, pos: int) -> Query:
        self.expect("lparen", "'('")
        k = None
        if keyword == "atleast":
            num = self.expect("number", "a count for atleast(k, ...)")
            k = int(num[1])
            if k < 1:
                self.error("atleast count must be at least 1", num[2])
            self.expect("comma", "','")
        members = self.parse_names()
        self.expect("rparen", "')'")
        if keyword == "any":
            return AnyOf(members)
        if k > len(members):
            self.error(
                f"atleast count {k} exceeds the {len(members)} listed terms", pos
            )
        return AtLeastK(k, members)

    def parse_names(self) -> tuple[str, ...]:
        members: list[str] = []
        seen: set[str] = set()

        def add(term: str) -> None:
            if term not in seen:
                seen.add(term)
                members.append(term)

        while True:
            kind, value, pos = self.next()
            if kind == "word":
                name = value.casefold()
                if name in self.groups:
                    for term in self.groups[name]:
                        add(term)
                elif name in self.terms:
                    add(self.terms[name])
                else:
                    self.error(
                        f"unknown group or term {value!r}", pos, UnknownNameError
                    )
            elif kind == "quoted":
                toks = tokenize(value[1:-1])
                if not toks:
                    self.error("quoted phrase contains no tokens", pos)
                add(" ".join(toks))
            else:
                self.error("expected a group or term name", pos)
            if self.peek()[0] != "comma":
                return tuple(members)
            self.next()


def parse_query(text: str, lexicon: Lexicon) -> Query:
    """Parse a query string, expanding group names via *lexicon*."""
    return _Parser(text, lexicon).parse()
