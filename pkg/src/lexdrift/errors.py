"""Exception types. All data/validation problems derive from DataError so the
CLI can map them to exit code 1 (I/O and usage problems exit 2)."""

from __future__ import annotations


class DataError(Exception):
    """A data or validation problem in user-supplied input."""


class CorpusFormatError(DataError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class LexiconError(DataError):
    pass


class QueryError(DataError):
    pass


class QuerySyntaxError(QueryError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnknownNameError(QuerySyntaxError):
    pass


class UnindexedTermError(QueryError):
    def __init__(self, term: str):
        super().__init__(
            f"term {term!r} is not in the index vocabulary; "
            "evaluate it with a corpus scan instead"
        )
        self.term = term


class UnknownYearError(QueryError):
    pass


class IndexBuildError(DataError):
    pass


class IndexFileError(DataError):
    pass


class IndexVersionError(IndexFileError):
    pass


class IndexChecksumError(IndexFileError):
    pass


class CountsFormatError(DataError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class UndefinedChangeError(DataError):
    """A relative change whose reference value is zero; reported as a gap."""
