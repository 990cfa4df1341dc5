"""Paths to the data files shipped inside the package.

Two fixtures are bundled so every CLI subcommand can be exercised without
assembling inputs first:

* ``group_counts.csv``  -- ten reference series of yearly document counts
* ``sample_corpus.jsonl`` -- a small synthetic corpus with category metadata
"""

from __future__ import annotations

from pathlib import Path

_DATA_DIR = Path(__file__).resolve().parent / "data"


def bundled_counts_path() -> Path:
    """CSV of the builtin reference count series."""
    return _DATA_DIR / "group_counts.csv"


def bundled_corpus_path() -> Path:
    """JSONL corpus small enough for demos and tests."""
    return _DATA_DIR / "sample_corpus.jsonl"
