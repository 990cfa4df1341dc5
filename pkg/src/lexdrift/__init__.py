"""lexdrift: lexical drift statistics over yearly document corpora.

Measures how often marker words appear across the years of a corpus
(document frequency, not occurrence counts), normalizes the counts into
prevalence shares, and reports year-on-year drift, baseline projections and
excess counts. Ships a builtin marker lexicon, a boolean query language over
it, a compact persistent index, CSV/JSON reports and SVG trend charts.
"""

from __future__ import annotations

from .bundled import bundled_corpus_path, bundled_counts_path
from .corpus import Document, TokenSet, iter_corpus, load_corpus, term_presence, tokenize
from .errors import (
    CorpusFormatError,
    CountsFormatError,
    DataError,
    IndexBuildError,
    IndexChecksumError,
    IndexFileError,
    IndexVersionError,
    LexiconError,
    QueryError,
    QuerySyntaxError,
    UndefinedChangeError,
    UnindexedTermError,
    UnknownNameError,
    UnknownYearError,
)
from .index import (
    IndexBuilder,
    YearTermIndex,
    build_index,
    compile_predicate,
    eval_count,
    eval_count_scan,
    load_index,
    save_index,
)
from .lexicon import Lexicon, TermEntry, builtin_lexicon, load_lexicon, save_lexicon
from .query import AnyOf, AtLeastK, And, Or, Phrase, Query, Term, parse_query
from .stats import (
    CategorySkew,
    CountSeries,
    DriftReport,
    baseline_projection,
    category_skew,
    count_increase,
    drift_report,
    excess,
    excess_report,
    export_counts,
    implied_total_ratio,
    import_counts,
    max_historical_change,
    series_from_index,
    share,
    share_increase,
    yoy_change,
)
from .svg import PlotSpec, render_line_chart, save_chart

__version__ = "0.1.0"

__all__ = [
    "AnyOf",
    "And",
    "AtLeastK",
    "CategorySkew",
    "CorpusFormatError",
    "CountSeries",
    "CountsFormatError",
    "DataError",
    "Document",
    "DriftReport",
    "IndexBuildError",
    "IndexBuilder",
    "IndexChecksumError",
    "IndexFileError",
    "IndexVersionError",
    "Lexicon",
    "LexiconError",
    "Or",
    "Phrase",
    "PlotSpec",
    "Query",
    "QueryError",
    "QuerySyntaxError",
    "Term",
    "TermEntry",
    "TokenSet",
    "UndefinedChangeError",
    "UnindexedTermError",
    "UnknownNameError",
    "UnknownYearError",
    "YearTermIndex",
    "baseline_projection",
    "build_index",
    "builtin_lexicon",
    "bundled_corpus_path",
    "bundled_counts_path",
    "category_skew",
    "compile_predicate",
    "count_increase",
    "drift_report",
    "eval_count",
    "eval_count_scan",
    "excess",
    "excess_report",
    "export_counts",
    "implied_total_ratio",
    "import_counts",
    "iter_corpus",
    "load_corpus",
    "load_index",
    "load_lexicon",
    "max_historical_change",
    "parse_query",
    "render_line_chart",
    "save_chart",
    "save_index",
    "save_lexicon",
    "series_from_index",
    "share",
    "share_increase",
    "term_presence",
    "tokenize",
    "yoy_change",
]
