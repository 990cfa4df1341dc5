"""Drift statistics over yearly (matches, total) count series.

The primitives are deliberately small and explicit:

* share            = matches / total
* yoy_change       = share_curr / share_prev - 1
* count_increase   = n_curr / n_prev - 1
* share_increase   = (n_curr / N_curr) / (n_prev / N_prev) - 1
* baseline projection = round-half-away-from-zero of n_base * (1 + g)
* excess           = actual - projected (negative excess is reported, not
                     clamped, so declining markers surface too)

count_increase and share_increase coincide only when the yearly totals are
equal; implied_total_ratio reconstructs the totals ratio a share-based figure
implies, which is useful when reconciling externally reported increases
computed under the two different conventions.

All arithmetic is double precision; callers round only at rendering time.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import CountsFormatError, DataError, UndefinedChangeError
from .index import YearTermIndex, compile_predicate, eval_count
from .query import AnyOf, Query, Term

COUNTS_HEADER = ("series", "year", "matches", "total")


def share(matches: int, total: int) -> float:
    """Fraction of documents containing the term."""
    if total <= 0:
        raise ValueError(f"total must be positive, got {total}")
    if matches < 0 or matches > total:
        raise ValueError(f"matches {matches} outside 0..{total}")
    return matches / total


def yoy_change(share_curr: float, share_prev: float) -> float:
    """Relative year-on-year change of a share (0.0200 -> 0.0210 is +0.05)."""
    if share_prev <= 0:
        raise UndefinedChangeError(
            f"previous share is {share_prev}; change is undefined (series gap)"
        )
    return share_curr / share_prev - 1.0


def count_increase(n_prev: int, n_curr: int) -> float:
    """Relative growth of raw match counts between two years."""
    if n_prev <= 0:
        raise UndefinedChangeError(
            f"previous count is {n_prev}; increase is undefined"
        )
    return n_curr / n_prev - 1.0


def share_increase(n_prev: int, total_prev: int, n_curr: int, total_curr: int) -> float:
    """Relative growth of prevalence shares between two years."""
    if total_prev <= 0 or total_curr <= 0:
        raise UndefinedChangeError("yearly totals must be positive")
    if n_prev <= 0:
        raise UndefinedChangeError(
            f"previous count is {n_prev}; increase is undefined"
        )
    return (n_curr / total_curr) / (n_prev / total_prev) - 1.0


def implied_total_ratio(count_inc: float, share_inc: float) -> float:
    """The totals ratio N_prev/N_curr under which a count-based and a
    share-based increase describe the same data."""
    if count_inc <= -1.0:
        raise ValueError("count increase must be greater than -1")
    return (1.0 + share_inc) / (1.0 + count_inc)


def _round_half_away(x: float) -> int:
    if x >= 0:
        return math.floor(x + 0.5)
    return math.ceil(x - 0.5)


def baseline_projection(n_base: int, growth: float) -> int:
    """Expected count after one year of organic growth *growth* (e.g. 0.05),
    rounded half away from zero."""
    if n_base < 0:
        raise ValueError(f"base count must be non-negative, got {n_base}")
    if growth <= -1.0:
        raise ValueError("growth must be greater than -1")
    return _round_half_away(n_base * (1.0 + growth))


def excess(actual: int, expected: int, total: int | None = None) -> tuple[int, float | None]:
    """Documents above the projected baseline; optionally also as a fraction
    of *total*. Negative excess is legal and returned as-is."""
    diff = actual - expected
    if total is None:
        return diff, None
    if total <= 0:
        raise ValueError(f"total must be positive, got {total}")
    return diff, diff / total


@dataclass(frozen=True)
class CountSeries:
    """Yearly (matches, total) points for one named series."""

    series_id: str
    points: Mapping[int, tuple[int, int]]

    def __post_init__(self):
        if not self.series_id:
            raise DataError("series id must be non-empty")
        items = sorted(self.points.items())
        if len(items) != len({y for y, _ in items}):
            raise DataError(f"series {self.series_id!r}: duplicate years")
        for year, (matches, total) in items:
            if total <= 0:
                raise DataError(
                    f"series {self.series_id!r} year {year}: total must be positive"
                )
            if not 0 <= matches <= total:
                raise DataError(
                    f"series {self.series_id!r} year {year}: matches {matches} "
                    f"outside 0..{total}"
                )
        object.__setattr__(self, "points", dict(items))

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(self.points)

    def matches(self, year: int) -> int:
        return self._point(year)[0]

    def total(self, year: int) -> int:
        return self._point(year)[1]

    def _point(self, year: int) -> tuple[int, int]:
        try:
            return self.points[year]
        except KeyError:
            raise DataError(f"series {self.series_id!r} has no year {year}") from None

    def share_at(self, year: int) -> float:
        matches, total = self._point(year)
        return share(matches, total)

    def yoy_at(self, year: int) -> float | None:
        """Share change against the preceding calendar year; None when the
        previous year is absent or has zero share (a gap, not a zero)."""
        prev = year - 1
        if prev not in self.points or year not in self.points:
            return None
        prev_share = self.share_at(prev)
        if prev_share == 0:
            return None
        return yoy_change(self.share_at(year), prev_share)

    def slice(self, from_year: int | None = None, to_year: int | None = None) -> "CountSeries":
        pts = {
            y: p for y, p in self.points.items()
            if (from_year is None or y >= from_year)
            and (to_year is None or y <= to_year)
        }
        if not pts:
            raise DataError(
                f"series {self.series_id!r}: no years in range "
                f"{from_year}-{to_year}"
            )
        return CountSeries(self.series_id, pts)


def max_historical_change(series: CountSeries, from_year: int | None = None,
                          to_year: int | None = None, *,
                          absolute: bool = False) -> tuple[float, int]:
    """Largest year-on-year share change in the window, with the year it
    occurred. Signed maximum by default; ``absolute=True`` picks the change
    of greatest magnitude instead (still returned signed)."""
    window = series.slice(from_year, to_year)
    changes = [
        (c, y) for y in window.years
        if (c := window.yoy_at(y)) is not None
    ]
    if not changes:
        raise DataError(
            f"series {series.series_id!r}: need at least two consecutive years "
            "with positive shares"
        )
    key = (lambda cy: abs(cy[0])) if absolute else (lambda cy: cy[0])
    best = max(changes, key=key)
    return best


def import_counts(source) -> dict[str, CountSeries]:
    """Read a count table (CSV with header ``series,year,matches,total``)
    into one CountSeries per series id, keeping first-appearance order.
    Schema problems are reported with their line number."""
    stream = source
    close = False
    if isinstance(source, (str, Path)):
        stream = open(source, "r", encoding="utf-8", newline="")
        close = True
    try:
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise CountsFormatError("count table is empty (missing header)", line=1)
        if tuple(h.strip() for h in header) != COUNTS_HEADER:
            raise CountsFormatError(
                f"line 1: expected header {','.join(COUNTS_HEADER)!r}, "
                f"got {','.join(header)!r}",
                line=1,
            )
        acc: dict[str, dict[int, tuple[int, int]]] = {}
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != 4:
                raise CountsFormatError(
                    f"line {line}: expected 4 fields, got {len(row)}", line=line
                )
            series_id = row[0].strip()
            try:
                year, matches, total = (int(v) for v in row[1:])
            except ValueError:
                raise CountsFormatError(
                    f"line {line}: year, matches and total must be integers",
                    line=line,
                )
            if matches > total:
                raise CountsFormatError(
                    f"line {line}: matches {matches} exceeds total {total}",
                    line=line,
                )
            if matches < 0 or total <= 0:
                raise CountsFormatError(
                    f"line {line}: matches must be >= 0 and total positive",
                    line=line,
                )
            pts = acc.setdefault(series_id, {})
            if year in pts:
                raise CountsFormatError(
                    f"line {line}: duplicate entry for ({series_id}, {year})",
                    line=line,
                )
            pts[year] = (matches, total)
        return {sid: CountSeries(sid, pts) for sid, pts in acc.items()}
    finally:
        if close:
            stream.close()


def export_counts(series_map: Mapping[str, CountSeries], stream=None) -> str:
    """Write series back to canonical CSV (years ascending within each
    series, ``\\n`` line endings). import -> export is the identity on its
    own output."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COUNTS_HEADER)
    for series in series_map.values():
        for year in series.years:
            matches, total = series.points[year]
            writer.writerow([series.series_id, year, matches, total])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def series_from_index(index: YearTermIndex, name: str,
                      series_id: str | None = None) -> CountSeries:
    """Per-year counts for a lexicon group or single term from an index."""
    groups = index.lexicon.groups()
    key = name.casefold()
    if key in groups:
        query: Query = AnyOf(groups[key])
    elif key in {t.casefold() for t in index.vocabulary}:
        query = Term(key)
    else:
        raise DataError(
            f"unknown series {name!r}: not a lexicon group or indexed term"
        )
    points = {
        year: (eval_count(index, query, year), index.total(year))
        for year in index.years
    }
    if not points:
        raise DataError("index contains no documents")
    return CountSeries(series_id or name, points)


@dataclass
class DriftReport:
    """Everything a report renderer needs for one series; values are computed
    here once and rendered elsewhere without recomputation."""

    series_id: str
    years: tuple[int, ...]
    matches: tuple[int, ...]
    totals: tuple[int, ...]
    shares: tuple[float, ...]
    yoy: tuple[float | None, ...]
    base_year: int | None = None
    target_year: int | None = None
    count_increase: float | None = None
    share_increase: float | None = None
    growth: float | None = None
    expected: int | None = None
    actual: int | None = None
    excess: int | None = None
    excess_share: float | None = None


def drift_report(series: CountSeries, *, from_year: int | None = None,
                 to_year: int | None = None, base_year: int | None = None,
                 target_year: int | None = None) -> DriftReport:
    """Shares and year-on-year changes, plus both increase metrics between a
    designated base/target year pair (default: first and last in range)."""
    window = series.slice(from_year, to_year)
    years = window.years
    base = base_year if base_year is not None else years[0]
    target = target_year if target_year is not None else years[-1]
    report = DriftReport(
        series_id=series.series_id,
        years=years,
        matches=tuple(window.matches(y) for y in years),
        totals=tuple(window.total(y) for y in years),
        shares=tuple(window.share_at(y) for y in years),
        yoy=tuple(window.yoy_at(y) for y in years),
        base_year=base,
        target_year=target,
    )
    if base != target:
        n_prev, big_n_prev = series._point(base)
        n_curr, big_n_curr = series._point(target)
        try:
            report.count_increase = count_increase(n_prev, n_curr)
            report.share_increase = share_increase(
                n_prev, big_n_prev, n_curr, big_n_curr
            )
        except UndefinedChangeError:
            pass
    return report


def excess_report(series: CountSeries, *, base_year: int, target_year: int,
                  growth: float, total: int | None = None) -> DriftReport:
    """Baseline projection from the base year at *growth*, and the excess of
    the target year's actual count over it. The excess share denominator is
    *total* when given, else the series' own total at the target year."""
    report = drift_report(series, base_year=base_year, target_year=target_year)
    base_count = series.matches(base_year)
    actual = series.matches(target_year)
    expected = baseline_projection(base_count, growth)
    denominator = total if total is not None else series.total(target_year)
    diff, diff_share = excess(actual, expected, denominator)
    report.growth = growth
    report.expected = expected
    report.actual = actual
    report.excess = diff
    report.excess_share = diff_share
    return report


@dataclass(frozen=True)
class CategorySkew:
    """Per-category prevalence among query matches vs among all documents."""

    year: int
    matched: int
    total: int
    rows: Mapping[str, tuple[float, float]]
    warning: str | None = None


def category_skew(index: YearTermIndex, q: Query, year: int) -> CategorySkew:
    """How matching documents skew across subject categories in one year.
    A document with several categories counts once per category."""
    pred = compile_predicate(index, q)
    total = index.total(year)
    matched = 0
    match_counts: dict[str, int] = {}
    all_counts: dict[str, int] = {}
    for mask, cats in index.year_marks(year):
        hit = pred(mask)
        if hit:
            matched += 1
        for cat in cats:
            all_counts[cat] = all_counts.get(cat, 0) + 1
            if hit:
                match_counts[cat] = match_counts.get(cat, 0) + 1
    if not all_counts:
        return CategorySkew(
            year, matched, total, {},
            warning=f"no category metadata recorded for year {year}",
        )
    rows = {
        cat: (
            (match_counts.get(cat, 0) / matched) if matched else 0.0,
            all_counts[cat] / total,
        )
        for cat in sorted(all_counts)
    }
    return CategorySkew(year, matched, total, rows)
