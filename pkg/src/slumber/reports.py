"""Report writers: fixed column orders, sorted rows, 6-decimal floats.

Every float is rendered with format(x, ".6f") (correctly rounded, half to
even) and every file ends lines with '\n', so two runs over the same inputs
are byte-identical regardless of platform.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .cohort import CohortResult
from .errors import DegeneratePoolError
from .interact import FieldDistribution, InteractionMatrix
from .model import CitationContextRecord, CurveProfile, Dataset
from .patent import BINARY_INDICATORS, PatentIndicators
from .stats import AagrResult, SummaryStats, WindowedTrend, proportion_ci, two_proportion_test

DEGENERATE_LABEL = "DegeneratePool"


def fmt(x: float) -> str:
    return format(x, ".6f")


def _opt(value) -> str:
    return "" if value is None else str(value)


def _open_csv(path: Path):
    fh = open(path, "w", encoding="utf-8", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def write_profiles(dataset: Dataset, profiles: Iterable[CurveProfile], path: Path) -> None:
    fh, out = _open_csv(path)
    with fh:
        out.writerow(
            ["paper_id", "pub_year", "t_m", "total_citations", "bcp", "turning_t", "turning_year", "turning_type"]
        )
        for prof in sorted(profiles, key=lambda p: p.paper_id):
            series = dataset.series[prof.paper_id]
            out.writerow(
                [
                    prof.paper_id,
                    dataset.papers[prof.paper_id].pub_year,
                    series.t_m,
                    series.total,
                    fmt(prof.bcp),
                    prof.turning_t,
                    prof.turning_year,
                    prof.turning_type,
                ]
            )


def write_cohorts(result: CohortResult, path: Path) -> None:
    fh, out = _open_csv(path)
    with fh:
        out.writerow(["paper_id", "rank", "bcp", "cohort"])
        for a in result.assignments:
            out.writerow([a.paper_id, a.rank, fmt(a.bcp), a.cohort])


def write_indicators(indicators: Iterable[PatentIndicators], path: Path) -> None:
    fh, out = _open_csv(path)
    with fh:
        out.writerow(
            [
                "paper_id",
                "n_families",
                "earliest_filing_year",
                "latest_filing_year",
                "durability_years",
                "forward_cites_of_earliest",
                "first_citation_lag",
                "relative_timing",
                "timing_class",
            ]
        )
        for ind in sorted(indicators, key=lambda i: i.paper_id):
            out.writerow(
                [
                    ind.paper_id,
                    ind.n_families,
                    _opt(ind.earliest_filing_year),
                    _opt(ind.latest_filing_year),
                    _opt(ind.durability_years),
                    _opt(ind.forward_cites_of_earliest),
                    _opt(ind.first_citation_lag),
                    _opt(ind.relative_timing),
                    _opt(ind.timing_class),
                ]
            )


def comparison_rows(
    dr: Sequence[PatentIndicators], ir: Sequence[PatentIndicators]
) -> list[list[str]]:
    """Six rows (three binary indicators x two groups), DR carrying the test.

    When the pooled rate is degenerate (0 or 1) the z test is undefined; the
    per-group rates and intervals still go out, with the p cell labelled
    instead of a number.
    """
    rows = []
    for name, predicate in BINARY_INDICATORS:
        k1 = sum(1 for i in dr if predicate(i))
        k2 = sum(1 for i in ir if predicate(i))
        n1, n2 = len(dr), len(ir)
        try:
            res = two_proportion_test(k1, n1, k2, n2)
            ratio = "" if res.rate_ratio is None else fmt(res.rate_ratio)
            z, p = fmt(res.z), fmt(res.p_two_sided)
            a, b = res.group_a, res.group_b
        except DegeneratePoolError:
            ratio, z, p = "", "", DEGENERATE_LABEL
            a, b = proportion_ci(k1, n1), proportion_ci(k2, n2)
        rows.append(
            [name, "DR", str(k1), str(n1 - k1), fmt(a.rate), fmt(a.ci_low), fmt(a.ci_high), ratio, z, p]
        )
        rows.append(
            [name, "IR", str(k2), str(n2 - k2), fmt(b.rate), fmt(b.ci_low), fmt(b.ci_high), "", "", ""]
        )
    return rows


def write_comparison(dr: Sequence[PatentIndicators], ir: Sequence[PatentIndicators], path: Path) -> None:
    fh, out = _open_csv(path)
    with fh:
        out.writerow(["indicator", "group", "yes", "no", "rate", "ci_low", "ci_high", "rate_ratio", "z", "p"])
        out.writerows(comparison_rows(dr, ir))


def write_lag_trend(trends: Mapping[tuple[str, str], WindowedTrend], path: Path) -> None:
    """One row per (cohort, lag mode, window); keys iterate in sorted order."""
    fh, out = _open_csv(path)
    with fh:
        out.writerow(["cohort", "mode", "window_start", "window_end", "mean_lag", "n_obs"])
        for cohort, mode in sorted(trends):
            for w in trends[(cohort, mode)].windows:
                out.writerow([cohort, mode, w.start_year, w.end_year, fmt(w.mean), w.n_obs])


def write_lag_summary(summaries: Mapping[tuple[str, str], tuple[int, SummaryStats]], path: Path) -> None:
    fh, out = _open_csv(path)
    with fh:
        out.writerow(["cohort", "mode", "n", "min", "max", "median", "sd"])
        for cohort, mode in sorted(summaries):
            n, s = summaries[(cohort, mode)]
            sd = "" if s.sd is None else fmt(s.sd)
            out.writerow([cohort, mode, n, fmt(s.min), fmt(s.max), fmt(s.median), sd])


def write_interactions(matrix: InteractionMatrix, path: Path) -> None:
    fh, out = _open_csv(path)
    with fh:
        out.writerow(["field_of_study", "wipo_field_id", "wipo_field_name", "weight"])
        for cell in matrix.cells:
            out.writerow([cell.field_of_study, cell.wipo_field_id, cell.wipo_field_name, cell.weight])


def write_interaction_marginals(matrix: InteractionMatrix, path: Path) -> None:
    """Row and column sums in one long-form file, axis column telling which."""
    names = {c.wipo_field_id: c.wipo_field_name for c in matrix.cells}
    fh, out = _open_csv(path)
    with fh:
        out.writerow(["axis", "key", "label", "weight"])
        for field, weight in matrix.field_marginals().items():
            out.writerow(["field_of_study", field, "", weight])
        for tid, weight in matrix.wipo_marginals().items():
            out.writerow(["wipo_field", tid, names[tid], weight])


def write_field_distribution(dist: FieldDistribution, path: Path) -> None:
    fh, out = _open_csv(path)
    with fh:
        out.writerow(["field_of_study", "papers", "share"])
        for field, count in dist.counts:
            out.writerow([field, count, fmt(count / dist.total_papers if dist.total_papers else 0.0)])


def write_growth(rows: Iterable[tuple[str, AagrResult]], path: Path) -> None:
    fh, out = _open_csv(path)
    with fh:
        out.writerow(["paper_id", "base_year", "end_year", "method", "aagr_percent", "skipped_years"])
        for pid, res in sorted(rows, key=lambda r: r[0]):
            out.writerow(
                [pid, res.base_year, res.end_year, res.method, fmt(res.value_percent), res.skipped_years]
            )


def write_flagged_contexts(
    flagged: Iterable[tuple[CitationContextRecord, tuple[str, ...]]], path: Path
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec, terms in flagged:
            fh.write(
                json.dumps(
                    {
                        "citing_id": rec.citing_id,
                        "cited_paper_id": rec.cited_paper_id,
                        "year": rec.year,
                        "sentence": rec.sentence,
                        "matched_terms": list(terms),
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                )
                + "\n"
            )
