"""Cohort selection: rank papers by delay index, take the two extremes.

Eligibility is a publication-year window plus a minimum citation total over
the observation window. Ranking is by descending index with ties broken by
ascending paper id, so the ordering is total and reproducible. The top
ceil(fraction * N) papers form the delayed-recognition cohort (DR), the
bottom ceil(fraction * N) the instant-recognition cohort (IR).
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import curve
from .errors import EmptyEligibleSetError, InvalidCountsError
from .model import CurveProfile, Dataset

DR = "DR"
IR = "IR"
NONE = "NONE"


@dataclass(frozen=True)
class CohortAssignment:
    paper_id: str
    rank: int  # 1-based, by descending delay index
    bcp: float
    cohort: str  # "DR" | "IR" | "NONE"


@dataclass(frozen=True)
class CohortResult:
    assignments: tuple[CohortAssignment, ...]  # rank order
    fraction: float

    @property
    def eligible_count(self) -> int:
        return len(self.assignments)

    def members(self, cohort: str) -> tuple[str, ...]:
        return tuple(a.paper_id for a in self.assignments if a.cohort == cohort)

    def cohort_of(self, paper_id: str) -> str:
        for a in self.assignments:
            if a.paper_id == paper_id:
                return a.cohort
        raise KeyError(paper_id)


def eligible_ids(
    dataset: Dataset,
    pub_from: int,
    pub_to: int,
    min_total_citations: int,
) -> list[str]:
    """Paper ids passing the publication-window and citation-floor filter."""
    if pub_to < pub_from:
        raise InvalidCountsError(f"publication window {pub_from}..{pub_to} is empty")
    if min_total_citations < 1:
        raise InvalidCountsError("minimum citation total must be at least 1")
    out = []
    for pid in sorted(dataset.papers):
        paper = dataset.papers[pid]
        if not pub_from <= paper.pub_year <= pub_to:
            continue
        series = dataset.series.get(pid)
        if series is None or series.t_m < 1:
            continue
        if series.total >= min_total_citations:
            out.append(pid)
    return out


def rank_profiles(dataset: Dataset, paper_ids: Sequence[str]) -> list[CurveProfile]:
    """Curve profiles for the given papers, sorted by descending index."""
    profiles = [curve.profile(dataset.series[pid]) for pid in paper_ids]
    profiles.sort(key=lambda p: (-p.bcp, p.paper_id))
    return profiles


def select_cohorts(
    dataset: Dataset,
    pub_from: int,
    pub_to: int,
    min_total_citations: int,
    fraction: float,
) -> CohortResult:
    """Assign every eligible paper to DR, IR, or NONE.

    Each cohort holds ceil(fraction * N) papers. With tiny pools the ceiling
    can make the cuts meet; DR wins the contested middle and IR comes up
    short rather than letting a paper carry two labels.
    """
    if not 0.0 < fraction <= 0.5:
        raise InvalidCountsError(f"cohort fraction {fraction} outside (0, 0.5]")
    ids = eligible_ids(dataset, pub_from, pub_to, min_total_citations)
    if not ids:
        raise EmptyEligibleSetError()
    ranked = rank_profiles(dataset, ids)
    n = len(ranked)
    size = math.ceil(fraction * n)
    dr_cut = size
    ir_cut = max(n - size, dr_cut)
    assignments = []
    for i, prof in enumerate(ranked):
        if i < dr_cut:
            cohort = DR
        elif i >= ir_cut:
            cohort = IR
        else:
            cohort = NONE
        assignments.append(
            CohortAssignment(paper_id=prof.paper_id, rank=i + 1, bcp=prof.bcp, cohort=cohort)
        )
    return CohortResult(assignments=tuple(assignments), fraction=fraction)


def citation_percentiles(totals: Mapping[str, int]) -> dict[str, float]:
    """Percentile of each paper's citation total within the pool, 0..100.

    100 times the share of OTHER pool members with a strictly smaller total,
    over N - 1; the minimum maps to 0 and a unique maximum to 100. A pool of
    one sits at 100 by convention.
    """
    if not totals:
        raise InvalidCountsError("percentiles need a non-empty pool")
    n = len(totals)
    if n == 1:
        return {pid: 100.0 for pid in totals}
    ordered = sorted(totals.values())
    return {
        pid: 100.0 * bisect_left(ordered, total) / (n - 1)
        for pid, total in totals.items()
    }
