"""Statistical kernels: proportion intervals, two-group tests, trends, growth.

Conventions are pinned for reproducibility:
  - Wald interval for a binomial proportion, clamped to [0, 1].
  - Pooled two-proportion z-test, two-sided p via the standard normal CDF
    (stdlib NormalDist, erf-based, abs error far below 1e-7), no continuity
    correction.
  - Sample (n-1) standard deviation; median is the midpoint convention.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import (
    AllDenominatorsZeroError,
    DegeneratePoolError,
    InsufficientDataError,
    InvalidCountsError,
    ZeroBaseError,
    ZeroBaselineError,
)

_NORMAL = statistics.NormalDist()


@dataclass(frozen=True)
class ProportionSummary:
    successes: int
    trials: int
    rate: float
    ci_low: float
    ci_high: float
    level: float = 0.95


@dataclass(frozen=True)
class ComparisonResult:
    group_a: ProportionSummary
    group_b: ProportionSummary
    rate_ratio: float | None
    z: float
    p_two_sided: float


@dataclass(frozen=True)
class TrendWindow:
    start_year: int
    end_year: int
    mean: float
    n_obs: int


@dataclass(frozen=True)
class WindowedTrend:
    windows: tuple[TrendWindow, ...]


@dataclass(frozen=True)
class SummaryStats:
    min: float
    max: float
    median: float
    sd: float | None  # None when fewer than two values


@dataclass(frozen=True)
class AagrResult:
    base_year: int
    end_year: int
    method: str  # "arithmetic" | "compound"
    value_percent: float
    skipped_years: int = 0  # arithmetic only: years dropped for a zero denominator


def proportion_ci(k: int, n: int, level: float = 0.95) -> ProportionSummary:
    """Wald confidence interval for k successes out of n trials."""
    if n < 1 or not 0 <= k <= n:
        raise InvalidCountsError(f"invalid counts k={k}, n={n}")
    if not 0.0 < level < 1.0:
        raise InvalidCountsError(f"confidence level {level} outside (0, 1)")
    rate = k / n
    z = _NORMAL.inv_cdf(0.5 + level / 2.0)
    half = z * (rate * (1.0 - rate) / n) ** 0.5
    return ProportionSummary(
        successes=k,
        trials=n,
        rate=rate,
        ci_low=max(0.0, rate - half),
        ci_high=min(1.0, rate + half),
        level=level,
    )


def two_proportion_test(
    k1: int, n1: int, k2: int, n2: int, level: float = 0.95
) -> ComparisonResult:
    """Pooled z-test comparing k1/n1 against k2/n2 (two-sided).

    The rate ratio is group A relative to group B, or None when group B has
    zero events.
    """
    a = proportion_ci(k1, n1, level)
    b = proportion_ci(k2, n2, level)
    pooled = (k1 + k2) / (n1 + n2)
    if pooled <= 0.0 or pooled >= 1.0:
        raise DegeneratePoolError()
    se = (pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2)) ** 0.5
    z = (a.rate - b.rate) / se
    p = 2.0 * (1.0 - _NORMAL.cdf(abs(z)))
    ratio = (a.rate / b.rate) if k2 > 0 else None
    return ComparisonResult(group_a=a, group_b=b, rate_ratio=ratio, z=z, p_two_sided=p)


def rate_ratio(k1: int, n1: int, k2: int, n2: int) -> float:
    """How much more common the event is in group 1 than in group 2."""
    if n1 < 1 or n2 < 1 or k1 < 0 or k2 < 0:
        raise InvalidCountsError(f"invalid counts ({k1},{n1}) vs ({k2},{n2})")
    if k2 == 0:
        raise ZeroBaselineError()
    return (k1 / n1) / (k2 / n2)


def moving_window_mean(
    points: Iterable[tuple[int, float]], width: int = 5, step: int = 1
) -> WindowedTrend:
    """Means over successive, overlapping fixed-width year windows.

    Window starts run from the earliest year to the latest year minus
    width + 1; windows containing no observations are omitted.
    """
    if width < 1:
        raise InvalidCountsError(f"window width {width} must be >= 1")
    if step < 1:
        raise InvalidCountsError(f"window step {step} must be >= 1")
    pts = sorted(points)
    if not pts:
        return WindowedTrend(windows=())
    years = [y for y, _ in pts]
    lo, hi = years[0], years[-1]
    windows = []
    for start in range(lo, hi - width + 2, step):
        end = start + width - 1
        values = [v for y, v in pts if start <= y <= end]
        if not values:
            continue
        windows.append(
            TrendWindow(start_year=start, end_year=end, mean=sum(values) / len(values), n_obs=len(values))
        )
    return WindowedTrend(windows=tuple(windows))


def summary_stats(values: Sequence[float]) -> SummaryStats:
    """Min, max, midpoint median, and sample standard deviation."""
    if not values:
        raise InsufficientDataError("summary statistics need at least one value")
    sd = statistics.stdev(values) if len(values) >= 2 else None
    return SummaryStats(
        min=min(values),
        max=max(values),
        median=statistics.median(values),
        sd=sd,
    )


def aagr(
    annual_counts: Iterable[tuple[int, int]],
    base_year: int,
    end_year: int,
    method: Literal["arithmetic", "compound"] = "arithmetic",
) -> AagrResult:
    """Annual average growth rate over (base_year, end_year], in percent.

    arithmetic: mean of year-over-year relative changes, skipping years whose
    previous-year count is zero (the skips are counted on the result).
    compound: ((v_end / v_base) ** (1 / (end - base)) - 1).
    Years absent from the input count as zero.
    """
    if end_year <= base_year:
        raise InvalidCountsError(f"end year {end_year} must exceed base year {base_year}")
    by_year = dict(annual_counts)
    if method == "arithmetic":
        changes = []
        skipped = 0
        for year in range(base_year + 1, end_year + 1):
            prev = by_year.get(year - 1, 0)
            cur = by_year.get(year, 0)
            if prev == 0:
                skipped += 1
                continue
            changes.append((cur - prev) / prev)
        if not changes:
            raise AllDenominatorsZeroError()
        value = 100.0 * sum(changes) / len(changes)
        return AagrResult(base_year, end_year, "arithmetic", value, skipped_years=skipped)
    if method == "compound":
        v_base = by_year.get(base_year, 0)
        v_end = by_year.get(end_year, 0)
        if v_base == 0:
            raise ZeroBaseError(base_year)
        value = 100.0 * ((v_end / v_base) ** (1.0 / (end_year - base_year)) - 1.0)
        return AagrResult(base_year, end_year, "compound", value)
    raise InvalidCountsError(f"unknown growth method {method!r}")
