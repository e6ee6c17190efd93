"""Seeded synthetic dataset generator.

Papers come in four curve shapes: delayed (non-decreasing yearly counts, so
the index is strictly positive), instant (non-increasing, strictly negative),
linear (constant counts, exactly zero), and noise (unconstrained sign). Every
paper is scaled up to the eligibility floor, so cohort selection downstream
sees the full pool. Patent links, timing classes, and citation contexts are
derived from the same single random stream, which makes a given spec + seed
produce byte-identical directories.

Shape and timing-class counts are apportioned by largest remainder, so the
requested proportions are hit exactly after rounding.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import curve
from .errors import ConfigError
from .patent import EARLIER, LATER, SAME
from .model import (
    CitationContextRecord,
    CitationSeries,
    ConcordanceEntry,
    Dataset,
    FieldOfStudy,
    PaperRecord,
    PatentCitationLink,
    PatentFamilyRecord,
)

DELAYED = "delayed"
INSTANT = "instant"
LINEAR = "linear"
NOISE = "noise"

# The 19 top-level fields of study.
TOP_LEVEL_FIELDS = (
    "art",
    "biology",
    "business",
    "chemistry",
    "computer science",
    "economics",
    "engineering",
    "environmental science",
    "geography",
    "geology",
    "history",
    "materials science",
    "mathematics",
    "medicine",
    "philosophy",
    "physics",
    "political science",
    "psychology",
    "sociology",
)

_SUBFIELDS = ("molecular biology", "immunology", "organic chemistry", "machine learning", "optics")

# Small concordance sample bundled with generated datasets; real analyses
# should supply the full published table.
SAMPLE_CONCORDANCE = (
    ConcordanceEntry("A61B", 13, "Medical technology", "Instruments"),
    ConcordanceEntry("A61K", 16, "Pharmaceuticals", "Chemistry"),
    ConcordanceEntry("C07D", 14, "Organic fine chemistry", "Chemistry"),
    ConcordanceEntry("C07K", 15, "Biotechnology", "Chemistry"),
    ConcordanceEntry("C12N", 15, "Biotechnology", "Chemistry"),
    ConcordanceEntry("C12Q", 15, "Biotechnology", "Chemistry"),
    ConcordanceEntry("G01N", 10, "Measurement", "Instruments"),
    ConcordanceEntry("G01N33", 11, "Analysis of biological materials", "Instruments"),
    ConcordanceEntry("G06F", 6, "Computer technology", "Electrical engineering"),
    ConcordanceEntry("H01L", 8, "Semiconductors", "Electrical engineering"),
)

_IPC_POOL = (
    "A61B5/00",
    "A61K31/4015",
    "C07D209/02",
    "C07K14/47",
    "C12N15/09",
    "C12Q1/68",
    "G01N21/64",
    "G01N33/53",
    "G06F17/30",
    "H01L29/06",
)

_SUPPORTIVE_SENTENCES = (
    "We build directly on the assay introduced in {ref}.",
    "The framework of {ref} guides our experimental design.",
    "Results in {ref} are confirmed across all three cell lines.",
)

_CRITICAL_SENTENCES = (
    "Our replication attempts disagree with the yields reported in {ref}.",
    "These measurements contradict the rate constants from {ref}.",
    "In contrast to {ref}, we observe no binding at low temperatures.",
    "The kinetics reported here are inconsistent with {ref}.",
    "We dispute the structural assignment proposed in {ref}.",
)


@dataclass(frozen=True)
class SynthSpec:
    n_papers: int = 400
    seed: int = 0
    share_delayed: float = 0.25
    share_instant: float = 0.25
    share_linear: float = 0.25
    share_noise: float = 0.25
    link_density: float = 0.6
    timing_earlier: float = 0.70
    timing_same: float = 0.05
    timing_later: float = 0.25
    pub_from: int = 1970
    pub_to: int = 2005
    window_end: int = 2015
    min_total_citations: int = 200

    def __post_init__(self) -> None:
        if self.n_papers < 1:
            raise ConfigError("n_papers must be at least 1")
        shares = (self.share_delayed, self.share_instant, self.share_linear, self.share_noise)
        timing = (self.timing_earlier, self.timing_same, self.timing_later)
        for name, values in (("shape shares", shares), ("timing targets", timing)):
            if any(v < 0 for v in values):
                raise ConfigError(f"{name} must be non-negative")
            if abs(sum(values) - 1.0) > 1e-9:
                raise ConfigError(f"{name} must sum to 1, got {sum(values)!r}")
        if not 0.0 <= self.link_density <= 1.0:
            raise ConfigError(f"link density {self.link_density} outside [0, 1]")
        if not self.pub_from <= self.pub_to < self.window_end:
            raise ConfigError(
                f"need pub_from <= pub_to < window_end, got {self.pub_from}, {self.pub_to}, {self.window_end}"
            )
        if self.min_total_citations < 1:
            raise ConfigError("min_total_citations must be at least 1")


@dataclass(frozen=True)
class SynthResult:
    dataset: Dataset
    shapes: dict[str, str]  # paper_id -> shape
    timing_classes: dict[str, str]  # linked paper_id -> Earlier | Same | Later


def largest_remainder(total: int, proportions: list[float]) -> list[int]:
    """Integer counts summing to total, apportioned by largest remainder.

    Remainder ties go to the earlier bucket, so the split is deterministic.
    """
    if total < 0:
        raise ConfigError("total must be non-negative")
    quotas = [p * total for p in proportions]
    counts = [math.floor(q) for q in quotas]
    leftover = total - sum(counts)
    order = sorted(range(len(quotas)), key=lambda i: (counts[i] - quotas[i], i))
    for i in order[:leftover]:
        counts[i] += 1
    return counts


def _delayed_counts(rng: random.Random, t_m: int) -> list[int]:
    # Zeros, then a rising ramp: non-decreasing and non-constant.
    if t_m == 1:
        return [0, 1]
    start = rng.randint(max(1, t_m // 2), t_m - 1)
    return [0] * start + list(range(1, t_m - start + 2))


def _instant_counts(rng: random.Random, t_m: int) -> list[int]:
    peak = rng.randint(2, 9)
    return [max(peak - t, 0) for t in range(t_m + 1)]


def _linear_counts(rng: random.Random, t_m: int) -> list[int]:
    return [rng.randint(1, 9)] * (t_m + 1)


def _noise_counts(rng: random.Random, t_m: int) -> list[int]:
    while True:
        counts = [rng.randint(0, 50) for _ in range(t_m + 1)]
        if sum(counts) > 0:
            return counts


_SHAPE_BUILDERS = {
    DELAYED: _delayed_counts,
    INSTANT: _instant_counts,
    LINEAR: _linear_counts,
    NOISE: _noise_counts,
}


def _scale_to_floor(counts: list[int], floor: int) -> list[int]:
    # Integer scaling preserves the curve shape, index, and turning year.
    total = sum(counts)
    k = -(-floor // total)
    return [c * k for c in counts] if k > 1 else counts


def generate(spec: SynthSpec) -> SynthResult:
    """Build the full in-memory dataset for a spec (pure, seed-deterministic)."""
    rng = random.Random(spec.seed)
    shape_counts = largest_remainder(
        spec.n_papers,
        [spec.share_delayed, spec.share_instant, spec.share_linear, spec.share_noise],
    )
    shapes: dict[str, str] = {}
    papers: dict[str, PaperRecord] = {}
    series: dict[str, CitationSeries] = {}
    order = []
    i = 0
    for shape, n_shape in zip((DELAYED, INSTANT, LINEAR, NOISE), shape_counts):
        for _ in range(n_shape):
            pid = f"p{i:05d}"
            pub_year = rng.randint(spec.pub_from, spec.pub_to)
            t_m = spec.window_end - pub_year
            counts = _scale_to_floor(_SHAPE_BUILDERS[shape](rng, t_m), spec.min_total_citations)
            fields = [FieldOfStudy(name, 0) for name in rng.sample(TOP_LEVEL_FIELDS, rng.randint(1, 2))]
            if rng.random() < 0.3:
                fields.append(FieldOfStudy(rng.choice(_SUBFIELDS), 1))
            papers[pid] = PaperRecord(
                paper_id=pid,
                pub_year=pub_year,
                title=f"Synthetic paper {i:05d}",
                doi=f"10.5555/synth.{i:05d}",
                pmid=None,
                fields_of_study=tuple(fields),
            )
            series[pid] = CitationSeries(paper_id=pid, base_year=pub_year, counts=tuple(counts))
            shapes[pid] = shape
            order.append(pid)
            i += 1

    # Patent linkage: the first round(density * n) papers of each shape block.
    linked: list[str] = []
    offset = 0
    for n_shape in shape_counts:
        block = order[offset : offset + n_shape]
        n_linked = largest_remainder(n_shape, [spec.link_density, 1.0 - spec.link_density])[0]
        linked.extend(block[:n_linked])
        offset += n_shape

    class_counts = largest_remainder(
        len(linked), [spec.timing_earlier, spec.timing_same, spec.timing_later]
    )
    class_pool = [EARLIER] * class_counts[0] + [SAME] * class_counts[1] + [LATER] * class_counts[2]
    rng.shuffle(class_pool)
    timing_classes = dict(zip(linked, class_pool))

    patents: dict[str, PatentFamilyRecord] = {}
    links: list[PatentCitationLink] = []
    fam_seq = 0
    for pid in linked:
        turning_year = curve.profile(series[pid]).turning_year
        cls = timing_classes[pid]
        if cls == EARLIER:
            priority = turning_year - rng.randint(1, 10)
        elif cls == SAME:
            priority = turning_year
        else:
            priority = turning_year + rng.randint(1, 10)
        n_fam = rng.randint(1, 3)
        for j in range(n_fam):
            fid = f"f{fam_seq:05d}"
            fam_seq += 1
            if j > 0:
                priority = priority + rng.randint(1, 8)
            filings = {priority}
            for _ in range(rng.randint(0, 2)):
                filings.add(priority + rng.randint(1, 12))
            patents[fid] = PatentFamilyRecord(
                family_id=fid,
                earliest_priority_year=priority,
                filing_years=tuple(sorted(filings)),
                forward_citation_count=rng.randint(0, 80) if j == 0 else rng.randint(0, 40),
                ipc_codes=tuple(rng.sample(_IPC_POOL, rng.randint(1, 3))),
            )
            links.append(PatentCitationLink(paper_id=pid, family_id=fid))

    contexts: list[CitationContextRecord] = []
    ctx_seq = 0
    for pid in order:
        if rng.random() >= 0.15:
            continue
        for _ in range(rng.randint(1, 2)):
            template = rng.choice(
                _CRITICAL_SENTENCES if rng.random() < 0.4 else _SUPPORTIVE_SENTENCES
            )
            contexts.append(
                CitationContextRecord(
                    citing_id=f"x{ctx_seq:05d}",
                    cited_paper_id=pid,
                    year=min(papers[pid].pub_year + rng.randint(1, 10), spec.window_end),
                    sentence=template.format(ref=pid),
                )
            )
            ctx_seq += 1

    dataset = Dataset(
        papers=papers,
        series=series,
        patents=patents,
        links=tuple(links),
        concordance=SAMPLE_CONCORDANCE,
        window_end=spec.window_end,
        contexts=tuple(contexts),
    )
    return SynthResult(dataset=dataset, shapes=shapes, timing_classes=timing_classes)
