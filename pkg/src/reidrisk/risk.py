"""Per-record re-identification risk reports for masked tables.

For every record's masked row and every configured attribute subset the
report carries the candidate set, the probability- and belief-valued
readings, the two uncertainty measures, and the verdict of the internal
compatibility check; a table-level summary aggregates candidate-set
sizes and the fraction of unique (certain) re-identifications.

Tables with at most MAX_FRAME records run the full belief machinery.
Larger tables fall back to candidate-set-local closed forms, which
coincide with the dense results for the categorical masses used here:
uniform probabilities, nonspecificity log2 of the candidate size,
pignistic entropy ln of it, and compatibility as candidate-set
inclusion.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .belief import belief_from_mass, pignistic
from .compatibility import is_compatible, is_dirac
from .frames import MAX_FRAME
from .measures import nonspecificity, pignistic_entropy
from .reident import (
    GeneralizationScheme,
    MaskedTable,
    Table,
    candidate_indices,
    candidate_set,
    mask_generalize,
    reidentify_belief,
    true_probability,
)

MEASURE_NAMES = ("nonspecificity_bits", "pignistic_entropy_nats")


@dataclass(frozen=True)
class SubsetEvaluation:
    """Risk reading for one masked row under one attribute subset."""

    attributes: tuple[str, ...]
    candidate_labels: tuple[str, ...]
    candidate_size: int
    reident_probability: tuple[float, ...]
    nonspecificity_bits: Optional[float]
    pignistic_entropy_nats: Optional[float]
    compatibility: str

    def to_dict(self) -> dict:
        return {
            "attributes": list(self.attributes),
            "candidate_labels": list(self.candidate_labels),
            "candidate_size": self.candidate_size,
            "reident_probability": list(self.reident_probability),
            "nonspecificity_bits": self.nonspecificity_bits,
            "pignistic_entropy_nats": self.pignistic_entropy_nats,
            "compatibility": self.compatibility,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SubsetEvaluation":
        return cls(
            attributes=tuple(data["attributes"]),
            candidate_labels=tuple(data["candidate_labels"]),
            candidate_size=data["candidate_size"],
            reident_probability=tuple(data["reident_probability"]),
            nonspecificity_bits=data["nonspecificity_bits"],
            pignistic_entropy_nats=data["pignistic_entropy_nats"],
            compatibility=data["compatibility"],
        )


@dataclass(frozen=True)
class RecordRisk:
    """All evaluations for one record of the table."""

    index: int
    masked: tuple[str, ...]
    true_probability: tuple[float, ...]
    true_candidate_size: int
    true_dirac: bool
    evaluations: tuple[SubsetEvaluation, ...]

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "masked": list(self.masked),
            "true_probability": list(self.true_probability),
            "true_candidate_size": self.true_candidate_size,
            "true_dirac": self.true_dirac,
            "evaluations": [e.to_dict() for e in self.evaluations],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RecordRisk":
        return cls(
            index=data["index"],
            masked=tuple(data["masked"]),
            true_probability=tuple(data["true_probability"]),
            true_candidate_size=data["true_candidate_size"],
            true_dirac=data["true_dirac"],
            evaluations=tuple(
                SubsetEvaluation.from_dict(e) for e in data["evaluations"]
            ),
        )


@dataclass(frozen=True)
class RiskSummary:
    """Table-level aggregation over full-attribute candidate sets."""

    candidate_size_counts: tuple[tuple[int, int], ...]
    unique_reident_fraction: float

    def to_dict(self) -> dict:
        return {
            "candidate_size_counts": [
                list(pair) for pair in self.candidate_size_counts
            ],
            "unique_reident_fraction": self.unique_reident_fraction,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RiskSummary":
        return cls(
            candidate_size_counts=tuple(
                (size, count)
                for size, count in data["candidate_size_counts"]
            ),
            unique_reident_fraction=data["unique_reident_fraction"],
        )


@dataclass(frozen=True)
class RiskReport:
    attributes: tuple[str, ...]
    n_records: int
    records: tuple[RecordRisk, ...]
    summary: RiskSummary

    def to_dict(self) -> dict:
        return {
            "attributes": list(self.attributes),
            "n_records": self.n_records,
            "records": [r.to_dict() for r in self.records],
            "summary": self.summary.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RiskReport":
        return cls(
            attributes=tuple(data["attributes"]),
            n_records=data["n_records"],
            records=tuple(
                RecordRisk.from_dict(r) for r in data["records"]
            ),
            summary=RiskSummary.from_dict(data["summary"]),
        )

    @property
    def all_compatible(self) -> bool:
        return all(
            e.compatibility == "compatible"
            for r in self.records
            for e in r.evaluations
        )


def _evaluate_record(
    index: int,
    masked: MaskedTable,
    subsets: Sequence[int],
    measures: Sequence[str],
) -> RecordRisk:
    table, scheme = masked.table, masked.scheme
    y_row = masked.rows[index]
    n = table.n_records
    dense = n <= MAX_FRAME
    cs_full = candidate_set(y_row, table, scheme, table.full_attrs)
    full_members = candidate_indices(cs_full)
    want_nonspec = "nonspecificity_bits" in measures
    want_entropy = "pignistic_entropy_nats" in measures
    if dense:
        p_true = true_probability(y_row, table, scheme)
        true_vector = tuple(float(v) for v in p_true.p)
        dirac = is_dirac(p_true) is not None
    else:
        share = 1.0 / len(full_members)
        vec = [0.0] * n
        for i in full_members:
            vec[i] = share
        true_vector = tuple(vec)
        dirac = len(full_members) == 1
    labels = table.record_labels
    evaluations = []
    for attrs in subsets:
        cs = candidate_set(y_row, table, scheme, attrs)
        members = candidate_indices(cs)
        size = len(members)
        if dense:
            mass = reidentify_belief(y_row, attrs, table, scheme)
            prob = tuple(float(v) for v in pignistic(mass).p)
            nonspec = nonspecificity(mass) if want_nonspec else None
            entropy = pignistic_entropy(mass) if want_entropy else None
            verdict = (
                "compatible"
                if is_compatible(belief_from_mass(mass), p_true)
                else "incompatible"
            )
        else:
            share = 1.0 / size if size else 0.0
            vec = [0.0] * n
            for i in members:
                vec[i] = share
            prob = tuple(vec)
            nonspec = math.log2(size) if want_nonspec else None
            entropy = math.log(size) if want_entropy else None
            verdict = (
                "compatible" if cs_full & ~cs == 0 else "incompatible"
            )
        evaluations.append(
            SubsetEvaluation(
                attributes=table.attrs_names(attrs),
                candidate_labels=tuple(labels[i] for i in members),
                candidate_size=size,
                reident_probability=prob,
                nonspecificity_bits=nonspec,
                pignistic_entropy_nats=entropy,
                compatibility=verdict,
            )
        )
    return RecordRisk(
        index=index,
        masked=tuple(y_row),
        true_probability=true_vector,
        true_candidate_size=len(full_members),
        true_dirac=dirac,
        evaluations=tuple(evaluations),
    )


def default_subsets(table: Table) -> tuple[int, ...]:
    """Each single attribute, plus the full attribute set."""
    singles = [1 << j for j in range(table.n_attributes)]
    if table.full_attrs not in singles:
        singles.append(table.full_attrs)
    return tuple(singles)


def analyze_table(
    table: Table,
    scheme: GeneralizationScheme,
    subsets: Optional[Sequence[int]] = None,
    measures: Sequence[str] = MEASURE_NAMES,
    threads: Optional[int] = None,
) -> RiskReport:
    """Mask the table and evaluate every record.

    Records are independent, so they may be evaluated concurrently;
    the report is always ordered by record index.
    """
    masked = mask_generalize(table, scheme)
    chosen = tuple(subsets) if subsets is not None else default_subsets(table)
    for attrs in chosen:
        if attrs == 0 or attrs > table.full_attrs:
            raise ValueError(f"invalid attribute subset mask {attrs}")
    unknown = set(measures) - set(MEASURE_NAMES)
    if unknown:
        raise ValueError(f"unknown measures: {sorted(unknown)}")

    def worker(index: int) -> RecordRisk:
        return _evaluate_record(index, masked, chosen, measures)

    indices = range(table.n_records)
    if threads is not None and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = tuple(pool.map(worker, indices))
    else:
        records = tuple(worker(i) for i in indices)
    counts: dict[int, int] = {}
    for record in records:
        counts[record.true_candidate_size] = (
            counts.get(record.true_candidate_size, 0) + 1
        )
    summary = RiskSummary(
        candidate_size_counts=tuple(sorted(counts.items())),
        unique_reident_fraction=counts.get(1, 0) / table.n_records,
    )
    return RiskReport(
        attributes=table.attributes,
        n_records=table.n_records,
        records=records,
        summary=summary,
    )
