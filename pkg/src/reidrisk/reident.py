"""Tables, generalization masking, candidate sets, and re-identification.

The scenario: a table X of records is protected by cellwise
generalization into a masked table Y.  An intruder holding a masked row
y asks which records of X could have produced it; that candidate set,
possibly restricted to the attributes the intruder actually knows,
drives both the probability-valued and the belief-valued
re-identification methods.  Records are identified by 0-based position;
duplicate rows are distinct records.

Frames over records are only built where a dense belief lattice is
needed (n <= MAX_FRAME); candidate sets themselves are plain integer
bitmasks and work for tables of any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence, Union

import numpy as np

from .belief import MassAssignment, ProbabilityDistribution, pignistic
from .combination import CombinationRule, combine_many, conjunctive_rule
from .compatibility import TrueProbability
from .frames import Frame

Cell = Union[int, str]


class UncoveredValueError(ValueError):
    """A cell value that the generalization scheme does not map."""

    def __init__(self, attribute: str, value: Cell) -> None:
        super().__init__(
            f"attribute {attribute!r}: value {value!r} is not covered "
            f"by the generalization scheme"
        )
        self.attribute = attribute
        self.value = value


class EmptyCandidateSetError(ValueError):
    """No record could have produced the masked row under the scheme."""


class MissingPreimageError(ValueError):
    """A record required by the noise model is absent from the table."""


@dataclass(frozen=True)
class Table:
    """Rectangular table of records; cells are integers or labels."""

    attributes: tuple[str, ...]
    records: tuple[tuple[Cell, ...], ...]

    def __post_init__(self) -> None:
        attributes = tuple(str(a) for a in self.attributes)
        records = tuple(tuple(row) for row in self.records)
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "records", records)
        if len(set(attributes)) != len(attributes):
            raise ValueError("attribute names must be unique")
        if not records:
            raise ValueError("a table needs at least one record")
        width = len(attributes)
        for i, row in enumerate(records):
            if len(row) != width:
                raise ValueError(
                    f"record {i} has {len(row)} cells, expected {width}"
                )

    @property
    def n_records(self) -> int:
        return len(self.records)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def record_labels(self) -> tuple[str, ...]:
        return tuple(f"r{i}" for i in range(self.n_records))

    def frame(self) -> Frame:
        """Frame with one element per record (dense operations only)."""
        return Frame(self.record_labels)

    def attribute_index(self, name: str) -> int:
        try:
            return self.attributes.index(name)
        except ValueError:
            raise KeyError(f"no attribute named {name!r}") from None

    @property
    def full_attrs(self) -> int:
        return (1 << self.n_attributes) - 1

    def attrs_mask(self, names: Sequence[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.attribute_index(name)
        return mask

    def attrs_names(self, attrs: int) -> tuple[str, ...]:
        return tuple(
            a for j, a in enumerate(self.attributes) if attrs >> j & 1
        )

    def attribute_subsets(self) -> Iterator[int]:
        """All nonempty attribute subsets, increasing bit pattern."""
        return iter(range(1, 1 << self.n_attributes))


@dataclass(frozen=True)
class IntervalGeneralizer:
    """Maps integers to disjoint interval labels "[lo,hi]"."""

    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        spans = tuple(
            (int(lo), int(hi)) for lo, hi in self.intervals
        )
        object.__setattr__(self, "intervals", spans)
        if not spans:
            raise ValueError("need at least one interval")
        for lo, hi in spans:
            if lo > hi:
                raise ValueError(f"interval [{lo},{hi}] has lo > hi")
        ordered = sorted(spans)
        for (_, prev_hi), (lo, _) in zip(ordered, ordered[1:]):
            if lo <= prev_hi:
                raise ValueError("intervals must be disjoint")

    def label(self, attribute: str, value: Cell) -> str:
        if isinstance(value, bool) or not isinstance(value, int):
            raise UncoveredValueError(attribute, value)
        for lo, hi in self.intervals:
            if lo <= value <= hi:
                return f"[{lo},{hi}]"
        raise UncoveredValueError(attribute, value)


@dataclass(frozen=True)
class GroupGeneralizer:
    """Maps category values to the name of their group."""

    groups: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        groups = tuple(
            (str(name), tuple(str(v) for v in members))
            for name, members in self.groups
        )
        object.__setattr__(self, "groups", groups)
        if not groups:
            raise ValueError("need at least one group")
        seen: set[str] = set()
        for name, members in groups:
            if not members:
                raise ValueError(f"group {name!r} is empty")
            for v in members:
                if v in seen:
                    raise ValueError(f"value {v!r} appears in two groups")
                seen.add(v)

    def label(self, attribute: str, value: Cell) -> str:
        key = str(value)
        for name, members in self.groups:
            if key in members:
                return name
        raise UncoveredValueError(attribute, value)


@dataclass(frozen=True)
class IdentityGeneralizer:
    """No generalization: the label is the value itself."""

    def label(self, attribute: str, value: Cell) -> str:
        return str(value)


Generalizer = Union[IntervalGeneralizer, GroupGeneralizer, IdentityGeneralizer]


@dataclass(frozen=True)
class GeneralizationScheme:
    """Per-attribute generalizers; every masked attribute needs one."""

    by_attribute: Mapping[str, Generalizer]

    def __post_init__(self) -> None:
        object.__setattr__(self, "by_attribute", dict(self.by_attribute))

    def generalizer_for(self, attribute: str) -> Generalizer:
        try:
            return self.by_attribute[attribute]
        except KeyError:
            raise KeyError(
                f"the scheme has no generalizer for attribute "
                f"{attribute!r}"
            ) from None

    def label(self, attribute: str, value: Cell) -> str:
        return self.generalizer_for(attribute).label(attribute, value)


@dataclass(frozen=True)
class MaskedTable:
    """The protected table Y plus the (X, scheme) provenance."""

    table: Table
    scheme: GeneralizationScheme
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        expected = tuple(
            tuple(
                self.scheme.label(a, row[j])
                for j, a in enumerate(self.table.attributes)
            )
            for row in self.table.records
        )
        if rows != expected:
            raise ValueError(
                "masked rows are not the cellwise generalization of "
                "the table"
            )

    @property
    def attributes(self) -> tuple[str, ...]:
        return self.table.attributes


def mask_generalize(table: Table, scheme: GeneralizationScheme) -> MaskedTable:
    """Apply the scheme cellwise; deterministic."""
    rows = tuple(
        tuple(
            scheme.label(a, row[j]) for j, a in enumerate(table.attributes)
        )
        for row in table.records
    )
    return MaskedTable(table, scheme, rows)


def _require_attrs(table: Table, attrs: int) -> None:
    if attrs == 0:
        raise ValueError("the attribute subset must be non-empty")
    if attrs < 0 or attrs > table.full_attrs:
        raise ValueError("attribute subset out of range for the table")


def candidate_set(
    y_row: Sequence[str],
    table: Table,
    scheme: GeneralizationScheme,
    attrs: int,
) -> int:
    """Records that could have produced ``y_row`` on the given attributes.

    Returns a bitmask over record positions: record i is included when
    its generalization agrees with y_row on every attribute in
    ``attrs``.  Works for tables of any size.
    """
    _require_attrs(table, attrs)
    if len(y_row) != table.n_attributes:
        raise ValueError(
            f"masked row has {len(y_row)} cells, expected "
            f"{table.n_attributes}"
        )
    selected = [
        (j, a, scheme.generalizer_for(a))
        for j, a in enumerate(table.attributes)
        if attrs >> j & 1
    ]
    mask = 0
    for i, record in enumerate(table.records):
        if all(
            gen.label(a, record[j]) == y_row[j] for j, a, gen in selected
        ):
            mask |= 1 << i
    return mask


def candidate_indices(cs_mask: int) -> tuple[int, ...]:
    """Record positions contained in a candidate-set bitmask."""
    out = []
    i = 0
    while cs_mask:
        if cs_mask & 1:
            out.append(i)
        cs_mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class MaskingProvenance:
    """What produced a true probability: the masking and the masked row."""

    table: Table
    scheme: GeneralizationScheme
    y_row: tuple[str, ...]


def true_probability(
    y_row: Sequence[str], table: Table, scheme: GeneralizationScheme
) -> TrueProbability:
    """Uniform posterior over the full-attribute candidate set.

    With the full masked row and full knowledge of the deterministic
    generalization, every candidate record is equally likely and every
    other record is impossible.
    """
    cs = candidate_set(y_row, table, scheme, table.full_attrs)
    if cs == 0:
        raise EmptyCandidateSetError(
            f"masked row {tuple(y_row)!r} is not producible from the "
            f"table under the scheme"
        )
    members = candidate_indices(cs)
    frame = table.frame()
    p = np.zeros(table.n_records)
    p[list(members)] = 1.0 / len(members)
    dist = ProbabilityDistribution(frame, p)
    provenance = MaskingProvenance(table, scheme, tuple(y_row))
    return TrueProbability(dist, provenance)


@dataclass(frozen=True)
class AuxiliaryInfo:
    """Bag of extra evidence items, each already a mass over the records."""

    items: tuple[MassAssignment, ...] = ()

    @classmethod
    def empty(cls) -> "AuxiliaryInfo":
        return cls(())


def reidentify_belief(
    y_row: Sequence[str],
    attrs: int,
    table: Table,
    scheme: GeneralizationScheme,
    aux: Optional[AuxiliaryInfo] = None,
    rule: Optional[CombinationRule] = None,
) -> MassAssignment:
    """Belief-valued re-identification: certainty in the candidate set.

    The base evidence is the categorical mass on the restricted
    candidate set (Bel(B) = 1 exactly when the candidate set is inside
    B, ignorance within it).  Auxiliary evidence items, when present,
    are folded in with a checked combination against the true
    probability.
    """
    cs = candidate_set(y_row, table, scheme, attrs)
    if cs == 0:
        raise EmptyCandidateSetError(
            f"no record matches {tuple(y_row)!r} on attributes "
            f"{table.attrs_names(attrs)!r}"
        )
    base = MassAssignment.categorical(table.frame(), cs)
    if aux is None or not aux.items:
        return base
    p = true_probability(y_row, table, scheme)
    return combine_many(
        rule or conjunctive_rule(), [base, *aux.items], p
    )


def reidentify_prob(
    y_row: Sequence[str],
    attrs: int,
    table: Table,
    scheme: GeneralizationScheme,
    aux: Optional[AuxiliaryInfo] = None,
    rule: Optional[CombinationRule] = None,
) -> ProbabilityDistribution:
    """Probability-valued re-identification.

    The pignistic transform of reidentify_belief: with no auxiliary
    evidence this is exactly the uniform distribution over the
    restricted candidate set.
    """
    return pignistic(
        reidentify_belief(y_row, attrs, table, scheme, aux, rule)
    )


def adversarial_missing_record(
    y_row: Sequence[str],
    table: Table,
    scheme: GeneralizationScheme,
    b_mask: int,
    x0_index: int,
) -> MassAssignment:
    """Categorical mass on C0 = (B union CandidateSet) minus {x0}.

    Deliberately NOT a valid re-identification method: it rules out the
    candidate x0 with certainty the masking does not justify, so its
    belief is incompatible with the true probability, with witness C0
    itself and P(C0) = 1 - 1/|CandidateSet|.
    """
    cs = candidate_set(y_row, table, scheme, table.full_attrs)
    if not cs >> x0_index & 1:
        raise ValueError(
            f"record {x0_index} is not in the candidate set of "
            f"{tuple(y_row)!r}"
        )
    if bin(cs).count("1") < 2:
        raise ValueError(
            "the candidate set must have at least two records"
        )
    if b_mask < 0 or b_mask >> table.n_records:
        raise ValueError("record subset out of range for the table")
    c0 = (b_mask | cs) & ~(1 << x0_index)
    return MassAssignment.categorical(table.frame(), c0)


def noise_mask_n3(
    x_row: Sequence[int], alpha: int, beta: int
) -> tuple[int, int, int]:
    """Additive unit noise on one coordinate of a natural-number triple.

    y = x + alpha * e_beta; alpha is 0 or 1, beta picks the coordinate
    (1-based).  Randomness is passed in, never generated here.
    """
    x = tuple(int(v) for v in x_row)
    if len(x) != 3 or any(v < 0 for v in x):
        raise ValueError("expected a triple of naturals")
    if alpha not in (0, 1):
        raise ValueError(f"alpha must be 0 or 1, got {alpha!r}")
    if beta not in (1, 2, 3):
        raise ValueError(f"beta must be 1, 2 or 3, got {beta!r}")
    y = list(x)
    y[beta - 1] += alpha
    return tuple(y)


def noise_mask_n3_random(
    x_row: Sequence[int], rng: np.random.Generator
) -> tuple[tuple[int, int, int], int, int]:
    """Draw alpha and beta uniformly and apply noise_mask_n3.

    Returns (y, alpha, beta) so callers can log the draws.
    """
    alpha = int(rng.integers(0, 2))
    beta = int(rng.integers(1, 4))
    return noise_mask_n3(x_row, alpha, beta), alpha, beta


@dataclass(frozen=True)
class N3Scenario:
    """One observed triple y and its preimage records in the table.

    ``x0_index`` is the record equal to y (the no-noise preimage);
    ``a_indices`` are the k records equal to y plus a unit vector (the
    noisy preimages).  The two posterior readings disagree: the noisy-
    case posterior is uniform 1/k on A with x0 excluded, while the full
    masking posterior puts 1/2 on x0 and 1/(2k) on each record of A.
    The belief-valued model is tested against the former, its own
    stated ground truth.
    """

    y_row: tuple[int, int, int]
    x0_index: int
    a_indices: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.a_indices)


def n3_scenario(y_row: Sequence[int], table: Table) -> N3Scenario:
    """Locate y's preimage records; error when they are missing."""
    y = tuple(int(v) for v in y_row)
    if len(y) != 3:
        raise ValueError("expected a triple")
    if table.n_attributes != 3:
        raise ValueError("expected a table of triples")
    records = [tuple(int(v) for v in row) for row in table.records]
    exact = [i for i, row in enumerate(records) if row == y]
    if not exact:
        raise MissingPreimageError(
            f"the table has no record equal to {y!r}"
        )
    if len(exact) > 1:
        raise MissingPreimageError(
            f"records {exact!r} are all equal to {y!r}; the scenario "
            f"needs a single exact preimage"
        )
    bumped = {
        tuple(noise_mask_n3(y, 1, beta)): beta for beta in (1, 2, 3)
    }
    a_indices = tuple(
        i for i, row in enumerate(records) if row in bumped
    )
    if not a_indices:
        raise MissingPreimageError(
            f"the table has no record equal to {y!r} plus a unit vector"
        )
    return N3Scenario(y, exact[0], a_indices)


def n3_reident_belief(y_row: Sequence[int], table: Table) -> MassAssignment:
    """The two-element-focal belief of the unit-noise model.

    m({x0, x}) = 1/k for each of the k noisy preimages x.  Its
    pignistic puts 1/2 on x0 and 1/(2k) on each x, so the best single
    guess is x0 even though the noisy-case posterior excludes it.
    """
    scenario = n3_scenario(y_row, table)
    frame = table.frame()
    values = np.zeros(1 << frame.size)
    share = 1.0 / scenario.k
    for i in scenario.a_indices:
        values[(1 << scenario.x0_index) | (1 << i)] += share
    return MassAssignment(frame, values)


def n3_proposition_probability(
    y_row: Sequence[int], table: Table
) -> TrueProbability:
    """Uniform 1/k over the noisy preimages A, zero on x0.

    The ground truth of the outside-the-candidate-set construction:
    the original record is one of A, never x0.
    """
    scenario = n3_scenario(y_row, table)
    p = np.zeros(table.n_records)
    p[list(scenario.a_indices)] = 1.0 / scenario.k
    return TrueProbability(
        ProbabilityDistribution(table.frame(), p), scenario
    )


def n3_masking_posterior(
    y_row: Sequence[int], table: Table
) -> ProbabilityDistribution:
    """Posterior of the full unit-noise masking: 1/2 on x0, 1/(2k) on A."""
    scenario = n3_scenario(y_row, table)
    p = np.zeros(table.n_records)
    p[scenario.x0_index] = 0.5
    p[list(scenario.a_indices)] = 0.5 / scenario.k
    return ProbabilityDistribution(table.frame(), p)
