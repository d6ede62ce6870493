"""Mass assignments, belief functions, and the pignistic transformation.

A mass assignment (basic probability assignment) puts nonnegative weight
on subsets of a frame, no weight on the empty set, total weight one.  Its
zeta transform is the induced belief function; the Moebius transform goes
back.  The pignistic transformation spreads each focal mass uniformly
over the elements of its focal set, yielding a probability distribution
used for decisions and for entropy readings.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Iterator, Mapping, Optional

import numpy as np

from .frames import (
    TOL_SUM,
    Frame,
    mobius_transform,
    require_dense,
    subset_sizes,
    zeta_transform,
)

_MAX_PROBLEMS = 5


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of an invariant audit.

    ``problems`` is empty exactly when the subject passed every check;
    otherwise each entry describes one violation, at most a handful kept.
    """

    subject: str
    problems: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.problems

    def describe(self) -> str:
        if self.valid:
            return f"{self.subject}: ok"
        lines = "; ".join(self.problems)
        return f"{self.subject}: {lines}"

    def raise_if_invalid(self) -> None:
        if not self.valid:
            raise ValidationError(self)


class ValidationError(ValueError):
    """An object failed its invariant audit; carries the report."""

    def __init__(self, report: ValidationReport) -> None:
        super().__init__(report.describe())
        self.report = report


def _as_lattice_array(frame: Frame, values) -> np.ndarray:
    require_dense(frame.size)
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (1 << frame.size,):
        raise ValueError(
            f"expected {1 << frame.size} lattice values for a frame of "
            f"size {frame.size}, got shape {arr.shape}"
        )
    return arr


def _name(frame: Frame, mask: int) -> str:
    return "{" + ", ".join(frame.members(mask)) + "}"


def validate_mass(frame: Frame, values) -> ValidationReport:
    """Audit raw lattice values as a mass assignment.

    Checks: finite entries, no weight on the empty set, nonnegativity,
    and total weight one, all within TOL_SUM.
    """
    arr = _as_lattice_array(frame, values)
    problems: list[str] = []
    if not np.all(np.isfinite(arr)):
        problems.append("values contain non-finite entries")
    else:
        if abs(arr[0]) > TOL_SUM:
            problems.append(f"mass on the empty set is {float(arr[0])!r}")
        negative = np.flatnonzero(arr < -TOL_SUM)
        for mask in negative[:_MAX_PROBLEMS]:
            problems.append(
                f"negative mass {float(arr[mask])!r} on {_name(frame, int(mask))}"
            )
        if negative.size > _MAX_PROBLEMS:
            problems.append(f"... {negative.size - _MAX_PROBLEMS} more")
        total = float(arr.sum())
        if abs(total - 1.0) > TOL_SUM:
            problems.append(f"total mass is {total!r}, expected 1")
    return ValidationReport("mass assignment", tuple(problems))


def validate_belief(
    frame: Frame, values, superadditivity_order: int = 1
) -> ValidationReport:
    """Audit raw lattice values as a belief function.

    Always checks the boundary values (0 on the empty set, 1 on the
    frame) and monotonicity under inclusion along lattice edges.  With
    ``superadditivity_order`` 2 or 3 it additionally cross-checks the
    inclusion-exclusion lower bounds on pairs (and triples) of subsets;
    those bounds follow from total monotonicity, so this is an
    independent audit, not the defining criterion.  The constructor of
    BeliefFunction applies the full criterion instead (the Moebius
    transform must be a valid mass).
    """
    arr = _as_lattice_array(frame, values)
    problems: list[str] = []
    if not np.all(np.isfinite(arr)):
        problems.append("values contain non-finite entries")
        return ValidationReport("belief function", tuple(problems))
    if abs(arr[0]) > TOL_SUM:
        problems.append(f"belief of the empty set is {float(arr[0])!r}")
    if abs(arr[-1] - 1.0) > TOL_SUM:
        problems.append(
            f"belief of the full frame is {float(arr[-1])!r}"
        )
    for i in range(frame.size):
        bit = 1 << i
        block = arr.reshape(-1, 2 * bit)
        drop = block[:, :bit] - block[:, bit:]
        if np.any(drop > TOL_SUM):
            problems.append(
                f"belief decreases when adding element "
                f"{frame.labels[i]!r} to some subset"
            )
    if superadditivity_order >= 2:
        if frame.size > 10:
            raise ValueError(
                "inclusion-exclusion cross-checks need a frame of "
                "size <= 10"
            )
        masks = np.arange(1 << frame.size)
        a, b = masks[:, None], masks[None, :]
        gap = arr[a | b] + arr[a & b] - arr[a] - arr[b]
        if np.any(gap < -TOL_SUM):
            problems.append(
                "a pair of subsets violates the order-2 "
                "inclusion-exclusion lower bound"
            )
    if superadditivity_order >= 3:
        if frame.size > 7:
            raise ValueError(
                "order-3 inclusion-exclusion cross-checks need a frame "
                "of size <= 7"
            )
        masks = np.arange(1 << frame.size)
        a = masks[:, None, None]
        b = masks[None, :, None]
        c = masks[None, None, :]
        bound = (
            arr[a] + arr[b] + arr[c]
            - arr[a & b] - arr[a & c] - arr[b & c]
            + arr[a & b & c]
        )
        if np.any(arr[a | b | c] - bound < -TOL_SUM):
            problems.append(
                "a triple of subsets violates the order-3 "
                "inclusion-exclusion lower bound"
            )
    if superadditivity_order > 3:
        raise ValueError("superadditivity_order beyond 3 is not supported")
    return ValidationReport("belief function", tuple(problems))


@dataclass(frozen=True)
class MassAssignment:
    """Basic probability assignment over a frame's subset lattice.

    ``values[mask]`` is the weight on the subset encoded by ``mask``.
    Instances are immutable and validated on construction.
    """

    frame: Frame
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = _as_lattice_array(self.frame, self.values).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        validate_mass(self.frame, arr).raise_if_invalid()

    @classmethod
    def vacuous(cls, frame: Frame) -> "MassAssignment":
        """Total ignorance: all weight on the full frame."""
        require_dense(frame.size)
        values = np.zeros(1 << frame.size)
        values[frame.full_mask] = 1.0
        return cls(frame, values)

    @classmethod
    def categorical(cls, frame: Frame, mask: int) -> "MassAssignment":
        """All weight on one nonempty subset."""
        require_dense(frame.size)
        values = np.zeros(1 << frame.size)
        values[mask] = 1.0
        return cls(frame, values)

    @classmethod
    def from_dict(
        cls, frame: Frame, assignments: Mapping[tuple[str, ...], float]
    ) -> "MassAssignment":
        """Build from a mapping of label tuples to weights."""
        require_dense(frame.size)
        values = np.zeros(1 << frame.size)
        for labels, value in assignments.items():
            values[frame.mask_of(labels)] += value
        return cls(frame, values)

    @classmethod
    def from_probability(cls, dist: "ProbabilityDistribution") -> "MassAssignment":
        """Carry a probability distribution on the singletons."""
        require_dense(dist.frame.size)
        values = np.zeros(1 << dist.frame.size)
        for i, weight in enumerate(dist.p):
            values[1 << i] = weight
        return cls(dist.frame, values)

    def __getitem__(self, mask: int) -> float:
        return float(self.values[mask])

    def focal(self) -> Iterator[tuple[int, float]]:
        """Yield (mask, weight) for every subset with positive weight."""
        for mask in np.flatnonzero(self.values > 0.0):
            yield int(mask), float(self.values[mask])

    def focal_masks(self) -> tuple[int, ...]:
        return tuple(int(m) for m in np.flatnonzero(self.values > 0.0))


@dataclass(frozen=True)
class BeliefFunction:
    """Totally monotone set function induced by some mass assignment.

    ``values[mask]`` is Bel of the subset encoded by ``mask``.  The
    constructor verifies the boundary values and that the Moebius
    transform is a valid mass; pass ``check=False`` only when the values
    are already known to come from a valid mass.
    """

    frame: Frame
    values: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        arr = _as_lattice_array(self.frame, self.values).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        if check:
            problems: list[str] = []
            if abs(arr[0]) > TOL_SUM:
                problems.append(
                    f"belief of the empty set is {float(arr[0])!r}"
                )
            if abs(arr[-1] - 1.0) > TOL_SUM:
                problems.append(
                    f"belief of the full frame is {float(arr[-1])!r}"
                )
            if not problems:
                inner = validate_mass(self.frame, mobius_transform(arr))
                if not inner.valid:
                    problems.append(
                        "not totally monotone; its Moebius transform is "
                        "not a mass (" + "; ".join(inner.problems) + ")"
                    )
            ValidationReport("belief function", tuple(problems)).raise_if_invalid()

    def __getitem__(self, mask: int) -> float:
        return float(self.values[mask])


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Probability distribution over the elements of a frame.

    ``p[i]`` belongs to element ``i``; entries are nonnegative and sum
    to one within TOL_SUM.  No subset lattice is allocated, so frames of
    any size are accepted.
    """

    frame: Frame
    p: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.p, dtype=np.float64)
        if arr.shape != (self.frame.size,):
            raise ValueError(
                f"expected {self.frame.size} probabilities, "
                f"got shape {arr.shape}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "p", arr)
        problems: list[str] = []
        if not np.all(np.isfinite(arr)):
            problems.append("values contain non-finite entries")
        else:
            if np.any(arr < -TOL_SUM):
                worst = int(np.argmin(arr))
                problems.append(
                    f"negative probability {float(arr[worst])!r} on "
                    f"{self.frame.labels[worst]!r}"
                )
            total = float(arr.sum())
            if abs(total - 1.0) > TOL_SUM:
                problems.append(f"total probability is {total!r}, expected 1")
        ValidationReport("probability distribution", tuple(problems)).raise_if_invalid()

    @classmethod
    def uniform(cls, frame: Frame) -> "ProbabilityDistribution":
        return cls(frame, np.full(frame.size, 1.0 / frame.size))

    @classmethod
    def uniform_on(cls, frame: Frame, labels) -> "ProbabilityDistribution":
        """Uniform over the given labels, zero elsewhere."""
        members = list(labels)
        if not members:
            raise ValueError("need at least one label")
        p = np.zeros(frame.size)
        for label in members:
            p[frame.index_of(label)] = 1.0 / len(members)
        return cls(frame, p)

    def __getitem__(self, index: int) -> float:
        return float(self.p[index])

    def p_of(self, label: str) -> float:
        return float(self.p[self.frame.index_of(label)])

    def of_subset(self, mask: int) -> float:
        """Probability of the subset encoded by ``mask``."""
        total = 0.0
        index = 0
        while mask:
            if mask & 1:
                total += float(self.p[index])
            mask >>= 1
            index += 1
        return total


def belief_from_mass(mass: MassAssignment) -> BeliefFunction:
    """Bel(A) = sum of mass over subsets of A (zeta transform)."""
    return BeliefFunction(mass.frame, zeta_transform(mass.values), check=False)


def mass_from_belief(belief: BeliefFunction) -> MassAssignment:
    """Recover the mass as the Moebius transform of the belief values.

    Raises ValidationError naming an offending subset when the input is
    not totally monotone (some Moebius coefficient is negative beyond
    tolerance).
    """
    return MassAssignment(belief.frame, mobius_transform(belief.values))


def pignistic(mass: MassAssignment) -> ProbabilityDistribution:
    """Spread each focal weight uniformly over its focal set.

    P(x) = sum over focal sets A containing x of m(A) / |A|.
    """
    sizes = subset_sizes(mass.frame.size)
    shares = np.divide(
        mass.values,
        sizes,
        out=np.zeros_like(mass.values),
        where=sizes > 0,
    )
    p = np.empty(mass.frame.size)
    for i in range(mass.frame.size):
        bit = 1 << i
        p[i] = shares.reshape(-1, 2 * bit)[:, bit:].sum()
    return ProbabilityDistribution(mass.frame, p)


def pignistic_matrix(frame: Frame, rows: np.ndarray) -> np.ndarray:
    """Pignistic distributions of many raw mass rows at once.

    ``rows`` has one lattice-indexed mass per row; the result has one
    probability vector per row.  Rows are trusted, not validated.
    """
    sizes = subset_sizes(frame.size)
    shares = np.divide(
        rows, sizes, out=np.zeros_like(rows, dtype=np.float64),
        where=sizes > 0,
    )
    p = np.empty((rows.shape[0], frame.size))
    for i in range(frame.size):
        bit = 1 << i
        block = shares.reshape(shares.shape[0], -1, 2 * bit)
        p[:, i] = block[:, :, bit:].sum(axis=(1, 2))
    return p


def as_probability(mass: MassAssignment) -> Optional[ProbabilityDistribution]:
    """The distribution carried on singletons, or None.

    Returns the singleton masses as a distribution when every
    non-singleton subset carries mass below TOL_SUM; a None result
    signals the mass is not itself a probability.
    """
    sizes = subset_sizes(mass.frame.size)
    if np.any(mass.values[sizes != 1] >= TOL_SUM):
        return None
    singletons = 1 << np.arange(mass.frame.size)
    return ProbabilityDistribution(mass.frame, mass.values[singletons])
