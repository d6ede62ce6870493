"""Acceptable combination of belief-valued evidence.

A combination rule is acceptable for a ground truth P when its output
is still compatible with P and its nonspecificity does not exceed that
of either input: pooling evidence may only sharpen, never invent or
blur.  combine_checked enforces both clauses at run time rather than
trusting the rule; combine_many left-folds a whole evidence stream and
annotates any failure with the fold step.

The default rule is the unnormalized conjunctive rule.  Conflict (mass
landing on the empty set) is an error here, never silently renormalized
away, because renormalization can break compatibility with P; an
explicit dempster_rule is provided for experimentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from .belief import MassAssignment, ProbabilityDistribution, belief_from_mass
from .compatibility import TrueProbability, is_compatible
from .frames import TOL_SUM, require_same_frame
from .measures import nonspecificity


class CombinationError(Exception):
    """Base failure of a checked combination.

    ``step`` is the 1-based fold step at which the failure happened, or
    None for a plain binary combination.
    """

    def __init__(self, message: str, step: Optional[int] = None) -> None:
        super().__init__(message)
        self.step = step

    def at_step(self, step: int) -> "CombinationError":
        # copy.copy would rebuild via __class__(*args) and lose any
        # extra constructor arguments of subclasses.
        exc = self.__class__.__new__(self.__class__)
        exc.args = self.args
        exc.__dict__.update(self.__dict__)
        exc.step = step
        return exc


class IncompatibleEvidenceError(CombinationError):
    """An input mass is not compatible with the true probability."""


class ConflictError(CombinationError):
    """The rule put mass on the empty set (contradictory evidence)."""


class AcceptabilityError(CombinationError):
    """The rule's output violated an acceptability clause.

    ``clause`` is "compatibility" or "nonspecificity".
    """

    def __init__(
        self, message: str, clause: str, step: Optional[int] = None
    ) -> None:
        super().__init__(message, step=step)
        self.clause = clause


@dataclass(frozen=True)
class CombinationRule:
    """A named binary rule on raw lattice arrays.

    ``apply_raw`` maps two mass-value arrays to the raw combined array,
    which may carry mass on the empty set; combine_checked turns that
    into a ConflictError and validates everything else.
    """

    name: str
    apply_raw: Callable[[np.ndarray, np.ndarray], np.ndarray]


def _conjunction(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v1)
    focal1 = np.flatnonzero(v1)
    focal2 = np.flatnonzero(v2)
    for a in focal1:
        np.add.at(out, a & focal2, v1[a] * v2[focal2])
    return out


def conjunctive_rule() -> CombinationRule:
    """Unnormalized conjunctive rule: m(C) = sum over A.B=C of m1(A).m2(B)."""
    return CombinationRule("conjunctive", _conjunction)


def dempster_rule() -> CombinationRule:
    """Conjunctive rule with conflict renormalized away.

    Kept behind an explicit name because renormalization can break
    compatibility with the true probability; combine_checked will then
    reject the result.
    """

    def apply(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
        raw = _conjunction(v1, v2)
        conflict = raw[0]
        if conflict >= 1.0 - TOL_SUM:
            return raw  # total conflict; surfaces as ConflictError
        raw[0] = 0.0
        return raw / (1.0 - conflict)

    return CombinationRule("dempster", apply)


RULES = {
    "conjunctive": conjunctive_rule,
    "dempster": dempster_rule,
}


def combine_checked(
    rule: CombinationRule,
    m1: MassAssignment,
    m2: MassAssignment,
    p: Union[TrueProbability, ProbabilityDistribution],
) -> MassAssignment:
    """Combine two masses and enforce acceptability against ``p``.

    Both inputs must already be compatible with p.  The output must be
    a valid mass, compatible with p, with nonspecificity at most
    min(N(m1), N(m2)) + TOL_SUM; any breach raises a typed error naming
    the failing clause.  Conflict is diagnosed before the input
    compatibility check: contradictory evidence reports as conflict
    even when one side alone already oversteps p.
    """
    require_same_frame(m1.frame, m2.frame)
    raw = rule.apply_raw(m1.values, m2.values)
    if raw[0] > TOL_SUM:
        raise ConflictError(
            f"rule {rule.name!r} put mass {float(raw[0])!r} on the "
            f"empty set"
        )
    raw[0] = 0.0
    for label, m in (("first", m1), ("second", m2)):
        verdict = is_compatible(belief_from_mass(m), p)
        if not verdict:
            raise IncompatibleEvidenceError(
                f"{label} input is not compatible with the true "
                f"probability: subset {m.frame.members(verdict.witness)} "
                f"has Bel={verdict.belief_value:.9f} > "
                f"P={verdict.probability_value:.9f}"
            )
    combined = MassAssignment(m1.frame, raw)
    verdict = is_compatible(belief_from_mass(combined), p)
    if not verdict:
        raise AcceptabilityError(
            f"rule {rule.name!r} output is not compatible with the true "
            f"probability at subset {m1.frame.members(verdict.witness)}",
            clause="compatibility",
        )
    bound = min(nonspecificity(m1), nonspecificity(m2))
    achieved = nonspecificity(combined)
    if achieved > bound + TOL_SUM:
        raise AcceptabilityError(
            f"rule {rule.name!r} output has nonspecificity {achieved!r} "
            f"above the input minimum {bound!r}",
            clause="nonspecificity",
        )
    return combined


def fold_combine(
    rule: CombinationRule,
    masses: Sequence[MassAssignment],
    p: Union[TrueProbability, ProbabilityDistribution],
) -> Iterator[MassAssignment]:
    """Left fold of combine_checked over an evidence stream.

    Yields every intermediate result (one per fold step).  Errors are
    re-raised with the 1-based step index attached.
    """
    if len(masses) < 2:
        raise ValueError("need at least two masses to combine")
    acc = masses[0]
    for step, m in enumerate(masses[1:], start=1):
        try:
            acc = combine_checked(rule, acc, m, p)
        except CombinationError as exc:
            raise exc.at_step(step) from exc
        yield acc


def combine_many(
    rule: CombinationRule,
    masses: Sequence[MassAssignment],
    p: Union[TrueProbability, ProbabilityDistribution],
) -> MassAssignment:
    """Final result of the left fold over the evidence stream."""
    result = None
    for result in fold_combine(rule, masses, p):
        pass
    assert result is not None
    return result
