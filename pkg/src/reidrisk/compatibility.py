"""Compatibility of beliefs and pignistic probabilities with a ground truth.

A belief function Bel is compatible with a probability P when P(A) >=
Bel(A) for every subset A: the evidence never claims more support for a
set of records than the masking process actually leaves possible.  A
probability P' is a compatible probability for P when P' is the
pignistic transform of some Bel compatible with P; with a candidate
witness this is a direct check, without one it is a small linear
feasibility problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import linprog

from .belief import (
    BeliefFunction,
    MassAssignment,
    ProbabilityDistribution,
    belief_from_mass,
    pignistic,
    validate_mass,
)
from .frames import (
    TOL_SUM,
    Frame,
    require_same_frame,
    subset_sizes,
    zeta_transform,
    zeta_transform_rows,
)

# Two pignistic vectors are considered equal within this tolerance.
PIG_TOL = 1e-6

# The witness-free feasibility search materialises one LP row per subset.
MAX_SEARCH_FRAME = 10

# Internal repair threshold, well under TOL_SUM so repaired samples pass
# the public compatibility check with margin.
_REPAIR_EPS = 1e-12


@dataclass(frozen=True)
class TrueProbability:
    """Ground-truth posterior that a protected record came from each record.

    Wraps the distribution together with a reference to whatever
    produced it (the masking provenance); synthetic test distributions
    may carry None.
    """

    dist: ProbabilityDistribution
    provenance: object = None

    @property
    def frame(self) -> Frame:
        return self.dist.frame

    @property
    def p(self) -> np.ndarray:
        return self.dist.p


def _distribution(
    p: Union[TrueProbability, ProbabilityDistribution]
) -> ProbabilityDistribution:
    return p.dist if isinstance(p, TrueProbability) else p


def probability_lattice(dist: ProbabilityDistribution) -> np.ndarray:
    """P(A) for every subset A, as a dense lattice array."""
    values = np.zeros(1 << dist.frame.size)
    for i, weight in enumerate(dist.p):
        values[1 << i] = weight
    return zeta_transform(values)


@dataclass(frozen=True)
class CompatibilityResult:
    """Verdict of is_compatible, with the first violation if any.

    ``witness`` is the smallest-bitmask subset A with P(A) < Bel(A);
    adding elements to a violating subset only grows the mask, so this
    is the inclusion-minimal counterexample the lemma constructions
    predict.
    """

    compatible: bool
    witness: Optional[int] = None
    probability_value: Optional[float] = None
    belief_value: Optional[float] = None

    def __bool__(self) -> bool:
        return self.compatible


def is_compatible(
    bel: BeliefFunction, p: Union[TrueProbability, ProbabilityDistribution]
) -> CompatibilityResult:
    """Check P(A) >= Bel(A) - TOL_SUM for every subset A."""
    dist = _distribution(p)
    require_same_frame(bel.frame, dist.frame)
    plat = probability_lattice(dist)
    violations = np.flatnonzero(bel.values - plat > TOL_SUM)
    if violations.size == 0:
        return CompatibilityResult(True)
    witness = int(violations[0])
    return CompatibilityResult(
        False,
        witness=witness,
        probability_value=float(plat[witness]),
        belief_value=float(bel.values[witness]),
    )


def support(p: Union[TrueProbability, ProbabilityDistribution]) -> int:
    """Bitmask of elements with probability above TOL_SUM."""
    dist = _distribution(p)
    mask = 0
    for i, weight in enumerate(dist.p):
        if weight > TOL_SUM:
            mask |= 1 << i
    return mask


def is_dirac(
    p: Union[TrueProbability, ProbabilityDistribution]
) -> Optional[int]:
    """Index of the element carrying probability >= 1 - TOL_SUM, or None."""
    dist = _distribution(p)
    top = int(np.argmax(dist.p))
    if dist.p[top] >= 1.0 - TOL_SUM:
        return top
    return None


@dataclass(frozen=True)
class CompatibleProbabilityResult:
    """Verdict on whether p' is the pignistic of some Bel compatible with P.

    With method "witness" a negative verdict only refutes the supplied
    witness; with method "search" it certifies that no witness exists.
    ``failed_condition`` names the first failed check in witness mode:
    "witness-invalid", "compatibility", or "pignistic-mismatch".
    """

    holds: bool
    witness: Optional[MassAssignment]
    method: str
    failed_condition: Optional[str] = None

    def __bool__(self) -> bool:
        return self.holds


def is_compatible_probability(
    p_prime: ProbabilityDistribution,
    p: Union[TrueProbability, ProbabilityDistribution],
    witness: Optional[MassAssignment] = None,
) -> CompatibleProbabilityResult:
    """Decide whether p' is a compatible probability for P.

    With a witness mass: verify the witness is a valid mass, its belief
    is compatible with P, and its pignistic equals p' within PIG_TOL.
    Without one: solve the linear feasibility problem over all masses
    {m(A): A nonempty} with the compatibility inequalities and the
    pignistic equalities; frames of size <= MAX_SEARCH_FRAME only.
    """
    dist = _distribution(p)
    require_same_frame(p_prime.frame, dist.frame)
    if witness is not None:
        require_same_frame(witness.frame, dist.frame)
        if not validate_mass(witness.frame, witness.values).valid:
            return CompatibleProbabilityResult(
                False, None, "witness", "witness-invalid"
            )
        if not is_compatible(belief_from_mass(witness), dist):
            return CompatibleProbabilityResult(
                False, None, "witness", "compatibility"
            )
        if np.max(np.abs(pignistic(witness).p - p_prime.p)) > PIG_TOL:
            return CompatibleProbabilityResult(
                False, None, "witness", "pignistic-mismatch"
            )
        return CompatibleProbabilityResult(True, witness, "witness")
    return _feasibility_search(p_prime, dist)


def _feasibility_search(
    p_prime: ProbabilityDistribution, dist: ProbabilityDistribution
) -> CompatibleProbabilityResult:
    size = dist.frame.size
    if size > MAX_SEARCH_FRAME:
        raise ValueError(
            f"witness-free search needs a frame of size <= "
            f"{MAX_SEARCH_FRAME}, got {size}"
        )
    full = (1 << size) - 1
    masks = np.arange(1, full + 1)
    plat = probability_lattice(dist)
    # One variable per nonempty subset.  Inequalities Bel(A) <= P(A) for
    # proper nonempty A (both boundary rows are vacuous); equalities fix
    # total mass and the pignistic value of every element.
    subset_of = (masks[:, None] & masks[None, :]) == masks[None, :]
    a_ub = subset_of[:-1].astype(np.float64) if full > 1 else None
    b_ub = plat[1:full] if full > 1 else None
    sizes = subset_sizes(size)[1:].astype(np.float64)
    pig_rows = np.where((masks[None, :] >> np.arange(size)[:, None]) & 1, 1.0 / sizes, 0.0)
    a_eq = np.vstack([np.ones((1, masks.size)), pig_rows])
    b_eq = np.concatenate([[1.0], p_prime.p])
    result = linprog(
        np.zeros(masks.size),
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=(0, None),
        method="highs",
        options={"primal_feasibility_tolerance": 1e-10},
    )
    if result.status == 2:
        return CompatibleProbabilityResult(False, None, "search")
    if result.status != 0:
        raise RuntimeError(
            f"feasibility solver failed with status {result.status}: "
            f"{result.message}"
        )
    values = np.zeros(1 << size)
    values[1:] = np.maximum(result.x, 0.0)
    witness = MassAssignment(dist.frame, values)
    verdict = is_compatible_probability(p_prime, dist, witness=witness)
    if not verdict.holds:
        raise RuntimeError(
            "feasibility solver returned a witness that fails "
            f"verification ({verdict.failed_condition})"
        )
    return CompatibleProbabilityResult(True, witness, "search")


def random_mass(
    frame: Frame,
    rng: np.random.Generator,
    max_focal: Optional[int] = None,
) -> MassAssignment:
    """A random valid mass with a random small set of focal subsets."""
    cells = 1 << frame.size
    cap = cells - 1 if max_focal is None else min(max_focal, cells - 1)
    count = int(rng.integers(1, cap + 1))
    focal = rng.choice(np.arange(1, cells), size=count, replace=False)
    weights = rng.dirichlet(np.ones(count))
    values = np.zeros(cells)
    values[focal] = weights
    return MassAssignment(frame, values)


def sample_compatible_mass(
    p: Union[TrueProbability, ProbabilityDistribution],
    rng: np.random.Generator,
    max_focal: Optional[int] = None,
) -> MassAssignment:
    """Draw a random mass whose belief is compatible with ``p``.

    Starts from a random valid mass and repairs it: while some subset A
    claims more belief than P allows, rescale all mass inside A by
    P(A)/Bel(A) and move the excess to the full frame (toward the
    vacuous mass).  Each repair step only lowers beliefs of proper
    subsets, so no new violation appears and the loop terminates.  The
    sampler reaches only part of the compatible polytope; it is meant
    for property tests, not uniform sampling.
    """
    dist = _distribution(p)
    frame = dist.frame
    plat = probability_lattice(dist)
    values = random_mass(frame, rng, max_focal).values.copy()
    cells = values.size
    full = frame.full_mask
    lattice = np.arange(cells)
    for _ in range(2 * cells + 16):
        excess = zeta_transform(values) - plat
        worst = int(np.argmax(excess))
        if excess[worst] <= _REPAIR_EPS:
            return MassAssignment(frame, values)
        scale = plat[worst] / (excess[worst] + plat[worst])
        inside = (lattice & ~worst) == 0
        moved = values[inside].sum() * (1.0 - scale)
        values[inside] *= scale
        values[full] += moved
    raise RuntimeError("compatible-mass repair did not converge")


def sample_compatible_lattices(
    p: Union[TrueProbability, ProbabilityDistribution],
    rng: np.random.Generator,
    count: int,
) -> np.ndarray:
    """Many compatible masses at once, as raw lattice rows.

    One-step variant of sample_compatible_mass: every row is scaled by a
    single factor t = min over subsets of P(A)/Bel(A) (capped at 1) and
    the rest of the weight moves to the full frame.  Coarser coverage
    than the iterative sampler, but vectorises to large batches for
    randomized witness searches.
    """
    dist = _distribution(p)
    size = dist.frame.size
    cells = 1 << size
    full = cells - 1
    plat = probability_lattice(dist)
    draws = rng.random((count, cells))
    keep_rate = rng.uniform(1.5 / cells, 10.0 / cells, size=(count, 1))
    raw = np.where(rng.random((count, cells)) < keep_rate, draws, 0.0)
    raw[:, 0] = 0.0
    empty = raw.sum(axis=1) <= 0.0
    raw[empty, full] = 1.0
    raw /= raw.sum(axis=1, keepdims=True)
    bel = zeta_transform_rows(raw)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(bel > plat[None, :], plat[None, :] / bel, 1.0)
    t = ratio.min(axis=1)[:, None]
    out = raw * t
    out[:, full] += 1.0 - t[:, 0]
    return out
