"""Uncertainty measures on mass assignments and the mass-transfer step.

Two measures with deliberately different logarithm conventions:

* pignistic entropy: Shannon entropy of the pignistic distribution, in
  NATS (natural logarithm, leading minus).  A conflict measure; not
  monotone under evidence refinement.
* nonspecificity: N(m) = sum over focal sets of m(A) * log2 |A|, in
  BITS (Hartley convention).  Zero exactly for singleton-carried
  masses, log2 |X| for the vacuous mass.

Moving mass from a set to one of its proper subsets (transfer_mass)
never increases nonspecificity; the entropy may move either way.
"""

from __future__ import annotations

import numpy as np

from .belief import MassAssignment, ProbabilityDistribution, pignistic
from .frames import TOL_SUM, subset_sizes


def shannon_entropy(dist: ProbabilityDistribution) -> float:
    """Entropy in nats, with the 0 * ln 0 := 0 convention."""
    positive = dist.p[dist.p > 0]
    return float(-(positive * np.log(positive)).sum())


def pignistic_entropy(mass: MassAssignment) -> float:
    """Entropy (nats) of the pignistic distribution of ``mass``."""
    return shannon_entropy(pignistic(mass))


def nonspecificity(mass: MassAssignment) -> float:
    """N(m) = sum of m(A) * log2 |A| over focal sets, in bits."""
    sizes = subset_sizes(mass.frame.size)
    # Mass on the empty set is at most tolerance dust; keep it out of
    # the logarithm.
    focal = (mass.values > 0) & (sizes > 0)
    return float((mass.values[focal] * np.log2(sizes[focal])).sum())


def transfer_mass(
    mass: MassAssignment, c1: int, c2: int, delta: float
) -> MassAssignment:
    """Move ``delta`` of mass from ``c2`` onto its proper subset ``c1``.

    Models the arrival of more specific evidence: m'(c1) = m(c1) + delta
    and m'(c2) = m(c2) - delta, everything else untouched.  The
    nonspecificity of the result is m's plus delta * (log2|c1| -
    log2|c2|), which is never an increase.
    """
    full = mass.frame.full_mask
    if not 0 <= c1 <= full or not 0 <= c2 <= full:
        raise ValueError("subset mask out of range for the frame")
    if c1 == 0:
        raise ValueError("cannot transfer mass onto the empty set")
    if c1 & ~c2:
        raise ValueError("transfer target must be a subset of the source")
    if c1 == c2:
        raise ValueError("transfer target must be a proper subset")
    if delta < 0 or delta > mass[c2] + TOL_SUM:
        raise ValueError(
            f"delta must lie in [0, m(source)]; got {delta!r} with "
            f"m(source) = {mass[c2]!r}"
        )
    values = mass.values.copy()
    values[c2] -= delta
    values[c1] += delta
    return MassAssignment(mass.frame, values)


def majorizes(p: ProbabilityDistribution, q: ProbabilityDistribution) -> bool:
    """Whether ``p`` majorizes ``q``: sorted-descending prefix sums of
    ``p`` dominate those of ``q`` (within TOL_SUM).

    Entropy is Schur-concave, so ``majorizes(p, q)`` implies
    ``shannon_entropy(p) <= shannon_entropy(q)``.
    """
    a = np.cumsum(np.sort(p.p)[::-1])
    b = np.cumsum(np.sort(q.p)[::-1])
    if a.shape != b.shape:
        raise ValueError("distributions must have the same length")
    return bool(np.all(a >= b - TOL_SUM))
