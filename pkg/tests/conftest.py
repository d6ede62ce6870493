"""Shared fixtures and independent oracle implementations.

The oracles deliberately avoid the package's fast code paths: naive
double loops over subset pairs and explicit per-element sums.  Golden
decimal constants come from the worked entropy/transfer examples and
are stated to 8 significant digits, so they are compared at 1e-6; the
masses behind them are built from the exact rationals 5/13, 8/13 and
5/6, 1/6.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from reidrisk import (
    Frame,
    GeneralizationScheme,
    IntervalGeneralizer,
    MassAssignment,
    Table,
)
from reidrisk.measures import transfer_mass

# Worked example 1: eight elements, masses 5/13 on the first five and
# 8/13 on the whole frame; transfer moves 4/13 onto the first two.
EX1_P_HIGH = 0.15384614
EX1_P_LOW = 0.07692307
EX1_ENTROPY = 2.0317593
EX1_ENTROPY_AFTER = 1.8300099
EX1_MASS_A5 = 0.38461535
EX1_MASS_X = 0.61538456
EX1_TRANSFER_C1 = 0.30769235
EX1_TRANSFER_X = 0.30769224

# Worked example 2: ten elements, masses 5/6 on the whole frame and 1/6
# on the first two; transfer moves the whole 5/6 onto the last eight.
EX2_P_HIGH = 0.16666664
EX2_P_LOW = 0.08333332
EX2_ENTROPY = 2.2538579
EX2_P_HIGH_AFTER = 0.10416665
EX2_P_LOW_AFTER = 0.08333332
EX2_ENTROPY_AFTER = 2.2989538


def example1_mass() -> MassAssignment:
    frame = Frame.of_size(8)
    return MassAssignment.from_dict(
        frame,
        {
            frame.labels[:5]: Fraction(5, 13),
            frame.labels: Fraction(8, 13),
        },
    )


def example1_transferred() -> MassAssignment:
    mass = example1_mass()
    frame = mass.frame
    return transfer_mass(
        mass, frame.mask_of(frame.labels[:2]), frame.full_mask,
        float(Fraction(4, 13)),
    )


def example2_mass() -> MassAssignment:
    frame = Frame.of_size(10)
    return MassAssignment.from_dict(
        frame,
        {
            frame.labels: Fraction(5, 6),
            frame.labels[:2]: Fraction(1, 6),
        },
    )


def example2_transferred() -> MassAssignment:
    mass = example2_mass()
    frame = mass.frame
    return transfer_mass(
        mass, frame.mask_of(frame.labels[2:]), frame.full_mask,
        float(Fraction(5, 6)),
    )


def age_table() -> Table:
    return Table(("age",), ((18,), (16,), (19,), (22,), (24,), (24,)))


def age_scheme() -> GeneralizationScheme:
    return GeneralizationScheme(
        {"age": IntervalGeneralizer(((15, 19), (20, 25)))}
    )


@pytest.fixture
def ages() -> tuple[Table, GeneralizationScheme]:
    return age_table(), age_scheme()


def naive_zeta(values: np.ndarray) -> np.ndarray:
    """O(4^n) subset-sum oracle."""
    size = len(values)
    out = np.zeros(size)
    for a in range(size):
        for b in range(size):
            if a & b == b:
                out[a] += values[b]
    return out


def naive_pignistic(values: np.ndarray, n: int) -> np.ndarray:
    """Per-element double loop over focal sets."""
    p = np.zeros(n)
    for mask in range(1, 1 << n):
        weight = values[mask]
        if weight == 0.0:
            continue
        members = [i for i in range(n) if mask >> i & 1]
        for i in members:
            p[i] += weight / len(members)
    return p


def naive_compatible(bel_values: np.ndarray, p: np.ndarray) -> bool:
    """Subset-by-subset P(A) >= Bel(A) with explicit element sums."""
    n = len(p)
    for mask in range(1 << n):
        p_of_a = sum(p[i] for i in range(n) if mask >> i & 1)
        if p_of_a < bel_values[mask] - 1e-9:
            return False
    return True


def naive_conjunction(v1: np.ndarray, v2: np.ndarray) -> np.ndarray:
    """Direct double sum over all subset pairs."""
    size = len(v1)
    out = np.zeros(size)
    for a in range(size):
        for b in range(size):
            out[a & b] += v1[a] * v2[b]
    return out


def random_probability(
    frame: Frame, rng: np.random.Generator, support_size: int | None = None
):
    """Random distribution, optionally with a forced support size."""
    from reidrisk import ProbabilityDistribution

    n = frame.size
    if support_size is None:
        support_size = int(rng.integers(1, n + 1))
    members = rng.choice(n, size=support_size, replace=False)
    p = np.zeros(n)
    p[members] = rng.dirichlet(np.ones(support_size))
    return ProbabilityDistribution(frame, p)
