"""Entropy, nonspecificity, mass transfer, and majorization."""

import math

import numpy as np
import pytest

from conftest import (
    EX1_ENTROPY,
    EX1_ENTROPY_AFTER,
    EX1_TRANSFER_C1,
    EX1_TRANSFER_X,
    EX2_ENTROPY,
    EX2_ENTROPY_AFTER,
    example1_mass,
    example1_transferred,
    example2_mass,
    example2_transferred,
)
from reidrisk import (
    Frame,
    MassAssignment,
    ProbabilityDistribution,
    majorizes,
    nonspecificity,
    pignistic,
    pignistic_entropy,
    shannon_entropy,
    transfer_mass,
)
from reidrisk.compatibility import random_mass


class TestShannonEntropy:
    def test_dirac_is_zero(self):
        frame = Frame.of_size(3)
        dist = ProbabilityDistribution(frame, [1.0, 0.0, 0.0])
        assert shannon_entropy(dist) == 0.0

    def test_uniform_is_log_n(self):
        frame = Frame.of_size(6)
        dist = ProbabilityDistribution.uniform(frame)
        assert abs(shannon_entropy(dist) - math.log(6)) < 1e-12

    def test_natural_log_convention(self):
        frame = Frame(("a", "b"))
        dist = ProbabilityDistribution(frame, [0.25, 0.75])
        expected = -(0.25 * math.log(0.25) + 0.75 * math.log(0.75))
        assert abs(shannon_entropy(dist) - expected) < 1e-12


class TestPignisticEntropy:
    def test_example1_golden(self):
        assert abs(pignistic_entropy(example1_mass()) - EX1_ENTROPY) < 1e-6
        assert abs(
            pignistic_entropy(example1_transferred()) - EX1_ENTROPY_AFTER
        ) < 1e-6

    def test_example2_golden(self):
        assert abs(pignistic_entropy(example2_mass()) - EX2_ENTROPY) < 1e-6
        assert abs(
            pignistic_entropy(example2_transferred()) - EX2_ENTROPY_AFTER
        ) < 1e-6

    def test_not_monotone_under_transfer(self):
        # Specificity-increasing transfers move the entropy both ways:
        # down in the first worked example, up in the second.
        assert pignistic_entropy(example1_transferred()) < pignistic_entropy(
            example1_mass()
        )
        assert pignistic_entropy(example2_transferred()) > pignistic_entropy(
            example2_mass()
        )


class TestNonspecificity:
    def test_vacuous_is_log2_n(self):
        frame = Frame.of_size(8)
        assert abs(nonspecificity(MassAssignment.vacuous(frame)) - 3.0) < 1e-12

    def test_zero_iff_singleton_carried(self):
        frame = Frame.of_size(4)
        dist = ProbabilityDistribution(frame, [0.1, 0.2, 0.3, 0.4])
        carried = MassAssignment.from_probability(dist)
        assert nonspecificity(carried) == 0.0
        mixed = MassAssignment.from_dict(
            frame, {("x0",): 0.999, ("x0", "x1"): 0.001}
        )
        assert nonspecificity(mixed) > 0.0

    def test_example1_closed_form(self):
        expected = 5 / 13 * math.log2(5) + 8 / 13 * 3.0
        assert abs(nonspecificity(example1_mass()) - expected) < 1e-9

    def test_example2_closed_form(self):
        expected = 5 / 6 * math.log2(10) + 1 / 6 * 1.0
        assert abs(nonspecificity(example2_mass()) - expected) < 1e-9


class TestTransferMass:
    def test_example1_golden(self):
        moved = example1_transferred()
        frame = moved.frame
        c1 = frame.mask_of(frame.labels[:2])
        a5 = frame.mask_of(frame.labels[:5])
        assert abs(moved[c1] - EX1_TRANSFER_C1) < 1e-6
        assert abs(moved[frame.full_mask] - EX1_TRANSFER_X) < 1e-6
        assert abs(moved[a5] - example1_mass()[a5]) < 1e-15

    def test_example2_golden(self):
        moved = example2_transferred()
        frame = moved.frame
        c1 = frame.mask_of(frame.labels[2:])
        assert abs(moved[frame.full_mask]) < 1e-9
        assert abs(moved[c1] - 5 / 6) < 1e-9

    def test_zero_delta_is_identity(self):
        mass = example1_mass()
        same = transfer_mass(mass, 0b1, mass.frame.full_mask, 0.0)
        assert same.values.tolist() == mass.values.tolist()

    def test_nonspecificity_closed_form(self):
        rng = np.random.default_rng(73)
        for _ in range(100):
            size = int(rng.integers(2, 9))
            frame = Frame.of_size(size)
            mass = random_mass(frame, rng)
            sources = [m for m, _ in mass.focal()
                       if bin(m).count("1") >= 2]
            if not sources:
                continue
            c2 = int(rng.choice(sources))
            bits = [i for i in range(size) if c2 >> i & 1]
            keep = rng.random(len(bits)) < 0.5
            c1 = sum(1 << b for b, k in zip(bits, keep) if k)
            if c1 == 0 or c1 == c2:
                c1 = 1 << bits[0]
            delta = float(rng.uniform(0.0, mass[c2]))
            moved = transfer_mass(mass, c1, c2, delta)
            predicted = nonspecificity(mass) + delta * (
                math.log2(bin(c1).count("1")) - math.log2(bin(c2).count("1"))
            )
            assert abs(nonspecificity(moved) - predicted) < 1e-9
            assert nonspecificity(moved) <= nonspecificity(mass) + 1e-9

    def test_rejects_non_subset(self):
        mass = example1_mass()
        with pytest.raises(ValueError, match="subset of the source"):
            transfer_mass(mass, 0b0100, 0b0011, 0.1)

    def test_rejects_equal_sets(self):
        mass = example1_mass()
        with pytest.raises(ValueError, match="proper subset"):
            transfer_mass(mass, 0b0011, 0b0011, 0.1)

    def test_rejects_empty_target(self):
        mass = example1_mass()
        with pytest.raises(ValueError, match="empty set"):
            transfer_mass(mass, 0, 0b0011, 0.1)

    def test_rejects_bad_delta(self):
        mass = example1_mass()
        full = mass.frame.full_mask
        with pytest.raises(ValueError, match="delta"):
            transfer_mass(mass, 0b1, full, -0.1)
        with pytest.raises(ValueError, match="delta"):
            transfer_mass(mass, 0b1, full, mass[full] + 0.1)

    def test_rejects_out_of_range_masks(self):
        mass = example1_mass()
        with pytest.raises(ValueError, match="out of range"):
            transfer_mass(mass, 1 << 9, mass.frame.full_mask, 0.0)


class TestMajorizes:
    def test_dirac_majorizes_everything(self):
        frame = Frame.of_size(4)
        dirac = ProbabilityDistribution(frame, [1.0, 0.0, 0.0, 0.0])
        other = ProbabilityDistribution(frame, [0.4, 0.3, 0.2, 0.1])
        assert majorizes(dirac, other)
        assert not majorizes(other, dirac)

    def test_uniform_is_majorized_by_everything(self):
        rng = np.random.default_rng(79)
        frame = Frame.of_size(5)
        uniform = ProbabilityDistribution.uniform(frame)
        for _ in range(10):
            p = ProbabilityDistribution(frame, rng.dirichlet(np.ones(5)))
            assert majorizes(p, uniform)

    def test_reflexive(self):
        frame = Frame.of_size(3)
        p = ProbabilityDistribution(frame, [0.5, 0.3, 0.2])
        assert majorizes(p, p)

    def test_length_mismatch(self):
        p = ProbabilityDistribution.uniform(Frame.of_size(3))
        q = ProbabilityDistribution.uniform(Frame.of_size(4))
        with pytest.raises(ValueError, match="same length"):
            majorizes(p, q)

    def test_consistent_with_entropy_on_worked_examples(self):
        # Example 1's transfer concentrates the pignistic (it majorizes
        # the original, entropy drops); example 2's transfer flattens
        # it (the original majorizes the transferred, entropy rises).
        p1 = pignistic(example1_mass())
        p1_after = pignistic(example1_transferred())
        assert majorizes(p1_after, p1)
        assert not majorizes(p1, p1_after)
        assert shannon_entropy(p1_after) <= shannon_entropy(p1)

        p2 = pignistic(example2_mass())
        p2_after = pignistic(example2_transferred())
        assert majorizes(p2, p2_after)
        assert not majorizes(p2_after, p2)
        assert shannon_entropy(p2) <= shannon_entropy(p2_after)

    def test_schur_concavity_random(self):
        rng = np.random.default_rng(83)
        frame = Frame.of_size(6)
        for _ in range(50):
            p = ProbabilityDistribution(frame, rng.dirichlet(np.ones(6)))
            q = ProbabilityDistribution(frame, rng.dirichlet(np.ones(6)))
            if majorizes(p, q):
                assert shannon_entropy(p) <= shannon_entropy(q) + 1e-9
