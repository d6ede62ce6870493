"""Finite frames of discernment and their subset lattices.

A frame is an ordered finite set of labelled elements.  Subsets are
represented as Python integer bitmasks: bit ``i`` set means element ``i``
belongs to the subset.  Set-function values over the whole lattice are
stored as dense ``numpy`` arrays of length ``2**n`` indexed by bitmask,
which keeps the zeta and Moebius transforms to ``O(n * 2**n)`` array
sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

# Dense lattices are capped: 2**24 float64 cells is 128 MiB, one step more
# would not fit comfortably in memory.
MAX_FRAME = 24

# Tolerance for lattice sums and transform round trips.
TOL_SUM = 1e-9


class FrameCapacityError(ValueError):
    """An operation would materialise a subset lattice beyond MAX_FRAME."""


class FrameMismatchError(ValueError):
    """Two arguments that must share a frame were built on different ones."""


def require_dense(size: int) -> None:
    """Fail unless a lattice of 2**size cells may be allocated."""
    if size > MAX_FRAME:
        raise FrameCapacityError(
            f"frame of size {size} exceeds the dense lattice "
            f"ceiling MAX_FRAME={MAX_FRAME}"
        )


def require_same_frame(a: "Frame", b: "Frame") -> None:
    if a != b:
        raise FrameMismatchError(
            f"operands are defined on different frames: "
            f"{a.labels!r} vs {b.labels!r}"
        )


@dataclass(frozen=True)
class Frame:
    """An ordered finite reference set.

    Parameters
    ----------
    labels : tuple of str
        Distinct element names; element ``i`` is ``labels[i]``.

    Notes
    -----
    Construction enforces ``size <= MAX_FRAME`` because frames exist to
    carry dense subset lattices.  Larger tables are handled by the
    candidate-set operations, which work on integer masks directly and
    never build a Frame.
    """

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) == 0:
            raise ValueError("a frame needs at least one element")
        if len(set(labels)) != len(labels):
            raise ValueError("frame labels must be distinct")
        require_dense(len(labels))

    @classmethod
    def of_size(cls, size: int, prefix: str = "x") -> "Frame":
        return cls(tuple(f"{prefix}{i}" for i in range(size)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        """Bitmask of the whole frame."""
        return (1 << self.size) - 1

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"label {label!r} is not in the frame") from None

    def mask_of(self, labels) -> int:
        """Bitmask of the subset holding the given labels."""
        mask = 0
        for label in labels:
            mask |= 1 << self.index_of(label)
        return mask

    def singleton(self, label: str) -> int:
        return 1 << self.index_of(label)

    def members(self, mask: int) -> tuple[str, ...]:
        """Labels of the subset encoded by ``mask``, in frame order."""
        if mask < 0 or mask > self.full_mask:
            raise ValueError(f"mask {mask} is out of range for this frame")
        return tuple(
            lab for i, lab in enumerate(self.labels) if mask >> i & 1
        )


def powerset_iter(frame_or_size: "Frame | int") -> Iterator[int]:
    """Yield every subset bitmask, empty set first, full set last.

    Accepts either a Frame or a plain element count (0 is allowed for the
    latter, yielding just the empty set).
    """
    if isinstance(frame_or_size, Frame):
        size = frame_or_size.size
    else:
        size = int(frame_or_size)
        if size < 0:
            raise ValueError("size must be nonnegative")
    require_dense(size)
    return iter(range(1 << size))


@lru_cache(maxsize=None)
def subset_sizes(size: int) -> np.ndarray:
    """Array of popcounts: entry ``mask`` is ``|subset(mask)|``."""
    require_dense(size)
    counts = np.zeros(1, dtype=np.int64)
    for _ in range(size):
        counts = np.concatenate([counts, counts + 1])
    counts.flags.writeable = False
    return counts


def _lattice_order(length: int) -> int:
    size = length.bit_length() - 1
    if length <= 0 or (1 << size) != length:
        raise ValueError(
            f"lattice arrays must have power-of-two length, got {length}"
        )
    require_dense(size)
    return size


def zeta_transform(values) -> np.ndarray:
    """Subset sums: output[A] = sum of input[B] over all B subseteq A."""
    out = np.array(values, dtype=np.float64)
    size = _lattice_order(out.size)
    for i in range(size):
        bit = 1 << i
        block = out.reshape(-1, 2 * bit)
        block[:, bit:] += block[:, :bit]
    return out


def mobius_transform(values) -> np.ndarray:
    """Inverse of the zeta transform on the same lattice."""
    out = np.array(values, dtype=np.float64)
    size = _lattice_order(out.size)
    for i in range(size):
        bit = 1 << i
        block = out.reshape(-1, 2 * bit)
        block[:, bit:] -= block[:, :bit]
    return out


def zeta_transform_rows(matrix) -> np.ndarray:
    """Apply the zeta transform to every row of a 2-D array at once."""
    out = np.array(matrix, dtype=np.float64)
    if out.ndim != 2:
        raise ValueError("expected a 2-D array of lattice rows")
    size = _lattice_order(out.shape[1])
    for i in range(size):
        bit = 1 << i
        block = out.reshape(out.shape[0], -1, 2 * bit)
        block[:, :, bit:] += block[:, :, :bit]
    return out
