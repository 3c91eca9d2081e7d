"""Frame-of-discernment algebra for simple support functions.

Subsets of the frame {1, ..., size} are bitmasks: bit i-1 set means element
i is a member.  A piece of evidence puts mass on one focal subset and the
rest on the whole frame; unnormalized conjunctive combination multiplies
evidence together and lets the mass of contradictory selections pile up on
the empty set.  That empty-set mass, the conflict, is what the clustering
criteria in the rest of the package are built from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_FRAME_SIZE = 30

# Conflicts this close to one are capped so -log(1 - c) stays finite.
CONFLICT_CEILING = 1.0 - 1e-12

# Combination folds entries below this into the frame entry to bound focal
# growth.  The empty set is exempt: its entry is the quantity of interest
# and must stay exact (and nondecreasing) across a fold.
MASS_FLOOR = 1e-15


class FrameMismatchError(ValueError):
    """Operands refer to frames of different sizes."""


@dataclass(frozen=True)
class Frame:
    """Frame of discernment {1, ..., size}."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, int):
            raise TypeError(f"frame size must be an int, got {type(self.size).__name__}")
        if not 1 <= self.size <= MAX_FRAME_SIZE:
            raise ValueError(f"frame size must be in [1, {MAX_FRAME_SIZE}], got {self.size}")

    @property
    def full_bits(self) -> int:
        """Bitmask of the whole frame."""
        return (1 << self.size) - 1

    def nonempty_subsets(self) -> range:
        """All nonempty subsets as bitmasks, ascending."""
        return range(1, 1 << self.size)

    def bits_of(self, members: Iterable[int]) -> int:
        """Bitmask for a collection of 1-based element indices."""
        bits = 0
        for m in members:
            if not 1 <= m <= self.size:
                raise ValueError(f"element {m} outside frame of size {self.size}")
            bits |= 1 << (m - 1)
        return bits

    def members_of(self, bits: int) -> tuple[int, ...]:
        """Sorted 1-based element indices of a subset bitmask."""
        if not 0 <= bits <= self.full_bits:
            raise ValueError(f"bitmask {bits:#x} outside frame of size {self.size}")
        return tuple(i + 1 for i in range(self.size) if bits >> i & 1)


def _check_same_frame(a: Frame, b: Frame) -> None:
    if a != b:
        raise FrameMismatchError(f"frame sizes differ: {a.size} vs {b.size}")


@dataclass(frozen=True)
class FocalSet:
    """Nonempty subset of a frame."""

    frame: Frame
    bits: int

    def __post_init__(self):
        if not isinstance(self.bits, int):
            raise TypeError(f"bits must be an int, got {type(self.bits).__name__}")
        if self.bits == 0:
            raise ValueError("focal set must be nonempty")
        if not 0 < self.bits <= self.frame.full_bits:
            raise ValueError(f"bitmask {self.bits:#x} outside frame of size {self.frame.size}")

    @classmethod
    def from_members(cls, frame: Frame, members: Iterable[int]) -> "FocalSet":
        return cls(frame, frame.bits_of(members))

    @property
    def members(self) -> tuple[int, ...]:
        return self.frame.members_of(self.bits)


@dataclass(frozen=True)
class SimpleSupport:
    """Evidence with mass on one focal subset and 1 - mass on the frame."""

    focal: FocalSet
    mass: float

    def __post_init__(self):
        object.__setattr__(self, "mass", float(self.mass))
        if not 0.0 < self.mass < 1.0:
            raise ValueError(f"mass must lie strictly inside (0, 1), got {self.mass}")

    @property
    def frame(self) -> Frame:
        return self.focal.frame


def intersect(a: FocalSet, b: FocalSet) -> int:
    """Intersection bitmask of two focal sets; may be empty (0)."""
    _check_same_frame(a.frame, b.frame)
    return a.bits & b.bits


def pairwise_conflict(e_j: SimpleSupport, e_k: SimpleSupport) -> float:
    """Product of the two masses if the focal sets are disjoint, else 0."""
    if intersect(e_j.focal, e_k.focal) == 0:
        return e_j.mass * e_k.mass
    return 0.0


def clamp_conflict(c: float) -> float:
    """Cap a conflict just below 1 so its weight stays finite."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"conflict must lie in [0, 1], got {c}")
    return min(c, CONFLICT_CEILING)


def conflict_weight(c: float) -> float:
    """Weight of conflict -log(1 - c); zero iff c is zero.

    Accepts c in [0, 1); values within 1e-12 of 1 saturate so the result
    stays finite.  Conflicts that may equal 1 exactly must go through
    clamp_conflict first.
    """
    if not 0.0 <= c < 1.0:
        raise ValueError(f"conflict must lie in [0, 1), got {c}")
    return -math.log1p(-min(c, CONFLICT_CEILING))


@dataclass(frozen=True)
class MassFunction:
    """Mass assignment over subsets of one frame, empty set included.

    Entries map subset bitmasks to positive masses summing to one.  The
    empty-set entry, if present, is the conflict accumulated so far.
    """

    frame: Frame
    entries: dict[int, float]

    def __post_init__(self):
        entries = dict(self.entries)
        object.__setattr__(self, "entries", entries)
        full = self.frame.full_bits
        total = 0.0
        for bits, mass in entries.items():
            if not 0 <= bits <= full:
                raise ValueError(f"bitmask {bits:#x} outside frame of size {self.frame.size}")
            if mass < 0.0:
                raise ValueError(f"negative mass {mass} on bitmask {bits:#x}")
            total += mass
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"masses must sum to 1 within 1e-9, got {total!r}")

    @classmethod
    def vacuous(cls, frame: Frame) -> "MassFunction":
        return cls(frame, {frame.full_bits: 1.0})

    def mass(self, bits: int) -> float:
        return self.entries.get(bits, 0.0)

    @property
    def conflict(self) -> float:
        return self.entries.get(0, 0.0)

    def total(self) -> float:
        return sum(self.entries.values())


def _combine_entries(entries: dict[int, float], focal_bits: int, mass: float,
                     full_bits: int) -> dict[int, float]:
    """One conjunctive combination step on a raw entry dict."""
    out: dict[int, float] = {}
    keep = 1.0 - mass
    get = out.get
    for bits, p in entries.items():
        hit = bits & focal_bits
        out[hit] = get(hit, 0.0) + p * mass
        out[bits] = get(bits, 0.0) + p * keep
    dust = [b for b, p in out.items() if p < MASS_FLOOR and b != 0 and b != full_bits]
    if dust:
        moved = 0.0
        for b in dust:
            moved += out.pop(b)
        out[full_bits] = out.get(full_bits, 0.0) + moved
    return out


def combine_conjunctive(acc: MassFunction, e: SimpleSupport) -> MassFunction:
    """Unnormalized conjunctive combination of an accumulator with one
    simple support function; contradictory mass lands on the empty set."""
    _check_same_frame(acc.frame, e.frame)
    return MassFunction(
        acc.frame, _combine_entries(acc.entries, e.focal.bits, e.mass, acc.frame.full_bits))


def cluster_conflict(evidence: Sequence[SimpleSupport]) -> float:
    """Conflict of combining all the evidence in one cluster.

    Folds from the vacuous mass function in the given order and returns the
    empty-set mass.  Zero or one piece of evidence cannot conflict.
    """
    if len(evidence) < 2:
        return 0.0
    frame = evidence[0].frame
    for e in evidence[1:]:
        _check_same_frame(frame, e.frame)
    entries = {frame.full_bits: 1.0}
    for e in evidence:
        entries = _combine_entries(entries, e.focal.bits, e.mass, frame.full_bits)
    return entries.get(0, 0.0)
