# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Exhaustive enumeration of integer partitions under per-part constraints.

A partition is described by a list of slots. Each slot holds one part size
and constrains how often it may appear. Two slots may share a part size; this
is how a marked part is kept apart from ordinary copies of the same value.
"""

import functools
from dataclasses import dataclass
from typing import Generator, List, Optional, Sequence, Tuple

from qlacuna.exceptions import InterfaceError


@dataclass(frozen=True)
class Slot:
    """One part size with its multiplicity rule.

    The multiplicity m runs over minimum, minimum + step, ... up to maximum.
    Each copy contributes sign to the weight; copies below minimum only do so
    when signed_forced is set.
    """

    part: int
    minimum: int = 0
    maximum: Optional[int] = None
    step: int = 1
    sign: int = 1
    signed_forced: bool = False

    def __post_init__(self):
        if self.part < 1:
            raise InterfaceError(f"parts must be positive, not {self.part}")
        if self.minimum < 0 or self.step < 1:
            raise InterfaceError(f"invalid multiplicity rule for part {self.part}")
        if self.maximum is not None and self.maximum < self.minimum:
            raise InterfaceError(f"maximum below minimum for part {self.part}")
        if self.sign not in (1, -1):
            raise InterfaceError(f"sign must be +1 or -1, not {self.sign}")

    def weight(self, m: int) -> int:
        copies = m if self.signed_forced else m - self.minimum
        return -1 if self.sign < 0 and copies % 2 else 1


def multiplicities(slots: Sequence[Slot], n: int) -> Generator[Tuple[int, ...], None, None]:
    """Enumerate multiplicity vectors (one entry per slot) whose parts sum to n."""
    floors = [0] * (len(slots) + 1)
    for i in range(len(slots) - 1, -1, -1):
        floors[i] = floors[i + 1] + slots[i].part * slots[i].minimum
    if floors[0] > n:
        return

    current: List[int] = [0] * len(slots)

    def walk(i: int, remaining: int) -> Generator[Tuple[int, ...], None, None]:
        if i == len(slots):
            if remaining == 0:
                yield tuple(current)
            return
        slot = slots[i]
        m = slot.minimum
        while remaining - slot.part * m >= floors[i + 1]:
            if slot.maximum is not None and m > slot.maximum:
                break
            current[i] = m
            yield from walk(i + 1, remaining - slot.part * m)
            m += slot.step

    yield from walk(0, n)


def weighted_count(slots: Sequence[Slot], n: int) -> int:
    """Sum of the weights of all partitions of n allowed by slots.

    Walks the same choices as multiplicities(), with the sum over the
    remaining slots memoized on (slot index, remaining size).
    """
    rules = tuple(slots)

    @functools.lru_cache(maxsize=None)
    def walk(i: int, remaining: int) -> int:
        if i == len(rules):
            return 1 if remaining == 0 else 0
        slot = rules[i]
        total = 0
        m = slot.minimum
        while slot.part * m <= remaining and (slot.maximum is None or m <= slot.maximum):
            total += slot.weight(m) * walk(i + 1, remaining - slot.part * m)
            m += slot.step
        return total

    return walk(0, n)


def count(slots: Sequence[Slot], n: int) -> int:
    """Number of partitions of n allowed by slots."""
    return weighted_count([Slot(s.part, s.minimum, s.maximum, s.step) for s in slots], n)


def as_parts(slots: Sequence[Slot], ms: Sequence[int]) -> List[int]:
    """The partition of a multiplicity vector, largest part first."""
    parts: List[int] = []
    for slot, m in zip(slots, ms):
        parts.extend([slot.part] * m)
    return sorted(parts, reverse=True)
