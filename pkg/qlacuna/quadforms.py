# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Representation numbers of positive definite binary quadratic forms

    Q(x1, x2) = a x1^2 + b x1 x2 + c x2^2

and the partial sums R1(x) = sum_{1 <= n <= x} r(n) and
R2(x) = #{1 <= n <= x : r(n) > 0}.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from qlacuna.exceptions import InterfaceError, NotSupportedError
from qlacuna.settings import Settings, resolve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadFormSpec:
    a: int
    b: int
    c: int
    discriminant: int = field(default=None)  # type: ignore

    def __post_init__(self):
        d = self.b * self.b - 4 * self.a * self.c
        if self.discriminant is None:
            object.__setattr__(self, 'discriminant', d)
        elif self.discriminant != d:
            raise InterfaceError(f"discriminant of {self.triple} is {d}, not {self.discriminant}")

    @property
    def triple(self):
        return (self.a, self.b, self.c)

    @property
    def definite(self) -> bool:
        return self.discriminant < 0 and self.a > 0

    def value(self, x1, x2):
        return self.a * x1 * x1 + self.b * x1 * x2 + self.c * x2 * x2

    def __str__(self):
        return f"{self.a},{self.b},{self.c}"


X2_MINUS_2Y2 = QuadFormSpec(1, 0, -2)
X2_PLUS_2Y2 = QuadFormSpec(1, 0, 2)
SUM_OF_TWO_SQUARES = QuadFormSpec(1, 0, 1)

FORMS: Dict[str, QuadFormSpec] = {str(f): f for f in (X2_MINUS_2Y2, X2_PLUS_2Y2, SUM_OF_TWO_SQUARES)}


def parse_form(text: str) -> QuadFormSpec:
    """Parse a comma separated triple like '1,0,1'."""
    pieces = text.split(',')
    if len(pieces) != 3:
        raise InterfaceError(f"expected a form as a,b,c, not {text!r}")
    try:
        a, b, c = (int(p.strip()) for p in pieces)
    except ValueError:
        raise InterfaceError(f"form coefficients must be integers: {text!r}")
    return QuadFormSpec(a, b, c)


@dataclass
class RepSummary:
    x: int
    R1: int
    R2: int
    C1_hat: float
    C2_hat: float

    @classmethod
    def of(cls, x: int, r1: int, r2: int) -> "RepSummary":
        return cls(x, r1, r2, r1 / x, r2 * math.sqrt(math.log(x)) / x)


def _require_definite(form: QuadFormSpec):
    if not form.definite:
        raise NotSupportedError(
            f"form {form} with discriminant {form.discriminant} is not positive definite, "
            "its representation numbers can be infinite")


def _row_bound(form: QuadFormSpec, x: int) -> int:
    """Largest |x1| for which Q(x1, x2) <= x has a solution."""
    # D x1^2 + 4 c x >= 0
    return math.isqrt((4 * form.c * x) // -form.discriminant)


def rep_count(form: QuadFormSpec, n: int) -> int:
    """Number of integer pairs (x1, x2) with Q(x1, x2) == n."""
    _require_definite(form)
    if n < 0:
        raise InterfaceError(f"cannot count representations of {n}")
    a, b, c = form.triple
    total = 0
    bound = _row_bound(form, n)
    for x1 in range(-bound, bound + 1):
        delta = form.discriminant * x1 * x1 + 4 * c * n
        if delta < 0:
            continue
        s = math.isqrt(delta)
        if s * s != delta:
            continue
        for num in {-b * x1 + s, -b * x1 - s}:
            if num % (2 * c) == 0:
                total += 1
    return total


def representation_table(form: QuadFormSpec, x: int, settings: Optional[Settings] = None) -> np.ndarray:
    """r(0), r(1), ..., r(x) from one sweep over the lattice points with Q <= x.

    Rows of x1 are processed in chunks; every chunk contributes an exact
    integer histogram, so the result does not depend on the chunk size.
    """
    _require_definite(form)
    if x < 0:
        raise InterfaceError(f"table bound must be >= 0, not {x}")
    rows_per_chunk = resolve(settings).lattice_chunk_rows
    a, b, c = form.triple
    bound = _row_bound(form, x)
    counts = np.zeros(x + 1, dtype=np.int64)
    all_rows = np.arange(-bound, bound + 1, dtype=np.int64)
    for start in range(0, len(all_rows), rows_per_chunk):
        x1 = all_rows[start:start + rows_per_chunk]
        root = np.sqrt(np.maximum(form.discriminant * x1.astype(np.float64) ** 2 + 4.0 * c * x, 0.0))
        centre = -b * x1.astype(np.float64)
        lo = np.floor((centre - root) / (2 * c)).astype(np.int64) - 1
        hi = np.ceil((centre + root) / (2 * c)).astype(np.int64) + 1
        lengths = hi - lo + 1
        offsets = np.arange(lengths.sum(), dtype=np.int64) - np.repeat(np.cumsum(lengths) - lengths, lengths)
        rx1 = np.repeat(x1, lengths)
        x2 = np.repeat(lo, lengths) + offsets
        values = a * rx1 * rx1 + b * rx1 * x2 + c * x2 * x2
        values = values[(values >= 0) & (values <= x)]
        counts += np.bincount(values, minlength=x + 1)
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"form {form}: rows {x1[0]}..{x1[-1]}, {len(values)} lattice points")
    return counts


def presence_table(form: QuadFormSpec, x: int, settings: Optional[Settings] = None) -> np.ndarray:
    """Boolean sieve: entry n tells whether r(n) > 0, for 0 <= n <= x."""
    return representation_table(form, x, settings) > 0


def _check_bound(x: int):
    if x < 2:
        raise InterfaceError(f"partial sums need x >= 2, not {x}")


def partial_sums(form: QuadFormSpec, x: int, settings: Optional[Settings] = None) -> RepSummary:
    _check_bound(x)
    table = representation_table(form, x, settings)[1:]
    return RepSummary.of(x, int(table.sum()), int(np.count_nonzero(table)))


def constant_profile(form: QuadFormSpec, xs: Sequence[int], settings: Optional[Settings] = None) -> List[RepSummary]:
    """RepSummary for every x in xs, all read from a single table at max(xs)."""
    if not xs:
        raise InterfaceError("need at least one x")
    for x in xs:
        _check_bound(x)
    if any(later <= earlier for earlier, later in zip(xs, xs[1:])):
        raise InterfaceError(f"xs must be strictly increasing: {list(xs)}")
    table = representation_table(form, xs[-1], settings)
    r1 = np.cumsum(table)
    r2 = np.cumsum(table > 0)
    # drop the n = 0 contribution (r(0) = 1)
    return [RepSummary.of(x, int(r1[x] - table[0]), int(r2[x] - (table[0] > 0))) for x in xs]
