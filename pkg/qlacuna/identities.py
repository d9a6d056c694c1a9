# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
The three lacunary identity families. Each one equates a sum of
q-hypergeometric terms

    P1:  1 + 2 sum_{n>=1} q^(n^2) / ((1 + q^2n) (-q; q^2)_n)
    P2:  1 + 2 sum_{n>=1} q^n / ((1 + q^2n) (-q; q^2)_n)
    P3:  1 + 2 sum_{n>=1} (-1)^n q^(n(n+1)) / ((1 + q^2n) (q^2; q^4)_n)

with a double sum over a binary quadratic form

    sum_{n>=0} e^n q^(s n^2) (1 + t q^(s(2n+1))) sum_{2|j|<=n} (-1)^j q^(s k j^2)

where (e, t, k, s) is (1, 1, -2, 1) for P1, (1, 1, 2, 1) for P2 and
(-1, -1, 1, 2) for P3. The P3 double sum lives in q^2, like its left hand
side.

The coefficient of q^n on the left, n >= 1, is the weighted partition count
p(n) of the family.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from qlacuna.exceptions import InterfaceError, InternalError, ResourceLimitError
from qlacuna.partitions import Slot, count, weighted_count
from qlacuna.quadforms import SUM_OF_TWO_SQUARES, X2_MINUS_2Y2, X2_PLUS_2Y2, QuadFormSpec
from qlacuna.series import Q, Series, pochhammer_inverse
from qlacuna.settings import Settings, resolve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdentityFamily:
    tag: str
    discriminant: int
    form: QuadFormSpec
    # left hand side: exponent of the n-th term, whether it alternates, and the
    # factor 1 - sign q^(step n - offset) that (x; q^step)_n gains at step n
    term_exponent: Callable[[int], int] = field(repr=False, compare=False)
    lhs_alternating: bool = field(repr=False)
    pochhammer_sign: int = field(repr=False)
    pochhammer_step: int = field(repr=False)
    # right hand side double sum parameters
    rhs_alternating: bool = field(repr=False)
    odd_sign: int = field(repr=False)
    inner_scale: int = field(repr=False)
    substitution: int = field(repr=False)

    def __post_init__(self):
        if self.form.discriminant != self.discriminant:
            raise InternalError(f"{self.tag}: form {self.form} does not have discriminant {self.discriminant}")

    def __str__(self):
        return self.tag


P1 = IdentityFamily('P1', 8, X2_MINUS_2Y2, lambda n: n * n, False, -1, 2, False, 1, -2, 1)
P2 = IdentityFamily('P2', -8, X2_PLUS_2Y2, lambda n: n, False, -1, 2, False, 1, 2, 1)
P3 = IdentityFamily('P3', -4, SUM_OF_TWO_SQUARES, lambda n: n * (n + 1), True, 1, 4, True, -1, 1, 2)

FAMILIES: Dict[str, IdentityFamily] = {f.tag: f for f in (P1, P2, P3)}


def family(tag: str) -> IdentityFamily:
    try:
        return FAMILIES[tag.upper()]
    except KeyError:
        raise InterfaceError(f"unknown identity family {tag!r}, expected one of {', '.join(FAMILIES)}")


@dataclass(frozen=True)
class WeightedCount:
    family: str
    n: int
    value: int


def _check_trunc(trunc: int):
    if trunc < 1:
        raise InterfaceError(f"truncation order must be >= 1, not {trunc}")


def _div_binomial_exact(t: np.ndarray, sign: int, k: int):
    """Divide an object array of Python ints by (1 - sign q^k) in place."""
    for start in range(k, len(t), k):
        end = min(start + k, len(t))
        t[start:end] += sign * t[start - k:end - k]


def lhs(f: IdentityFamily, trunc: int) -> Series:
    """The q-hypergeometric side to q^trunc.

    The running products 1 / (x; q^step)_n grow like partition counts and
    leave the int64 range near q^750, although the sum itself stays small.
    They are accumulated as exact Python integers; only the sum becomes a
    Series.
    """
    _check_trunc(trunc)
    total = np.zeros(trunc, dtype=object)
    total[0] = 1
    # running 1 / (x; q^step)_n
    running = total.copy()
    n = 1
    while f.term_exponent(n) < trunc:
        e = f.term_exponent(n)
        _div_binomial_exact(running, f.pochhammer_sign, f.pochhammer_step * n - f.pochhammer_step // 2)
        # term exponents increase with n
        running = running[:trunc - e]
        term = running.copy()
        _div_binomial_exact(term, -1, 2 * n)
        sign = -2 if f.lhs_alternating and n % 2 else 2
        total[e:] += sign * term
        n += 1
    logger.debug(f"lhs({f}) to q^{trunc}: {n - 1} terms")
    return Series(total.tolist(), 0, trunc)


def rhs_coefficients(f: IdentityFamily, n_max: int) -> np.ndarray:
    """Coefficients 0..n_max of the double sum side, as an int64 array."""
    if n_max < 0:
        raise InterfaceError(f"n_max must be >= 0, not {n_max}")
    s = f.substitution
    limit = n_max // s
    out = np.zeros(limit + 1, dtype=np.int64)
    n = 0
    # smallest inner exponent is n^2 - 2 (n/2)^2 >= n^2 / 2 for P1, n^2 otherwise
    while (n * n + 1) // 2 <= limit if f.inner_scale < 0 else n * n <= limit:
        half = n // 2
        j = np.arange(-half, half + 1, dtype=np.int64)
        inner_signs = np.where(j % 2 == 0, 1, -1)
        outer = -1 if f.rhs_alternating and n % 2 else 1
        for base, sign in ((n * n, outer), ((n + 1) ** 2, outer * f.odd_sign)):
            exps = base + f.inner_scale * j * j
            if exps.min() < 0:
                raise InternalError(f"{f}: negative exponent in the double sum at n={n}")
            keep = exps <= limit
            np.add.at(out, exps[keep], sign * inner_signs[keep])
        n += 1
    if s == 1:
        return out
    spread = np.zeros(n_max + 1, dtype=np.int64)
    spread[::s] = out
    return spread


def rhs(f: IdentityFamily, trunc: int) -> Series:
    _check_trunc(trunc)
    return Series(rhs_coefficients(f, trunc - 1), 0, trunc)


def rhs_coeff(f: IdentityFamily, n: int) -> int:
    """Coefficient of q^n on the double sum side, without building a series.

    Enumerates j and solves for the outer index: the q^(n^2) part contributes
    when m - k j^2 is a square r^2 with r >= 2|j|, the q^((n+1)^2) part when
    it is a square r^2 with r >= 2|j| + 1.
    """
    if n < 0:
        raise InterfaceError(f"n must be >= 0, not {n}")
    if n % f.substitution:
        return 0
    m = n // f.substitution
    bound = math.isqrt(m // abs(f.inner_scale))
    total = 0
    for j in range(-bound, bound + 1):
        rest = m - f.inner_scale * j * j
        if rest < 0:
            continue
        r = math.isqrt(rest)
        if r * r != rest:
            continue
        inner = -1 if j % 2 else 1
        if r >= 2 * abs(j):
            total += inner * (-1 if f.rhs_alternating and r % 2 else 1)
        if r >= 2 * abs(j) + 1:
            total += inner * f.odd_sign * (-1 if f.rhs_alternating and (r - 1) % 2 else 1)
    return total


def p1_formula(n: int) -> int:
    """Explicit coefficient formula for the first family:

        sum over n = r^2 - 2j^2, 2|j| <= r of (-1)^j
      + sum over n = (r+1)^2 - 2j^2, 2|j| <= r of (-1)^j
    """
    if n < 1:
        raise InterfaceError(f"p1_formula needs n >= 1, not {n}")
    total = 0
    for r in range(math.isqrt(2 * n) + 2):
        for square in (r * r, (r + 1) * (r + 1)):
            gap = square - n
            if gap < 0 or gap % 2:
                continue
            j = math.isqrt(gap // 2)
            if 2 * j * j != gap or 2 * j > r:
                continue
            sign = -1 if j % 2 else 1
            total += sign if j == 0 else 2 * sign
    return total


def nonzero_density(f: IdentityFamily, x: int) -> float:
    """N(x) / x with N(x) = #{1 <= n <= x : p(n) != 0}."""
    if x < 1:
        raise InterfaceError(f"x must be >= 1, not {x}")
    return np.count_nonzero(rhs_coefficients(f, x)[1:]) / x


# combinatorial side

def _slots(f: IdentityFamily, k: int) -> List[Slot]:
    """Part rules of the k-th left hand side term, without the factor 2.

    The printed descriptions of the first two families admit more than one
    reading; these are the ones the left hand sides generate (see the
    conventions page of the documentation).

    P1: odd parts 1, 3, ..., 2k-1 at least once each, extra copies weigh -1;
        the even part 2k any number of times, each copy weighs -1.
    P2: a marked part k; further odd parts < 2k and the part 2k, each copy
        weighing -1.
    P3: even parts 2, 4, ..., 2k at least once, 2k any number of times, each
        even part appearance weighs -1; odd parts < 2k an even number of times.
    """
    odd = range(1, 2 * k, 2)
    if f is P1:
        return [Slot(p, minimum=1, sign=-1) for p in odd] + [Slot(2 * k, sign=-1)]
    if f is P2:
        return [Slot(k, minimum=1, maximum=1)] + [Slot(p, sign=-1) for p in odd] + [Slot(2 * k, sign=-1)]
    if f is P3:
        evens = [Slot(2 * i, minimum=1, maximum=1, sign=-1, signed_forced=True) for i in range(1, k)]
        return evens + [Slot(2 * k, minimum=1, sign=-1, signed_forced=True)] + [Slot(p, step=2) for p in odd]
    raise InterfaceError(f"no partition reading for {f}")


def enumerate_partitions(f: IdentityFamily, n: int, settings: Optional[Settings] = None) -> WeightedCount:
    """Weighted count of the partitions of n described by the family, times 2.

    Every partition allowed by the part rules is visited once, but the walk
    is memoized on (slot, remaining size) by :func:`weighted_count`, so
    partitions sharing a tail are summed together rather than listed. The
    listing itself is :func:`qlacuna.partitions.multiplicities`.
    """
    bound = resolve(settings).enumeration_bound
    if n < 1:
        raise InterfaceError(f"n must be >= 1, not {n}")
    if n > bound:
        raise ResourceLimitError(f"exhaustive enumeration is limited to n <= {bound}, not {n}")
    total = 0
    k = 1
    while f.term_exponent(k) <= n:
        total += weighted_count(_slots(f, k), n)
        k += 1
    return WeightedCount(f.tag, n, 2 * total)


def odd_parts_without_gaps(n: int, k: int) -> int:
    """Partitions of n whose parts are exactly the odd numbers 1, 3, ..., 2k-1,
    each appearing at least once. Generated by q^(k^2) / (q; q^2)_k."""
    if k < 1:
        raise InterfaceError(f"k must be >= 1, not {k}")
    return count([Slot(p, minimum=1) for p in range(1, 2 * k, 2)], n)


def odd_parts_series(k: int, trunc: int) -> Series:
    """q^(k^2) / (q; q^2)_k"""
    e = k * k
    if e >= trunc:
        return Series.zero(trunc)
    return pochhammer_inverse(Q, 2, k, trunc - e).shift(e)


@dataclass
class IdentityCheck:
    family: str
    order: int
    mismatches: int
    first_exponent: Optional[int] = None
    lhs_value: Optional[int] = None
    rhs_value: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.mismatches == 0


def verify_identity(f: IdentityFamily, order: int) -> IdentityCheck:
    """Compare both sides coefficientwise for exponents 0..order."""
    if order < 1:
        raise InterfaceError(f"order must be >= 1, not {order}")
    left = lhs(f, order + 1).dense(0, order + 1)
    right = rhs(f, order + 1).dense(0, order + 1)
    bad = np.flatnonzero(left != right)
    if not len(bad):
        logger.info(f"{f}: both sides agree up to q^{order}")
        return IdentityCheck(f.tag, order, 0)
    e = int(bad[0])
    logger.info(f"{f}: {len(bad)} coefficients differ, first at q^{e}")
    return IdentityCheck(f.tag, order, len(bad), e, int(left[e]), int(right[e]))
