# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Numerical harness around the Hardy-Littlewood Tauberian comparison.

If sum_{n <= x} a_n ~ K x^delta h(x), then the partial sum generating
function sum_n A(n) z^n = sum_n a_n z^n / (1 - z) behaves like

    K delta! / (1 - z)^(delta + 1) * h(1 / (1 - z))        as z -> 1-

so sum_n a_n z^n is compared against (1 - z) times that function.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from qlacuna.exceptions import DomainError, InterfaceError, ResourceLimitError
from qlacuna.identities import IdentityFamily, rhs_coefficients
from qlacuna.quadforms import QuadFormSpec, presence_table, representation_table
from qlacuna.settings import Settings, resolve

logger = logging.getLogger(__name__)


def constant_one(x: float) -> float:
    return 1.0


def inv_sqrt_log(x: float) -> float:
    if not x > 1:
        raise DomainError(f"inv_sqrt_log needs an argument > 1, not {x}")
    return 1.0 / math.sqrt(math.log(x))


H_FUNCTIONS: Dict[str, Callable[[float], float]] = {
    'constant_one': constant_one,
    'inv_sqrt_log': inv_sqrt_log,
}


@dataclass(frozen=True)
class AsymptoticSpec:
    delta: int = 1
    h: str = 'constant_one'
    K: float = 1.0

    def __post_init__(self):
        if not isinstance(self.delta, int) or self.delta < 1:
            raise InterfaceError(f"delta must be an integer >= 1, not {self.delta!r}")
        if self.h not in H_FUNCTIONS:
            raise InterfaceError(f"unknown slowly varying function {self.h!r}")


def _check_z(z: float):
    if not 0 < z < 1:
        raise DomainError(f"z must lie in (0, 1), not {z}")


def hl_rhs(spec: AsymptoticSpec, z: float) -> float:
    _check_z(z)
    t = 1.0 / (1.0 - z)
    return spec.K * math.factorial(spec.delta) * t ** (spec.delta + 1) * H_FUNCTIONS[spec.h](t)


class CoefficientTable:
    """Coefficient source a(0), a(1), ... for floating point evaluation.

    Wraps either a function n -> a(n) or a bulk provider N -> array of
    a(0..N). The longest table computed so far is kept.
    """

    def __init__(self, func: Optional[Callable[[int], int]] = None,
                 bulk: Optional[Callable[[int], np.ndarray]] = None, name: str = ''):
        if (func is None) == (bulk is None):
            raise InterfaceError("give exactly one of func and bulk")
        self.func = func
        self.bulk = bulk
        self.name = name or getattr(func or bulk, '__name__', 'coefficients')
        self._values = np.zeros(0, dtype=np.float64)

    def values(self, n_max: int) -> np.ndarray:
        if n_max < len(self._values):
            return self._values[:n_max + 1]
        if self.bulk is not None:
            raw = np.asarray(self.bulk(n_max))
            if len(raw) < n_max + 1:
                raise InterfaceError(f"{self.name}: bulk provider returned {len(raw)} values, needed {n_max + 1}")
            raw = raw[:n_max + 1]
        else:
            func = self.func
            assert func is not None
            raw = np.fromiter((func(n) for n in range(n_max + 1)), dtype=np.int64, count=n_max + 1)
        self._values = raw.astype(np.float64)
        return self._values

    def __repr__(self):
        return f"<CoefficientTable {self.name}>"


CoeffSource = Union[CoefficientTable, Callable[[int], int]]


def _table(source: CoeffSource) -> CoefficientTable:
    if isinstance(source, CoefficientTable):
        return source
    return CoefficientTable(func=source)


def tail_length(z: float, settings: Optional[Settings] = None) -> int:
    """Smallest N with (1 - z) N >= tail_factor."""
    _check_z(z)
    s = resolve(settings)
    n = math.ceil(s.tail_factor / (1.0 - z))
    if n > s.max_n:
        raise ResourceLimitError(f"z = {z} needs {n} terms, the cap is {s.max_n} (QLACUNA_MAX_N)")
    if n > s.max_n // 2:
        logger.warning(f"z = {z} needs {n} terms, close to the cap of {s.max_n}")
    return n


def eval_series(source: CoeffSource, z: float, settings: Optional[Settings] = None) -> float:
    """sum_{n <= N} a(n) z^n, summed in ascending order of n."""
    n = tail_length(z, settings)
    a = _table(source).values(n)
    powers = np.power(z, np.arange(n + 1, dtype=np.float64))
    return float(np.cumsum(a * powers)[-1])


def tauber_ratio_check(spec: AsymptoticSpec, source: CoeffSource, z_grid: Sequence[float],
                        settings: Optional[Settings] = None) -> List[float]:
    """sum a(n) z^n / ((1 - z) hl_rhs(spec, z)) for every z in the grid."""
    table = _table(source)
    ratios = []
    for z in z_grid:
        ratio = eval_series(table, z, settings) / ((1.0 - z) * hl_rhs(spec, z))
        logger.debug(f"{table.name}: ratio {ratio:.6f} at z = {z}")
        ratios.append(ratio)
    return ratios


# calibration sequences with known partial sum asymptotics

def geometric_source() -> CoefficientTable:
    """a(n) = 1, so sum_{n <= x} a(n) ~ x."""
    return CoefficientTable(bulk=lambda n: np.ones(n + 1, dtype=np.int64), name='ones')


def representation_source(form: QuadFormSpec, settings: Optional[Settings] = None) -> CoefficientTable:
    """a(n) = r(n) for n >= 1, a(0) = 0."""
    def bulk(n: int) -> np.ndarray:
        table = representation_table(form, n, settings)
        table[0] = 0
        return table
    return CoefficientTable(bulk=bulk, name=f'r[{form}]')


def indicator_source(form: QuadFormSpec, settings: Optional[Settings] = None) -> CoefficientTable:
    """a(n) = 1 if r(n) > 0, for n >= 1."""
    def bulk(n: int) -> np.ndarray:
        table = presence_table(form, n, settings).astype(np.int64)
        table[0] = 0
        return table
    return CoefficientTable(bulk=bulk, name=f'indicator[{form}]')


def family_source(f: IdentityFamily) -> CoefficientTable:
    """a(n) = p(n) for n >= 1, a(0) = 0."""
    def bulk(n: int) -> np.ndarray:
        table = rhs_coefficients(f, n)
        table[0] = 0
        return table
    return CoefficientTable(bulk=bulk, name=f'p[{f}]')


@dataclass
class BoundProfile:
    family: str
    zs: List[float] = field(default_factory=list)
    B1: List[float] = field(default_factory=list)
    B2: List[float] = field(default_factory=list)


def bound_profile(f: IdentityFamily, k_max: int, settings: Optional[Settings] = None) -> BoundProfile:
    """B1 = (1 - z) |sum p(n) z^n| and B2 = (1 - z) sqrt(log 1/(1 - z)) sum_{p(n) > 0} z^n
    on the grid z = 1 - 2^-k, k = 2 .. k_max."""
    if not 2 <= k_max <= 14:
        raise InterfaceError(f"k_max must lie in 2..14, not {k_max}")
    zs = [1.0 - 2.0 ** -k for k in range(2, k_max + 1)]
    # one table long enough for the point closest to 1
    table = family_source(f)
    table.values(tail_length(zs[-1], settings))
    support = CoefficientTable(bulk=lambda n: (table.values(n) > 0).astype(np.int64), name=f'support[{f}]')
    profile = BoundProfile(f.tag)
    for z in zs:
        w = 1.0 - z
        profile.zs.append(z)
        profile.B1.append(w * abs(eval_series(table, z, settings)))
        profile.B2.append(w * math.sqrt(math.log(1.0 / w)) * eval_series(support, z, settings))
    logger.info(f"bound profile for {f} on {len(zs)} grid points")
    return profile


def boundedness_proxy(values: Sequence[float], factor: Optional[float] = None,
                      settings: Optional[Settings] = None) -> bool:
    """True when the second half of a profile stays below factor times its median."""
    if not values:
        raise InterfaceError("empty profile")
    if factor is None:
        factor = resolve(settings).proxy_factor
    late = values[len(values) // 2:]
    return max(late) <= factor * float(np.median(values))


@dataclass
class TrivialityReport:
    n_max: int
    passed: bool
    first_failure: Optional[int] = None


def _indicator(source: Union[QuadFormSpec, IdentityFamily], n_max: int,
               settings: Optional[Settings]) -> np.ndarray:
    if isinstance(source, QuadFormSpec):
        return presence_table(source, n_max, settings).astype(np.int64)
    if isinstance(source, IdentityFamily):
        return (rhs_coefficients(source, n_max) != 0).astype(np.int64)
    raise InterfaceError(f"expected a quadratic form or an identity family, not {source!r}")


def triviality_check(source: Union[QuadFormSpec, IdentityFamily], n_max: int,
                     r2: Optional[np.ndarray] = None, settings: Optional[Settings] = None) -> TrivialityReport:
    """Coefficientwise form of sum_{r(n) > 0} z^n = (1 - z) sum_n R2(n) z^n:
    indicator(n) == R2(n) - R2(n - 1) for 1 <= n <= n_max, with R2(0) = 0.

    R2 is counted independently from the sorted list of represented numbers
    unless a table r2[0..n_max] is passed in.
    """
    if n_max < 1:
        raise InterfaceError(f"n_max must be >= 1, not {n_max}")
    indicator = _indicator(source, n_max, settings)
    indicator[0] = 0
    if r2 is None:
        represented = np.flatnonzero(indicator)
        r2 = np.searchsorted(represented, np.arange(n_max + 1), side='right')
    elif len(r2) < n_max + 1:
        raise InterfaceError(f"R2 table has {len(r2)} entries, needed {n_max + 1}")
    r2 = np.asarray(r2[:n_max + 1], dtype=np.int64)
    if r2[0] != 0:
        return TrivialityReport(n_max, False, 0)
    mismatches = np.flatnonzero(indicator[1:] != np.diff(r2))
    if len(mismatches):
        return TrivialityReport(n_max, False, int(mismatches[0]) + 1)
    return TrivialityReport(n_max, True)
