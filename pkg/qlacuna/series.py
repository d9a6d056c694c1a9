# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Exact arithmetic on truncated Laurent series in one variable q with signed
64 bit integer coefficients.

A :class:`Series` knows its coefficients for all exponents below its
truncation order ``trunc``; everything at or above ``trunc`` is unknown. The
arithmetic keeps track of how far results can be trusted, so a coefficient
that is reported is always exact. Coefficients are stored densely in a numpy
``int64`` vector and every operation checks its magnitudes before computing,
so overflow raises :class:`~qlacuna.exceptions.SeriesOverflowError` instead
of wrapping around.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

import numpy as np

from qlacuna.exceptions import InterfaceError, NotInvertibleError, NotSupportedError, SeriesOverflowError, \
    TruncationError

COEFF_DTYPE = np.int64

# Stored magnitudes stay below this bound, so the sum of two coefficients
# always fits in int64.
SAFE_LIMIT = 2 ** 62

_EMPTY = np.zeros(0, dtype=COEFF_DTYPE)
_EMPTY.flags.writeable = False


@dataclass(frozen=True)
class Monomial:
    """The signed power sign * q**exp, used for the parameters a, b, Y1, Y2."""

    sign: int
    exp: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InterfaceError(f"monomial sign must be +1 or -1, not {self.sign!r}")
        if self.exp < 0:
            raise InterfaceError(f"monomial exponent must be >= 0, not {self.exp!r}")

    def __mul__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self.sign * other.sign, self.exp + other.exp)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        exp = self.exp - other.exp
        if exp < 0:
            raise NotSupportedError(f"{self} / {other} is not a power series monomial")
        return Monomial(self.sign * other.sign, exp)

    def __neg__(self) -> "Monomial":
        return Monomial(-self.sign, self.exp)

    def __pow__(self, n: int) -> "Monomial":
        if n < 0:
            raise NotSupportedError(f"negative power of {self}")
        return Monomial(self.sign ** (n % 2), self.exp * n)

    def shifted(self, k: int) -> "Monomial":
        """Multiply by q**k."""
        return Monomial(self.sign, self.exp + k)

    def __str__(self):
        if self.exp == 0:
            return str(self.sign)
        body = "q" if self.exp == 1 else f"q^{self.exp}"
        return body if self.sign == 1 else "-" + body


ONE = Monomial(1, 0)
MINUS_ONE = Monomial(-1, 0)
Q = Monomial(1, 1)


def _check(arr: np.ndarray) -> np.ndarray:
    if arr.size and int(np.abs(arr).max()) >= SAFE_LIMIT:
        raise SeriesOverflowError("coefficient magnitude exceeds the 64 bit working range")
    return arr


def _as_coeff_array(coeffs) -> np.ndarray:
    if isinstance(coeffs, np.ndarray):
        if coeffs.dtype.kind not in 'iu':
            raise InterfaceError(f"series coefficients must be integers, not {coeffs.dtype}")
        if coeffs.dtype.kind == 'u' and coeffs.size and int(coeffs.max()) >= SAFE_LIMIT:
            raise SeriesOverflowError("coefficient magnitude exceeds the 64 bit working range")
        return _check(np.array(coeffs, dtype=COEFF_DTYPE))
    values = [int(c) for c in coeffs]
    for c in values:
        if abs(c) >= SAFE_LIMIT:
            raise SeriesOverflowError(f"coefficient {c} exceeds the 64 bit working range")
    return np.array(values, dtype=COEFF_DTYPE)


class Series:
    """Immutable truncated Laurent series.

    ``coeffs[i]`` is the coefficient of ``q**(min_exp + i)``; exponents ``>= trunc``
    are unknown. In normal form the first coefficient is nonzero, and the zero
    series has ``min_exp == trunc`` and no coefficients.
    """

    __slots__ = ('min_exp', 'coeffs', 'trunc')

    min_exp: int
    coeffs: np.ndarray
    trunc: int

    def __init__(self, coeffs: Union[Iterable[int], np.ndarray] = (), min_exp: int = 0,
                 trunc: Optional[int] = None):
        """Coefficients at exponents >= trunc are dropped, missing ones are zero.
        Without trunc the series is known exactly up to its last given coefficient."""
        arr = _as_coeff_array(coeffs)
        if trunc is None:
            trunc = min_exp + len(arr)
        self._assign(arr, min_exp, trunc)

    @classmethod
    def _raw(cls, arr: np.ndarray, min_exp: int, trunc: int) -> "Series":
        # arr must be owned by the caller and already range-checked
        s = cls.__new__(cls)
        s._assign(arr, min_exp, trunc)
        return s

    def _assign(self, arr: np.ndarray, min_exp: int, trunc: int):
        length = trunc - min_exp
        if length <= 0:
            arr = _EMPTY
        elif len(arr) > length:
            arr = arr[:length]
        elif len(arr) < length:
            arr = np.concatenate([arr, np.zeros(length - len(arr), dtype=COEFF_DTYPE)])
        nonzero = np.flatnonzero(arr)
        if nonzero.size == 0:
            arr = _EMPTY
            min_exp = trunc
        else:
            first = int(nonzero[0])
            arr = arr[first:]
            min_exp += first
        if arr.flags.writeable:
            arr.flags.writeable = False
        object.__setattr__(self, 'coeffs', arr)
        object.__setattr__(self, 'min_exp', int(min_exp))
        object.__setattr__(self, 'trunc', int(trunc))

    def __setattr__(self, key, value):
        raise AttributeError("Series is immutable")

    # constructors

    @classmethod
    def zero(cls, trunc: int) -> "Series":
        return cls._raw(_EMPTY, trunc, trunc)

    @classmethod
    def one(cls, trunc: int) -> "Series":
        return cls._raw(np.ones(1, dtype=COEFF_DTYPE), 0, trunc)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], trunc: int) -> "Series":
        """Build a series from {exponent: coefficient}; exponents >= trunc are dropped."""
        kept = {e: c for e, c in terms.items() if e < trunc and c != 0}
        if not kept:
            return cls.zero(trunc)
        lo = min(kept)
        values = [0] * (trunc - lo)
        for e, c in kept.items():
            values[e - lo] = c
        return cls(values, lo, trunc)

    # inspection

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def is_power_series(self) -> bool:
        """True if no negative exponent has a nonzero coefficient."""
        return self.min_exp >= 0

    def coeff(self, n: int) -> int:
        if n >= self.trunc:
            raise TruncationError(f"coefficient of q^{n} requested from a series known up to q^{self.trunc - 1}")
        if n < self.min_exp:
            return 0
        return int(self.coeffs[n - self.min_exp])

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients of q^lo .. q^(hi-1) as a fresh int64 vector."""
        if hi > self.trunc:
            raise TruncationError(f"exponent {hi - 1} is beyond the truncation order {self.trunc}")
        out = np.zeros(max(hi - lo, 0), dtype=COEFF_DTYPE)
        start = max(lo, self.min_exp)
        if start < hi:
            out[start - lo:hi - lo] = self.coeffs[start - self.min_exp:hi - self.min_exp]
        return out

    def terms(self) -> Iterator[Tuple[int, int]]:
        for i in np.flatnonzero(self.coeffs):
            yield self.min_exp + int(i), int(self.coeffs[i])

    def to_dict(self) -> Dict[int, int]:
        return dict(self.terms())

    # ring operations

    def __add__(self, other) -> "Series":
        if isinstance(other, int):
            other = Series([other], 0, self.trunc)
        if not isinstance(other, Series):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        lo = min(self.min_exp, other.min_exp, trunc)
        out = np.zeros(trunc - lo, dtype=COEFF_DTYPE)
        for s in (self, other):
            if s.min_exp < trunc:
                out[s.min_exp - lo:] += s.coeffs[:trunc - s.min_exp]
        return Series._raw(_check(out), lo, trunc)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series._raw(-self.coeffs, self.min_exp, self.trunc)

    def __sub__(self, other) -> "Series":
        if isinstance(other, int):
            other = Series([other], 0, self.trunc)
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def scale(self, k: int) -> "Series":
        k = int(k)
        if self.is_zero() or k == 0:
            return Series.zero(self.trunc)
        if abs(k) * int(np.abs(self.coeffs).max()) >= SAFE_LIMIT:
            raise SeriesOverflowError(f"scaling by {k} leaves the 64 bit working range")
        return Series._raw(self.coeffs * k, self.min_exp, self.trunc)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        if not isinstance(other, Series):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Series":
        """Multiply by q**k; k may be negative."""
        return Series._raw(self.coeffs, self.min_exp + k, self.trunc + k)

    def mul_monomial(self, m: Monomial) -> "Series":
        s = self.shift(m.exp)
        return s if m.sign == 1 else -s

    def mul_binomial(self, sign: int, k: int) -> "Series":
        """Multiply by (1 - sign * q**k), k >= 0."""
        return self - self.shift(k).scale(sign)

    def div_binomial(self, sign: int, k: int) -> "Series":
        """Divide by (1 - sign * q**k) for k >= 1.

        Runs the recurrence t[i] = s[i] + sign * t[i - k] block by block,
        which takes len/k vector steps.
        """
        if k < 1:
            raise NotInvertibleError(f"1 - ({sign}) has no inverse in the integer series ring")
        t = np.array(self.coeffs, dtype=COEFF_DTYPE)
        length = len(t)
        for start in range(k, length, k):
            end = min(start + k, length)
            t[start:end] += sign * t[start - k:end - k]
            _check(t[start:end])
        return Series._raw(t, self.min_exp, self.trunc)

    def div_pochhammer(self, x: Monomial, step: int, n: int) -> "Series":
        """Divide by (x; q^step)_n, factor by factor."""
        _check_pochhammer_args(step, n)
        result = self
        for i in range(n):
            e = x.exp + step * i
            if e == 0:
                raise NotInvertibleError(f"({x}; q^{step})_{n} has a non-unit constant term")
            if e >= result.trunc - result.min_exp:
                break
            result = result.div_binomial(x.sign, e)
        return result

    def substitute_power(self, k: int) -> "Series":
        """q -> q**k"""
        if k < 1:
            raise InterfaceError(f"substitution power must be >= 1, not {k}")
        if k == 1 or self.is_zero():
            return Series._raw(self.coeffs, self.min_exp * k, self.trunc * k)
        out = np.zeros(len(self.coeffs) * k, dtype=COEFF_DTYPE)
        out[::k] = self.coeffs
        return Series._raw(out, self.min_exp * k, self.trunc * k)

    def truncated(self, trunc: int) -> "Series":
        """Forget everything at or above q^trunc."""
        if trunc >= self.trunc:
            return self
        return Series._raw(self.coeffs, self.min_exp, trunc)

    def invert(self) -> "Series":
        return invert(self)

    # comparison

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.min_exp == other.min_exp and self.trunc == other.trunc
                and np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None  # type: ignore

    def __repr__(self):
        return f"Series({self})"

    def __str__(self):
        parts = []
        for count, (e, c) in enumerate(self.terms()):
            if count == 12:
                parts.append("...")
                break
            if e == 0:
                body = str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        parts.append(f"+ O(q^{self.trunc})" if parts else f"O(q^{self.trunc})")
        return " ".join(parts)


def first_difference(s: Series, t: Series) -> Optional[int]:
    """Lowest exponent at which s and t differ on their common retained range, or None."""
    trunc = min(s.trunc, t.trunc)
    lo = min(s.min_exp, t.min_exp, trunc)
    diff = np.flatnonzero(s.dense(lo, trunc) != t.dense(lo, trunc))
    if diff.size == 0:
        return None
    return lo + int(diff[0])


def monomial_series(m: Monomial, trunc: int) -> Series:
    if trunc <= m.exp:
        raise TruncationError(f"truncation order {trunc} is too small to hold {m}")
    return Series([m.sign], m.exp, trunc)


def add(s: Series, t: Series) -> Series:
    return s + t


def sub(s: Series, t: Series) -> Series:
    return s - t


def neg(s: Series) -> Series:
    return -s


def scale(s: Series, k: int) -> Series:
    return s.scale(k)


def mul(s: Series, t: Series) -> Series:
    """Cauchy product.

    An output exponent is kept only when every pair that contributes to it
    is known, i.e. below min(s.trunc + t.min_exp, t.trunc + s.min_exp).
    """
    trunc = min(s.trunc + t.min_exp, t.trunc + s.min_exp)
    lo = s.min_exp + t.min_exp
    length = trunc - lo
    if length <= 0 or s.is_zero() or t.is_zero():
        return Series.zero(trunc)
    a = s.coeffs[:length]
    b = t.coeffs[:length]
    if len(a) == 1:
        return t.shift(s.min_exp).scale(int(a[0])).truncated(trunc)
    if len(b) == 1:
        return s.shift(t.min_exp).scale(int(b[0])).truncated(trunc)
    # every partial sum of the exact product is bounded by the product of absolute values
    bound = np.convolve(np.abs(a).astype(np.float64), np.abs(b).astype(np.float64))[:length]
    if bound.max() >= SAFE_LIMIT / 2:
        raise SeriesOverflowError("product coefficients would exceed the 64 bit working range")
    out = np.convolve(a, b)[:length]
    return Series._raw(np.ascontiguousarray(out, dtype=COEFF_DTYPE), lo, trunc)


def invert(s: Series) -> Series:
    """Multiplicative inverse of a series whose lowest coefficient is +1 or -1."""
    if s.is_zero():
        raise NotInvertibleError("the zero series has no inverse")
    a = s.coeffs
    u = int(a[0])
    if u not in (1, -1):
        raise NotInvertibleError(f"leading coefficient {u} is not a unit")
    length = len(a)
    t = np.zeros(length, dtype=COEFF_DTYPE)
    t[0] = u
    a_abs = np.abs(a).astype(np.float64)
    t_abs = np.zeros(length, dtype=np.float64)
    t_abs[0] = 1.0
    for i in range(1, length):
        if a_abs[1:i + 1].dot(t_abs[i - 1::-1]) >= SAFE_LIMIT / 2:
            raise SeriesOverflowError(f"inverse coefficient of relative order {i} leaves the 64 bit working range")
        t[i] = -u * int(a[1:i + 1].dot(t[i - 1::-1]))
        t_abs[i] = abs(float(t[i]))
    return Series._raw(t, -s.min_exp, s.trunc - 2 * s.min_exp)


def substitute_power(s: Series, k: int) -> Series:
    return s.substitute_power(k)


def _check_pochhammer_args(step: int, n: int):
    if step < 1:
        raise InterfaceError(f"pochhammer step must be >= 1, not {step}")
    if n < 0:
        raise InterfaceError(f"pochhammer length must be >= 0, not {n}")


def pochhammer(x: Monomial, step: int, n: int, trunc: int) -> Series:
    """(x; q^step)_n = (1 - x)(1 - x q^step)...(1 - x q^(step (n-1))), truncated."""
    _check_pochhammer_args(step, n)
    result = Series.one(trunc)
    for i in range(n):
        e = x.exp + step * i
        if e >= trunc:
            break
        result = result.mul_binomial(x.sign, e)
    return result


def pochhammer_inverse(x: Monomial, step: int, n: int, trunc: int) -> Series:
    """1 / (x; q^step)_n, truncated."""
    return Series.one(trunc).div_pochhammer(x, step, n)


def factors_below(x: Monomial, step: int, trunc: int) -> int:
    """Number of factors of (x; q^step)_oo that differ from 1 below q^trunc."""
    if x.exp >= trunc:
        return 0
    return (trunc - 1 - x.exp) // step + 1


def pochhammer_infinite(x: Monomial, step: int, trunc: int) -> Series:
    """(x; q^step)_oo, truncated."""
    return pochhammer(x, step, factors_below(x, step, trunc), trunc)


def pochhammer_infinite_inverse(x: Monomial, step: int, trunc: int) -> Series:
    return pochhammer_inverse(x, step, factors_below(x, step, trunc), trunc)


def coeff(s: Series, n: int) -> int:
    return s.coeff(n)
