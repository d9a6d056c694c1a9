# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Bailey pairs: construction, the Lovejoy transform, verification against the
defining relation

    beta_n = sum_{0 <= i <= n} alpha_i / ((q; q)_{n-i} (aq; q)_{n+i})

and both sides of the weak Bailey lemma.

Pairs are evaluated lazily: ``pair.alpha(n, trunc)`` returns alpha_n as a
series known below q^trunc.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from qlacuna.exceptions import InternalError, InterfaceError, NotSupportedError
from qlacuna.series import ONE, Q, Monomial, Series, factors_below, first_difference, pochhammer, \
    pochhammer_inverse

logger = logging.getLogger(__name__)

Builder = Callable[[int, int], Series]


class _Infinity:
    """The formal limit Y -> oo of a weak Bailey lemma parameter."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()

YParam = Union[Monomial, _Infinity]


class BaileyPair:
    """A Bailey pair relative to (a, q).

    alpha and beta are builders ``(n, trunc) -> Series``; results are cached
    since pairs are immutable.
    """

    a: Monomial
    label: str

    def __init__(self, a: Monomial, alpha: Builder, beta: Builder, label: str):
        self.a = a
        self.label = label
        self._alpha = alpha
        self._beta = beta
        self._cache: Dict[Tuple[str, int, int], Series] = {}

    def _get(self, kind: str, builder: Builder, n: int, trunc: int) -> Series:
        if n < 0:
            raise InterfaceError(f"Bailey pair index must be >= 0, not {n}")
        key = (kind, n, trunc)
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = builder(n, trunc).truncated(trunc)
        self._cache[key] = value
        return value

    def alpha(self, n: int, trunc: int) -> Series:
        return self._get('alpha', self._alpha, n, trunc)

    def beta(self, n: int, trunc: int) -> Series:
        return self._get('beta', self._beta, n, trunc)

    def __repr__(self):
        return f"<BaileyPair {self.label} relative to ({self.a}, q)>"


def _shifted(d: int, trunc: int, build: Callable[[int], Series]) -> Series:
    """q^d * build(trunc - d), or zero when q^d is already beyond the truncation."""
    if d >= trunc:
        return Series.zero(trunc)
    return build(trunc - d).shift(d)


def _alternating_squares(n: int, scale: int, trunc: int) -> Series:
    """sum over 2|j| <= n of (-1)^j q^(scale j^2); scale may be negative."""
    terms: Dict[int, int] = {}
    for j in range(-(n // 2), n // 2 + 1):
        e = scale * j * j
        terms[e] = terms.get(e, 0) + (-1) ** (j % 2)
    return Series.from_terms(terms, trunc)


def _geometric_polynomial(n: int, trunc: int) -> Series:
    """(1 - q^(2n+1)) / (1 - q) = 1 + q + ... + q^(2n)"""
    return Series.from_terms({i: 1 for i in range(2 * n + 1)}, trunc)


def _slater_beta(n: int, trunc: int) -> Series:
    """1 / ((q)_n (q; q^2)_n)"""
    return pochhammer_inverse(Q, 1, n, trunc).div_pochhammer(Q, 2, n)


def _slater_alpha(exponent: Callable[[int], int]) -> Builder:
    # alpha_0 = 1 is what the defining relation forces at n = 0 (beta_0 = 1);
    # the closed form below only applies from m = 1 on.
    def alpha(n: int, trunc: int) -> Series:
        if n == 0:
            return Series.one(trunc)
        if n % 2:
            return Series.zero(trunc)
        m = n // 2
        e = exponent(m)
        sign = (-1) ** (m % 2)
        return Series.from_terms({e: sign, e + 2 * m: sign}, trunc)
    return alpha


def slater_C1() -> BaileyPair:
    """alpha_2n = (-1)^n q^(n(3n-1)) (1 + q^2n), beta_n = 1 / ((q)_n (q; q^2)_n), relative to (1, q)"""
    return BaileyPair(ONE, _slater_alpha(lambda m: m * (3 * m - 1)), _slater_beta, "C1")


def slater_C5() -> BaileyPair:
    """alpha_2n = (-1)^n q^(n(n-1)) (1 + q^2n), beta_n = q^(n(n-1)/2) / ((q)_n (q; q^2)_n), relative to (1, q)"""
    def beta(n: int, trunc: int) -> Series:
        return _shifted(n * (n - 1) // 2, trunc, lambda t: _slater_beta(n, t))

    return BaileyPair(ONE, _slater_alpha(lambda m: m * (m - 1)), beta, "C5")


def _closed_form_beta(n: int, trunc: int, d: int) -> Series:
    """2 q^d / ((1 + q^n) (q)_n (q; q^2)_n)"""
    if n == 0:
        return Series.one(trunc)
    return _shifted(d, trunc, lambda t: _slater_beta(n, t).div_binomial(-1, n).scale(2))


def pair_L1() -> BaileyPair:
    """The first closed form pair relative to (q, q)."""
    def alpha(n: int, trunc: int) -> Series:
        d = n * (n - 1) // 2

        def build(t: int) -> Series:
            return _alternating_squares(n, 1, t) * _geometric_polynomial(n, t)
        return _shifted(d, trunc, build)

    def beta(n: int, trunc: int) -> Series:
        return _closed_form_beta(n, trunc, 0)

    return BaileyPair(Q, alpha, beta, "L1")


def pair_L2() -> BaileyPair:
    """The second closed form pair relative to (q, q).

    Its alpha carries q^(-j^2) inside the sum, which is assembled as a
    Laurent series before the outer q^(n(n-1)/2) brings it back to an
    ordinary power series.
    """
    def alpha(n: int, trunc: int) -> Series:
        d = n * (n - 1) // 2
        depth = (n // 2) ** 2
        if d - depth >= trunc:
            return Series.zero(trunc)
        inner_trunc = trunc - d
        inner = _alternating_squares(n, -1, inner_trunc)
        # the polynomial is exact, so let it reach far enough to cover q^(-depth)
        result = (inner * _geometric_polynomial(n, inner_trunc + depth)).shift(d)
        if result.min_exp < 0:
            raise InternalError(f"alpha_{n} of L2 has a negative exponent")
        return result

    def beta(n: int, trunc: int) -> Series:
        return _closed_form_beta(n, trunc, n * (n - 1) // 2)

    return BaileyPair(Q, alpha, beta, "L2")


def unit_pair(a: Monomial = ONE) -> BaileyPair:
    """alpha_0 = 1, alpha_n = 0 otherwise, beta_n = 1 / ((q)_n (aq)_n)"""
    aq = a.shifted(1)

    def alpha(n: int, trunc: int) -> Series:
        return Series.one(trunc) if n == 0 else Series.zero(trunc)

    def beta(n: int, trunc: int) -> Series:
        return pochhammer_inverse(Q, 1, n, trunc).div_pochhammer(aq, 1, n)

    return BaileyPair(a, alpha, beta, f"unit({a})")


def lovejoy_transform(p: BaileyPair, b: Monomial) -> BaileyPair:
    """Map a pair relative to (a, q) to a pair relative to (aq, q).

    alpha'_n = (1 - a q^(2n+1)) (aq/b)_n (-b)^n q^(n(n-1)/2) / ((1 - aq) (bq)_n)
               * sum_j (b)_j / (aq/b)_j (-b)^(-j) q^(-j(j-1)/2) alpha_j
    beta'_n  = (1 - b) / (1 - b q^n) beta_n

    The monomials (-b)^(n-j) q^((n(n-1) - j(j-1))/2) are combined per term,
    which keeps every summand an ordinary power series.
    """
    if b == ONE:
        raise NotSupportedError("b = 1 makes the Lovejoy transform degenerate")
    a = p.a
    aq = a.shifted(1)
    aq_over_b = aq / b
    minus_b = -b

    def alpha(n: int, trunc: int) -> Series:
        total = Series.zero(trunc)
        for j in range(n + 1):
            m = minus_b ** (n - j)
            d = m.exp + (n * (n - 1) - j * (j - 1)) // 2
            if d >= trunc:
                continue
            t = trunc - d
            alpha_j = p.alpha(j, t)
            if alpha_j.is_zero():
                continue
            ratio = pochhammer(b, 1, j, t).div_pochhammer(aq_over_b, 1, j)
            total = total + (ratio * alpha_j).mul_monomial(Monomial(m.sign, d))
        result = total.mul_binomial(a.sign, a.exp + 2 * n + 1)
        result = result * pochhammer(aq_over_b, 1, n, trunc)
        result = result.div_binomial(a.sign, a.exp + 1).div_pochhammer(b.shifted(1), 1, n)
        result = result.truncated(trunc)
        if result.min_exp < 0:
            raise InternalError(f"transformed alpha_{n} of {p.label} has a negative exponent")
        return result

    def beta(n: int, trunc: int) -> Series:
        beta_n = p.beta(n, trunc)
        if n == 0:
            return beta_n
        return beta_n.mul_binomial(b.sign, b.exp).div_binomial(b.sign, b.exp + n)

    return BaileyPair(aq, alpha, beta, f"lovejoy({p.label}, b={b})")


def perturbed(p: BaileyPair, n: int, exponent: int, delta: int = 1, which: str = 'beta') -> BaileyPair:
    """Copy of p with delta * q^exponent added to alpha_n or beta_n."""
    if which not in ('alpha', 'beta'):
        raise InterfaceError(f"can only perturb alpha or beta, not {which!r}")

    def wrap(builder: Builder) -> Builder:
        def build(k: int, trunc: int) -> Series:
            value = builder(k, trunc)
            if k == n and exponent < trunc:
                value = value + Series([delta], exponent, trunc)
            return value
        return build

    alpha: Builder = p.alpha
    beta: Builder = p.beta
    if which == 'alpha':
        alpha = wrap(alpha)
    else:
        beta = wrap(beta)
    return BaileyPair(p.a, alpha, beta, f"{p.label}+{delta}q^{exponent}@{which}_{n}")


PAIRS: Dict[str, Callable[[], BaileyPair]] = {
    'C1': slater_C1,
    'C5': slater_C5,
    'L1': pair_L1,
    'L2': pair_L2,
}


@dataclass
class IndexCheck:
    n: int
    passed: bool
    first_exponent: Optional[int] = None


@dataclass
class VerificationReport:
    """Per-index outcome of a pair check. Failures are data, not errors."""

    label: str
    n_max: int
    trunc: int
    rows: List[IndexCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def first_failure(self) -> Optional[IndexCheck]:
        for r in self.rows:
            if not r.passed:
                return r
        return None


def defining_sum(p: BaileyPair, n: int, trunc: int) -> Series:
    """sum_{0 <= i <= n} alpha_i / ((q)_{n-i} (aq)_{n+i})"""
    aq = p.a.shifted(1)
    total = Series.zero(trunc)
    for i in range(n + 1):
        alpha_i = p.alpha(i, trunc)
        if alpha_i.is_zero():
            continue
        total = total + alpha_i.div_pochhammer(Q, 1, n - i).div_pochhammer(aq, 1, n + i)
    return total


def verify_pair(p: BaileyPair, n_max: int, trunc: int) -> VerificationReport:
    if n_max < 0:
        raise InterfaceError(f"n_max must be >= 0, not {n_max}")
    report = VerificationReport(p.label, n_max, trunc)
    for n in range(n_max + 1):
        diff = first_difference(defining_sum(p, n, trunc), p.beta(n, trunc))
        report.rows.append(IndexCheck(n, diff is None, diff))
        if diff is not None:
            logger.debug(f"{p.label}: defining relation fails at n={n}, exponent {diff}")
    if report.passed:
        logger.info(f"{p.label} is a Bailey pair for n <= {n_max} below q^{trunc}")
    else:
        logger.info(f"{p.label} fails the defining relation at n={report.first_failure.n}")  # type: ignore
    return report


def pairs_equal(p: BaileyPair, other: BaileyPair, n_max: int, trunc: int) -> VerificationReport:
    """Check that two pairs have the same base and agree term by term."""
    report = VerificationReport(f"{p.label} == {other.label}", n_max, trunc)
    same_base = p.a == other.a
    for n in range(n_max + 1):
        diff = first_difference(p.alpha(n, trunc), other.alpha(n, trunc))
        if diff is None:
            diff = first_difference(p.beta(n, trunc), other.beta(n, trunc))
        report.rows.append(IndexCheck(n, same_base and diff is None, diff))
    return report


# weak Bailey lemma

def _check_y(y: YParam, name: str):
    if not (isinstance(y, Monomial) or y is INFINITY):
        raise InterfaceError(f"{name} must be a Monomial or INFINITY, not {y!r}")


class _WeakBaileyTerms:
    """Running pieces of the n-th summand of the weak Bailey lemma.

    weight(n) = (Y1)_n (Y2)_n (aq / Y1 Y2)^n, where a parameter going to
    infinity replaces (Y)_n (c/Y)^n by (-1)^n q^(n(n-1)/2) c^n. The weight is
    kept as a polynomial part times a monomial.
    """

    def __init__(self, a: Monomial, y1: YParam, y2: YParam, trunc: int):
        _check_y(y1, "Y1")
        _check_y(y2, "Y2")
        self.trunc = trunc
        self.aq = a.shifted(1)
        self.finite = [y for y in (y1, y2) if isinstance(y, Monomial)]
        infinite = 2 - len(self.finite)
        if infinite == 0:
            rate = self.aq / (self.finite[0] * self.finite[1])
            if rate.exp == 0:
                raise NotSupportedError(f"aq/(Y1 Y2) = {rate} makes the weak Bailey sums diverge")
        elif infinite == 1:
            rate = self.aq / self.finite[0]
        else:
            rate = self.aq
        self.rate = rate
        self.infinite = infinite
        # the (aq/Y)_n in the denominator of the alpha side, one per finite Y
        self.shifted_params = [self.aq / y for y in self.finite]

    def monomial(self, n: int) -> Monomial:
        exp = self.rate.exp * n + self.infinite * (n * (n - 1) // 2)
        sign = self.rate.sign ** (n % 2) * (-1) ** ((self.infinite * n) % 2)
        return Monomial(sign, exp)

    def polynomial(self, n: int) -> Series:
        result = Series.one(self.trunc)
        for y in self.finite:
            result = result * pochhammer(y, 1, n, self.trunc)
        return result

    def prefactor(self) -> Series:
        """(aq/Y1)_oo (aq/Y2)_oo / ((aq)_oo (aq/Y1Y2)_oo)"""
        t = self.trunc
        result = Series.one(t)
        for c in self.shifted_params:
            result = result * pochhammer(c, 1, factors_below(c, 1, t), t)
        result = result.div_pochhammer(self.aq, 1, factors_below(self.aq, 1, t))
        if self.infinite == 0:
            result = result.div_pochhammer(self.rate, 1, factors_below(self.rate, 1, t))
        return result

    def indices(self):
        n = 0
        while self.monomial(n).exp < self.trunc or n < 2:
            yield n
            n += 1


def weak_bailey_lhs(p: BaileyPair, y1: YParam, y2: YParam, trunc: int) -> Series:
    """sum_n (Y1)_n (Y2)_n (aq/Y1Y2)^n beta_n"""
    w = _WeakBaileyTerms(p.a, y1, y2, trunc)
    total = Series.zero(trunc)
    for n in w.indices():
        mono = w.monomial(n)
        if mono.exp >= trunc:
            continue
        beta_n = p.beta(n, trunc - mono.exp)
        total = total + (w.polynomial(n) * beta_n).mul_monomial(mono)
    return total.truncated(trunc)


def weak_bailey_rhs(p: BaileyPair, y1: YParam, y2: YParam, trunc: int) -> Series:
    """(aq/Y1)_oo (aq/Y2)_oo / ((aq)_oo (aq/Y1Y2)_oo)
    * sum_n (Y1)_n (Y2)_n (aq/Y1Y2)^n alpha_n / ((aq/Y1)_n (aq/Y2)_n)"""
    w = _WeakBaileyTerms(p.a, y1, y2, trunc)
    total = Series.zero(trunc)
    for n in w.indices():
        mono = w.monomial(n)
        if mono.exp >= trunc:
            continue
        alpha_n = p.alpha(n, trunc - mono.exp)
        if alpha_n.is_zero():
            continue
        term = w.polynomial(n) * alpha_n
        for c in w.shifted_params:
            term = term.div_pochhammer(c, 1, n)
        total = total + term.mul_monomial(mono)
    return (w.prefactor() * total).truncated(trunc)


def weak_bailey_check(p: BaileyPair, y1: YParam, y2: YParam, trunc: int) -> Optional[int]:
    """First exponent where the two sides of the weak Bailey lemma differ, or None."""
    lhs = weak_bailey_lhs(p, y1, y2, trunc)
    rhs = weak_bailey_rhs(p, y1, y2, trunc)
    diff = first_difference(lhs, rhs)
    if diff is not None and logger.isEnabledFor(logging.DEBUG):
        logger.debug(f"weak Bailey lemma for {p.label}, Y1={y1}, Y2={y2} differs at q^{diff}")
    return diff
