"""
Module containing shared utilities only used for testing qlacuna
"""
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import numpy as np

from qlacuna.series import Series, first_difference


def poly(*coeffs, trunc=None, min_exp=0) -> Series:
    """poly(1, 2, 0, -1, trunc=5) is 1 + 2q - q^3 + O(q^5)"""
    return Series(list(coeffs), min_exp, trunc)


def random_series(rng: np.random.Generator, length: int, unit: bool = False) -> Series:
    """Small random power series known below q^length; with unit set the
    constant term is +1 or -1."""
    coeffs = rng.integers(-3, 4, size=length)
    if unit:
        coeffs[0] = rng.choice([-1, 1])
    return Series(coeffs, 0, length)


class SeriesAssertions:
    """Mixin for unittest.TestCase"""

    def assertSameSeries(self, s: Series, t: Series):
        diff = first_difference(s, t)
        if diff is not None:
            self.fail(f"series differ at q^{diff}:\n  {s}\n  {t}")  # type: ignore
