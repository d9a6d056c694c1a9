# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import math
import unittest

import numpy as np

from qlacuna.exceptions import DomainError, InterfaceError, ResourceLimitError
from qlacuna.identities import FAMILIES, P3
from qlacuna.quadforms import SUM_OF_TWO_SQUARES, X2_PLUS_2Y2, presence_table
from qlacuna.settings import Settings
from qlacuna.tauber import AsymptoticSpec, CoefficientTable, bound_profile, boundedness_proxy, eval_series, \
    family_source, geometric_source, hl_rhs, indicator_source, inv_sqrt_log, tauber_ratio_check, \
    representation_source, tail_length, triviality_check

LANDAU = 0.7642


class TestComparisonFunction(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(hl_rhs(AsymptoticSpec(), 0.9), 100.0, places=9)
        z = 1 - math.exp(-2)
        value = hl_rhs(AsymptoticSpec(h='inv_sqrt_log'), z)
        self.assertTrue(math.isclose(value, math.exp(4) / math.sqrt(2), rel_tol=1e-9))
        self.assertAlmostEqual(hl_rhs(AsymptoticSpec(delta=2, K=0.5), 0.5), 8.0)

    def test_monotone(self):
        zs = [1 - 0.5 * 0.8 ** k for k in range(1, 60)]
        for spec in (AsymptoticSpec(), AsymptoticSpec(h='inv_sqrt_log'), AsymptoticSpec(delta=2, K=0.5),
                     AsymptoticSpec(h='inv_sqrt_log', K=LANDAU)):
            values = [hl_rhs(spec, z) for z in zs]
            for a, b in zip(values, values[1:]):
                self.assertLess(a, b, spec)

    def test_domain(self):
        for z in (0.0, 1.0, 1.5, -0.1):
            self.assertRaises(DomainError, hl_rhs, AsymptoticSpec(), z)
        self.assertRaises(DomainError, inv_sqrt_log, 1.0)

    def test_invalid_spec(self):
        self.assertRaises(InterfaceError, AsymptoticSpec, 0)
        self.assertRaises(InterfaceError, AsymptoticSpec, 1, 'log')


class TestCoefficientTable(unittest.TestCase):
    def test_needs_one_provider(self):
        self.assertRaises(InterfaceError, CoefficientTable)
        self.assertRaises(InterfaceError, CoefficientTable, lambda n: n, lambda n: np.arange(n + 1))

    def test_values(self):
        table = CoefficientTable(func=lambda n: n * n)
        self.assertEqual(list(table.values(4)), [0.0, 1.0, 4.0, 9.0, 16.0])
        self.assertEqual(list(table.values(2)), [0.0, 1.0, 4.0])
        self.assertEqual(table.values(4).dtype, np.float64)

    def test_short_bulk(self):
        table = CoefficientTable(bulk=lambda n: np.ones(n, dtype=np.int64))
        self.assertRaises(InterfaceError, table.values, 5)


class TestEvaluation(unittest.TestCase):
    def test_tail_length(self):
        self.assertEqual(tail_length(0.5), 60)
        lengths = [tail_length(1 - 2.0 ** -k) for k in range(1, 12)]
        self.assertEqual(sorted(lengths), lengths)

    def test_cap(self):
        settings = Settings()
        settings.max_n = 1000
        self.assertRaises(ResourceLimitError, tail_length, 0.999, settings)
        self.assertRaises(ResourceLimitError, eval_series, geometric_source(), 0.999, settings)
        self.assertEqual(tail_length(0.5, settings), 60)

    def test_examples(self):
        self.assertAlmostEqual(eval_series(geometric_source(), 0.5), 2.0, places=12)
        self.assertAlmostEqual(eval_series(geometric_source(), 0.9), 10.0, places=9)
        self.assertAlmostEqual(eval_series(lambda n: n, 0.5), 2.0, places=9)

    def test_tail_adequacy(self):
        settings = Settings()
        settings.tail_factor = 60
        source = representation_source(SUM_OF_TWO_SQUARES)
        for z in (0.9, 0.99, 0.999):
            short = eval_series(source, z)
            long = eval_series(source, z, settings)
            self.assertLess(abs(short - long), 1e-9 * abs(long), z)


class TestRatio(unittest.TestCase):
    def test_geometric(self):
        for ratio in tauber_ratio_check(AsymptoticSpec(), geometric_source(), [0.9, 0.99, 0.999]):
            self.assertAlmostEqual(ratio, 1.0, places=9)

    def test_gauss_circle(self):
        ratios = tauber_ratio_check(AsymptoticSpec(K=math.pi), representation_source(SUM_OF_TWO_SQUARES),
                                     [1 - 2.0 ** -k for k in (6, 8, 10)])
        self.assertLess(abs(ratios[-1] - 1), 0.01)
        errors = [abs(r - 1) for r in ratios]
        self.assertEqual(sorted(errors, reverse=True), errors)

    def test_gauss_circle_close_to_one(self):
        ratio, = tauber_ratio_check(AsymptoticSpec(K=math.pi), representation_source(SUM_OF_TWO_SQUARES),
                                    [1 - 1e-4])
        self.assertLess(abs(ratio - 1), 0.05)

    def test_landau(self):
        spec = AsymptoticSpec(h='inv_sqrt_log', K=LANDAU)
        ratio, = tauber_ratio_check(spec, indicator_source(SUM_OF_TWO_SQUARES), [1 - 2.0 ** -12])
        self.assertTrue(0.7 < ratio < 1.4, ratio)


class TestBoundProfile(unittest.TestCase):
    def test_families(self):
        for f in FAMILIES.values():
            profile = bound_profile(f, 12)
            self.assertEqual(len(profile.zs), 11)
            self.assertTrue(boundedness_proxy(profile.B1), f)
            self.assertTrue(boundedness_proxy(profile.B2), f)

    def test_single_point(self):
        profile = bound_profile(P3, 2)
        self.assertEqual(profile.zs, [0.75])
        self.assertEqual(len(profile.B1), 1)
        self.assertEqual(len(profile.B2), 1)

    def test_range(self):
        self.assertRaises(InterfaceError, bound_profile, P3, 1)
        self.assertRaises(InterfaceError, bound_profile, P3, 15)

    def test_proxy(self):
        self.assertTrue(boundedness_proxy([1.0, 1.0, 1.0, 1.0]))
        self.assertFalse(boundedness_proxy([1.0, 1.0, 1.0, 10.0]))
        self.assertTrue(boundedness_proxy([1.0, 1.0, 1.0, 10.0], factor=10))
        self.assertRaises(InterfaceError, boundedness_proxy, [])

    def test_family_source_drops_constant_term(self):
        self.assertEqual(family_source(P3).values(4)[0], 0.0)


class TestTriviality(unittest.TestCase):
    def test_forms(self):
        for form in (SUM_OF_TWO_SQUARES, X2_PLUS_2Y2):
            report = triviality_check(form, 10 ** 4)
            self.assertTrue(report.passed, str(form))
            self.assertIsNone(report.first_failure)

    def test_family(self):
        self.assertTrue(triviality_check(P3, 2000).passed)

    def test_corrupted_table(self):
        indicator = presence_table(SUM_OF_TWO_SQUARES, 1000).astype(np.int64)
        indicator[0] = 0
        r2 = np.cumsum(indicator)
        self.assertTrue(triviality_check(SUM_OF_TWO_SQUARES, 1000, r2).passed)
        r2[500:] += 1
        report = triviality_check(SUM_OF_TWO_SQUARES, 1000, r2)
        self.assertFalse(report.passed)
        self.assertEqual(report.first_failure, 500)

    def test_invalid(self):
        self.assertRaises(InterfaceError, triviality_check, SUM_OF_TWO_SQUARES, 0)
        self.assertRaises(InterfaceError, triviality_check, SUM_OF_TWO_SQUARES, 10, np.zeros(5))
        self.assertRaises(InterfaceError, triviality_check, 'x', 10)


if __name__ == '__main__':
    unittest.main()
