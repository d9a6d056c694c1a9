# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import math
import unittest
from unittest.mock import patch

import numpy as np

from qlacuna import identities
from qlacuna.exceptions import InterfaceError, ResourceLimitError
from qlacuna.identities import FAMILIES, P1, P2, P3, enumerate_partitions, family, lhs, nonzero_density, \
    odd_parts_series, odd_parts_without_gaps, p1_formula, rhs, rhs_coeff, rhs_coefficients, verify_identity
from qlacuna.partitions import multiplicities
from qlacuna.quadforms import SUM_OF_TWO_SQUARES, X2_MINUS_2Y2, X2_PLUS_2Y2, presence_table
from qlacuna.series import Series
from qlacuna.settings import Settings

ORDER = 500


class TestFamilies(unittest.TestCase):
    def test_discriminants(self):
        self.assertEqual((P1.discriminant, P2.discriminant, P3.discriminant), (8, -8, -4))
        self.assertEqual((P1.form, P2.form, P3.form), (X2_MINUS_2Y2, X2_PLUS_2Y2, SUM_OF_TWO_SQUARES))

    def test_lookup(self):
        self.assertIs(family('p2'), P2)
        self.assertIs(family('P3'), P3)
        self.assertRaises(InterfaceError, family, 'p4')


class TestSides(unittest.TestCase):
    def test_lhs_low_order(self):
        self.assertEqual(list(lhs(P1, 6).dense(0, 6)), [1, 2, -2, 0, 2, 0])
        self.assertEqual(list(lhs(P2, 5).dense(0, 5)), [1, 2, 0, 0, 2])
        self.assertEqual(lhs(P3, 10).coeff(2), -2)

    def test_rhs_low_order(self):
        self.assertEqual(rhs(P1, 10).coeff(1), 2)
        self.assertEqual(rhs(P2, 10).coeff(0), 1)
        self.assertEqual(list(rhs(P1, 6).dense(0, 6)), [1, 2, -2, 0, 2, 0])

    def test_third_family_lives_in_q_squared(self):
        coefficients = rhs_coefficients(P3, 200)
        self.assertFalse(coefficients[1::2].any())
        self.assertEqual(rhs(P3, 10).coeff(1), 0)
        self.assertFalse(lhs(P3, 201).dense(0, 201)[1::2].any())

    def test_identities_hold(self):
        for f in FAMILIES.values():
            check = verify_identity(f, ORDER)
            self.assertTrue(check.passed, f"{f} differs at q^{check.first_exponent}")

    def test_beyond_int64_products(self):
        # the running products overflow int64 well below these orders
        for f, order in ((P1, 1000), (P2, 1000), (P3, 1700)):
            check = verify_identity(f, order)
            self.assertTrue(check.passed, f"{f} differs at q^{check.first_exponent}")

    def test_small_orders(self):
        self.assertEqual(lhs(P1, 1), Series.one(1))
        self.assertEqual(rhs(P3, 1), Series.one(1))
        self.assertRaises(InterfaceError, lhs, P1, 0)

    def test_mutation(self):
        real_rhs = identities.rhs

        def off_by_one(f, trunc):
            return real_rhs(f, trunc) + Series([1], 7, trunc)

        with patch('qlacuna.identities.rhs', off_by_one):
            check = verify_identity(P2, 50)
        self.assertFalse(check.passed)
        self.assertEqual(check.first_exponent, 7)
        self.assertEqual(check.rhs_value, check.lhs_value + 1)


class TestCoefficientOracles(unittest.TestCase):
    def test_p1_formula(self):
        self.assertEqual(p1_formula(1), 2)
        self.assertRaises(InterfaceError, p1_formula, 0)

    def test_p1_formula_agrees(self):
        left = lhs(P1, ORDER + 1)
        right = rhs_coefficients(P1, ORDER)
        for n in range(1, ORDER + 1):
            self.assertEqual(p1_formula(n), rhs_coeff(P1, n), n)
            self.assertEqual(p1_formula(n), right[n], n)
            self.assertEqual(p1_formula(n), left.coeff(n), n)

    def test_rhs_coeff(self):
        self.assertEqual(rhs_coeff(P1, 1), 2)
        self.assertEqual(rhs_coeff(P2, 0), 1)
        for f in FAMILIES.values():
            table = rhs_coefficients(f, 300)
            for n in range(301):
                self.assertEqual(rhs_coeff(f, n), table[n], (f, n))

    def test_rhs_coeff_matches_series(self):
        for n in (0, 1, 17, 64, 299):
            self.assertEqual(rhs_coeff(P3, n), rhs(P3, n + 1).coeff(n))

    def test_lacunarity(self):
        for f in FAMILIES.values():
            d3, d4, d5 = (nonzero_density(f, 10 ** k) for k in (3, 4, 5))
            self.assertLess(d4, d3, f)
            self.assertLess(d5, d4, f)

    def test_support_is_represented(self):
        # 2(a^2 + b^2) = (a + b)^2 + (a - b)^2
        support = rhs_coefficients(P3, 10 ** 4) != 0
        represented = presence_table(SUM_OF_TWO_SQUARES, 10 ** 4)
        self.assertFalse(np.any(support[1:] & ~represented[1:]))


class TestPartitions(unittest.TestCase):
    def test_first_values(self):
        for f in FAMILIES.values():
            self.assertEqual(enumerate_partitions(f, 1).value, lhs(f, 2).coeff(1))
        self.assertEqual(enumerate_partitions(P3, 2).value, -2)

    def test_match_lhs(self):
        for f in FAMILIES.values():
            left = lhs(f, 61)
            for n in range(1, 61):
                self.assertEqual(enumerate_partitions(f, n).value, left.coeff(n), (f, n))

    def test_listing_agrees(self):
        for f in FAMILIES.values():
            for n in range(1, 26):
                total = 0
                k = 1
                while f.term_exponent(k) <= n:
                    slots = identities._slots(f, k)
                    for ms in multiplicities(slots, n):
                        total += math.prod(slot.weight(m) for slot, m in zip(slots, ms))
                    k += 1
                self.assertEqual(enumerate_partitions(f, n).value, 2 * total, (f, n))

    def test_bound(self):
        self.assertRaises(ResourceLimitError, enumerate_partitions, P1, 61)
        settings = Settings()
        settings.enumeration_bound = 10
        self.assertRaises(ResourceLimitError, enumerate_partitions, P1, 11, settings)
        self.assertRaises(InterfaceError, enumerate_partitions, P1, 0)

    def test_odd_parts_without_gaps(self):
        for k in range(1, 5):
            series = odd_parts_series(k, 40)
            for n in range(40):
                self.assertEqual(odd_parts_without_gaps(n, k), series.coeff(n), (n, k))

    def test_odd_parts_examples(self):
        # 8 = 3+3+1+1 = 3+1+1+1+1+1
        self.assertEqual(odd_parts_without_gaps(4, 2), 1)
        self.assertEqual(odd_parts_without_gaps(8, 2), 2)
        self.assertEqual(odd_parts_without_gaps(9, 3), 1)


if __name__ == '__main__':
    unittest.main()
