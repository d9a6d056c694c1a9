# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import math
import unittest

import numpy as np

from qlacuna.exceptions import InterfaceError, NotSupportedError
from qlacuna.quadforms import FORMS, SUM_OF_TWO_SQUARES, X2_MINUS_2Y2, X2_PLUS_2Y2, QuadFormSpec, \
    constant_profile, parse_form, partial_sums, presence_table, rep_count, representation_table
from qlacuna.settings import Settings

OTHER = QuadFormSpec(2, 1, 3)


class TestFormSpec(unittest.TestCase):
    def test_discriminant(self):
        self.assertEqual(SUM_OF_TWO_SQUARES.discriminant, -4)
        self.assertEqual(X2_PLUS_2Y2.discriminant, -8)
        self.assertEqual(X2_MINUS_2Y2.discriminant, 8)
        self.assertEqual(OTHER.discriminant, -23)
        self.assertRaises(InterfaceError, QuadFormSpec, 1, 0, 1, -8)

    def test_definite(self):
        self.assertTrue(SUM_OF_TWO_SQUARES.definite)
        self.assertFalse(X2_MINUS_2Y2.definite)
        self.assertFalse(QuadFormSpec(-1, 0, -1).definite)

    def test_parse(self):
        self.assertEqual(parse_form('1,0,1'), SUM_OF_TWO_SQUARES)
        self.assertEqual(parse_form(' 1, 0, 2 '), X2_PLUS_2Y2)
        self.assertRaises(InterfaceError, parse_form, '1,0')
        self.assertRaises(InterfaceError, parse_form, '1,a,2')
        self.assertIs(FORMS['1,0,2'], X2_PLUS_2Y2)


class TestRepCount(unittest.TestCase):
    def test_sum_of_two_squares(self):
        self.assertEqual(rep_count(SUM_OF_TWO_SQUARES, 0), 1)
        self.assertEqual(rep_count(SUM_OF_TWO_SQUARES, 1), 4)
        self.assertEqual(rep_count(SUM_OF_TWO_SQUARES, 3), 0)
        self.assertEqual(rep_count(SUM_OF_TWO_SQUARES, 5), 8)
        self.assertEqual(rep_count(SUM_OF_TWO_SQUARES, 25), 12)

    def test_x2_plus_2y2(self):
        self.assertEqual(rep_count(X2_PLUS_2Y2, 2), 2)
        self.assertEqual(rep_count(X2_PLUS_2Y2, 3), 4)
        self.assertEqual(rep_count(X2_PLUS_2Y2, 5), 0)

    def test_indefinite(self):
        self.assertRaises(NotSupportedError, rep_count, X2_MINUS_2Y2, 7)
        self.assertRaises(NotSupportedError, representation_table, X2_MINUS_2Y2, 10)

    def test_negative(self):
        self.assertRaises(InterfaceError, rep_count, SUM_OF_TWO_SQUARES, -1)


class TestTable(unittest.TestCase):
    def test_matches_rep_count(self):
        for form in (SUM_OF_TWO_SQUARES, X2_PLUS_2Y2, OTHER):
            table = representation_table(form, 200)
            self.assertEqual(len(table), 201)
            for n in range(201):
                self.assertEqual(table[n], rep_count(form, n), (str(form), n))

    def test_chunk_size(self):
        reference = representation_table(OTHER, 3000)
        for rows in (1, 7, 100000):
            settings = Settings()
            settings.lattice_chunk_rows = rows
            self.assertTrue(np.array_equal(representation_table(OTHER, 3000, settings), reference), rows)

    def test_presence(self):
        present = presence_table(SUM_OF_TWO_SQUARES, 10)
        self.assertEqual(list(np.flatnonzero(present)), [0, 1, 2, 4, 5, 8, 9, 10])


class TestPartialSums(unittest.TestCase):
    def test_small(self):
        self.assertEqual(partial_sums(SUM_OF_TWO_SQUARES, 10).R1, 36)
        self.assertEqual(partial_sums(X2_PLUS_2Y2, 10).R2, 7)
        self.assertRaises(InterfaceError, partial_sums, SUM_OF_TWO_SQUARES, 1)

    def test_profile(self):
        profile = constant_profile(SUM_OF_TWO_SQUARES, [10, 100])
        self.assertEqual(profile[0].R1, 36)
        self.assertEqual([p.x for p in profile], [10, 100])
        self.assertEqual(profile[1].R1, partial_sums(SUM_OF_TWO_SQUARES, 100).R1)
        self.assertEqual(profile[1].R2, partial_sums(SUM_OF_TWO_SQUARES, 100).R2)

    def test_profile_order(self):
        self.assertRaises(InterfaceError, constant_profile, SUM_OF_TWO_SQUARES, [100, 10])
        self.assertRaises(InterfaceError, constant_profile, SUM_OF_TWO_SQUARES, [])

    def test_gauss_circle(self):
        summary = partial_sums(SUM_OF_TWO_SQUARES, 10 ** 6)
        self.assertLess(abs(summary.C1_hat - math.pi) / math.pi, 0.005)

    def test_landau_constant(self):
        profile = constant_profile(SUM_OF_TWO_SQUARES, [10 ** 4, 10 ** 5, 10 ** 6])
        c2 = [p.C2_hat for p in profile]
        for value in c2:
            self.assertTrue(0.5 < value < 1.2, value)
        self.assertLessEqual(max(c2), 1.2 * min(c2))
        self.assertEqual(sorted(p.R2 for p in profile), [p.R2 for p in profile])

    def test_constant_band(self):
        for form in (SUM_OF_TWO_SQUARES, X2_PLUS_2Y2):
            c2 = [p.C2_hat for p in constant_profile(form, [10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6])]
            for value in c2:
                self.assertTrue(0 < value < 2, (str(form), value))
            self.assertLessEqual(max(c2), 2 * min(c2), str(form))
            # last decade
            self.assertLess(abs(c2[-1] - c2[-2]) / c2[-2], 0.15, str(form))

    def test_x2_plus_2y2_constant(self):
        c1 = constant_profile(X2_PLUS_2Y2, [10 ** 4, 10 ** 5])[-1].C1_hat
        # area of the ellipse x^2 + 2 y^2 <= 1
        self.assertLess(abs(c1 - math.pi / math.sqrt(2)), 0.01)


if __name__ == '__main__':
    unittest.main()
