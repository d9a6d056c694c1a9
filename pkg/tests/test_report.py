# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import json
import unittest

import numpy as np

from qlacuna.exceptions import InterfaceError
from qlacuna.report import ERROR, FAIL, PASS, RunReport, convert


class TestConvert(unittest.TestCase):
    def test_bool(self):
        self.assertEqual(convert(True), 1)
        self.assertEqual(convert(np.bool_(False)), 0)

    def test_int(self):
        self.assertEqual(convert(np.int64(-7)), -7)
        self.assertIs(type(convert(np.int64(-7))), int)

    def test_float(self):
        self.assertEqual(convert(1 / 3), 0.333333333333)
        self.assertEqual(convert(np.float64(2.5)), 2.5)

    def test_str_subclass(self):
        class StrSubClass(str):
            pass
        self.assertEqual(convert(StrSubClass('P1')), convert('P1'))

    def test_none(self):
        self.assertIsNone(convert(None))

    def test_unknown_type(self):
        class Unknown:
            pass
        self.assertRaises(InterfaceError, convert, Unknown())


class TestRunReport(unittest.TestCase):
    def sample(self) -> RunReport:
        report = RunReport('demo', dict(n_max=2), columns=['n', 'value', 'first'])
        report.add(np.int64(1), 0.5, None)
        report.add(2, True, 3)
        return report

    def test_status(self):
        report = self.sample()
        self.assertEqual(report.status, PASS)
        self.assertEqual(report.exit_code, 0)
        report.fail()
        self.assertEqual(report.status, FAIL)
        self.assertEqual(report.exit_code, 1)

    def test_row_length(self):
        self.assertRaises(InterfaceError, self.sample().add, 1, 2)

    def test_json(self):
        payload = json.loads(self.sample().to_json())
        self.assertEqual(payload, {
            'command': 'demo',
            'parameters': {'n_max': 2},
            'status': 'pass',
            'rows': [{'n': 1, 'value': 0.5, 'first': None}, {'n': 2, 'value': 1, 'first': 3}],
        })

    def test_csv(self):
        self.assertEqual(self.sample().to_csv(), "n,value,first\n1,0.5,\n2,1,3\n")

    def test_error(self):
        report = RunReport('demo', status=ERROR)
        self.assertEqual(report.exit_code, 3)
        self.assertEqual(report.to_csv(), '')
        self.assertEqual(json.loads(report.to_json())['rows'], [])

    def test_render(self):
        report = self.sample()
        self.assertEqual(report.render('csv'), report.to_csv())
        self.assertEqual(report.render('json'), report.to_json())
        self.assertRaises(InterfaceError, report.render, 'xml')


if __name__ == '__main__':
    unittest.main()
