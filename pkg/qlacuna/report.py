# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Run reports and the conversion of their cells to text. If you want to add
support for a specific type you should add a function as a value to the
mapping list and the datatype as key.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from qlacuna.exceptions import InterfaceError

PASS = 'pass'
FAIL = 'fail'
ERROR = 'error'

SIGNIFICANT_DIGITS = 12

EXIT_CODES = {PASS: 0, FAIL: 1, ERROR: 3}


def report_bool(data):
    """
    returns 1 or 0
    """
    return 1 if data else 0


def report_int(data):
    """
    returns the integer exactly
    """
    return int(data)


def report_float(data):
    """
    returns the real rounded to 12 significant digits
    """
    return float(f"{float(data):.{SIGNIFICANT_DIGITS}g}")


def report_none(_):
    return None


mapping = [
    (bool, report_bool),
    (np.bool_, report_bool),
    (int, report_int),
    (np.integer, report_int),
    (float, report_float),
    (np.floating, report_float),
    (str, str),
    (type(None), report_none),
]

mapping_dict = dict(mapping)


def convert(data):
    """
    Return the cell converted by the function registered for its type.
    """
    if type(data) in mapping_dict:
        return mapping_dict[type(data)](data)
    else:
        for type_, func in mapping:
            if issubclass(type(data), type_):
                return func(data)
    raise InterfaceError("type %s not supported in a report" % type(data))


def text(cell) -> str:
    """CSV text of an already converted cell."""
    if cell is None:
        return ''
    if isinstance(cell, float):
        return repr(cell)
    return str(cell)


@dataclass
class RunReport:
    """Outcome of one command: status plus rows of named columns."""

    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    status: str = PASS
    columns: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)

    def add(self, *cells):
        if self.columns and len(cells) != len(self.columns):
            raise InterfaceError(f"row has {len(cells)} cells, report has {len(self.columns)} columns")
        self.rows.append([convert(c) for c in cells])

    def fail(self):
        self.status = FAIL

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'parameters': {k: convert(v) for k, v in self.parameters.items()},
            'status': self.status,
            'rows': [dict(zip(self.columns, row)) for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_csv(self) -> str:
        if not self.columns:
            return ''
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([text(c) for c in row])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == 'json':
            return self.to_json()
        if fmt == 'csv':
            return self.to_csv()
        raise InterfaceError(f"unknown output format {fmt!r}")
