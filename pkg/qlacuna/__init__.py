"""
Exact and numerical verification of lacunary q-series identities.

Truncated series live in qlacuna.series, Bailey pairs in qlacuna.bailey and
the three identity families in qlacuna.identities.

"""
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

# Set __version__ first, so the imported modules can access it.
__version__ = '0.1.0'

from qlacuna import exceptions
from qlacuna.exceptions import DomainError, Error, InterfaceError, InternalError, NotInvertibleError, \
    NotSupportedError, ResourceLimitError, SeriesError, SeriesOverflowError, TruncationError
from qlacuna.series import Monomial, Series
from qlacuna.bailey import INFINITY, BaileyPair
from qlacuna.identities import P1, P2, P3, IdentityFamily
from qlacuna.quadforms import QuadFormSpec
from qlacuna.settings import Settings

__all__ = ['exceptions', 'DomainError', 'Error', 'InterfaceError', 'InternalError', 'NotInvertibleError',
           'NotSupportedError', 'ResourceLimitError', 'SeriesError', 'SeriesOverflowError', 'TruncationError',
           'Monomial', 'Series', 'INFINITY', 'BaileyPair', 'P1', 'P2', 'P3', 'IdentityFamily',
           'QuadFormSpec', 'Settings']
