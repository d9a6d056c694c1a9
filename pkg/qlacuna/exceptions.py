# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
qlacuna specific exceptions
"""

StandardError = Exception


class Error(StandardError):
    """Exception that is the base class of all other error
    exceptions. You can use this to catch all errors with one
    single 'except' statement.

    Note that a failed verification is not an error: suites report
    failures as data."""
    pass


class InterfaceError(Error):
    """Exception raised when the API is used with arguments that violate
    a documented precondition, e.g. a negative truncation order or a
    substitution power smaller than one.  It must be a subclass of Error."""
    pass


class DomainError(InterfaceError):
    """Exception raised when a real argument lies outside the domain of
    an analytic function, e.g. evaluating a comparison function at
    z outside of (0, 1)."""
    pass


class SeriesError(Error):
    """Exception raised for errors inside the truncated power series
    ring.  It must be a subclass of Error."""
    pass


class TruncationError(SeriesError):
    """Exception raised when a coefficient is requested at or beyond the
    truncation order, or when a series cannot be represented because the
    truncation order is too small.  Coefficients beyond the truncation
    are unknown, never zero."""
    pass


class NotInvertibleError(SeriesError):
    """Exception raised when dividing by a series whose lowest
    coefficient is not a unit (+1 or -1) of the integers."""
    pass


class SeriesOverflowError(SeriesError):
    """Exception raised when a coefficient would leave the signed 64 bit
    range.  The check happens before the arithmetic so a result is never
    silently wrapped around."""
    pass


class NotSupportedError(Error):
    """Exception raised when an operation is requested for an input it is
    not defined for, e.g. counting representations by an indefinite
    quadratic form, or a weak Bailey configuration whose sum does not
    converge."""
    pass


class ResourceLimitError(Error):
    """Exception raised when a configured limit would be exceeded, like the
    hard cap on the number of coefficients in a power series evaluation or
    the bound for exhaustive partition enumeration.  The limits live in
    :class:`qlacuna.settings.Settings`."""
    pass


class InternalError(Error):
    """Exception raised when an internal consistency check fails, e.g. an
    assembled ordinary power series ends up with a negative exponent.
    This always indicates a bug."""
    pass
