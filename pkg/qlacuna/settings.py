"""
Tunable limits and constants, with environment overrides
"""
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

import logging
import os
from typing import Any, Callable, Mapping, Optional, Union

from qlacuna.exceptions import InterfaceError

logger = logging.getLogger(__name__)


KNOWN = set([
    'max_n', 'tail_factor', 'enumeration_bound', 'lattice_chunk_rows', 'proxy_factor',
])

ENV_PREFIX = 'QLACUNA_'

_DEFAULTS = dict(
    max_n=10_000_000,
    tail_factor=30.0,
    enumeration_bound=60,
    lattice_chunk_rows=512,
    proxy_factor=4.0,
)


def parse_positive_int(x: Union[str, int]) -> int:
    value = int(x)
    if value < 1:
        raise ValueError(f"expected a positive integer, not {x!r}")
    return value


def parse_positive_float(x: Union[str, float]) -> float:
    value = float(x)
    if not value > 0:
        raise ValueError(f"expected a positive number, not {x!r}")
    return value


class setting:
    """Descriptor that creates a getter/setter for one setting on a Settings instance"""

    field: str
    parser: Callable[[Union[str, Any]], Any]

    def __init__(self, name, typ, doc):
        self.field = name
        if typ == 'integer':
            self.parser = parse_positive_int
        elif typ == 'float':
            self.parser = parse_positive_float
        else:
            raise ValueError(f"invalid type '{typ}'")
        self.__doc__ = doc

    def __get__(self, instance, owner):
        if instance is None:
            return self
        return instance._VALUES.get(self.field)

    def __set__(self, instance, value):
        instance._VALUES[self.field] = (self.parser)(value)

    def __delete__(self, instance):
        raise Exception("cannot delete setting")


class Settings:
    """Holds the limits and constants used by the numerical harnesses."""
    __slots__ = [
        '_VALUES',
    ]

    def __init__(self, *, prototype=None):
        if prototype:
            self._VALUES = {**prototype._VALUES}
        else:
            self._VALUES = dict(**_DEFAULTS)

    def clone(self):
        return Settings(prototype=self)

    max_n = setting('max_n', 'integer', 'hard cap on the number of terms of a power series evaluation')
    tail_factor = setting(
        'tail_factor', 'float', 'evaluate sum a(n) z^n up to the first N with (1 - z) * N >= tail_factor')
    enumeration_bound = setting(
        'enumeration_bound', 'integer', 'largest n for which partitions are enumerated exhaustively')
    lattice_chunk_rows = setting(
        'lattice_chunk_rows', 'integer', 'number of x1 rows handled per lattice sweep chunk')
    proxy_factor = setting(
        'proxy_factor', 'float', 'late values of a bound profile must stay below this times its median')

    def set(self, key: str, value: Any):
        if key in KNOWN:
            setattr(self, key, value)
        else:
            raise ValueError(f"unknown setting {key!r}")

    def get(self, key: str):
        if key in KNOWN:
            return getattr(self, key)
        else:
            raise KeyError(key)

    def update_from_env(self, environ: Optional[Mapping[str, str]] = None):
        """Apply QLACUNA_<KEY> overrides, e.g. QLACUNA_MAX_N=1000000"""
        if environ is None:
            environ = os.environ
        for name, value in environ.items():
            if not name.startswith(ENV_PREFIX):
                continue
            key = name[len(ENV_PREFIX):].lower()
            if key not in KNOWN:
                logger.warning(f"ignoring unknown setting {name}")
                continue
            try:
                self.set(key, value)
            except ValueError as e:
                raise InterfaceError(f"{name}: {e}")
            logger.debug(f"{key} = {self.get(key)!r} from {name}")
        return self

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        return cls().update_from_env(environ)

    def summary(self) -> str:
        return ", ".join(f"{k}={self._VALUES[k]!r}" for k in sorted(self._VALUES))


_current: Optional[Settings] = None


def current() -> Settings:
    """Return the process-wide settings, read from the environment on first use."""
    global _current
    if _current is None:
        _current = Settings.from_env()
    return _current


def install(settings: Optional[Settings]):
    """Replace the process-wide settings. None means: re-read the environment on next use."""
    global _current
    _current = settings


def resolve(settings: Optional[Settings]) -> Settings:
    return settings if settings is not None else current()
