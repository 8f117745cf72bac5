#!/usr/bin/env python3
# File name   : errors.py
# Description : Exception hierarchy shared by every toricchow module
# Author      : toricchow developers

"""
Every failure a caller can trigger with well-typed input raises a ToricError.
The CLI turns these into structured error objects (exit code 2).
"""

import numbers


class ToricError(Exception):
    """Base class for domain errors, with a stable machine-readable code."""

    code = 'toric'

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        return {
            'code': self.code,
            'message': self.message,
            'details': {key: _plain(value) for key, value in sorted(self.details.items())},
        }


class LatticeError(ToricError):
    code = 'lattice'


class ConeError(ToricError):
    code = 'cone'


class FanError(ToricError):
    code = 'fan'


class BlowupError(ToricError):
    code = 'blowup'


class ChowError(ToricError):
    code = 'chow'


class DisplacementError(ChowError):
    code = 'displacement'


class CompletionError(ChowError):
    code = 'completion'


class LogChowError(ToricError):
    code = 'logchow'


class NotProperError(LogChowError):
    code = 'not_proper'


class NotFlatError(LogChowError):
    code = 'not_flat'


class InputError(ToricError):
    code = 'input'


def _plain(value):
    # details end up in JSON reports
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (str, bool)) or value is None:
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    return str(value)
