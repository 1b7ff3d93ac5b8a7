"""Exception hierarchy shared by the library and the CLI.

The CLI maps these to process exit codes: file/format problems exit 2,
semantic validation failures exit 3, violated mathematical invariants exit 4.
"""

from __future__ import annotations


class WondertoricError(Exception):
    """Base class for all errors raised by this package."""


class FileFormatError(WondertoricError):
    """Input file is malformed: bad JSON, missing keys, wrong shapes."""


class ValidationError(WondertoricError):
    """Input parses but violates a semantic precondition (non-primitive ray,
    non-smooth fan, torsion quotient where a split sublattice is required, ...)."""


class MathAssertionError(WondertoricError):
    """A mathematical invariant the implementation relies on failed at runtime."""
