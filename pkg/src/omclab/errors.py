"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: parse failures exit 2, desk-scale
guard violations exit 3, and failed cross-checks exit 4.
"""


class OmclabError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(OmclabError):
    """Malformed input: matrices, digraphs, permutations, or CLI files."""


class GuardError(OmclabError):
    """A desk-scale guard was exceeded (e.g. face enumeration dimension)."""


class OracleMismatchError(OmclabError):
    """Two independent computation routes disagreed."""
