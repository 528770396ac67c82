"""Error hierarchy shared by the whole package.

Every failure the library signals deliberately is one of these; the CLI maps
each class to a stable ``error:<category>:`` prefix and exit code 2.
"""


class FactoreqError(Exception):
    """Base class for all deliberate failures."""

    category = "internal"


class ValidationError(FactoreqError):
    """Structurally invalid input: bad parameters, broken invariants."""

    category = "validation"


class DataError(FactoreqError):
    """Well-formed input with missing or inconsistent arithmetic data."""

    category = "data"


class ResourceError(FactoreqError):
    """Computation exceeded a configured budget."""

    category = "resource"


class ParseError(FactoreqError):
    """Unreadable group spec, lattice expression, or profile file."""

    category = "parse"
