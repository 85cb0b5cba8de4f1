"""Exception types shared across the package.

All subclass ValueError so callers that do not care about the precise
failure mode can catch a single builtin type.
"""


class DimensionError(ValueError):
    """Operands have incompatible or unsupported dimensions."""


class NormalizationError(ValueError):
    """A vector that must represent a physical state is not normalized."""


class BasisStructureError(ValueError):
    """An operator family does not form a valid orthonormal basis."""


class ConfigurationError(ValueError):
    """An experiment configuration is unusable as given."""
