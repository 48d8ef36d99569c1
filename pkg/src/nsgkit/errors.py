"""Exception hierarchy shared by the library and the CLI."""


class NsgError(Exception):
    """Base class for all nsgkit errors."""


class InvalidElementError(NsgError, ValueError):
    """A group element does not match the group's rank."""


class SideError(NsgError, ValueError):
    """A signal lives on the wrong side (group vs dual group)."""


class GroupMismatchError(NsgError, ValueError):
    """Operands belong to different groups, or have incompatible shapes."""


class InvalidFamilyError(NsgError, ValueError):
    """A window family or pair violates its structural invariants."""


class InvalidReindexError(NsgError, ValueError):
    """A reindexing map is not a bijection or does not carry the weights along."""


class SymbolSingular(NsgError, ArithmeticError):
    """The symbol's lower bound is below the singular tolerance; the pair is not reproducing."""

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class OracleCapExceeded(NsgError, ValueError):
    """Dense oracle assembly was requested for a group above the configured cap."""


class NumericalGuardError(NsgError, ArithmeticError):
    """A numerical guard tripped: singular quadrature node, endpoint blow-up, and so on."""


class DomainError(NsgError, ValueError):
    """An argument lies outside the domain of the operation."""
