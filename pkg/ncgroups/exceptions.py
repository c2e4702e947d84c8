"""Exceptions raised by ncgroups computations and document loaders."""
from typing import Optional
from typing import Sequence

from jsonschema import ValidationError as _JSONSchemaValidationError


class NcgroupsException(RuntimeError):
    """The base class for all ncgroups runtime exceptions."""

    pass


class InvalidSpec(ValueError, NcgroupsException):
    """
    Raised when a group spec (text or object) cannot be parsed
    or describes a group that does not exist, e.g. ``D5``.
    """

    pass


class NotAGroup(ValueError, NcgroupsException):
    """
    Raised when a multiplication table fails one of the group axioms.
    The message names the failing axiom.
    """

    pass


class NotNormal(ValueError, NcgroupsException):
    """Raised when a quotient is requested by a subgroup that is not normal."""

    pass


class TooLarge(ValueError, NcgroupsException):
    """Raised when an exhaustive routine is called on an input above its limit."""

    pass


class OrderCapExceeded(NcgroupsException):
    """Raised when a group (or catalog) would exceed the configured maximum order."""

    pass


class TimeBudgetExceeded(NcgroupsException):
    """
    Raised when a clique search runs out of time.
    The exception carries the bracketed bounds found so far,
    so that callers can record a non-exact result.
    """

    def __init__(
        self,
        lower_bound: int,
        upper_bound: int,
        witness: Optional[Sequence[int]] = None,
    ):
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.witness = tuple(witness or ())
        super().__init__(
            f"Time budget exceeded: omega is between {lower_bound} and {upper_bound}"
        )


class NodeBudgetExhausted(NcgroupsException):
    """
    Raised when a backtracking enumeration visits more nodes than allowed.
    An exhausted search is an indeterminate outcome, never a negative one.
    """

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"Backtracking node budget of {budget} exhausted")


class CatalogExhausted(NcgroupsException):
    """Raised when no catalog member satisfies a catalog search."""

    pass


class DocumentValidationException(_JSONSchemaValidationError, NcgroupsException):
    """The base class for all document (JSON/YAML input) validation exceptions."""

    pass


class CayleyTableValidationException(DocumentValidationException):
    """Raised when a ``cayley:`` JSON document does not match its schema."""

    pass


class SettingsValidationException(DocumentValidationException):
    """Raised when a settings YAML document does not match its schema."""

    pass
