"""Shared exception types.

Raising instead of returning sentinel values keeps the numeric pipelines
honest: a failed certification or a blown budget must abort the computation
that asked for it.
"""


class SmtlabError(Exception):
    """Base class for package errors."""


class BudgetExceededError(SmtlabError):
    """A configured expansion or reduction budget was exhausted."""


class CertificationError(SmtlabError):
    """A numeric result could not be certified to the required tolerance."""


class DegenerateInputError(SmtlabError):
    """Input violates a mathematical precondition (zero map, empty family...)."""


class UnsupportedOperationError(SmtlabError):
    """Operation not defined for this combination of function variants."""


class ExactEvalUnavailableError(SmtlabError):
    """Exact rational evaluation requested for a transcendental variant."""


class ValidationError(SmtlabError):
    """A scenario file or CLI input failed validation."""
