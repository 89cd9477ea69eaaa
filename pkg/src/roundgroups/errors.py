"""Exception hierarchy shared by the library, the service, and the CLI.

Every exception carries a stable machine-readable ``code`` so callers
(HTTP handlers, exit-code mapping) do not have to match on messages.
"""

from __future__ import annotations


class RoundgroupsError(Exception):
    """Base class; ``code`` is the wire-format error identifier."""

    code = "error"


class InvalidParameterError(RoundgroupsError):
    code = "invalid-parameter"


class NoSuchGroupError(RoundgroupsError):
    code = "no-such-group"


class BudgetExceededError(RoundgroupsError):
    code = "budget-exceeded"


class NotNormalError(RoundgroupsError):
    code = "not-normal"


class NotNilpotentError(RoundgroupsError):
    code = "not-nilpotent"


class InvalidExtensionError(RoundgroupsError):
    code = "invalid-extension"


class InternalInconsistencyError(RoundgroupsError):
    """Raised when independently computed results disagree; always a bug."""

    code = "internal-inconsistency"
