"""Work budgets for exhaustive searches.

``ROUNDGROUPS_BUDGET`` overrides both the shift-tuple budget and the
sequence-length budget when set; explicit arguments win over both.
"""

from __future__ import annotations

import os

DEFAULT_TUPLE_BUDGET = 10**7
DEFAULT_LENGTH_BUDGET = 10**6

_ENV_VAR = "ROUNDGROUPS_BUDGET"


def _env_override() -> int | None:
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        return None
    return value if value > 0 else None


def tuple_budget(explicit: int | None = None) -> int:
    """Budget for roundness-check tuple counts."""
    if explicit is not None:
        return explicit
    return _env_override() or DEFAULT_TUPLE_BUDGET


def length_budget(explicit: int | None = None) -> int:
    """Budget for constructed cycle lengths (De Bruijn sequences)."""
    if explicit is not None:
        return explicit
    return _env_override() or DEFAULT_LENGTH_BUDGET
