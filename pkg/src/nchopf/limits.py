"""Computation bounds shared by the table builder and the group oracle."""

from __future__ import annotations

#: Largest grade for which supercharacter tables are computed by default.
DEFAULT_TABLE_BOUND = 7

#: Largest group order the brute-force oracle will enumerate by default.
DEFAULT_GROUP_BOUND = 10**6


class BoundExceededError(RuntimeError):
    """Raised when a requested computation exceeds its configured bound."""
