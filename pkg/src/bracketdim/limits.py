"""Default caps for exhaustive enumerations.

``BRACKETDIM_CAP`` in the environment overrides the bracket cap.
"""
import os

DEFAULT_BRACKET_CAP = 1 << 20
DEFAULT_SUBSET_CAP = 20
DEFAULT_SEARCH_CAP = 50_000_000


def bracket_cap(cap=None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get("BRACKETDIM_CAP")
    if env:
        return int(env)
    return DEFAULT_BRACKET_CAP
