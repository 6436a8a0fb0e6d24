"""Test-only capability switch.

White-box hooks (exponent inspection, trapdoor retention) refuse to work
unless test mode is on, either via :func:`test_mode` or the environment
variable ``ZKQAP_TEST_MODE=1``.
"""
import os
from contextlib import contextmanager

_depth = 0


def active() -> bool:
    return _depth > 0 or os.environ.get("ZKQAP_TEST_MODE") == "1"


@contextmanager
def test_mode():
    global _depth
    _depth += 1
    try:
        yield
    finally:
        _depth -= 1


def enable():
    """Turn test mode on for the rest of the process (pytest conftest)."""
    global _depth
    _depth += 1
