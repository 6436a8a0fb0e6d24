"""Kernel dispatch: compiled core when available, pure Python otherwise.

The compiled module only handles moduli below 2**63; larger moduli always
take the Python path. Set ``ZKQAP_PURE_PYTHON=1`` to force the fallback at
import time.
"""
import os

from . import _pykernels as py

try:
    if os.environ.get("ZKQAP_PURE_PYTHON"):
        raise ImportError("pure python forced")
    from . import _ckernels as compiled
except ImportError:
    compiled = None

COMPILED_LIMIT = 1 << 63


def implementation(p):
    """Module that will service kernels for modulus ``p``."""
    if compiled is not None and p < COMPILED_LIMIT:
        return compiled
    return py


def poly_mul(a, b, p):
    return implementation(p).poly_mul(a, b, p)


def poly_divrem(num, den, p):
    return implementation(p).poly_divrem(num, den, p)


def poly_eval(a, x, p):
    return implementation(p).poly_eval(a, x, p)


def synthetic_div(a, root, p):
    return implementation(p).synthetic_div(a, root, p)


def lincomb(vectors, scalars, p):
    return implementation(p).lincomb(vectors, scalars, p)


def dot(a, b, p):
    return implementation(p).dot(a, b, p)
