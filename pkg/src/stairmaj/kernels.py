"""Kernel selection.

The compiled extension is used when it was built; otherwise (or when the
environment variable ``STAIRMAJ_PURE_PYTHON`` is set to a non-empty value
other than ``0``) the pure-Python kernels are used.  Both expose the same
functions, so callers import from here and never from a backend directly.
"""

import os

from . import _kernels_py

_force_pure = os.environ.get("STAIRMAJ_PURE_PYTHON", "") not in ("", "0")

_impl = _kernels_py
if not _force_pure:
    try:
        from . import _kernels_c as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND

poly_mul = _impl.poly_mul
poly_divexact = _impl.poly_divexact
poly_prem = _impl.poly_prem
poly_mul_binomial = _impl.poly_mul_binomial
poly_div_binomial = _impl.poly_div_binomial
theta = _impl.theta
theta_terms = _impl.theta_terms


def backends():
    """Return every importable backend module, pure Python first."""
    mods = [_kernels_py]
    try:
        from . import _kernels_c
    except ImportError:
        return mods
    mods.append(_kernels_c)
    return mods
