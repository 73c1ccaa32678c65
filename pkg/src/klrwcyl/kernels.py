"""Affine permutation kernels, compiled when available.

The compiled module ``_kernels`` is preferred; set ``KLRW_PURE_PYTHON=1`` to
force the pure-Python implementation. ``BACKEND`` names the active one.
"""

import os

from . import _kernels_py

_impl = _kernels_py
BACKEND = "python"
if not os.environ.get("KLRW_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        _impl = _compiled
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

length = _impl.length
inverse = _impl.inverse
compose = _impl.compose
left_mult = _impl.left_mult
is_left_descent = _impl.is_left_descent
min_left_descent = _impl.min_left_descent
canonical_word = _impl.canonical_word


def tau_power(m, n):
    return tuple(j + m for j in range(n))
