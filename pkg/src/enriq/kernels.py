"""Backend selection for the enumeration kernels.

The compiled module is used when it imports and the inputs fit comfortably in
64-bit integers; otherwise the pure-Python twin runs.  Set ``ENRIQ_PURE_PYTHON=1``
to force the fallback.
"""

import os

from . import _pykernels

try:
    if os.environ.get("ENRIQ_PURE_PYTHON"):
        raise ImportError("pure python requested")
    from . import _ckernels
except ImportError:  # pragma: no cover - exercised only without a build
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

# headroom below 2**63 for sums of a few products
_SAFE = 1 << 60


def _fits(*values):
    return all(abs(int(x)) < _SAFE for x in values)


def _impl(safe):
    if _ckernels is not None and safe:
        return _ckernels
    return _pykernels


def fp_enumerate(w, B, budget, exact, parity=None, outer=None, limit=0, coord_bound=None):
    """Dispatch; ``coord_bound`` is an a-priori bound on every |v_i|."""
    k = len(w)
    bmax = max((abs(x) for row in B for x in row), default=0)
    safe = coord_bound is not None and _fits(budget, (k + 1) * bmax * (coord_bound + 1))
    return _impl(safe).fp_enumerate(w, B, budget, exact, parity, outer, limit)


def box_enumerate(G, target, bounds, parity=None, limit=0):
    k = len(G)
    gmax = max((abs(x) for row in G for x in row), default=0)
    bmax = max(bounds, default=0)
    safe = _fits(target, k * k * gmax * bmax * bmax * 4)
    return _impl(safe).box_enumerate(G, target, bounds, parity, limit)


def zero_sum_scan(n, bound, first_values=None, cap=100):
    safe = _fits(n * bound * bound * 4)
    return _impl(safe).zero_sum_scan(n, bound, first_values, cap)
