"""Hot loops, compiled with numba unless ``MOMENTREG_DISABLE_NUMBA`` is set.

The numpy implementations in ``_numpy`` are the reference; the numba ones in
``_numba`` follow the same arithmetic order.  The backend is chosen once, at
import time.
"""

import os

from . import _numpy

ENV_FLAG = "MOMENTREG_DISABLE_NUMBA"


def _numba_disabled():
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    import numba  # noqa: F401
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

if NUMBA_AVAILABLE and not _numba_disabled():
    from . import _numba as _impl
    BACKEND = "numba"
else:
    _impl = _numpy
    BACKEND = "numpy"

CHEBYSHEV = _numpy.CHEBYSHEV
LEGENDRE = _numpy.LEGENDRE
MONOMIAL = _numpy.MONOMIAL

map_to_unit = _numpy.map_to_unit
basis_matrix = _impl.basis_matrix
bag_moment_sums = _impl.bag_moment_sums
accumulate_statistics = _impl.accumulate_statistics
jacobi_eigh = _impl.jacobi_eigh


def backends():
    """Mapping of backend name to kernel module, for tests and benchmarks."""
    out = {"numpy": _numpy}
    if NUMBA_AVAILABLE:
        from . import _numba
        out["numba"] = _numba
    return out
