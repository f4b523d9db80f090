"""Batched field-table kernels with a numba fast path and a numpy fallback.

CUBICA_BACKEND selects the implementation: "numba", "numpy", or "auto"
(default: numba when importable).  CUBICA_THREADS caps the numba thread
count.  Both paths share signatures and are compared by the benchmark in
benchmarks/bench_backends.py and by the parity tests.
"""

import os


def _load():
    mode = os.environ.get("CUBICA_BACKEND", "auto")
    if mode not in ("auto", "numba", "numpy"):
        raise ValueError(f"CUBICA_BACKEND must be auto|numba|numpy, got {mode!r}")
    if mode in ("auto", "numba"):
        try:
            import numba
            from . import numba_impl as impl
        except ImportError:
            if mode == "numba":
                raise
        else:
            threads = os.environ.get("CUBICA_THREADS")
            if threads:
                numba.set_num_threads(max(1, int(threads)))
            return impl, "numba"
    from . import numpy_impl as impl
    return impl, "numpy"


_impl, BACKEND = _load()

act_rows = _impl.act_rows
matmul4 = _impl.matmul4
normalize_rows = _impl.normalize_rows
pluecker_codes = _impl.pluecker_codes
