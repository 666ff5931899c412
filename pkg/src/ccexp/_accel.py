"""Optional numba acceleration.

Kernels are written once in numba-compatible Python. When numba is importable
and ``CCEXP_DISABLE_NUMBA`` is unset (or ``0``), :func:`kernel` returns the
compiled version; otherwise the plain Python/numpy function runs unchanged.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_FLAG = os.environ.get("CCEXP_DISABLE_NUMBA", "").strip().lower()
NUMBA_ENABLED = numba is not None and _FLAG not in ("1", "true", "yes", "on")


def compile_kernel(fn):
    """Compile ``fn`` with numba regardless of the environment flag."""
    if numba is None:
        raise RuntimeError("numba is not installed")
    return numba.njit(cache=True, nogil=True)(fn)


def kernel(fn):
    """Decorator: numba-compile ``fn`` when acceleration is enabled.

    The undecorated function stays reachable as ``fn.py_func`` either way so
    benchmarks can time both paths in one process.
    """
    if NUMBA_ENABLED:
        return compile_kernel(fn)
    fn.py_func = fn
    return fn
