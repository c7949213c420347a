"""Backend selection for the number-theory kernels.

The compiled extension ``osc._kernels`` is used when importable; otherwise
(or with ``OSC_PURE_PYTHON=1``) the pure-Python module is used. Both expose
identical functions; the wrappers here add range checks and array handling.
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

import numpy as np

from osc.errors import CapacityError

UINT64_LIMIT = 1 << 64
INT63_LIMIT = 1 << 63


def load_backend(name: str) -> ModuleType:
    """``"cython"`` or ``"python"``; raises ImportError if unavailable."""
    module = {"cython": "osc._kernels", "python": "osc._kernels_py"}[name]
    return importlib.import_module(module)


def available_backends() -> list[str]:
    out = []
    for name in ("cython", "python"):
        try:
            load_backend(name)
        except ImportError:
            continue
        out.append(name)
    return out


def _select() -> tuple[str, ModuleType]:
    if os.environ.get("OSC_PURE_PYTHON", "") not in ("", "0"):
        return "python", load_backend("python")
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", load_backend("python")


BACKEND, _impl = _select()


def is_prime(n: int) -> bool:
    if n < 0:
        return False
    if n >= UINT64_LIMIT:
        raise CapacityError(f"{n} exceeds the 64-bit primality range")
    return bool(_impl.is_prime(n))


def prime_mask(values) -> np.ndarray:
    """Boolean array: primality of each value (all values must fit in 64 bits)."""
    arr = np.ascontiguousarray(np.asarray(values, dtype=np.uint64))
    out = np.zeros(arr.shape[0], dtype=np.uint8)
    _impl.fill_prime_mask(arr, out)
    return out.astype(bool)


def is_isolated(p: int, radius: int) -> bool:
    if p + radius >= UINT64_LIMIT:
        raise CapacityError(f"window around {p} leaves the 64-bit range")
    return bool(_impl.is_isolated(p, radius))


def find_isolated(a: int, b: int, radius: int, max_k: int) -> int:
    """Least ``k <= max_k`` with ``a + b*k`` isolated at ``radius``; -1 if none.

    Raises :class:`CapacityError` if the scan would need primes past 63 bits.
    """
    limit_k = (INT63_LIMIT - 1 - a - radius) // b
    k = int(_impl.find_isolated(a, b, radius, min(max_k, limit_k)))
    if k < 0 and max_k > limit_k:
        raise CapacityError(f"search past k={limit_k} would exceed 63-bit primes")
    return k


def constellation(b: int, residues, wanted, max_k: int) -> int:
    """Least ``k`` with ``b*k + r`` prime exactly for the wanted residues; -1 if none."""
    res = np.ascontiguousarray(np.asarray(residues, dtype=np.uint64))
    want = np.ascontiguousarray(np.asarray(wanted, dtype=np.uint8))
    top = int(res.max()) if res.size else 0
    limit_k = (INT63_LIMIT - 1 - top) // b
    k = int(_impl.constellation(b, res, want, min(max_k, limit_k)))
    if k < 0 and max_k > limit_k:
        raise CapacityError(f"search past k={limit_k} would exceed 63-bit values")
    return k
