"""Alignment DP kernel selection: compiled extension if built, else pure Python."""

from stilo._kernels import dp_py

try:
    from stilo._kernels import _dp_cy  # type: ignore[attr-defined]

    _active = _dp_cy
    BACKEND = "cython"
except ImportError:
    _active = dp_py
    BACKEND = "python"

DELTAS = dp_py.DELTAS
align_kinds = _active.align_kinds
length_cost = _active.length_cost


def available_backends() -> dict[str, object]:
    backends: dict[str, object] = {"python": dp_py}
    if BACKEND == "cython":
        backends["cython"] = _active
    return backends
