"""Runtime knobs shared by the kernels."""

from __future__ import annotations

import os

#: Environment variable capping the worker pool used by parallel kernels.
THREADS_VAR = "PERMEMC_THREADS"


def worker_count() -> int:
    """Worker cap: PERMEMC_THREADS if set, else machine parallelism.

    The kernels are currently vectorized single-process, with sample and
    subset ranges derived from counters, so any cap yields bit-identical
    results; the value is honored as an upper bound.
    """
    machine = os.cpu_count() or 1
    raw = os.environ.get(THREADS_VAR)
    if raw is None:
        return machine
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_VAR} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{THREADS_VAR} must be at least 1")
    return min(value, machine)
