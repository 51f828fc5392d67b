"""Kernel backend selection.

The compiled extension (``phom._fastkernels``) is used when it was built;
otherwise the pure-Python twin takes over.  Setting ``PHOM_PURE_PYTHON=1``
in the environment forces the fallback, which is what the benchmark uses
to compare the two.

The weighted-count kernel in the extension works on 128-bit integers, so
the wrapper here falls back to the big-integer implementation whenever the
weight bound does not fit.
"""

from __future__ import annotations

import os

from . import _kernels_py

_fast = None
if os.environ.get("PHOM_PURE_PYTHON", "") != "1":
    try:
        from . import _fastkernels as _fast  # type: ignore[no-redef]
    except ImportError:
        _fast = None

BACKEND_NAME = "compiled" if _fast is not None else "pure-python"


def grouped_weighted_count(nvars, groups, kept, dropped):
    """Backend dispatch for the accepted-world weighted sum.

    Groups with an empty clause are dropped (always satisfied); a group
    with no clauses makes the result 0.
    """
    cleaned = []
    for g in groups:
        if not g:
            return 0
        if any(m == 0 for m in g):
            continue
        cleaned.append(list(g))
    if not cleaned:
        total = 1
        for a, c in zip(kept, dropped):
            total *= a + c
        return total
    if _fast is not None and _fast.supports_weights(nvars, kept, dropped):
        return _fast.grouped_weighted_count(nvars, cleaned, kept, dropped)
    return _kernels_py.grouped_weighted_count(nvars, cleaned, kept, dropped)


def dnf_accept_bitmap(nvars, clause_masks):
    if _fast is not None:
        return _fast.dnf_accept_bitmap(nvars, clause_masks)
    return _kernels_py.dnf_accept_bitmap(nvars, clause_masks)


def circuit_eval_exhaustive(nvars, kinds, var_ids, children, output_gate):
    if _fast is not None:
        return _fast.circuit_eval_exhaustive(nvars, kinds, var_ids, children, output_gate)
    return _kernels_py.circuit_eval_exhaustive(nvars, kinds, var_ids, children, output_gate)
