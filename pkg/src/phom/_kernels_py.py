"""Pure-Python kernels for the exhaustive hot loops.

Same contract as the compiled twin in ``_fastkernels.pyx``; selected at
import time by :mod:`phom._backend`.  Weighted sums run as a Shannon
expansion with pruning (short-circuit once every clause group is satisfied
or some group becomes unsatisfiable); exhaustive bitmaps use Python's big
integers as bit-parallel vectors over all ``2**nvars`` valuations.
"""

from __future__ import annotations

IS_COMPILED = False

K_FALSE, K_TRUE, K_VAR, K_NVAR, K_AND, K_OR = range(6)


def grouped_weighted_count(nvars, groups, kept, dropped):
    """Sum of world weights over accepted valuations of ``nvars`` variables.

    A valuation's weight is the product over variables of ``kept[i]`` or
    ``dropped[i]``; it is accepted when every group contains some clause
    (bitmask) fully inside the valuation.  Weights are arbitrary
    non-negative integers.
    """
    suffix = [1] * (nvars + 1)
    for i in range(nvars - 1, -1, -1):
        suffix[i] = suffix[i + 1] * (kept[i] + dropped[i])
    state = tuple(tuple(g) for g in groups)

    def rec(i, weight, gstate):
        if not gstate:
            return weight * suffix[i]
        if i == nvars:
            return 0
        bit = 1 << i
        total = 0
        # dropped branch: clauses through this variable die
        g_drop = []
        alive = True
        for g in gstate:
            g2 = tuple(m for m in g if not m & bit)
            if not g2:
                alive = False
                break
            g_drop.append(g2)
        if alive:
            total += rec(i + 1, weight * dropped[i], tuple(g_drop))
        # kept branch: the variable is removed from its clauses
        g_keep = []
        for g in gstate:
            g2 = []
            satisfied = False
            for m in g:
                m2 = m & ~bit
                if not m2:
                    satisfied = True
                    break
                g2.append(m2)
            if not satisfied:
                g_keep.append(tuple(g2))
        total += rec(i + 1, weight * kept[i], tuple(g_keep))
        return total

    return rec(0, 1, state)


def var_pattern(i, nvars):
    """Bitmap over all valuations with bit ``v`` set iff variable ``i`` is
    true in valuation ``v``."""
    width = 1 << nvars
    period = 1 << (i + 1)
    ones = ((1 << (1 << i)) - 1) << (1 << i)
    repunit = ((1 << width) - 1) // ((1 << period) - 1)
    return ones * repunit


def dnf_accept_bitmap(nvars, clause_masks):
    """Bitmap with bit ``v`` set iff some clause mask is a subset of ``v``."""
    patterns = [var_pattern(i, nvars) for i in range(nvars)]
    full = (1 << (1 << nvars)) - 1
    out = 0
    for mask in clause_masks:
        acc = full
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            acc &= patterns[i]
            m &= m - 1
        out |= acc
        if out == full:
            break
    return out


def circuit_eval_exhaustive(nvars, kinds, var_ids, children, output_gate):
    """Evaluate a gate DAG over every valuation at once.

    Gates must be listed children-before-parents.  Returns the output
    bitmap and the number of OR gates whose children overlap on some
    valuation (mutual-exclusivity violations).
    """
    width = 1 << nvars
    full = (1 << width) - 1
    patterns = [var_pattern(i, nvars) for i in range(nvars)]
    consumers = [0] * len(kinds)
    for ch in children:
        for c in ch:
            consumers[c] += 1
    consumers[output_gate] += 1
    vals: dict[int, int] = {}
    violations = 0
    for g, kind in enumerate(kinds):
        if kind == K_FALSE:
            v = 0
        elif kind == K_TRUE:
            v = full
        elif kind == K_VAR:
            v = patterns[var_ids[g]]
        elif kind == K_NVAR:
            v = full ^ patterns[var_ids[g]]
        elif kind == K_AND:
            v = full
            for c in children[g]:
                v &= vals[c]
        else:
            v = 0
            bits = 0
            for c in children[g]:
                v |= vals[c]
                bits += vals[c].bit_count()
            if bits != v.bit_count():
                violations += 1
        if consumers[g]:
            vals[g] = v
        for c in children[g]:
            consumers[c] -= 1
            if not consumers[c] and c != output_gate:
                del vals[c]
    return vals[output_gate], violations
