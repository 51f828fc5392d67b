# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the exhaustive hot loops.

Same contract as ``_kernels_py``: a weighted sum over all valuations
accepted by clause groups, a DNF acceptance bitmap, and whole-truth-table
circuit evaluation with an OR-exclusivity audit.  The weighted sum walks
valuations in Gray-code order so each step is one exact multiply/divide on
a 128-bit weight; callers must pre-check the bit bound via
``supports_weights``.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

IS_COMPILED = True

K_FALSE, K_TRUE, K_VAR, K_NVAR, K_AND, K_OR = range(6)

ctypedef unsigned long long u64

cdef extern from *:
    # 128-bit arithmetic for exact world weights; Cython only needs the
    # C spelling, all conversions to Python go through explicit u64 casts.
    ctypedef unsigned long long u128 "unsigned __int128"
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def supports_weights(int nvars, kept, dropped):
    """True when the Gray-code walk cannot overflow 128-bit accumulators."""
    cdef int bits = nvars
    if nvars > 30:
        return False
    for a, c in zip(kept, dropped):
        if a <= 0 or c <= 0:
            return False
        bits += max(int(a), int(c)).bit_length()
        if bits > 120:
            return False
    return True


cdef object _u128_to_pyint(u128 x):
    return (int(<u64> (x >> 64)) << 64) | int(<u64> x)


def grouped_weighted_count(int nvars, groups, kept, dropped):
    """Gray-code weighted model count; see the pure-Python twin for the
    contract.  Requires ``supports_weights`` to hold and clause masks to be
    non-empty."""
    cdef int ngroups = len(groups)
    cdef int nclauses = 0
    cdef int ci, gi, i, b, k, up, unsat, total_occ = 0
    cdef u64 m, t, gray, limit
    cdef u128 weight = 1, acc = 0
    cdef u64 *cmask
    cdef int *cgroup
    cdef int *missing
    cdef int *sat
    cdef long long *wk
    cdef long long *wd
    cdef int *occ_start
    cdef int *occ = NULL
    cdef int *fill = NULL

    for g in groups:
        nclauses += len(g)
    cmask = <u64 *> PyMem_Malloc(max(nclauses, 1) * sizeof(u64))
    cgroup = <int *> PyMem_Malloc(max(nclauses, 1) * sizeof(int))
    missing = <int *> PyMem_Malloc(max(nclauses, 1) * sizeof(int))
    sat = <int *> PyMem_Malloc(max(ngroups, 1) * sizeof(int))
    wk = <long long *> PyMem_Malloc(max(nvars, 1) * sizeof(long long))
    wd = <long long *> PyMem_Malloc(max(nvars, 1) * sizeof(long long))
    occ_start = <int *> PyMem_Malloc((nvars + 2) * sizeof(int))
    if not (cmask and cgroup and missing and sat and wk and wd and occ_start):
        raise MemoryError()

    try:
        ci = 0
        for gi in range(ngroups):
            for mask in groups[gi]:
                m = <u64> mask
                cmask[ci] = m
                cgroup[ci] = gi
                missing[ci] = __builtin_popcountll(m)
                total_occ += missing[ci]
                ci += 1
        for i in range(nvars):
            wk[i] = kept[i]
            wd[i] = dropped[i]

        occ = <int *> PyMem_Malloc(max(total_occ, 1) * sizeof(int))
        fill = <int *> PyMem_Malloc(max(nvars, 1) * sizeof(int))
        if not (occ and fill):
            raise MemoryError()
        for i in range(nvars + 1):
            occ_start[i] = 0
        for ci in range(nclauses):
            m = cmask[ci]
            while m:
                occ_start[__builtin_ctzll(m) + 1] += 1
                m &= m - 1
        for i in range(nvars):
            occ_start[i + 1] += occ_start[i]
            fill[i] = occ_start[i]
        for ci in range(nclauses):
            m = cmask[ci]
            while m:
                b = __builtin_ctzll(m)
                occ[fill[b]] = ci
                fill[b] += 1
                m &= m - 1

        for gi in range(ngroups):
            sat[gi] = 0
        unsat = ngroups
        for i in range(nvars):
            weight *= <u64> wd[i]
        if unsat == 0:
            acc += weight

        limit = (<u64> 1) << nvars
        t = 1
        while t < limit:
            b = __builtin_ctzll(t)
            gray = t ^ (t >> 1)
            up = <int> ((gray >> b) & 1)
            if up:
                weight = (weight / <u64> wd[b]) * <u64> wk[b]
                for k in range(occ_start[b], occ_start[b + 1]):
                    ci = occ[k]
                    missing[ci] -= 1
                    if missing[ci] == 0:
                        gi = cgroup[ci]
                        sat[gi] += 1
                        if sat[gi] == 1:
                            unsat -= 1
            else:
                weight = (weight / <u64> wk[b]) * <u64> wd[b]
                for k in range(occ_start[b], occ_start[b + 1]):
                    ci = occ[k]
                    if missing[ci] == 0:
                        gi = cgroup[ci]
                        sat[gi] -= 1
                        if sat[gi] == 0:
                            unsat += 1
                    missing[ci] += 1
            if unsat == 0:
                acc += weight
            t += 1
        return _u128_to_pyint(acc)
    finally:
        PyMem_Free(cmask)
        PyMem_Free(cgroup)
        PyMem_Free(missing)
        PyMem_Free(sat)
        PyMem_Free(wk)
        PyMem_Free(wd)
        PyMem_Free(occ_start)
        if occ:
            PyMem_Free(occ)
        if fill:
            PyMem_Free(fill)


def dnf_accept_bitmap(int nvars, clause_masks):
    """Bitmap over all valuations: bit v set iff some clause mask is in v."""
    cdef int nclauses = len(clause_masks)
    cdef int i
    cdef u64 v, m, limit = (<u64> 1) << nvars
    cdef u64 *masks = <u64 *> PyMem_Malloc(max(nclauses, 1) * sizeof(u64))
    if not masks:
        raise MemoryError()
    out = bytearray(((<long long> limit) + 7) // 8)
    cdef unsigned char[:] buf = out
    try:
        for i in range(nclauses):
            masks[i] = <u64> clause_masks[i]
        for v in range(limit):
            for i in range(nclauses):
                m = masks[i]
                if v & m == m:
                    buf[v >> 3] |= <unsigned char> (1 << (v & 7))
                    break
        return int.from_bytes(bytes(out), "little")
    finally:
        PyMem_Free(masks)


cdef void _fill_var_block(u64 *buf, int words, int var, u64 block_index) nogil:
    cdef int j
    cdef u64 word
    if var < 6:
        word = 0
        j = 0
        while j < 64:
            if (j >> var) & 1:
                word |= ((<u64> 1) << j)
            j += 1
        for j in range(words):
            buf[j] = word
    elif var < 12:
        for j in range(words):
            buf[j] = <u64> 0 - ((<u64> j >> (var - 6)) & 1)
    else:
        word = <u64> 0 - ((block_index >> (var - 12)) & 1)
        for j in range(words):
            buf[j] = word


def circuit_eval_exhaustive(int nvars, kinds, var_ids, children, int output_gate):
    """Truth-table evaluation of a topologically ordered gate DAG.

    Returns ``(bitmap, violations)`` where ``violations`` counts OR gates
    whose children are not pairwise exclusive (audited by popcount on every
    block of valuations).
    """
    cdef int ngates = len(kinds)
    cdef long long width = (<long long> 1) << nvars
    cdef int block_bits = 4096
    cdef int words
    cdef long long nblocks, b, base
    cdef int g, c, j, k, slot, s1, free_top, nslots, peak, tail_bits
    cdef int total_ch = 0, violations = 0, pc_children
    cdef u64 acc_pc, word
    cdef u64 *tmp
    cdef u64 *slots = NULL
    cdef u64 *vmask = NULL
    cdef int *ckind
    cdef int *cvid
    cdef int *consumers0
    cdef int *consumers
    cdef int *slot_of
    cdef int *ch_start
    cdef int *ch_flat = NULL
    cdef int *free_stack = NULL
    cdef int *or_bad = NULL

    if width < block_bits:
        block_bits = <int> width
    words = (block_bits + 63) // 64
    nblocks = (width + block_bits - 1) // block_bits

    ckind = <int *> PyMem_Malloc(max(ngates, 1) * sizeof(int))
    cvid = <int *> PyMem_Malloc(max(ngates, 1) * sizeof(int))
    consumers0 = <int *> PyMem_Malloc(max(ngates, 1) * sizeof(int))
    consumers = <int *> PyMem_Malloc(max(ngates, 1) * sizeof(int))
    slot_of = <int *> PyMem_Malloc(max(ngates, 1) * sizeof(int))
    ch_start = <int *> PyMem_Malloc((ngates + 1) * sizeof(int))
    if not (ckind and cvid and consumers0 and consumers and slot_of and ch_start):
        raise MemoryError()
    out = bytearray((width + 7) // 8)
    cdef unsigned char[:] obuf = out

    try:
        for g in range(ngates):
            total_ch += len(children[g])
        ch_flat = <int *> PyMem_Malloc(max(total_ch, 1) * sizeof(int))
        free_stack = <int *> PyMem_Malloc(max(ngates, 1) * sizeof(int))
        vmask = <u64 *> PyMem_Malloc(words * sizeof(u64))
        or_bad = <int *> PyMem_Malloc(max(ngates, 1) * sizeof(int))
        if not (ch_flat and free_stack and vmask and or_bad):
            raise MemoryError()
        for g in range(ngates):
            or_bad[g] = 0

        k = 0
        for g in range(ngates):
            ckind[g] = kinds[g]
            cvid[g] = var_ids[g]
            consumers0[g] = 0
            ch_start[g] = k
            for c in children[g]:
                ch_flat[k] = c
                k += 1
        ch_start[ngates] = k
        for k in range(total_ch):
            consumers0[ch_flat[k]] += 1
        consumers0[output_gate] += 1

        # dry run to size the recycling slot pool
        for g in range(ngates):
            consumers[g] = consumers0[g]
        free_top = 0
        nslots = 0
        peak = 0
        for g in range(ngates):
            if free_top > 0:
                free_top -= 1
            else:
                nslots += 1
                if nslots > peak:
                    peak = nslots
            slot_of[g] = 0
            for c in range(ch_start[g], ch_start[g + 1]):
                j = ch_flat[c]
                consumers[j] -= 1
                if consumers[j] == 0:
                    free_top += 1
        slots = <u64 *> PyMem_Malloc(max(peak, 1) * words * sizeof(u64))
        if not slots:
            raise MemoryError()

        for b in range(nblocks):
            base = b * block_bits
            for j in range(words):
                vmask[j] = <u64> 0 - 1
            if base + block_bits > width:
                tail_bits = <int> (width - base)
                for j in range(words):
                    if (j + 1) * 64 <= tail_bits:
                        vmask[j] = <u64> 0 - 1
                    elif j * 64 >= tail_bits:
                        vmask[j] = 0
                    else:
                        vmask[j] = ((<u64> 1) << (tail_bits - j * 64)) - 1
            elif block_bits < 64:
                vmask[0] = ((<u64> 1) << block_bits) - 1

            for g in range(ngates):
                consumers[g] = consumers0[g]
            free_top = 0
            nslots = 0

            for g in range(ngates):
                if free_top > 0:
                    free_top -= 1
                    slot = free_stack[free_top]
                else:
                    slot = nslots
                    nslots += 1
                slot_of[g] = slot
                tmp = slots + slot * words
                k = ckind[g]
                if k == 0:  # FALSE
                    for j in range(words):
                        tmp[j] = 0
                elif k == 1:  # TRUE
                    for j in range(words):
                        tmp[j] = vmask[j]
                elif k == 2:  # VAR
                    _fill_var_block(tmp, words, cvid[g], <u64> b)
                    for j in range(words):
                        tmp[j] &= vmask[j]
                elif k == 3:  # NVAR
                    _fill_var_block(tmp, words, cvid[g], <u64> b)
                    for j in range(words):
                        tmp[j] = vmask[j] & ~tmp[j]
                elif k == 4:  # AND
                    for j in range(words):
                        tmp[j] = vmask[j]
                    for c in range(ch_start[g], ch_start[g + 1]):
                        s1 = slot_of[ch_flat[c]]
                        for j in range(words):
                            tmp[j] &= slots[s1 * words + j]
                else:  # OR, with exclusivity audit
                    for j in range(words):
                        tmp[j] = 0
                    pc_children = 0
                    for c in range(ch_start[g], ch_start[g + 1]):
                        s1 = slot_of[ch_flat[c]]
                        for j in range(words):
                            word = slots[s1 * words + j]
                            tmp[j] |= word
                            pc_children += __builtin_popcountll(word)
                    acc_pc = 0
                    for j in range(words):
                        acc_pc += __builtin_popcountll(tmp[j])
                    if acc_pc != <u64> pc_children:
                        or_bad[g] = 1
                for c in range(ch_start[g], ch_start[g + 1]):
                    j = ch_flat[c]
                    consumers[j] -= 1
                    if consumers[j] == 0:
                        free_stack[free_top] = slot_of[j]
                        free_top += 1

            tmp = slots + slot_of[output_gate] * words
            for j in range(words):
                word = tmp[j]
                for k in range(8):
                    if (base + j * 64 + k * 8) < width:
                        obuf[(base >> 3) + j * 8 + k] = <unsigned char> ((word >> (k * 8)) & 0xFF)
        for g in range(ngates):
            violations += or_bad[g]
        return int.from_bytes(bytes(out), "little"), violations
    finally:
        PyMem_Free(ckind)
        PyMem_Free(cvid)
        PyMem_Free(consumers0)
        PyMem_Free(consumers)
        PyMem_Free(slot_of)
        PyMem_Free(ch_start)
        if ch_flat:
            PyMem_Free(ch_flat)
        if free_stack:
            PyMem_Free(free_stack)
        if vmask:
            PyMem_Free(vmask)
        if slots:
            PyMem_Free(slots)
        if or_bad:
            PyMem_Free(or_bad)
