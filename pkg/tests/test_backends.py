"""Cross-checks between the compiled kernels and the pure-Python twins."""

import random

import pytest

from conftest import flat_grouped_weighted_count
from phom import _kernels_py

fast = pytest.importorskip("phom._fastkernels")


def random_gate_dag(rng, nvars, ngates):
    kinds, var_ids, children = [], [], []
    for i in range(nvars):
        kinds.append(_kernels_py.K_VAR)
        var_ids.append(i)
        children.append([])
        kinds.append(_kernels_py.K_NVAR)
        var_ids.append(i)
        children.append([])
    kinds.append(_kernels_py.K_TRUE)
    var_ids.append(-1)
    children.append([])
    kinds.append(_kernels_py.K_FALSE)
    var_ids.append(-1)
    children.append([])
    for _ in range(ngates):
        kind = rng.choice([_kernels_py.K_AND, _kernels_py.K_OR])
        kids = rng.sample(range(len(kinds)), rng.randint(1, min(4, len(kinds))))
        kinds.append(kind)
        var_ids.append(-1)
        children.append(kids)
    return kinds, var_ids, children


class TestKernelAgreement:
    def test_grouped_weighted_count(self):
        rng = random.Random(0)
        for _ in range(80):
            nvars = rng.randint(1, 10)
            groups = [
                [rng.randrange(1, 1 << nvars) for _ in range(rng.randint(1, 4))]
                for _ in range(rng.randint(1, 3))
            ]
            kept = [rng.randint(1, 9) for _ in range(nvars)]
            dropped = [rng.randint(1, 9) for _ in range(nvars)]
            a = fast.grouped_weighted_count(nvars, groups, kept, dropped)
            b = _kernels_py.grouped_weighted_count(nvars, groups, kept, dropped)
            c = flat_grouped_weighted_count(nvars, groups, kept, dropped)
            assert a == b == c

    def test_dnf_accept_bitmap(self):
        rng = random.Random(1)
        for _ in range(60):
            nvars = rng.randint(1, 12)
            masks = [rng.randrange(1, 1 << nvars) for _ in range(rng.randint(0, 6))]
            assert fast.dnf_accept_bitmap(nvars, masks) == _kernels_py.dnf_accept_bitmap(
                nvars, masks
            )

    def test_circuit_eval_exhaustive(self):
        rng = random.Random(2)
        for _ in range(60):
            nvars = rng.randint(1, 8)
            kinds, var_ids, children = random_gate_dag(rng, nvars, rng.randint(1, 10))
            out = len(kinds) - 1
            a_bm, a_viol = fast.circuit_eval_exhaustive(nvars, kinds, var_ids, children, out)
            b_bm, b_viol = _kernels_py.circuit_eval_exhaustive(
                nvars, kinds, var_ids, children, out
            )
            assert a_bm == b_bm
            assert a_viol == b_viol

    def test_circuit_eval_crosses_block_boundaries(self):
        rng = random.Random(3)
        for nvars in (13, 14):  # above the 4096-valuation block size
            kinds, var_ids, children = random_gate_dag(rng, nvars, 14)
            out = len(kinds) - 1
            a_bm, a_viol = fast.circuit_eval_exhaustive(nvars, kinds, var_ids, children, out)
            b_bm, b_viol = _kernels_py.circuit_eval_exhaustive(
                nvars, kinds, var_ids, children, out
            )
            assert a_bm == b_bm and a_viol == b_viol

    def test_weight_support_predicate(self):
        assert fast.supports_weights(10, [3] * 10, [4] * 10)
        assert not fast.supports_weights(10, [1 << 40] * 10, [1] * 10)
        assert not fast.supports_weights(31, [1] * 31, [1] * 31)
