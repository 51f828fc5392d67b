"""Benchmark: compiled kernels vs the pure-Python twins.

Each workload runs in a subprocess (the backend is fixed at import time,
via PHOM_PURE_PYTHON) on identical seeded inputs.  Note the two backends
are different algorithms for the weighted counts: the extension walks all
valuations in Gray-code order, the fallback is a pruned Shannon
expansion, which is why the gap varies with how much the pruning bites.

Usage:  python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import textwrap

WORKLOADS = {
    "brute-prob, 40 queries on 17-edge polytrees": """
        import random, time
        from phom.randgen import assign_probs, rand_pt, rand_1wp, UNLABELED_ALPHABET
        from phom.oracle import brute_prob
        rng = random.Random(1)
        cases = []
        for _ in range(40):
            g = rand_1wp(rng, rng.randint(2, 5), UNLABELED_ALPHABET)
            h = assign_probs(rng, rand_pt(rng, 17, UNLABELED_ALPHABET), 17,
                             certain_share=0.0)
            cases.append((g, h))
        t0 = time.monotonic()
        for g, h in cases:
            brute_prob(g, h)
        print(time.monotonic() - t0)
    """,
    "edge covers on dense 22/23-edge graphs": """
        import itertools, time
        from phom.oracle import count_edge_covers, BipartiteGraph
        pairs = list(itertools.product(range(1, 6), range(1, 6)))
        gs = [BipartiteGraph(5, 5, tuple(pairs[:22])),
              BipartiteGraph(5, 5, tuple(pairs[:23]))]
        t0 = time.monotonic()
        for g in gs:
            count_edge_covers(g)
        print(time.monotonic() - t0)
    """,
    "exhaustive circuit audit, 4 x 18-20 edges": """
        import random, time
        from phom.randgen import assign_probs, rand_pt, UNLABELED_ALPHABET
        from phom.treeauto import (binarize_polytree, build_path_automaton,
                                   compile_automaton_circuit)
        from phom import _backend
        rng = random.Random(3)
        circuits = []
        for n, m in ((18, 4), (19, 5), (20, 4), (20, 5)):
            h = assign_probs(rng, rand_pt(rng, n, UNLABELED_ALPHABET), n,
                             certain_share=0.0)
            circuits.append(compile_automaton_circuit(build_path_automaton(m),
                                                      binarize_polytree(h)))
        t0 = time.monotonic()
        for c in circuits:
            _backend.circuit_eval_exhaustive(len(c.var_names), c.kinds, c.var_ids,
                                             c.children, c.output)
        print(time.monotonic() - t0)
    """,
}


def run(workload: str, pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["PHOM_PURE_PYTHON"] = "1"
    else:
        env.pop("PHOM_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, "-c", textwrap.dedent(workload)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return float(out.stdout.strip().splitlines()[-1])


def main():
    print(f"{'workload':<46} {'compiled':>10} {'pure':>10} {'speedup':>9}")
    for name, code in WORKLOADS.items():
        fast = run(code, pure=False)
        slow = run(code, pure=True)
        print(f"{name:<46} {fast:>9.3f}s {slow:>9.3f}s {slow / fast:>8.1f}x")


if __name__ == "__main__":
    main()
