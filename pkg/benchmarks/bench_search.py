"""Compiled vs pure-Python exhaustive search on the no-SDR constructions.

    python3 benchmarks/bench_search.py [--repeat 3] [--quick]

Both kernels must agree on size, witness and node count; the table reports
the best wall time of each and the speed-up.
"""
import argparse
import time

from sdrkit.generators import GenSpec, generate
from sdrkit.model import build_intersection_graph
from sdrkit.search import kernels

CASES = [
    GenSpec("hv_tight", {"n": 6}),
    GenSpec("few_lines_tight", {"n": 6, "m": 3, "count": 11}),
    GenSpec("box_cycle_power", {"k": 3, "n": 6}),
    GenSpec("quadratic_lower", {"n": 8, "m": 4}),
    GenSpec("quadratic_lower", {"n": 9, "m": 4}),
]


def kernel_input(spec):
    inst = generate(spec)
    g = build_intersection_graph(inst)
    index = {v: i for i, v in enumerate(g.vertices)}
    nbrs = g.neighbors()
    blocks = [[index[m] for m in b.member_ids] for b in inst.blocks]
    adj = [[index[u] for u in nbrs[v]] for v in g.vertices]
    return blocks, adj, len(inst.blocks)


def best_time(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest case")
    args = ap.parse_args()
    ks = kernels()
    if "cython" not in ks:
        print("compiled kernel not built; only the Python fallback is available")
    cases = CASES[:-1] if args.quick else CASES
    print(f"{'instance':<46}{'size':>5}{'nodes':>10}" + "".join(f"{k + ' s':>12}" for k in ks)
          + ("   speed-up" if len(ks) > 1 else ""))
    for spec in cases:
        blocks, adj, nb = kernel_input(spec)
        times, results = {}, {}
        for name, fn in ks.items():
            times[name], results[name] = best_time(fn, (blocks, adj, nb, 10 ** 9), args.repeat)
        first = next(iter(results.values()))
        for name, res in results.items():
            if res != first:
                raise SystemExit(f"kernels disagree on {spec}: {name} gave {res[:1] + res[2:]}")
        label = f"{spec.family} {spec.parameters}"
        line = f"{label:<46}{first[0]:>5}{first[2]:>10}" + "".join(f"{times[k]:>12.4f}" for k in ks)
        if len(ks) > 1:
            line += f"{times['python'] / times['cython']:>10.1f}x"
        print(line)


if __name__ == "__main__":
    main()
