"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the unpruned isomorphism search over all ordered pairs of encoded
3-vertex digraphs (the heaviest workload in the acceptance battery) and the
meet of every relation of a large full branch structure.
"""

import argparse
import time

from crosscut import kernels
from crosscut.branches import ClassCounts
from crosscut.reduction import all_digraphs, encode, make_params
from crosscut.structures import e_infinity, find_isomorphism, full_branch_structure


def unpruned_battery():
    P = make_params(3)
    enc = [encode(G, P)[0] for G in all_digraphs(3)]
    return sum(find_isomorphism(S, T, prune=False) is not None for S in enc for T in enc)


def pruned_battery():
    P = make_params(3)
    enc = [encode(G, P)[0] for G in all_digraphs(3)]
    return sum(find_isomorphism(S, T) is not None for S in enc for T in enc)


def meet_battery():
    S = full_branch_structure(ClassCounts((3, 4, 5, 6, 7)))
    return sum(e_infinity(S).count for _ in range(20))


WORKLOADS = [("iso search, unpruned", unpruned_battery), ("iso search, pruned", pruned_battery), ("meet x20", meet_battery)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    if "cython" not in names:
        print("compiled extension not built; only the python backend is available")
    print(f"{'workload':<24}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    previous = kernels.backend_name()
    try:
        for label, fn in WORKLOADS:
            best, results = {}, set()
            for name in names:
                kernels.use_backend(name)
                times = []
                for _ in range(args.repeat):
                    t0 = time.perf_counter()
                    results.add(fn())
                    times.append(time.perf_counter() - t0)
                best[name] = min(times)
            if len(results) != 1:
                raise SystemExit(f"backends disagree on {label}: {sorted(results)}")
            row = f"{label:<24}" + "".join(f"{best[n]:>11.3f}s" for n in names)
            if len(names) > 1:
                row += f"{best['python'] / best['cython']:>11.1f}x"
            print(row)
    finally:
        kernels.use_backend(previous)


if __name__ == "__main__":
    main()
