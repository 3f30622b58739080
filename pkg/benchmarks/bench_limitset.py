"""Time limit-set sampling with the compiled and the pure-Python kernels.

    python benchmarks/bench_limitset.py --len 10 --repeat 3
"""

import argparse
import math
import time

import numpy as np

from bgroup import _backend
from bgroup.patterson import genus2_group
from bgroup.triangle import canonical_generators
from bgroup.verify import limit_set_sample

inf = math.inf


def cases(max_len):
    yield "triangle (inf,inf,inf)", canonical_generators((inf, inf, inf)), max_len
    yield "triangle (3,3,4)", canonical_generators((3, 3, 4)), max_len
    yield "genus 2 at (4i,4i,4i)", genus2_group(4j, 4j, 4j).generator_matrices(), max(1, max_len - 4)


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def kernel_only(kern, gens, max_len):
    letters = np.array([m.entries() for g in gens for m in (g, g.inverse())], dtype=np.complex128)
    inverse_of = np.array([i ^ 1 for i in range(len(letters))], dtype=np.int64)
    mats = np.array([[1, 0, 0, 1]], dtype=np.complex128)
    last = np.array([-1], dtype=np.int64)
    total = 0
    for _ in range(max_len):
        mats, last = kern.extend_words(mats, last, letters, inverse_of, 10 ** 7)
        total += len(kern.limit_fixed_points(mats, 1e-9))
    return total


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--len", type=int, default=10)
    ap.add_argument("--cap", type=int, default=200000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["python"] + (["cython"] if _backend.compiled_kernels is not None else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'case':28} {'stage':8} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for label, gens, max_len in cases(args.len):
        rows = {"kernels": {}, "sample": {}}
        for b in backends:
            kern = _backend.get_kernels(b)
            rows["kernels"][b], _ = best_time(lambda: kernel_only(kern, gens, max_len), args.repeat)
            rows["sample"][b], _ = best_time(
                lambda: limit_set_sample(gens, max_len, args.cap, backend=b), args.repeat)
        for stage, t in rows.items():
            speed = f"{t['python'] / t['cython']:8.1f}x" if "cython" in t else ""
            print(f"{label:28} {stage:8} " + " ".join(f"{t[b]:9.3f}s" for b in backends) + "  " + speed)


if __name__ == "__main__":
    main()
