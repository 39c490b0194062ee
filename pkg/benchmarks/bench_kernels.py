"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Per-kernel timings run both backends in this process.  ``--end-to-end`` also
times a small corpus through the CLI once per backend (``LPMBERGMAN_PURE``).
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

from lpmbergman import _kernels_py as py
from lpmbergman.paths import validate_pair

try:
    from lpmbergman import _kernels_c as cy
except ImportError:
    cy = None

INSTANCES = [
    ("NNNNENE", "ENENNNN"),
    ("NNNENNEEEE", "EEENENNENN"),
    ("NNNNNNEEEEEE", "EEEEEENNNNNN"),
]


def cases(mod, pair):
    P, Q = pair.P, pair.Q
    bases = sorted(mod.band_bases(P, Q))
    buf = mod.pack(bases)
    ground = (1 << pair.n) - 1
    masks = range(0, 1 << pair.n, max(1, (1 << pair.n) // 512))
    flats = [(1 << k) - 1 for k in range(1, pair.n)]
    ranks = [mod.max_meet(buf, f) for f in flats]
    return {
        "band_bases": lambda: mod.band_bases(P, Q),
        "band_rank": lambda: [mod.band_rank(P, Q, m) for m in masks],
        "max_meet": lambda: [mod.max_meet(buf, m) for m in masks],
        "closure_mask": lambda: [mod.closure_mask(buf, ground, m) for m in masks[:64]],
        "exchange_components": lambda: mod.exchange_components(buf, ground),
        "satisfied": lambda: mod.satisfied(buf, flats, ranks),
    }, len(bases)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_table(repeat):
    print(f"{'instance':<28}{'kernel':<22}{'python ms':>11}{'cython ms':>11}{'speedup':>9}")
    for p, q in INSTANCES:
        pair = validate_pair(p, q)
        pcases, nb = cases(py, pair)
        ccases = cases(cy, pair)[0] if cy else {}
        tag = f"n={pair.n} bases={nb}"
        for name, fn in pcases.items():
            tp = best(fn, repeat) * 1e3
            if cy:
                tc = best(ccases[name], repeat) * 1e3
                print(f"{tag:<28}{name:<22}{tp:>11.3f}{tc:>11.3f}{tp / tc:>8.1f}x")
            else:
                print(f"{tag:<28}{name:<22}{tp:>11.3f}{'n/a':>11}{'':>9}")


def end_to_end():
    argv = [sys.executable, "-m", "lpmbergman.cli", "corpus", "--exhaustive", "7"]
    out = {}
    for label, pure in (("python", "1"), ("cython", "0")):
        env = dict(os.environ, LPMBERGMAN_PURE=pure)
        start = time.perf_counter()
        subprocess.run(argv, env=env, check=True, stdout=subprocess.DEVNULL)
        out[label] = time.perf_counter() - start
    print(f"\ncorpus --exhaustive 7: python {out['python']:.2f}s, cython {out['cython']:.2f}s, "
          f"speedup {out['python'] / out['cython']:.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    if cy is None:
        print("compiled extension not built; showing the fallback only\n")
    kernel_table(args.repeat)
    if args.end_to_end and cy is not None:
        end_to_end()


if __name__ == "__main__":
    main()
