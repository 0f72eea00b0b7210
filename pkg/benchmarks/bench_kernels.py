"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from sadic import _kernels_py as py
from sadic.constructions import thue_morse
from sadic.directive import DirectiveSequence

try:
    from sadic import _ckernels as ck
except ImportError:
    ck = None


def workloads():
    seq = DirectiveSequence.stationary(thue_morse(), 16)
    long_word = seq.telescope(0, 16).images[0]
    mid = seq.telescope(0, 10).images[0]
    return {
        "count_overlapping (65536 letters)":
            lambda k: k.count_overlapping(long_word, b"\x00\x01\x01"),
        "factor_set L=12 (65536 letters)": lambda k: k.factor_set(long_word, 12),
        "factor_counts cyclic L=10 (1024)": lambda k: k.factor_counts(mid, 10, True),
        "essential_factor_counts L=16 (1024)":
            lambda k: k.essential_factor_counts(mid, 512, 512, 16),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if ck is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':40s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in workloads().items():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        if ck is None:
            print(f"{name:40s} {t_py:10.4f}")
            continue
        assert fn(ck) == fn(py), name
        t_c = min(timeit.repeat(lambda: fn(ck), number=1, repeat=args.repeat))
        print(f"{name:40s} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
