"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_backends.py [--sizes 1e4,1e5,1e6] [--dcor-sizes 1e3,5e3]

Both backends see identical data; the script also checks that MIDI values
agree bit for bit and dcor values to 1e-12 before reporting speedups.
"""

import argparse
import math
import sys

from midi_index import _backend
from midi_index.bench import time_measure


def _sizes(text):
    return [int(float(t)) for t in text.split(",") if t.strip()]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=_sizes, default=[10_000, 100_000, 1_000_000])
    ap.add_argument("--dcor-sizes", type=_sizes, default=[1_000, 5_000])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if "numba" not in _backend.available():
        print("numba is not importable; nothing to compare", file=sys.stderr)
        return 1

    plan = [("midi", n) for n in args.sizes] + [("dcor", n) for n in args.dcor_sizes]
    print(f"{'measure':<8}{'n':>10}{'numba s':>12}{'numpy s':>12}{'speedup':>10}{'numba MB':>10}{'numpy MB':>10}")
    ok = True
    for measure, n in plan:
        fast = time_measure(measure, n, backend="numba", repeat=args.repeat)
        slow = time_measure(measure, n, backend="numpy", repeat=args.repeat)
        if measure == "midi":
            same = fast.value == slow.value
        else:
            same = math.isclose(fast.value, slow.value, rel_tol=0, abs_tol=1e-12)
        ok &= same
        print(
            f"{measure:<8}{n:>10}{fast.seconds:>12.4f}{slow.seconds:>12.4f}"
            f"{slow.seconds / fast.seconds:>9.1f}x{fast.peak_mb:>10.1f}{slow.peak_mb:>10.1f}"
            + ("" if same else "  VALUE MISMATCH")
        )
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
