"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Both backends run the same inputs; the script checks that their answers agree
before timing them.
"""
from __future__ import annotations

import argparse
import json
import random
import timeit

from planpres import _pykernels as py
from planpres.knots import enumerate_words

try:
    from planpres import _ckernels as cy
except ImportError:  # extension not built
    cy = None


def workloads(seed: int = 0) -> dict:
    words = [w.events for n in range(2, 19, 2) for w in enumerate_words(n)]
    rng = random.Random(seed)
    n = 20_000
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(n)]
    return {
        "word_width": (lambda k: [k.word_width(w) for w in words]),
        "thick_thin": (lambda k: [k.thick_thin(w) for w in words]),
        "uf_labels": (lambda k: k.uf_labels(n, pairs)),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for name, fn in workloads().items():
        row = {"kernel": name, "python_s": min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))}
        if cy is not None:
            if fn(cy) != fn(py):
                raise SystemExit(f"{name}: backends disagree")
            row["cython_s"] = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
            row["speedup"] = row["python_s"] / row["cython_s"]
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':<12}{'python (s)':>12}{'cython (s)':>12}{'speedup':>9}")
    for r in rows:
        c = f"{r['cython_s']:12.4f}{r['speedup']:8.1f}x" if "cython_s" in r else f"{'n/a':>12}{'':>9}"
        print(f"{r['kernel']:<12}{r['python_s']:12.4f}{c}")


if __name__ == "__main__":
    main()
