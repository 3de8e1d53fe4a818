#!/usr/bin/env python3
"""Compare the compiled bit cursor against the pure-Python fallback.

Times raw field read/write throughput and a full patch
serialize/parse round trip with each implementation.

Usage: python3 benchmarks/bench_bitstream.py [--fields N] [--patches N]
"""

from __future__ import annotations

import argparse
import random
import time


def bench_fields(impl, fields):
    t0 = time.perf_counter()
    w = impl.BitWriter()
    for n, v in fields:
        w.write(n, v)
    w.align()
    data = w.to_bytes()
    t_write = time.perf_counter() - t0

    t0 = time.perf_counter()
    r = impl.BitReader(data)
    for n, _ in fields:
        r.read(n)
    t_read = time.perf_counter() - t0
    return t_write, t_read


def bench_patches(count):
    import sys
    from pathlib import Path

    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
    from helpers import random_patch
    from g2csd.pch2 import parse_patch, serialize_patch

    rng = random.Random(1)
    patches = [random_patch(rng) for _ in range(count)]
    t0 = time.perf_counter()
    blobs = [serialize_patch(p) for p in patches]
    t_ser = time.perf_counter() - t0
    t0 = time.perf_counter()
    for blob in blobs:
        parse_patch(blob)
    t_par = time.perf_counter() - t0
    return t_ser, t_par


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--fields", type=int, default=200_000)
    parser.add_argument("--patches", type=int, default=500)
    args = parser.parse_args()

    from g2csd import _bitpure

    impls = [("pure", _bitpure)]
    try:
        from g2csd import _bitkernel

        impls.append(("compiled", _bitkernel))
    except ImportError:
        print("compiled kernel not built; benchmarking pure only")

    rng = random.Random(0)
    fields = [
        (n, rng.getrandbits(n)) for n in (rng.randint(1, 32) for _ in range(args.fields))
    ]
    print("%d bit fields:" % args.fields)
    results = {}
    for name, impl in impls:
        t_write, t_read = bench_fields(impl, fields)
        results[name] = t_write + t_read
        print("  %-8s write %.3fs  read %.3fs" % (name, t_write, t_read))
    if len(results) == 2:
        print("  speedup: %.1fx" % (results["pure"] / results["compiled"]))

    # Full patch round trips run through whatever g2csd.bitstream selected.
    from g2csd.bitstream import IMPLEMENTATION

    t_ser, t_par = bench_patches(args.patches)
    print("%d patch round trips (%s kernel): serialize %.3fs  parse %.3fs"
          % (args.patches, IMPLEMENTATION, t_ser, t_par))


if __name__ == "__main__":
    main()
