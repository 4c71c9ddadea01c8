"""Time the jitted kernels against their pure-numpy fallbacks.

Run from a checkout:

    python3 benchmarks/bench_backends.py [--repeat 5]

Each kernel family is timed per backend (best of ``--repeat`` runs, after a
compile/warmup pass) on the same inputs; outputs are asserted identical
across backends before any number is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from consched import _kernels
from consched.cli import generate_profile
from consched.criteria import CriterionKind, interval_arrays
from consched.model import EncodingKind


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_hungarian(rng: np.random.Generator, repeat: int) -> list[tuple[str, dict[str, float]]]:
    rows = []
    for n in (50, 100, 200):
        cost = rng.integers(0, 1000, size=(n, n), dtype=np.int64)
        outputs = {
            b: _kernels.hungarian(cost, None, backend=b)
            for b in _kernels.available_backends()
        }
        ref = next(iter(outputs.values()))
        assert all(np.array_equal(out, ref) for out in outputs.values())
        timings = {
            b: best_of(lambda b=b: _kernels.hungarian(cost, None, backend=b), repeat)
            for b in outputs
        }
        rows.append((f"matching n={n}", timings))
    return rows


def bench_sweep(repeat: int) -> list[tuple[str, dict[str, float]]]:
    rows = []
    for n, v in ((8, 20), (9, 10)):
        profile = generate_profile(n, v, seed=1234)
        rel, due, mult = interval_arrays(profile, EncodingKind.TARDINESS)
        perms = _kernels.perm_table(n)
        outputs = {
            b: _kernels.perm_costs_distance(perms, rel, due, mult, backend=b)
            for b in _kernels.available_backends()
        }
        ref = next(iter(outputs.values()))
        assert all(np.array_equal(out, ref) for out in outputs.values())
        timings = {
            b: best_of(
                lambda b=b: _kernels.perm_costs_distance(perms, rel, due, mult, backend=b),
                repeat,
            )
            for b in outputs
        }
        rows.append((f"sweep n={n} v={v} ({len(perms)} perms)", timings))
    return rows


def bench_subset_dp(rng: np.random.Generator, repeat: int) -> list[tuple[str, dict[str, float]]]:
    rows = []
    for n in (14, 16, 18):
        cost = rng.integers(0, 100, size=(n, n), dtype=np.int64)
        pred_mask = np.zeros(n, dtype=np.int64)
        for j in range(2, n, 3):  # sparse chain-ish precedence pattern
            pred_mask[j] = 1 << (j - 2)
        allowed = np.ones((n, n), dtype=np.bool_)
        outputs = {
            b: _kernels.subset_dp(cost, pred_mask, allowed, backend=b)
            for b in _kernels.available_backends()
        }
        ref = next(iter(outputs.values()))
        assert all(np.array_equal(out, ref) for out in outputs.values())
        timings = {
            b: best_of(
                lambda b=b: _kernels.subset_dp(cost, pred_mask, allowed, backend=b), repeat
            )
            for b in outputs
        }
        rows.append((f"subset-dp n={n}", timings))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="best-of repetitions")
    args = parser.parse_args()

    backends = _kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    if "numba" in backends:
        _kernels.warmup("numba")

    rng = np.random.default_rng(20240817)
    rows = []
    rows += bench_hungarian(rng, args.repeat)
    rows += bench_sweep(args.repeat)
    rows += bench_subset_dp(rng, args.repeat)

    width = max(len(label) for label, _ in rows)
    header = f"{'kernel':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) > 1:
        header += "  speedup"
    print(header)
    for label, timings in rows:
        line = f"{label:<{width}}  " + "  ".join(
            f"{timings[b] * 1e3:>8.2f}ms" for b in backends
        )
        if "numpy" in timings and "numba" in timings and timings["numba"] > 0:
            line += f"  {timings['numpy'] / timings['numba']:>6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
