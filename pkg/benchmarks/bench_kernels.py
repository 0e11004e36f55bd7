#!/usr/bin/env python3
"""Benchmark the compiled GF(2) kernel against the pure-Python fallback.

Measures incremental elimination throughput, batched full solves, and an
end-to-end planted-state recovery with each engine.

Run: python benchmarks/bench_kernels.py
"""

import random
import statistics
import time

from fsglab import (
    FilterSpec,
    GeneratorSpec,
    RankStop,
    TapSet,
    gf2,
    greedy_schedule,
    gfsga_recover,
    keystream,
    primitive_lfsr,
)


def bench(label, fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    best = min(times)
    med = statistics.median(times)
    print(f"  {label:44s} best {best*1e3:9.2f} ms   median {med*1e3:9.2f} ms")
    return best


def make_systems(ncols, count, seed):
    rng = random.Random(seed)
    systems = []
    for _ in range(count):
        rows = [rng.getrandbits(ncols) for _ in range(ncols + 8)]
        rhs = [rng.getrandbits(1) for _ in rows]
        systems.append((rows, rhs))
    return systems


def bench_eliminations(engine_name, ncols, systems):
    eng = gf2.get_engine(engine_name)

    def run():
        for rows, rhs in systems:
            elim = eng.Eliminator(ncols)
            for row, r in zip(rows, rhs):
                elim.add_row(row, r)
            elim.solve()

    return run


def bench_batch_solve(engine_name, ncols, systems):
    eng = gf2.get_engine(engine_name)

    def run():
        for rows, rhs in systems:
            eng.solve_system(rows, rhs, ncols)

    return run


def bench_recovery(engine_name):
    rng = random.Random(1234)
    L, n, m = 24, 5, 3
    taps = TapSet(tuple(sorted(rng.sample(range(1, L + 1), n))), L)
    filt = FilterSpec.uniform_random(n, m, seed=42)
    gen = GeneratorSpec(primitive_lfsr(L), taps, filt)
    state = tuple(rng.getrandbits(1) for _ in range(L))
    schedule, _ = greedy_schedule(taps, RankStop())
    blocks = keystream(gen, state, sum(schedule.steps) + 2 * L)

    def run():
        result = gfsga_recover(gen, blocks, schedule, engine=engine_name)
        assert result.recovered_state == state

    return run


def main():
    engines = gf2.available_engines()
    print(f"available engines: {', '.join(engines)} (default: {gf2.ENGINE_NAME})")
    results = {}
    for ncols in (64, 128, 256):
        systems = make_systems(ncols, 200, seed=ncols)
        print(f"\n200 incremental eliminations, {ncols} columns:")
        for name in engines:
            results[(name, ncols)] = bench(name, bench_eliminations(name, ncols, systems))
        print(f"200 batched solve_system calls, {ncols} columns:")
        for name in engines:
            bench(name, bench_batch_solve(name, ncols, systems))
    print("\nplanted-state recovery (L=24, n=5, m=3, greedy schedule):")
    for name in engines:
        bench(name, bench_recovery(name))
    if len(engines) == 2:
        print("\nspeedup (pure / compiled) on incremental elimination:")
        for ncols in (64, 128, 256):
            ratio = results[("pure", ncols)] / results[("compiled", ncols)]
            print(f"  {ncols} columns: {ratio:.1f}x")


if __name__ == "__main__":
    main()
