"""Compare the compiled and pure-Python kernels on seeded workloads.

    python benchmarks/bench_kernels.py --repeat 5
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from distcolor import _kernels
from distcolor.generate import planted_dped, random_dped
from distcolor.model import DPEDInstance
from distcolor.oracle import oracle_dped
from distcolor.window_dp import solve_dped_dp


def dp_workload(seed: int) -> list[DPEDInstance]:
    rng = random.Random(seed)
    return [planted_dped(rng, rng.randint(60, 90), 4, 2, rng.randint(0, 3))[0] for _ in range(10)]


def search_workload(seed: int) -> list[DPEDInstance]:
    rng = random.Random(seed)
    out = []
    for _ in range(400):
        d = rng.randint(1, 3)
        out.append(random_dped(rng, rng.randint(10, 15), d + 2, d, rng.randint(0, 3)))
    return out


def run(backend: str, fn, instances, repeat: int) -> tuple[float, list]:
    _kernels.use_backend(backend)
    times, answers = [], []
    for _ in range(repeat):
        start = time.perf_counter()
        answers = [fn(inst) for inst in instances]
        times.append(time.perf_counter() - start)
    return statistics.median(times), answers


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    if "compiled" not in _kernels.AVAILABLE:
        print("compiled kernels not built; only the pure backend is available")
    workloads = {
        "window_dp": (lambda inst: solve_dped_dp(inst), dp_workload(args.seed)),
        "extension_search": (lambda inst: oracle_dped(inst), search_workload(args.seed)),
    }
    print(f"{'kernel':<18}{'backend':<10}{'median s':>10}{'speedup':>10}")
    for name, (fn, instances) in workloads.items():
        base, expected = run("pure", fn, instances, args.repeat)
        print(f"{name:<18}{'pure':<10}{base:>10.4f}{1.0:>10.1f}")
        if "compiled" in _kernels.AVAILABLE:
            fast, answers = run("compiled", fn, instances, args.repeat)
            assert answers == expected, "backends disagree"
            print(f"{name:<18}{'compiled':<10}{fast:>10.4f}{base / fast:>10.1f}")
    _kernels.use_backend(_kernels.AVAILABLE[0])


if __name__ == "__main__":
    main()
