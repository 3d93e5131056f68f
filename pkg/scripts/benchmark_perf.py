"""
Benchmark script for the main numerical paths: series evaluation against the
quadrature oracle, FFT circle sampling, Bergman norms and C(p).

Usage: python scripts/benchmark_perf.py
"""

import time
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np

from utils.boundary import preset_spec
from utils.calculus import DiskScalar
from utils.constants import c_of_p
from utils.extension import extend, extend_oracle
from utils.norms import bergman_norms


def _timed(func, n: int) -> list[float]:
    times = []
    for _ in range(n):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return times


def benchmark_series_vs_oracle(n: int = 5) -> tuple[list[float], list[float]]:
    spec = preset_spec("abs-sin")
    points = 0.9 * np.exp(2j * np.pi * np.arange(16) / 16)

    def series():
        field = extend(spec)
        field.evaluate(points)

    def oracle():
        for z in points:
            extend_oracle(spec, complex(z))

    return _timed(series, n), _timed(oracle, n)


def benchmark_circle_fft(n: int = 5) -> list[float]:
    """One circle of 2^16 nodes at r = 1 - 2^-12."""
    spec = preset_spec("random-trig")

    def run():
        field = extend(spec)
        field.on_circle(1.0 - 2.0 ** -12, 2 ** 16)

    return _timed(run, n)


def benchmark_bergman(n: int = 3) -> list[float]:
    spec = preset_spec("elliptic-trace")

    def run():
        field = extend(spec)
        bergman_norms({"f_z": DiskScalar(field, "f_z"), "f_zbar": DiskScalar(field, "f_zbar")}, 2.0, levels=10)

    return _timed(run, n)


def benchmark_constants(n: int = 5) -> list[float]:
    return _timed(lambda: [c_of_p(p) for p in (1.0, 2.0, 3.0, 5.0)], n)


def report(label: str, times: list[float]) -> None:
    avg = sum(times) / len(times) * 1000
    mn = min(times) * 1000
    mx = max(times) * 1000
    print(f"  {label:<30} avg={avg:9.1f} ms  min={mn:8.1f} ms  max={mx:8.1f} ms")


def main():
    n = 5
    print(f"=== Benchmark (n={n} iterations each) ===\n")

    series_times, oracle_times = benchmark_series_vs_oracle(n)
    circle_times = benchmark_circle_fft(n)
    bergman_times = benchmark_bergman(3)
    constant_times = benchmark_constants(n)

    print("Results:")
    report("Series, 16 points:", series_times)
    report("Oracle, 16 points:", oracle_times)
    report("Circle FFT (65536 nodes):", circle_times)
    report("Bergman norms (p=2):", bergman_times)
    report("C(p), four exponents:", constant_times)

    speedup = (sum(oracle_times) / n) / max(sum(series_times) / n, 1e-12)
    print(f"\n  {'Series speedup over oracle:':<30} {speedup:9.1f}x")

    print("\n=== Done ===")


if __name__ == '__main__':
    main()
