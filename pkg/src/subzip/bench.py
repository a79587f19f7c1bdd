"""Query benchmark: random substrings of length 2^k, trimmed mean timings."""
from __future__ import annotations

import csv
import random
import time
from dataclasses import dataclass

from .factorize import compress
from .index import TextIndex

# looked up per call so tests can swap in a fake clock
CLOCK = time.perf_counter

FIELDS = ["dataset", "backend", "scheme", "alpha", "reps", "mean_seconds", "z"]


@dataclass
class BenchRow:
    dataset: str
    backend: str
    scheme: str
    alpha: int
    reps: int
    mean_seconds: float
    z: float
    timings: list

    def as_csv(self):
        return [self.dataset, self.backend, self.scheme, self.alpha, self.reps,
                f"{self.mean_seconds:.9f}", f"{self.z:.1f}"]


def trimmed_mean(values):
    """Mean after dropping one maximum and one minimum observation."""
    if len(values) < 3:
        raise ValueError("need at least 3 observations")
    vals = sorted(values)[1:-1]
    return sum(vals) / len(vals)


def run(index: TextIndex, scheme: str, min_exp: int, max_exp: int, reps: int = 10,
        seed: int = 0, dataset: str = "", clock=None) -> list[BenchRow]:
    clock = CLOCK if clock is None else clock
    n = index.n
    if reps < 3:
        raise ValueError("reps must be at least 3 for the trimmed mean")
    if not 0 <= min_exp <= max_exp or 2**max_exp > n:
        raise ValueError(f"exponents must satisfy 0 <= min <= max and 2^max <= n = {n}")
    rng = random.Random(seed)
    rows = []
    for k in range(min_exp, max_exp + 1):
        alpha = 2**k
        timings = []
        zs = []
        for _ in range(reps):
            i = rng.randint(1, n - alpha + 1)
            t0 = clock()
            f = compress(index, scheme, i, i + alpha - 1)
            timings.append(clock() - t0)
            zs.append(len(f))
        rows.append(BenchRow(dataset, index.backend, scheme, alpha, reps,
                             trimmed_mean(timings), sum(zs) / reps, timings))
    return rows


def write_csv(rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(FIELDS)
    for row in rows:
        w.writerow(row.as_csv())
