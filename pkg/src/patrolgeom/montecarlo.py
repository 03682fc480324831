"""Deterministic Monte Carlo machinery.

Every estimate is a pure function of (indicator, trials, root seed).  Trials
are seeded individually from the root seed through a fixed 64-bit mixing rule,
so the result does not depend on chunk size, scheduling order, or worker
count, and the scalar and vectorized draw paths are bit-identical.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from statistics import NormalDist
from typing import Callable, Sequence, Union

import numpy as np

__all__ = [
    "DEFAULT_SEED",
    "EstimateWithCI",
    "SeedSchedule",
    "TrialSource",
    "estimate_from_counts",
    "mix64",
    "run_bernoulli_trials",
    "wilson_interval",
]

# Fixed default so unseeded runs are still reproducible.
DEFAULT_SEED = 1729

# Trials are processed in fixed-size chunks.  The size is a pure performance
# knob: per-trial draws depend only on the trial index, never on the chunk.
CHUNK_TRIALS = 8192

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15  # odd increment of the splitmix64 sequence
_MULT_A = 0xBF58476D1CE4E5B9
_MULT_B = 0x94D049BB133111EB
_INV_2_53 = 2.0 ** -53


def mix64(x: int) -> int:
    """splitmix64 finalizer: a bijective avalanche mix on 64-bit integers."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _MULT_A) & _MASK64
    x = ((x ^ (x >> 27)) * _MULT_B) & _MASK64
    return x ^ (x >> 31)


def _mix64_array(x: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2**64, matching the masked scalar path
    x = x.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        x ^= x >> np.uint64(30)
        x *= np.uint64(_MULT_A)
        x ^= x >> np.uint64(27)
        x *= np.uint64(_MULT_B)
        x ^= x >> np.uint64(31)
    return x


class TrialSource:
    """Random source for one trial, driven by a counter under a fixed key.

    Draw j (1-based) is mix64(key + j*GAMMA) mapped to [0, 1) with 53-bit
    resolution: u = (bits >> 11) * 2**-53.
    """

    __slots__ = ("key", "_count")

    def __init__(self, key: int):
        self.key = key & _MASK64
        self._count = 0

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        """Next uniform draw on [low, high)."""
        self._count += 1
        bits = mix64((self.key + self._count * _GAMMA) & _MASK64)
        u = (bits >> 11) * _INV_2_53
        return low + (high - low) * u

    def categorical(self, cum_weights: Sequence[float]) -> int:
        """Index of the first cumulative weight exceeding a uniform draw.

        cum_weights must be nondecreasing with final entry 1 (up to round-off).
        """
        u = self.uniform()
        return min(bisect_right(cum_weights, u), len(cum_weights) - 1)


@dataclass(frozen=True)
class SeedSchedule:
    """Derives independent per-trial states from one root seed.

    Trial i receives the key mix64(root_seed + (i + 1)*GAMMA).  GAMMA is odd,
    so i -> root_seed + (i + 1)*GAMMA is injective mod 2**64, and mix64 is a
    bijection: distinct trial indices always get distinct keys.
    """

    root_seed: int

    def trial_key(self, index: int) -> int:
        if index < 0:
            raise ValueError("trial index must be nonnegative")
        return mix64((self.root_seed + (index + 1) * _GAMMA) & _MASK64)

    def trial_source(self, index: int) -> TrialSource:
        return TrialSource(self.trial_key(index))

    def uniform_block(self, start: int, stop: int, draws: int) -> np.ndarray:
        """Uniform draws for trials [start, stop), shape (stop-start, draws).

        Row i is bit-identical to the first `draws` uniforms produced by
        trial_source(start + i).
        """
        if not 0 <= start <= stop:
            raise ValueError("need 0 <= start <= stop")
        idx = np.arange(start, stop, dtype=np.uint64)
        with np.errstate(over="ignore"):
            keys = _mix64_array(
                np.uint64(self.root_seed & _MASK64)
                + (idx + np.uint64(1)) * np.uint64(_GAMMA)
            )
        out = np.empty((stop - start, draws), dtype=np.float64)
        for j in range(draws):
            step = np.uint64(((j + 1) * _GAMMA) & _MASK64)
            with np.errstate(over="ignore"):
                bits = _mix64_array(keys + step)
            out[:, j] = (bits >> np.uint64(11)).astype(np.float64) * _INV_2_53
        return out


@dataclass(frozen=True)
class EstimateWithCI:
    """Bernoulli estimate with a Wilson score interval.

    mean is exactly successes/trials; ci bounds satisfy
    0 <= ci_low <= mean <= ci_high <= 1.
    """

    mean: float
    trials: int
    successes: int
    stderr: float
    ci_low: float
    ci_high: float


def wilson_interval(successes: int, trials: int,
                    confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Never collapses to a point at 0 or n successes, unlike the normal
    approximation interval.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    if not 0.0 < confidence < 1.0:
        raise ValueError("confidence must lie in (0, 1)")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    phat = successes / trials
    z2n = z * z / trials
    denom = 1.0 + z2n
    center = (phat + z2n / 2.0) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2n / (4.0 * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def estimate_from_counts(successes: int, trials: int) -> EstimateWithCI:
    """Package a success count as an estimate with a 95% Wilson interval."""
    mean = successes / trials
    stderr = math.sqrt(mean * (1.0 - mean) / trials)
    ci_low, ci_high = wilson_interval(successes, trials)
    return EstimateWithCI(mean=mean, trials=trials, successes=successes,
                          stderr=stderr, ci_low=min(ci_low, mean),
                          ci_high=max(ci_high, mean))


Indicator = Union[Callable[[TrialSource], bool], object]


def run_bernoulli_trials(indicator: Indicator, trials: int,
                         schedule: SeedSchedule, workers: int = 1) -> EstimateWithCI:
    """Estimate P(indicator) over `trials` independently seeded trials.

    indicator is either a callable taking a TrialSource and returning a bool,
    or an object with attributes n_draws (draws consumed per trial) and
    evaluate_batch(u) mapping a (m, n_draws) uniform array to a boolean
    vector.  Both forms must agree draw for draw; the batch form exists only
    for speed.

    Successes are accumulated as exact integers over fixed-size chunks, so
    the estimate is independent of `workers`.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")

    if hasattr(indicator, "evaluate_batch"):
        draws = int(indicator.n_draws)

        def count(chunk: tuple[int, int]) -> int:
            lo, hi = chunk
            u = schedule.uniform_block(lo, hi, draws)
            return int(np.count_nonzero(indicator.evaluate_batch(u)))
    else:

        def count(chunk: tuple[int, int]) -> int:
            lo, hi = chunk
            return sum(1 for i in range(lo, hi)
                       if indicator(schedule.trial_source(i)))

    chunks = [(lo, min(lo + CHUNK_TRIALS, trials))
              for lo in range(0, trials, CHUNK_TRIALS)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            successes = sum(pool.map(count, chunks))
    else:
        successes = sum(map(count, chunks))
    return estimate_from_counts(successes, trials)
