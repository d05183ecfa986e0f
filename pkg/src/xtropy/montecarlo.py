"""Monte Carlo estimates of SRS and RSS extropies, and RSS sampling.

Random numbers come from numpy's counter-based Philox generator.  A stream
is addressed by ``SeedSequence(seed, spawn_key=(stream, factor, chunk))``, so
every chunk of every factor has its own reproducible substream.  Chunks may
run on worker threads (capped by ``XTROPY_THREADS``).  Partial sums are
always merged in chunk order, so results do not depend on the worker count.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import Distribution
from .errors import DomainError
from .extropy import LambdaProfile
from .rss import rss_coefficients
from .weights import UNIT, WeightFunction

__all__ = [
    "CHUNK_SIZE",
    "MIN_DRAWS",
    "RngSpec",
    "McEstimate",
    "worker_count",
    "uniform_open",
    "sample_rss",
    "sample_srs",
    "mc_general_weighted_extropy",
    "mc_rss_extropy",
]

CHUNK_SIZE = 1 << 16
MIN_DRAWS = 100
_U64 = 1 << 64


@dataclass(frozen=True)
class RngSpec:
    """A reproducible random stream: 64-bit ``seed`` plus ``stream`` index."""

    seed: int
    stream: int = 0

    def __post_init__(self):
        if int(self.seed) != self.seed or not (0 <= self.seed < _U64):
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if int(self.stream) != self.stream or self.stream < 0:
            raise DomainError(f"stream must be a nonnegative integer, got {self.stream!r}")

    def generator(self, *key: int) -> np.random.Generator:
        seq = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream), *key))
        return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True)
class McEstimate:
    """``value`` with ``std_error`` from ``n_draws`` draws.

    For RSS estimates ``indeterminate_sign`` is set when some factor mean is
    within two standard errors of zero, and ``factor_means`` holds the
    per-factor sample means of ``Lambda``.
    """

    value: float
    std_error: float
    n_draws: int
    indeterminate_sign: bool = False
    factor_means: tuple[float, ...] = ()

    def __float__(self) -> float:
        return self.value


def worker_count() -> int:
    """Worker threads allowed by ``XTROPY_THREADS`` (default: CPU count)."""
    raw = os.environ.get("XTROPY_THREADS")
    if raw is None:
        return max(1, os.cpu_count() or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        raise DomainError(f"XTROPY_THREADS must be an integer, got {raw!r}") from None


def uniform_open(gen: np.random.Generator, shape) -> np.ndarray:
    """Uniforms on the open interval (0, 1): ``(k + 1/2) 2**-53``."""
    k = gen.integers(0, 1 << 53, size=shape, dtype=np.int64)
    return (k + 0.5) * 2.0**-53


def sample_rss(dist: Distribution, n: int, rng: RngSpec, size: int | None = None) -> np.ndarray:
    """One-cycle ranked set sample(s) of size ``n``.

    Draws ``n`` sets of ``n`` units by inverse transform, sorts each set and
    keeps the ``i``-th smallest of set ``i``.  Returns shape ``(n,)`` or
    ``(size, n)``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    n = int(n)
    reps = 1 if size is None else int(size)
    u = uniform_open(rng.generator(), (reps, n, n))
    sets = np.sort(np.asarray(dist.quantile(u)), axis=-1)
    idx = np.arange(n)
    out = sets[:, idx, idx]
    return out[0] if size is None else out


def sample_srs(dist: Distribution, n: int, rng: RngSpec, size: int | None = None) -> np.ndarray:
    """Simple random sample(s) of size ``n``; shape ``(n,)`` or ``(size, n)``."""
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    shape = (int(n),) if size is None else (int(size), int(n))
    return np.asarray(dist.quantile(uniform_open(rng.generator(), shape)))


def _chunk_stats(profile: LambdaProfile, rng: RngSpec, factor: int, chunk: int, count: int,
                 kernel: tuple[int, int] | None) -> tuple[int, float, float]:
    gen = rng.generator(factor, chunk)
    if kernel is None:
        u = uniform_open(gen, count)
    else:
        u = np.clip(gen.beta(kernel[0], kernel[1], count), 2.0**-1074, 1.0 - 2.0**-53)
    vals = np.asarray(profile(u), dtype=float)
    bad = ~np.isfinite(vals)
    if bad.any():
        k = int(np.argmax(bad))
        raise DomainError(f"non-finite Lambda draw {vals[k]!r} at u={u[k]!r} "
                          f"(factor {factor}, chunk {chunk})")
    mean = float(np.mean(vals))
    m2 = float(np.sum((vals - mean) ** 2))
    return count, mean, m2


def _merge(parts: list[tuple[int, float, float]]) -> tuple[int, float, float]:
    # pairwise (Chan et al.) update, always in chunk order
    n, mean, m2 = parts[0]
    for nb, mb, m2b in parts[1:]:
        total = n + nb
        d = mb - mean
        mean += d * nb / total
        m2 += m2b + d * d * n * nb / total
        n = total
    return n, mean, m2


def _lambda_mean(dist: Distribution, w: WeightFunction, n_draws: int, rng: RngSpec,
                 factor: int, kernel: tuple[int, int] | None) -> tuple[float, float]:
    if int(n_draws) != n_draws or n_draws < MIN_DRAWS:
        raise DomainError(f"n_draws must be an integer >= {MIN_DRAWS}, got {n_draws!r}")
    n_draws = int(n_draws)
    profile = LambdaProfile(dist, w)
    sizes = [CHUNK_SIZE] * (n_draws // CHUNK_SIZE)
    if n_draws % CHUNK_SIZE:
        sizes.append(n_draws % CHUNK_SIZE)

    def task(args):
        chunk, count = args
        return _chunk_stats(profile, rng, factor, chunk, count, kernel)

    workers = min(worker_count(), len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(task, enumerate(sizes)))
    else:
        parts = [task(a) for a in enumerate(sizes)]
    total, mean, m2 = _merge(parts)
    return mean, math.sqrt(m2 / (total - 1)) / math.sqrt(total)


def mc_general_weighted_extropy(dist: Distribution, w: WeightFunction = UNIT,
                                n_draws: int = 1_000_000, rng: RngSpec = RngSpec(0)) -> McEstimate:
    """``-mean(Lambda(U_k)) / 2`` over uniform draws ``U_k``.

    Raises:
        DomainError: for ``n_draws < 100`` or a non-finite ``Lambda`` draw.
    """
    mean, se = _lambda_mean(dist, w, n_draws, rng, 0, None)
    return McEstimate(-0.5 * mean, 0.5 * se, int(n_draws))


def mc_rss_extropy(dist: Distribution, w: WeightFunction, n: int, n_draws: int = 1_000_000,
                   rng: RngSpec = RngSpec(0)) -> McEstimate:
    """``-(Q_n/2) prod_i mean(Lambda(B_i))`` with ``B_i ~ Beta(2i-1, 2n-2i+1)``.

    Each factor has its own substream.  The product is formed from logs of
    absolute values with the sign tracked separately; the standard error is
    the first-order propagation
    ``(Q_n/2) sqrt(sum_i (prod_{j != i} m_j)**2 se_i**2)``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    n = int(n)
    means, ses = [], []
    for i in range(1, n + 1):
        m, s = _lambda_mean(dist, w, n_draws, rng, i, (2 * i - 1, 2 * n - 2 * i + 1))
        means.append(m)
        ses.append(s)
    half_q = 0.5 * rss_coefficients(n).q_n
    if any(m == 0.0 for m in means):
        product = 0.0
    else:
        sign = -1.0 if sum(m < 0 for m in means) % 2 else 1.0
        product = sign * math.exp(math.fsum(math.log(abs(m)) for m in means))
    var = math.fsum((math.prod(mj for j, mj in enumerate(means) if j != k) * sk) ** 2
                    for k, sk in enumerate(ses))
    indeterminate = any(abs(m) < 2.0 * s for m, s in zip(means, ses))
    return McEstimate(-half_q * product, half_q * math.sqrt(var), int(n_draws),
                      indeterminate, tuple(means))
