"""Problem data: signals, support priors, measurement ensembles, and metrics.

Randomness is always drawn from an explicitly passed ``numpy.random.Generator``
(PCG64).  :func:`substream` derives independent, schedule-free generators from
a master seed plus integer keys, so parallel trials are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(master_seed: int, *keys: int) -> np.random.Generator:
    """Independent generator derived from ``(master_seed, *keys)``.

    The same tuple yields the same stream on every platform.
    """
    entropy = [int(master_seed) & _MASK64] + [int(k) & _MASK64 for k in keys]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def derived_seed(master_seed: int, *keys: int) -> int:
    """64-bit seed hashed from ``(master_seed, *keys)``; feed to ``default_rng``."""
    entropy = [int(master_seed) & _MASK64] + [int(k) & _MASK64 for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


@dataclass(frozen=True)
class SupportEstimate:
    """Prior support guess with its accuracy parameters.

    ``indices`` is the guessed index set (0-based), ``omega`` the weight
    applied on it, ``rho`` its size relative to the sparsity it was built
    against, and ``alpha`` the fraction of the guess that is correct.
    """

    indices: tuple[int, ...]
    omega: float
    rho: float
    alpha: float

    def weights(self, n: int) -> np.ndarray:
        """Weight vector: ``omega`` on the estimated support, 1 elsewhere."""
        w = np.ones(n)
        if self.indices:
            w[list(self.indices)] = self.omega
        return w


@dataclass(frozen=True)
class PhaselessInstance:
    """One realization of the squared-magnitude measurement model.

    ``b = (A x)**2 + e`` entrywise, ``epsilon = ||e||_2``.
    """

    A: np.ndarray
    x: np.ndarray
    e: np.ndarray
    sigma: float
    epsilon: float
    b: np.ndarray


def gen_sparse_signal(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """Exactly k-sparse signal: uniform random support, standard normal values."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    x = np.zeros(n)
    support = rng.choice(n, size=k, replace=False)
    x[support] = rng.standard_normal(k)
    return x


def gen_compressible_signal(n: int, theta: float, rng: np.random.Generator) -> np.ndarray:
    """Signal whose sorted magnitudes decay like ``j**-theta``.

    Signs are i.i.d. uniform in {-1, +1} and the magnitudes are placed at
    randomly permuted positions, so the dominant support is nontrivial.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    magnitudes = np.arange(1, n + 1, dtype=float) ** (-theta)
    signs = rng.choice([-1.0, 1.0], size=n)
    positions = rng.permutation(n)
    x = np.zeros(n)
    x[positions] = magnitudes * signs
    return x


def best_k_support(x: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest magnitudes, ties broken toward the lowest index."""
    x = np.asarray(x, dtype=float)
    if not 1 <= k <= x.size:
        raise ValueError(f"need 1 <= k <= len(x), got k={k}")
    order = np.argsort(-np.abs(x), kind="stable")
    return np.sort(order[:k])


def gen_support_estimate(
    rng: np.random.Generator,
    t0: np.ndarray,
    n: int,
    k: int,
    rho: float,
    alpha: float,
    omega: float,
) -> SupportEstimate:
    """Random support estimate of size ``round(rho*k)`` hitting ``t0`` at rate ``alpha``.

    ``round(alpha*rho*k)`` indices are sampled uniformly from ``t0`` and the
    rest uniformly from its complement.  Non-integer targets round half up,
    so the realized alpha is approximate.
    """
    t0 = np.asarray(t0, dtype=int)
    size = _round_half_up(rho * k)
    size_in = _round_half_up(alpha * rho * k)
    size_out = size - size_in
    if size_in > min(t0.size, size):
        raise ValueError(
            f"infeasible estimate: {size_in} correct indices requested, "
            f"|T0|={t0.size}, |estimate|={size}"
        )
    if size_out > n - t0.size:
        raise ValueError(
            f"infeasible estimate: {size_out} wrong indices requested but only "
            f"{n - t0.size} positions outside T0"
        )
    inside = rng.choice(t0, size=size_in, replace=False) if size_in else np.empty(0, int)
    pool = np.setdiff1d(np.arange(n), t0)
    outside = rng.choice(pool, size=size_out, replace=False) if size_out else np.empty(0, int)
    indices = tuple(sorted(int(i) for i in np.concatenate([inside, outside])))
    return SupportEstimate(indices=indices, omega=float(omega), rho=float(rho), alpha=float(alpha))


def gen_gaussian_matrix(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
    """Gaussian measurement matrix, entries N(0, 1/m) so ||A x|| ~ ||x||."""
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be at least 1")
    return rng.standard_normal((m, n)) / math.sqrt(m)


def make_instance(
    A: np.ndarray,
    x: np.ndarray,
    sigma: float,
    rng: np.random.Generator,
) -> PhaselessInstance:
    """Measure ``x`` through ``A``: ``b = (A x)**2 + e`` with ``e ~ N(0, sigma^2)``."""
    A = np.asarray(A, dtype=float)
    x = np.asarray(x, dtype=float)
    if A.shape[1] != x.size:
        raise ValueError("matrix and signal shapes disagree")
    m = A.shape[0]
    e = sigma * rng.standard_normal(m) if sigma > 0 else np.zeros(m)
    b = (A @ x) ** 2 + e
    return PhaselessInstance(
        A=A, x=x, e=e, sigma=float(sigma), epsilon=float(np.linalg.norm(e)), b=b
    )


def snr_db(x: np.ndarray, xhat: np.ndarray) -> float:
    """Reconstruction SNR in dB, global sign removed; +inf on exact recovery."""
    x = np.asarray(x, dtype=float)
    xhat = np.asarray(xhat, dtype=float)
    if x.shape != xhat.shape:
        raise ValueError("signals must have the same length")
    nx = np.linalg.norm(x)
    if nx == 0:
        raise ValueError("SNR undefined for the zero signal")
    err = min(np.linalg.norm(xhat - x), np.linalg.norm(xhat + x))
    if err == 0:
        return math.inf
    return 20.0 * math.log10(nx / err)


def weighted_l1(x: np.ndarray, w: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    if x.shape != w.shape:
        raise ValueError("signal and weights must have the same length")
    return float(np.sum(w * np.abs(x)))


def tail_norms(x: np.ndarray, t0, t_tilde) -> tuple[float, float]:
    """l1 mass outside ``t0`` and outside ``t0 union t_tilde``."""
    x = np.asarray(x, dtype=float)
    n = x.size
    in_t0 = np.zeros(n, dtype=bool)
    in_t0[np.asarray(sorted(t0), dtype=int)] = True
    in_tilde = np.zeros(n, dtype=bool)
    tilde = sorted(t_tilde)
    if tilde:
        in_tilde[np.asarray(tilde, dtype=int)] = True
    tail_t0 = float(np.abs(x[~in_t0]).sum())
    tail_joint = float(np.abs(x[~in_t0 & ~in_tilde]).sum())
    return tail_t0, tail_joint
