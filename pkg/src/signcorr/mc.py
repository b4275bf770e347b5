"""Seeded Monte Carlo estimators for the sign-correlation functional of any
odd family, at real correlation t or on the imaginary axis.

Sampling is counter-based (SplitMix64 over a sample-indexed counter) with a
Box-Muller normal transform, so any (family, samples, seed) triple yields a
bit-identical estimate on every platform and run, independent of batching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .specfun import hermite_prob

__all__ = [
    "Family",
    "McEstimate",
    "identity1",
    "rotation3",
    "hermite5",
    "estimate_phi_t",
    "estimate_phi_i",
    "sweep_hermite5",
]

_U64 = np.uint64
_MASK64 = 0xFFFFFFFFFFFFFFFF
# SplitMix64: golden-ratio increment and the two finalizer multipliers
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_MULT1 = _U64(0xBF58476D1CE4E5B9)
_MULT2 = _U64(0x94D049BB133111EB)
_BATCH = 1 << 20
_INV_2_53 = 2.0**-53


@dataclass(frozen=True)
class Family:
    """An odd pair F, G: R^n -> R with its dimension and parameter.

    F and G take an (N, n) array of points and return N values.
    """

    name: str
    n: int
    F: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    G: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    param_name: str | None = None
    param_value: float | None = None


@dataclass(frozen=True)
class McEstimate:
    """Sample mean with stderr = sample standard deviation / sqrt(samples)."""

    mean: float
    stderr: float
    samples: int
    seed: int


def identity1() -> Family:
    """n = 1, F = G = x0: the closed-form reference family."""
    first = lambda x: x[:, 0]
    return Family("identity1", 1, first, first)


def rotation3(eta: float) -> Family:
    """n = 3: coordinates 1, 2 mixed by the angle eps (x0^2 - 1), eps = eta/2,
    with opposite mixing orientation between F and G."""
    if not math.isfinite(eta):
        raise ValueError(f"eta must be finite, got {eta}")
    eps = eta / 2.0

    def F(x):
        a = eps * hermite_prob(2, x[:, 0])
        return x[:, 1] * np.cos(a) + x[:, 2] * np.sin(a)

    def G(y):
        a = eps * hermite_prob(2, y[:, 0])
        return y[:, 1] * np.cos(a) - y[:, 2] * np.sin(a)

    return Family("rotation3", 3, F, G, "eta", eta)


def hermite5(epsilon: float) -> Family:
    """n = 2, F = G = x0 + epsilon He_5(x1)."""
    if not (math.isfinite(epsilon) and epsilon >= 0):
        raise ValueError(f"epsilon must be finite and >= 0, got {epsilon}")

    def F(x):
        return x[:, 0] + epsilon * hermite_prob(5, x[:, 1])

    return Family("hermite5", 2, F, F, "epsilon", epsilon)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U64(30))) * _MULT1
    z = (z ^ (z >> _U64(27))) * _MULT2
    return z ^ (z >> _U64(31))


def _normals(seed: int, start: int, count: int) -> np.ndarray:
    """count standard normals (count even) from counter positions
    start .. start+count-1 of the stream: SplitMix64 raw words, uniforms in
    (0, 1], then the Box-Muller cosine/sine pair."""
    idx = np.arange(start, start + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        raw = _mix64(_U64(seed & _MASK64) + (idx + _U64(1)) * _GOLDEN)
    u = ((raw >> _U64(11)).astype(np.float64) + 1.0) * _INV_2_53
    u = u.reshape(-1, 2)
    r = np.sqrt(-2.0 * np.log(u[:, 0]))
    ang = 2.0 * math.pi * u[:, 1]
    z = np.empty(count)
    z[0::2] = r * np.cos(ang)
    z[1::2] = r * np.sin(ang)
    return z


def _accumulate(
    family: Family, samples: int, seed: int, weights: Callable
) -> McEstimate:
    """Stream batches of 2n normals per sample through `weights`; the fixed
    batch size and per-batch numpy sums keep the reduction bit-stable."""
    if not isinstance(samples, (int, np.integer)) or samples < 1:
        raise ValueError(f"samples must be a positive integer, got {samples!r}")
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")
    stride = 2 * family.n
    sums: list[float] = []
    sqsums: list[float] = []
    for lo in range(0, samples, _BATCH):
        nb = min(_BATCH, samples - lo)
        z = _normals(seed, lo * stride, nb * stride).reshape(nb, stride)
        w = weights(z)
        sums.append(float(np.sum(w)))
        sqsums.append(float(np.sum(w * w)))
    total = math.fsum(sums)
    mean = total / samples
    if samples > 1:
        var = (math.fsum(sqsums) - total * total / samples) / (samples - 1)
        stderr = math.sqrt(max(var, 0.0) / samples)
    else:
        stderr = 0.0
    return McEstimate(mean, stderr, int(samples), int(seed))


def estimate_phi_t(family: Family, t: float, samples: int, seed: int) -> McEstimate:
    """Estimate Phi(t) = E[sign(F(X)) sign(G(Y))] with per-coordinate
    correlation E[X_i Y_i] = t via Y = t X + sqrt(1-t^2) Z."""
    if not abs(t) <= 1:
        raise ValueError(f"need |t| <= 1, got t={t}")
    n = family.n
    comp = math.sqrt(1.0 - t * t)

    def weights(z):
        x = z[:, :n]
        y = t * x + comp * z[:, n:]
        return np.sign(family.F(x)) * np.sign(family.G(y))

    return _accumulate(family, samples, seed, weights)


def estimate_phi_i(family: Family, samples: int, seed: int) -> McEstimate:
    """Estimate Phi(i)/i = 2^{n/2} E[sign(F(xi)) sign(G(zeta)) sin(<xi, zeta>/2)]
    with xi, zeta independent N(0, 2 I_n); the 2^{n/2} factor converts the
    sampling density to the functional's normalization."""
    n = family.n
    scale = 2.0 ** (n / 2.0)
    root2 = math.sqrt(2.0)

    def weights(z):
        xi = root2 * z[:, :n]
        zeta = root2 * z[:, n:]
        inner = np.sum(xi * zeta, axis=1)
        return scale * np.sign(family.F(xi)) * np.sign(family.G(zeta)) * np.sin(0.5 * inner)

    return _accumulate(family, samples, seed, weights)


def sweep_hermite5(
    epsilons, samples: int, seed: int
) -> list[tuple[float, McEstimate]]:
    """estimate_phi_i for the hermite5 family at each epsilon, same seed."""
    out = []
    for eps in epsilons:
        out.append((float(eps), estimate_phi_i(hermite5(float(eps)), samples, seed)))
    return out
