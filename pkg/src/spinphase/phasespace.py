"""Spin-coherent-state machinery for the bipartite (J=1/2 x J=1/2) sphere:
Husimi-Q evaluation with exact angular gradients, the phase-space current
operators, and a deterministic Monte-Carlo integration engine.

Sampling draws cos(theta_j) ~ U[-1, 1] and phi_j ~ U[0, 2 pi), which
importance-samples the sin(theta) measure; a raw-integrand mean therefore
estimates integral/(4 pi)^2.  Streams are keyed per chunk through the
counter of a Philox generator, so results are bit-identical for a fixed
(samples, seed, chunk) triple no matter how many workers evaluate them.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from numpy.random import Generator, Philox

from . import kernels
from .errors import NonFinite
from .qstate import DensityMatrix4

TWO_PI = 2.0 * math.pi
SPHERE_MEASURE = (4.0 * math.pi) ** 2  # total measure of dOmega

Q_FLOOR = 1e-12
NONFINITE_FRACTION = 1e-4


@dataclass(frozen=True)
class PhasePoint:
    theta_a: float
    phi_a: float
    theta_b: float
    phi_b: float

    def __post_init__(self):
        for theta in (self.theta_a, self.theta_b):
            if not 0.0 <= theta <= math.pi:
                raise ValueError(f"colatitude {theta} outside [0, pi]")
        for phi in (self.phi_a, self.phi_b):
            if not 0.0 <= phi < TWO_PI:
                raise ValueError(f"azimuth {phi} outside [0, 2 pi)")


@dataclass(frozen=True)
class HusimiSample:
    q: float
    dtheta_a: float
    dphi_a: float
    dtheta_b: float
    dphi_b: float


@dataclass(frozen=True)
class MCConfig:
    samples: int = 1_000_000
    seed: int = 0
    chunk: int = 65_536

    def __post_init__(self):
        if self.samples < 1_000:
            raise ValueError("at least 1000 samples are required")
        if self.chunk < 1:
            raise ValueError("chunk must be positive")


class MCEstimate(NamedTuple):
    value: float
    stderr: float
    discarded_fraction: float


def coherent_vector(theta: float, phi: float) -> np.ndarray:
    """(cos(theta/2), e^{i phi} sin(theta/2)), the J=1/2 coherent state."""
    return np.array([math.cos(theta / 2.0), math.sin(theta / 2.0) * np.exp(1j * phi)])


def husimi(rho: DensityMatrix4, p: PhasePoint) -> HusimiSample:
    """Q = <Omega|rho|Omega> and its four first angular partials."""
    vals = kernels.husimi_batch(
        rho.matrix,
        np.array([math.cos(p.theta_a)]),
        np.array([p.phi_a]),
        np.array([math.cos(p.theta_b)]),
        np.array([p.phi_b]),
    )
    return HusimiSample(*(float(x) for x in vals[:, 0]))


def current_jz(s: HusimiSample, subsystem: str) -> float:
    """The azimuthal derivative entering |Jz(Q)|^2 = (dQ/dphi_j)^2."""
    if subsystem == "a":
        return s.dphi_a
    if subsystem == "b":
        return s.dphi_b
    raise ValueError(f"subsystem must be 'a' or 'b', got {subsystem!r}")


def f_current(
    s: HusimiSample,
    p: PhasePoint,
    nbar: float,
    j_spin: float,
    subsystem: str,
) -> complex:
    """The amplitude-damping phase-space current f_j(Q)."""
    if subsystem == "a":
        theta, phi, dtheta, dphi = p.theta_a, p.phi_a, s.dtheta_a, s.dphi_a
    elif subsystem == "b":
        theta, phi, dtheta, dphi = p.theta_b, p.phi_b, s.dtheta_b, s.dphi_b
    else:
        raise ValueError(f"subsystem must be 'a' or 'b', got {subsystem!r}")
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    phase = np.exp(1j * phi)
    jz = -1j * dphi
    # raising current e^{i phi}(d_theta + i cot(theta) d_phi) Q; at the poles
    # d_phi Q vanishes identically, so the cotangent term is dropped there
    if sin_t > 1e-12:
        j_plus = phase * (dtheta + 1j * (cos_t / sin_t) * dphi)
    else:
        j_plus = phase * dtheta
    kappa = 2.0 * nbar + 1.0
    return 0.5 * (2.0 * j_spin * s.q - jz) * phase * sin_t + 0.5 * (cos_t - kappa) * j_plus


# --- Monte-Carlo engine ----------------------------------------------------

def _worker_count() -> int:
    raw = os.environ.get("SPINPHASE_THREADS", "").strip()
    if not raw:
        return 1
    return max(int(raw), 1)


def sample_chunk(seed: int, chunk_index: int, n: int):
    """Deterministic angle arrays for one chunk of the sample stream."""
    gen = Generator(Philox(counter=[0, 0, 0, chunk_index], key=seed))
    u = gen.random((4, n))
    return 2.0 * u[0] - 1.0, TWO_PI * u[1], 2.0 * u[2] - 1.0, TWO_PI * u[3]


def run_moments(cfg: MCConfig, evaluate: Callable[..., np.ndarray]) -> list[MCEstimate]:
    """Accumulate mean/stderr of one or more integrands over the sample stream.

    evaluate(cos_ta, phi_a, cos_tb, phi_b) must return an (m, n) array of raw
    integrand values; non-finite entries count as guard-discarded samples.
    The returned estimates carry the (4 pi)^2 measure factor.  Chunks may be
    evaluated by several workers; moments are combined in chunk order, so the
    result does not depend on the worker count.
    """
    n_chunks = -(-cfg.samples // cfg.chunk)

    def one_chunk(k: int):
        n = min(cfg.chunk, cfg.samples - k * cfg.chunk)
        vals = np.atleast_2d(evaluate(*sample_chunk(cfg.seed, k, n)))
        good = np.isfinite(vals)
        safe = np.where(good, vals, 0.0)
        return good.sum(axis=1), safe.sum(axis=1), (safe * safe).sum(axis=1)

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_chunk, range(n_chunks)))
    else:
        parts = [one_chunk(k) for k in range(n_chunks)]

    counts = np.sum([p[0] for p in parts], axis=0)
    sums = np.sum([p[1] for p in parts], axis=0)
    sumsqs = np.sum([p[2] for p in parts], axis=0)

    out = []
    for count, total, total_sq in zip(counts, sums, sumsqs):
        discarded = 1.0 - count / cfg.samples
        if discarded > NONFINITE_FRACTION:
            raise NonFinite(
                f"{discarded:.2%} of samples non-finite after the Q-floor guard"
            )
        mean = total / count
        var = max(total_sq / count - mean * mean, 0.0)
        stderr = math.sqrt(var / count) if count > 1 else 0.0
        out.append(MCEstimate(SPHERE_MEASURE * mean, SPHERE_MEASURE * stderr, discarded))
    return out


def mc_integrate(integrand, cfg: MCConfig) -> MCEstimate:
    """Estimate integral of integrand over dOmega.

    integrand(theta_a, phi_a, theta_b, phi_b) takes (n,) angle arrays and
    returns (n,) values; it must be finite almost everywhere.
    """

    def evaluate(cos_ta, phi_a, cos_tb, phi_b):
        ta = np.arccos(np.clip(cos_ta, -1.0, 1.0))
        tb = np.arccos(np.clip(cos_tb, -1.0, 1.0))
        return np.asarray(integrand(ta, phi_a, tb, phi_b))[None, :]

    return run_moments(cfg, evaluate)[0]


def husimi_evaluator(rho: DensityMatrix4):
    """Chunk evaluator returning the raw (5, n) Husimi stack for `run_moments`
    style consumers; used to share one Husimi pass across integrands."""
    matrix = np.ascontiguousarray(rho.matrix)

    def evaluate(cos_ta, phi_a, cos_tb, phi_b):
        return kernels.husimi_batch(matrix, cos_ta, phi_a, cos_tb, phi_b)

    return evaluate
