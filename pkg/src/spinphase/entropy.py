"""Thermodynamic quantifiers along a channel trajectory: Wehrl entropy,
phase-space entropy production Pi and flux Phi for both channels, and the
von Neumann (Spohn) production rate.

All Monte-Carlo estimators share the convention of `phasespace.run_moments`:
one Husimi pass per state feeds every integrand, so quantities evaluated at
the same (seed, samples, chunk) share their sample stream exactly.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .channels import ChannelSpec, dissipator_apply
from .errors import SingularReference
from .phasespace import MCConfig, MCEstimate, Q_FLOOR, run_moments
from .qstate import (
    DensityMatrix4,
    SINGULAR_TOL,
    l1_coherence,
    relative_coherence,
)


def _prefactor(j_spin: float) -> float:
    return ((2.0 * j_spin + 1.0) / (4.0 * math.pi)) ** 2


@dataclass(frozen=True)
class EntropyRecord:
    """One time-grid row of an experiment."""

    t: float
    pi: float
    pi_stderr: float
    phi: float
    phi_stderr: float
    wehrl: float
    wehrl_stderr: float
    pi_vn: float  # nan when no Gibbs reference exists (dephasing)
    c_l1: float
    c_rel: float
    discarded: float = 0.0  # worst Q-floor-guard discard fraction, for provenance


def _wehrl_vals(h):
    q = h[0]
    safe = np.where(q > 0.0, q, 1.0)
    return np.where(q > 0.0, q * np.log(safe), 0.0)


def _pi_dephasing_vals(h):
    q = h[0]
    num = h[2] * h[2] + h[4] * h[4]
    return np.where(q < Q_FLOOR, np.nan, num / np.where(q < Q_FLOOR, 1.0, q))


def _pi_ad_vals(h, cos_ta, cos_tb, nbar, two_j=1.0):
    q = h[0]
    kappa = 2.0 * nbar + 1.0
    total = np.zeros_like(q)
    for cos_t, dtheta, dphi in ((cos_ta, h[1], h[2]), (cos_tb, h[3], h[4])):
        sin_sq = 1.0 - cos_t * cos_t
        sin_t = np.sqrt(sin_sq)
        damp = two_j * q * sin_t + (cos_t - kappa) * dtheta
        total += damp * damp / (kappa - cos_t)
        total += dphi * dphi * (kappa * cos_t - 1.0) * cos_t / sin_sq
    return np.where(q < Q_FLOOR, np.nan, total / np.where(q < Q_FLOOR, 1.0, q))


def _phi_ad_vals(h, cos_ta, cos_tb, nbar, two_j=1.0):
    q = h[0]
    kappa = 2.0 * nbar + 1.0
    total = np.zeros_like(q)
    for cos_t, dtheta in ((cos_ta, h[1]), (cos_tb, h[3])):
        sin_sq = 1.0 - cos_t * cos_t
        total += two_j * q * sin_sq / (kappa - cos_t) - np.sqrt(sin_sq) * dtheta
    return total


def _scaled(est: MCEstimate, scale: float) -> MCEstimate:
    return MCEstimate(scale * est.value, abs(scale) * est.stderr, est.discarded_fraction)


def _run_state_moments(rho: DensityMatrix4, cfg: MCConfig, parts):
    """One Husimi pass per chunk shared by all integrands in `parts`."""
    matrix = np.ascontiguousarray(rho.matrix)

    def evaluate(cos_ta, phi_a, cos_tb, phi_b):
        h = kernels.husimi_batch(matrix, cos_ta, phi_a, cos_tb, phi_b)
        return np.stack([fn(h, cos_ta, cos_tb) for fn in parts])

    return run_moments(cfg, evaluate)


def wehrl_entropy(rho: DensityMatrix4, cfg: MCConfig, j_spin: float = 0.5) -> MCEstimate:
    """Wehrl entropy -((2J+1)/4pi)^2 * integral of Q ln Q, in nats."""
    (est,) = _run_state_moments(rho, cfg, [lambda h, ca, cb: _wehrl_vals(h)])
    return _scaled(est, -_prefactor(j_spin))


def pi_dephasing(rho: DensityMatrix4, lam: float, cfg: MCConfig, j_spin: float = 0.5) -> MCEstimate:
    """Entropy production rate of the twin dephasing channels at state rho."""
    (est,) = _run_state_moments(rho, cfg, [lambda h, ca, cb: _pi_dephasing_vals(h)])
    return _scaled(est, 0.5 * lam * _prefactor(j_spin))


def _flag_negative(est: MCEstimate, label: str) -> MCEstimate:
    if est.value < -3.0 * est.stderr:
        warnings.warn(
            f"{label} estimate {est.value:.3e} below -3 stderr ({est.stderr:.3e})",
            stacklevel=3,
        )
    return est


def pi_ad(
    rho: DensityMatrix4, gamma: float, nbar: float, cfg: MCConfig, j_spin: float = 0.5
) -> MCEstimate:
    """Entropy production rate of the twin amplitude-damping channels."""
    two_j = 2.0 * j_spin
    (est,) = _run_state_moments(
        rho, cfg, [lambda h, ca, cb: _pi_ad_vals(h, ca, cb, nbar, two_j)]
    )
    return _flag_negative(_scaled(est, 0.5 * gamma * _prefactor(j_spin)), "pi_ad")


def phi_ad(
    rho: DensityMatrix4, gamma: float, nbar: float, cfg: MCConfig, j_spin: float = 0.5
) -> MCEstimate:
    """Entropy flux rate towards the local thermal baths (sign-indefinite)."""
    two_j = 2.0 * j_spin
    (est,) = _run_state_moments(
        rho, cfg, [lambda h, ca, cb: _phi_ad_vals(h, ca, cb, nbar, two_j)]
    )
    return _scaled(est, j_spin * gamma * _prefactor(j_spin))


def _matrix_log(m: np.ndarray, floor: float) -> np.ndarray:
    evals, vecs = np.linalg.eigh(m)
    return (vecs * np.log(np.maximum(evals, floor))) @ vecs.conj().T


def pi_von_neumann(rho: DensityMatrix4, spec: ChannelSpec, rho_eq: DensityMatrix4) -> float:
    """Spohn rate -d/dt S_vN(rho || rho_eq) = -Tr[D(rho)(ln rho - ln rho_eq)]."""
    eq_evals = np.linalg.eigvalsh(rho_eq.matrix)
    if eq_evals[0] < SINGULAR_TOL:
        raise SingularReference(
            f"Gibbs reference eigenvalue {eq_evals[0]:.3e} < {SINGULAR_TOL}; "
            "use the Wehrl rate in this regime"
        )
    # rho itself may be (numerically) rank deficient; D(rho) vanishes on the
    # associated subspace fast enough that flooring the eigenvalues is safe
    log_rho = _matrix_log(rho.matrix, 1e-18)
    log_eq = _matrix_log(rho_eq.matrix, SINGULAR_TOL)
    d = dissipator_apply(rho, spec)
    return float(-np.real(np.trace(d @ (log_rho - log_eq))))


def entropy_record(
    rho: DensityMatrix4,
    spec: ChannelSpec,
    t: float,
    cfg: MCConfig,
    rho_eq: DensityMatrix4 | None = None,
) -> EntropyRecord:
    """All quantifiers at one grid time, from a single shared Husimi pass.

    For dephasing channels Phi is identically zero and pi_vn is nan (there is
    no full-rank Gibbs reference for a pure-decoherence process)."""
    if spec.kind == "dephasing":
        parts = [
            lambda h, ca, cb: _pi_dephasing_vals(h),
            lambda h, ca, cb: _wehrl_vals(h),
        ]
        pi_est, wehrl_est = _run_state_moments(rho, cfg, parts)
        pi_est = _scaled(pi_est, 0.5 * spec.lam * _prefactor(0.5))
        phi_est = MCEstimate(0.0, 0.0, 0.0)
        vn = math.nan
    else:
        nbar = spec.nbar
        parts = [
            lambda h, ca, cb: _pi_ad_vals(h, ca, cb, nbar),
            lambda h, ca, cb: _phi_ad_vals(h, ca, cb, nbar),
            lambda h, ca, cb: _wehrl_vals(h),
        ]
        pi_est, phi_est, wehrl_est = _run_state_moments(rho, cfg, parts)
        pi_est = _flag_negative(
            _scaled(pi_est, 0.5 * spec.gamma * _prefactor(0.5)), "pi_ad"
        )
        phi_est = _scaled(phi_est, 0.5 * spec.gamma * _prefactor(0.5))
        if rho_eq is None:
            rho_eq = spec.equilibrium_state()
        vn = pi_von_neumann(rho, spec, rho_eq)
    wehrl_est = _scaled(wehrl_est, -_prefactor(0.5))
    discarded = max(
        pi_est.discarded_fraction,
        phi_est.discarded_fraction,
        wehrl_est.discarded_fraction,
    )
    return EntropyRecord(
        t=t,
        pi=pi_est.value,
        pi_stderr=pi_est.stderr,
        phi=phi_est.value,
        phi_stderr=phi_est.stderr,
        wehrl=wehrl_est.value,
        wehrl_stderr=wehrl_est.stderr,
        pi_vn=vn,
        c_l1=l1_coherence(rho),
        c_rel=relative_coherence(rho),
        discarded=discarded,
    )
