"""Lindblad dynamics of the two-qubit system under local dephasing and
amplitude-damping channels.

Everything is computed in the interaction picture (the free Hamiltonian
only enters through the Gibbs reference state), so rho-dot = D(rho).
The analytic propagators implement the closed-form entrywise solutions;
`rk4_evolve` is the generic fixed-step oracle they are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import StepTooLarge
from .qstate import DensityMatrix4

_SZ = np.diag([1.0, -1.0]).astype(complex)
_JZ = _SZ / 2.0
_SM = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |1><0|
_SP = _SM.conj().T
_I2 = np.eye(2, dtype=complex)


def _on_a(op):
    return np.kron(op, _I2)


def _on_b(op):
    return np.kron(_I2, op)


@dataclass(frozen=True)
class ChannelSpec:
    """Channel kind plus rates; only the fields of the active kind are used.

    Rates are symmetric across the two qubits (as in the scenarios studied
    here); eps_a/eps_b only matter for the Gibbs reference state."""

    kind: str  # "dephasing" | "ad"
    lam: float = 0.0
    gamma: float = 0.0
    nbar: float = 0.0
    eps_a: float = 1.0
    eps_b: float = 1.0

    def __post_init__(self):
        if self.kind not in ("dephasing", "ad"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.lam < 0 or self.gamma < 0 or self.nbar < 0:
            raise ValueError("rates and nbar must be non-negative")

    @property
    def gamma_bar(self) -> float:
        """Temperature-dressed relaxation rate Gamma*(2 nbar + 1)."""
        return self.gamma * (2.0 * self.nbar + 1.0)

    @property
    def max_rate(self) -> float:
        return self.lam if self.kind == "dephasing" else max(self.gamma_bar, self.gamma)

    def equilibrium_state(self) -> DensityMatrix4:
        """Product thermal fixed point, excited population nbar/(2 nbar + 1)
        per qubit.  Coincides with gibbs_state at the detailed-balance
        temperature beta*eps = ln((nbar+1)/nbar)."""
        if self.kind != "ad":
            raise ValueError("only the amplitude-damping channel has a Gibbs fixed point")
        p0 = self.nbar / (2.0 * self.nbar + 1.0)
        single = np.array([p0, 1.0 - p0])
        return DensityMatrix4(np.diag(np.kron(single, single)).astype(complex))

    def lindblad_ops(self) -> list[tuple[float, np.ndarray]]:
        """(rate, jump operator) pairs defining the dissipator."""
        if self.kind == "dephasing":
            return [(self.lam, _on_a(_JZ)), (self.lam, _on_b(_JZ))]
        down, up = self.gamma * (self.nbar + 1.0), self.gamma * self.nbar
        return [
            (down, _on_a(_SM)),
            (up, _on_a(_SP)),
            (down, _on_b(_SM)),
            (up, _on_b(_SP)),
        ]


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple[DensityMatrix4, ...]

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t[0] != 0.0 or np.any(np.diff(t) <= 0):
            raise ValueError("time grid must start at 0 and be strictly increasing")
        if len(self.states) != len(t):
            raise ValueError("one state per grid point required")


def dephasing_propagate(rho0: DensityMatrix4, lam: float, t: float) -> DensityMatrix4:
    """Diagonal unchanged; anti-diagonal entries decay as exp(-lam t),
    all other off-diagonals as exp(-lam t / 2)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    m = rho0.matrix.copy()
    slow = math.exp(-0.5 * lam * t)
    fast = math.exp(-lam * t)
    decay = np.full((4, 4), slow)
    np.fill_diagonal(decay, 1.0)
    for i, j in ((0, 3), (3, 0), (1, 2), (2, 1)):
        decay[i, j] = fast
    return DensityMatrix4(m * decay)


def _single_qubit_pop_map(gamma_bar: float, nbar: float, t: float) -> np.ndarray:
    """2x2 classical propagator of (p0, p1) with fixed point
    (nbar, nbar+1)/(2 nbar + 1)."""
    e = math.exp(-gamma_bar * t)
    kappa = 2.0 * nbar + 1.0
    p0_star = nbar / kappa
    fix = np.array([[p0_star, p0_star], [1.0 - p0_star, 1.0 - p0_star]])
    return e * np.eye(2) + (1.0 - e) * fix


def ad_propagate(rho0: DensityMatrix4, gamma: float, nbar: float, t: float) -> DensityMatrix4:
    """Closed-form amplitude-damping propagator.

    Populations evolve under the Kronecker product of the two local classical
    relaxations; the coherence pairs (rho12, rho34) and (rho13, rho24) follow
    the coupled two-rate solution; rho14 and rho23 decay as exp(-gbar t)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    gbar = gamma * (2.0 * nbar + 1.0)
    m0 = rho0.matrix
    out = np.zeros((4, 4), dtype=complex)

    pop_map = _single_qubit_pop_map(gbar, nbar, t)
    pops = np.kron(pop_map, pop_map) @ np.real(np.diag(m0))
    np.fill_diagonal(out, pops)

    # coupled coherence pairs: x = element with qubit a in |0>, y with a in |1>
    e_half = math.exp(-0.5 * gbar * t)
    e_3half = math.exp(-1.5 * gbar * t)
    kappa = 2.0 * nbar + 1.0

    def pair(x0, y0):
        c1 = (x0 + y0) / kappa  # slow mode along (nbar, nbar+1)
        c2 = ((nbar + 1.0) * x0 - nbar * y0) / kappa  # fast mode along (1, -1)
        x = c1 * nbar * e_half + c2 * e_3half
        y = c1 * (nbar + 1.0) * e_half - c2 * e_3half
        return x, y

    out[0, 1], out[2, 3] = pair(m0[0, 1], m0[2, 3])
    out[0, 2], out[1, 3] = pair(m0[0, 2], m0[1, 3])

    e_full = math.exp(-gbar * t)
    out[0, 3] = m0[0, 3] * e_full
    out[1, 2] = m0[1, 2] * e_full

    out += np.triu(out, 1).conj().T
    return DensityMatrix4(out)


def propagate(rho0: DensityMatrix4, spec: ChannelSpec, t: float) -> DensityMatrix4:
    if spec.kind == "dephasing":
        return dephasing_propagate(rho0, spec.lam, t)
    return ad_propagate(rho0, spec.gamma, spec.nbar, t)


def evolve_grid(rho0: DensityMatrix4, spec: ChannelSpec, times) -> Trajectory:
    times = np.asarray(times, dtype=float)
    states = tuple(propagate(rho0, spec, t) for t in times)
    return Trajectory(times=times, states=states)


def _dissipator_raw(m: np.ndarray, ops) -> np.ndarray:
    """D(m) for a (..., 4, 4) stack; broadcasts over leading axes."""
    out = np.zeros_like(m)
    for rate, L in ops:
        if rate == 0.0:
            continue
        Ld = L.conj().T
        LdL = Ld @ L
        out += rate * (L @ m @ Ld - 0.5 * (LdL @ m + m @ LdL))
    return out


def dissipator_apply(rho: DensityMatrix4, spec: ChannelSpec) -> np.ndarray:
    """D(rho) = D_a(rho) + D_b(rho); traceless and Hermitian."""
    return _dissipator_raw(rho.matrix, spec.lindblad_ops())


def _rk4_raw(m0: np.ndarray, spec: ChannelSpec, t: float, dt: float) -> np.ndarray:
    """Fixed-step RK4 on a (..., 4, 4) stack, re-hermitized every step."""
    ops = spec.lindblad_ops()
    n_steps = max(int(math.ceil(t / dt)), 1) if t > 0 else 0
    h = t / n_steps if n_steps else 0.0
    m = m0.astype(complex).copy()
    for _ in range(n_steps):
        k1 = _dissipator_raw(m, ops)
        k2 = _dissipator_raw(m + 0.5 * h * k1, ops)
        k3 = _dissipator_raw(m + 0.5 * h * k2, ops)
        k4 = _dissipator_raw(m + h * k3, ops)
        m = m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        m = 0.5 * (m + np.swapaxes(m.conj(), -1, -2))
    drift = np.max(np.abs(np.trace(m, axis1=-2, axis2=-1) - 1.0))
    if drift > 1e-8:
        raise StepTooLarge(f"trace drift {drift:.3e} > 1e-8; reduce dt")
    return m


def rk4_evolve(rho0: DensityMatrix4, spec: ChannelSpec, t: float, dt: float) -> DensityMatrix4:
    """Classic 4th-order fixed-step integration of rho-dot = D(rho);
    intended as the cross-check oracle for the analytic propagators."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if spec.max_rate > 0 and dt > 1e-3 / spec.max_rate:
        raise ValueError(f"dt must be <= {1e-3 / spec.max_rate:.3e} for this spec")
    return DensityMatrix4(_rk4_raw(rho0.matrix, spec, t, dt))
