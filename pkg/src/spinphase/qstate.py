"""Two-qubit density matrices, the parametrized coherence families, and
information-theoretic quantifiers (l1 / relative entropy of coherence,
von Neumann entropies, Gibbs states).

Basis order is |00>, |01>, |10>, |11> with qubit a first.  |0> is the
sigma_z = +1 eigenstate (energy +eps/2), so the lowering operator maps
|0> -> |1> and amplitude damping at nbar = 0 drives the system to |11>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Exhausted, NotPositive, SingularReference

HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10

# eigenvalues of a relative-entropy reference below this are treated as zero
SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class DensityMatrix4:
    """Validated 4x4 density matrix of the two-qubit system."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERM_TOL:
            raise ValueError("matrix is not Hermitian within 1e-12")
        if abs(m.trace() - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {m.trace():.3e} is not 1 within 1e-12")
        evals = np.linalg.eigvalsh(m)
        if evals[0] < PSD_TOL:
            raise NotPositive(f"smallest eigenvalue {evals[0]:.3e} < {PSD_TOL}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()

    def rescale_coherences(self, mu: float) -> "DensityMatrix4":
        """Multiply every off-diagonal entry by mu (raises NotPositive if the
        result leaves the PSD cone)."""
        m = self.matrix * mu
        np.fill_diagonal(m, np.diag(self.matrix))
        return DensityMatrix4(m)


@dataclass(frozen=True)
class DephasingFamily:
    """States of the dephasing study: real alpha on the anti-diagonal,
    real beta on the remaining off-diagonal slots."""

    populations: tuple[float, float, float, float]
    alpha: float = 0.0
    beta: float = 0.0

    def matrix(self) -> np.ndarray:
        p1, p2, p3, p4 = self.populations
        a, b = self.alpha, self.beta
        return np.array(
            [
                [p1, b, b, a],
                [b, p2, a, b],
                [b, a, p3, b],
                [a, b, b, p4],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class AmplitudeDampingFamily:
    """States of the amplitude-damping study: alpha on (1,2),(1,3),
    beta on (2,4),(3,4), gamma on (1,4),(2,3)."""

    populations: tuple[float, float, float, float]
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def matrix(self) -> np.ndarray:
        p1, p2, p3, p4 = self.populations
        a, b, g = self.alpha, self.beta, self.gamma
        return np.array(
            [
                [p1, a, a, g],
                [a, p2, g, b],
                [a, g, p3, b],
                [g, b, b, p4],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class CoherenceReport:
    l1: float
    relative: float


def _check_populations(populations) -> None:
    p = np.asarray(populations, dtype=float)
    if np.any(p < 0):
        raise ValueError("populations must be non-negative")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"populations sum to {p.sum()}, expected 1")


def build_dephasing_state(family: DephasingFamily) -> DensityMatrix4:
    _check_populations(family.populations)
    return DensityMatrix4(family.matrix())


def build_ad_state(family: AmplitudeDampingFamily) -> DensityMatrix4:
    _check_populations(family.populations)
    return DensityMatrix4(family.matrix())


MAX_REJECTIONS = 10_000


def random_state(
    kind: str,
    bounds: tuple[float, float],
    seed: int,
) -> DensityMatrix4:
    """Draw a random state of the given family ("dephasing" or "ad").

    Populations are xi_i ~ U[0,1] normalized to unit sum; each coherence
    class value is drawn uniformly on `bounds` and the draw is rejected
    until the matrix is positive semi-definite.
    """
    lo, hi = bounds
    if not (0.0 <= lo <= hi <= 0.5):
        raise ValueError(f"coherence bounds must lie within [0, 0.5], got {bounds}")
    if kind not in ("dephasing", "ad"):
        raise ValueError(f"unknown state kind {kind!r}")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_REJECTIONS):
        xi = rng.random(4)
        pops = tuple(xi / xi.sum())
        if kind == "dephasing":
            fam = DephasingFamily(pops, alpha=rng.uniform(lo, hi), beta=rng.uniform(lo, hi))
        else:
            fam = AmplitudeDampingFamily(
                pops,
                alpha=rng.uniform(lo, hi),
                beta=rng.uniform(lo, hi),
                gamma=rng.uniform(lo, hi),
            )
        try:
            return DensityMatrix4(fam.matrix())
        except NotPositive:
            continue
    raise Exhausted(f"no PSD state found in {MAX_REJECTIONS} draws for bounds {bounds}")


def l1_coherence(rho: DensityMatrix4) -> float:
    """Sum of moduli of the off-diagonal entries."""
    m = rho.matrix
    return float(np.abs(m).sum() - np.abs(np.diag(m)).sum())


def von_neumann_entropy(rho: DensityMatrix4) -> float:
    """-Tr(rho ln rho) in nats, with 0 ln 0 := 0."""
    evals = np.linalg.eigvalsh(rho.matrix)
    evals = evals[evals > 0]
    return float(-np.sum(evals * np.log(evals)))


def relative_entropy(rho: DensityMatrix4, sigma: DensityMatrix4) -> float:
    """Tr(rho ln rho - rho ln sigma) in nats; sigma must be full rank."""
    sig_evals, sig_vecs = np.linalg.eigh(sigma.matrix)
    if sig_evals[0] < SINGULAR_TOL:
        raise SingularReference(
            f"reference state eigenvalue {sig_evals[0]:.3e} < {SINGULAR_TOL}"
        )
    log_sigma = (sig_vecs * np.log(sig_evals)) @ sig_vecs.conj().T
    cross = float(np.real(np.trace(rho.matrix @ log_sigma)))
    return -von_neumann_entropy(rho) - cross


def relative_coherence(rho: DensityMatrix4) -> float:
    """Relative entropy of coherence S(diag(rho)) - S(rho), clamped at 0."""
    diag = np.real(np.diag(rho.matrix))
    diag = diag[diag > 0]
    s_diag = float(-np.sum(diag * np.log(diag)))
    value = s_diag - von_neumann_entropy(rho)
    return max(value, 0.0)


def coherence_report(rho: DensityMatrix4) -> CoherenceReport:
    return CoherenceReport(l1=l1_coherence(rho), relative=relative_coherence(rho))


def gibbs_state(eps_a: float, eps_b: float, beta: float) -> DensityMatrix4:
    """Product Gibbs state of H = (eps_a/2) sz x 1 + (eps_b/2) 1 x sz.

    beta may be math.inf, in which case both qubits sit in |1> (ground)."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    if eps_a <= 0 or eps_b <= 0:
        raise ValueError("level splittings must be positive")

    def single(eps):
        if math.isinf(beta):
            return np.array([0.0, 1.0])
        # p(|0>) with |0> at energy +eps/2
        x = beta * eps
        p0 = 1.0 / (1.0 + math.exp(x)) if x < 700 else 0.0
        return np.array([p0, 1.0 - p0])

    pops = np.kron(single(eps_a), single(eps_b))
    return DensityMatrix4(np.diag(pops).astype(complex))


def beta_from_nbar(nbar: float, eps: float = 1.0) -> float:
    """Inverse temperature fixed by detailed balance: beta*eps = ln((n+1)/n)."""
    if nbar < 0:
        raise ValueError("nbar must be non-negative")
    if nbar == 0:
        return math.inf
    return math.log((nbar + 1.0) / nbar) / eps


# --- plain-text serialization (CLI --state-file format) -------------------

def state_to_text(rho: DensityMatrix4) -> str:
    """4 lines of 4 whitespace-separated complex entries "re+imi"."""
    lines = []
    for row in rho.matrix:
        lines.append(" ".join(f"{z.real:.17g}{z.imag:+.17g}i" for z in row))
    return "\n".join(lines) + "\n"


def state_from_text(text: str) -> DensityMatrix4:
    rows = []
    for line in text.strip().splitlines():
        entries = line.split()
        if len(entries) != 4:
            raise ValueError(f"expected 4 entries per line, got {len(entries)}")
        rows.append([complex(e.replace("i", "j")) for e in entries])
    if len(rows) != 4:
        raise ValueError(f"expected 4 lines, got {len(rows)}")
    return DensityMatrix4(np.array(rows, dtype=complex))


def load_state(path) -> DensityMatrix4:
    with open(path, "r", encoding="ascii") as fh:
        return state_from_text(fh.read())


def save_state(rho: DensityMatrix4, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(state_to_text(rho))
