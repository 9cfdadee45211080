import numpy as np
import pytest

from spinphase import (
    AmplitudeDampingFamily,
    ChannelSpec,
    DensityMatrix4,
    DephasingFamily,
    MCConfig,
    build_ad_state,
    build_dephasing_state,
)

QUARTER = (0.25, 0.25, 0.25, 0.25)


@pytest.fixture
def maximally_mixed():
    return DensityMatrix4(np.eye(4) / 4.0)


@pytest.fixture
def ground_00():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0
    return DensityMatrix4(m)


@pytest.fixture
def fig3_state():
    return build_ad_state(
        AmplitudeDampingFamily((0.1, 0.2, 0.1, 0.6), alpha=0.02, beta=0.15, gamma=0.02)
    )


@pytest.fixture
def fig3_spec():
    # Gamma-bar = 1 at nbar = 1.5
    return ChannelSpec(kind="ad", gamma=0.25, nbar=1.5)


@pytest.fixture
def dephasing_spec():
    return ChannelSpec(kind="dephasing", lam=1.0)


@pytest.fixture
def small_cfg():
    return MCConfig(samples=50_000, seed=11)


def x_alpha_state(alpha, pops=QUARTER):
    return build_dephasing_state(DephasingFamily(pops, alpha=alpha))


def antidiag_only_state(alpha, pops=QUARTER):
    """X-state with a single anti-diagonal coherence pair rho14 = rho41."""
    m = np.diag(np.asarray(pops, dtype=complex))
    m[0, 3] = m[3, 0] = alpha
    return DensityMatrix4(m)


def random_valid_state(rng, kind):
    """Random family state via PSD rejection, all classes active."""
    while True:
        xi = rng.random(4)
        pops = tuple(xi / xi.sum())
        try:
            if kind == "dephasing":
                return build_dephasing_state(
                    DephasingFamily(pops, alpha=rng.uniform(0, 0.25), beta=rng.uniform(0, 0.25))
                )
            return build_ad_state(
                AmplitudeDampingFamily(
                    pops,
                    alpha=rng.uniform(0, 0.25),
                    beta=rng.uniform(0, 0.25),
                    gamma=rng.uniform(0, 0.25),
                )
            )
        except Exception:
            continue
