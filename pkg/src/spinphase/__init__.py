"""Spin phase-space entropy production for two-qubit Lindblad channels."""

__version__ = "0.1.0"

from .channels import (
    ChannelSpec,
    Trajectory,
    ad_propagate,
    dephasing_propagate,
    dissipator_apply,
    evolve_grid,
    propagate,
    rk4_evolve,
)
from .entropy import (
    EntropyRecord,
    entropy_record,
    phi_ad,
    pi_ad,
    pi_dephasing,
    pi_von_neumann,
    wehrl_entropy,
)
from .phasespace import (
    HusimiSample,
    MCConfig,
    MCEstimate,
    PhasePoint,
    coherent_vector,
    current_jz,
    f_current,
    husimi,
    mc_integrate,
    run_moments,
)
from .qstate import (
    AmplitudeDampingFamily,
    CoherenceReport,
    DensityMatrix4,
    DephasingFamily,
    beta_from_nbar,
    build_ad_state,
    build_dephasing_state,
    gibbs_state,
    l1_coherence,
    load_state,
    random_state,
    relative_coherence,
    relative_entropy,
    save_state,
    von_neumann_entropy,
)
