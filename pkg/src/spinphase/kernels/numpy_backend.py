"""Pure-numpy evaluation of the Husimi-Q function and its angular
gradients on a batch of phase-space points."""

from __future__ import annotations

import numpy as np


def husimi_batch(rho, cos_ta, phi_a, cos_tb, phi_b):
    """Q and its four first angular partials at each sample point.

    rho: (4, 4) complex density matrix.
    cos_ta, phi_a, cos_tb, phi_b: (n,) float arrays.
    Returns a (5, n) float array: q, dQ/d(theta_a), dQ/d(phi_a),
    dQ/d(theta_b), dQ/d(phi_b).
    """
    ca = np.sqrt(0.5 * (1.0 + cos_ta))
    sa = np.sqrt(0.5 * (1.0 - cos_ta))
    cb = np.sqrt(0.5 * (1.0 + cos_tb))
    sb = np.sqrt(0.5 * (1.0 - cos_tb))
    ea = np.exp(1j * phi_a)
    eb = np.exp(1j * phi_b)

    va0, va1 = ca.astype(complex), sa * ea
    vb0, vb1 = cb.astype(complex), sb * eb

    v = np.stack([va0 * vb0, va0 * vb1, va1 * vb0, va1 * vb1], axis=1)
    r = v @ rho.T  # r_i = sum_j rho[i, j] v_j

    q = np.einsum("ni,ni->n", v.conj(), r).real

    # d(coherent vector)/d(theta) = (-sin(t/2)/2, cos(t/2) e^{i phi}/2)
    da0, da1 = -0.5 * sa.astype(complex), 0.5 * ca * ea
    db0, db1 = -0.5 * sb.astype(complex), 0.5 * cb * eb

    dv_ta = np.stack([da0 * vb0, da0 * vb1, da1 * vb0, da1 * vb1], axis=1)
    dv_tb = np.stack([va0 * db0, va0 * db1, va1 * db0, va1 * db1], axis=1)
    zero = np.zeros_like(va1)
    dv_pa = np.stack([zero, zero, 1j * va1 * vb0, 1j * va1 * vb1], axis=1)
    dv_pb = np.stack([zero, 1j * va0 * vb1, zero, 1j * va1 * vb1], axis=1)

    d_ta = 2.0 * np.einsum("ni,ni->n", dv_ta.conj(), r).real
    d_pa = 2.0 * np.einsum("ni,ni->n", dv_pa.conj(), r).real
    d_tb = 2.0 * np.einsum("ni,ni->n", dv_tb.conj(), r).real
    d_pb = 2.0 * np.einsum("ni,ni->n", dv_pb.conj(), r).real

    return np.stack([q, d_ta, d_pa, d_tb, d_pb])
