"""Numba-jitted evaluation of the Husimi-Q function and its angular
gradients.  Mirrors numpy_backend.husimi_batch sample for sample."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def husimi_batch(rho, cos_ta, phi_a, cos_tb, phi_b):
    n = cos_ta.shape[0]
    out = np.empty((5, n))
    for i in range(n):
        ca = np.sqrt(0.5 * (1.0 + cos_ta[i]))
        sa = np.sqrt(0.5 * (1.0 - cos_ta[i]))
        cb = np.sqrt(0.5 * (1.0 + cos_tb[i]))
        sb = np.sqrt(0.5 * (1.0 - cos_tb[i]))
        ea = np.exp(1j * phi_a[i])
        eb = np.exp(1j * phi_b[i])

        va0 = ca + 0.0j
        va1 = sa * ea
        vb0 = cb + 0.0j
        vb1 = sb * eb

        v0 = va0 * vb0
        v1 = va0 * vb1
        v2 = va1 * vb0
        v3 = va1 * vb1

        r0 = rho[0, 0] * v0 + rho[0, 1] * v1 + rho[0, 2] * v2 + rho[0, 3] * v3
        r1 = rho[1, 0] * v0 + rho[1, 1] * v1 + rho[1, 2] * v2 + rho[1, 3] * v3
        r2 = rho[2, 0] * v0 + rho[2, 1] * v1 + rho[2, 2] * v2 + rho[2, 3] * v3
        r3 = rho[3, 0] * v0 + rho[3, 1] * v1 + rho[3, 2] * v2 + rho[3, 3] * v3

        q = (np.conj(v0) * r0 + np.conj(v1) * r1 + np.conj(v2) * r2 + np.conj(v3) * r3).real

        da0 = -0.5 * sa + 0.0j
        da1 = 0.5 * ca * ea
        db0 = -0.5 * sb + 0.0j
        db1 = 0.5 * cb * eb

        d_ta = 2.0 * (
            np.conj(da0 * vb0) * r0
            + np.conj(da0 * vb1) * r1
            + np.conj(da1 * vb0) * r2
            + np.conj(da1 * vb1) * r3
        ).real
        d_tb = 2.0 * (
            np.conj(va0 * db0) * r0
            + np.conj(va0 * db1) * r1
            + np.conj(va1 * db0) * r2
            + np.conj(va1 * db1) * r3
        ).real
        d_pa = 2.0 * (np.conj(1j * va1 * vb0) * r2 + np.conj(1j * va1 * vb1) * r3).real
        d_pb = 2.0 * (np.conj(1j * va0 * vb1) * r1 + np.conj(1j * va1 * vb1) * r3).real

        out[0, i] = q
        out[1, i] = d_ta
        out[2, i] = d_pa
        out[3, i] = d_tb
        out[4, i] = d_pb
    return out
