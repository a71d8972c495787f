"""Dormand-Prince 5(4) stepping for matrix-valued ODEs.

A hand-rolled stepper instead of ``scipy.integrate.solve_ivp`` so the state
can be projected (re-symmetrized) and checked after every accepted step.
"""
from __future__ import annotations

import numpy as np

# Butcher tableau, Dormand & Prince (1980)
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


def dopri_step(f, y, h, k1=None):
    """One step; returns ``(y_new, error_estimate, k_last)`` (FSAL)."""
    k = [f(y) if k1 is None else k1]
    for i in range(1, 7):
        acc = y.copy()
        for aij, kj in zip(_A[i], k):
            if aij:
                acc += (h * aij) * kj
        k.append(f(acc))
    # stage 7 is evaluated at the 5th-order solution
    y_new = y.copy()
    for b, kj in zip(_B5, k):
        if b:
            y_new += (h * b) * kj
    err = np.zeros_like(y)
    for e, kj in zip(_E, k):
        if e:
            err += (h * e) * kj
    return y_new, err, k[6]


def integrate(f, y0, t_final, tol, *, h0=None, max_steps=1_000_000, post_step=None, on_accept=None):
    """Advance ``y' = f(y)`` (autonomous) from 0 to ``t_final``.

    Per-step error is bounded by ``tol`` in the max norm.  ``post_step(y)``
    may return a projected state; ``on_accept(t, y)`` sees every accepted
    step.  Returns ``(t, y, n_accepted, n_rejected)``.
    """
    y = np.array(y0, dtype=complex)
    t = 0.0
    h = h0 if h0 is not None else t_final * 1e-3
    k1 = None
    accepted = rejected = 0
    while t < t_final:
        if accepted + rejected >= max_steps:
            raise RuntimeError(f"step budget {max_steps} exhausted at t={t:.6g}")
        h = min(h, t_final - t)
        y_new, err, k_last = dopri_step(f, y, h, k1)
        err_norm = float(np.max(np.abs(err))) / tol
        if err_norm <= 1.0:
            t = t_final if h >= t_final - t else t + h
            if post_step is not None:
                y_proj = post_step(y_new)
                # FSAL derivative is stale after a projection
                k1 = None if y_proj is not y_new else k_last
                y_new = y_proj
            else:
                k1 = k_last
            y = y_new
            accepted += 1
            if on_accept is not None:
                on_accept(t, y)
            factor = MAX_FACTOR if err_norm == 0 else min(MAX_FACTOR, SAFETY * err_norm ** -0.2)
        else:
            rejected += 1
            factor = max(MIN_FACTOR, SAFETY * err_norm ** -0.2)
        h *= factor
    return t, y, accepted, rejected
