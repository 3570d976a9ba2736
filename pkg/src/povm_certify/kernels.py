"""Hot numeric loops: Riemannian descent for certification and reconstruction.

Every function in this module is written against the numba-supported numpy
subset. On the numba backend the module-level names are rebound to jitted
dispatchers at import time (see bottom); on the numpy backend the same
source runs uncompiled, so both paths produce matching results.

Certification searches the representing set parametrized by a complex
Stiefel point W (n x rho, W^dag W = I) and a real spectrum lam on the unit
sphere, optionally restricted to the zero-sum hyperplane. The objective is

    f(W, lam) = sum_i ( tr(Q_i X) )^2,   X = W diag(lam) W^dag,

which equals the squared norm of the induced measurement map at X.
``qflat`` stacks the effect (or observable) matrices row-major flattened,
shape (M, n*n) complex.
"""

from __future__ import annotations

import numpy as np

from .backend import jit, use_numba


def _qr_retract(v):
    """Project a full-column-rank matrix to the Stiefel manifold via QR.

    Column phases are fixed so the implicit R diagonal is real positive.
    """
    q, r = np.linalg.qr(v)
    for j in range(r.shape[0]):
        d = r[j, j]
        m = abs(d)
        if m > 0.0:
            q[:, j] = q[:, j] * (d / m)
    return q


def _apply_effects(qflat, w, lam):
    """Trace pairings of every effect with X = W diag(lam) W^dag."""
    n = w.shape[0]
    wl = w * lam
    x = wl @ np.ascontiguousarray(w.conj().T)
    xvec = np.ascontiguousarray(x.T).reshape(n * n)
    return (qflat @ xvec).real


def _riemannian_gradient(qflat, w, lam, traceless):
    """Gradient of f in the product tangent space at (W, lam).

    Returns (grad_w, grad_lam, e) where e holds the effect traces at the
    point. grad_w lies in the Stiefel tangent (W^dag grad skew-hermitian),
    grad_lam is orthogonal to lam and, when ``traceless``, to the all-ones
    direction.
    """
    n, rho = w.shape
    e = _apply_effects(qflat, w, lam)
    ec = (2.0 * e).astype(np.complex128)
    gmat = (ec @ qflat).reshape((n, n))  # Euclidean gradient in X-space
    gw = gmat @ w
    grad_w = 2.0 * gw * lam
    wh = np.ascontiguousarray(w.conj().T)
    s = wh @ grad_w
    h = (s + np.ascontiguousarray(s.conj().T)) * 0.5
    grad_w = grad_w - w @ h

    grad_l = np.empty(rho)
    for j in range(rho):
        acc = 0.0
        for a in range(n):
            acc += (np.conj(w[a, j]) * gw[a, j]).real
        grad_l[j] = acc
    if traceless:
        grad_l = grad_l - grad_l.mean()
    grad_l = grad_l - np.dot(grad_l, lam) * lam
    return grad_w, grad_l, e


def certify_descent(qflat, w0, lam0, traceless, max_iters, gtol):
    """Armijo-backtracking Riemannian descent from (w0, lam0).

    Returns (f, w, lam, iterations, grad_norm). Retraction is QR on the
    Stiefel factor and renormalization (after hyperplane projection when
    ``traceless``) on the spectrum factor.
    """
    w = w0.copy()
    lam = lam0.copy()
    e = _apply_effects(qflat, w, lam)
    f = (e * e).sum()
    step = 1.0
    gnorm = 0.0
    it = 0
    for it in range(max_iters):
        grad_w, grad_l, e = _riemannian_gradient(qflat, w, lam, traceless)
        gnorm2 = (np.abs(grad_w) ** 2).sum() + (grad_l * grad_l).sum()
        gnorm = np.sqrt(gnorm2)
        if gnorm <= gtol:
            return f, w, lam, it, gnorm
        accepted = False
        t = step
        for _ in range(60):
            wc = _qr_retract(w - t * grad_w)
            lc = lam - t * grad_l
            if traceless:
                lc = lc - lc.mean()
            nl = np.sqrt((lc * lc).sum())
            if nl > 1e-14:
                lc = lc / nl
                e_c = _apply_effects(qflat, wc, lc)
                fc = (e_c * e_c).sum()
                if np.isfinite(fc) and fc <= f - 1e-4 * t * gnorm2:
                    w = wc
                    lam = lc
                    f = fc
                    step = min(t * 2.0, 16.0)
                    accepted = True
                    break
            t *= 0.5
        if not accepted:
            return f, w, lam, it + 1, gnorm
    return f, w, lam, it + 1, gnorm


def reconstruct_descent(qflat, y, a0, max_iters, gtol, ftarget):
    """Gradient descent for the measurement-data fit over rank-r factors.

    Minimizes sum_i (tr(Q_i rho) - y_i)^2 with rho = A A^dag / tr(A A^dag)
    over complex n x r matrices A. Returns (f, a, iterations, grad_norm).
    """
    n = a0.shape[0]
    a = a0.copy()

    t_nrm = (np.abs(a) ** 2).sum()
    rho = (a @ np.ascontiguousarray(a.conj().T)) / t_nrm
    rvec = np.ascontiguousarray(rho.T).reshape(n * n)
    e = (qflat @ rvec).real - y
    f = (e * e).sum()

    step = 1.0
    gnorm = 0.0
    it = 0
    for it in range(max_iters):
        if f <= ftarget:
            return f, a, it, gnorm
        ec = (2.0 * e).astype(np.complex128)
        gmat = (ec @ qflat).reshape((n, n))
        gr = 0.0
        for p in range(n):
            for q in range(n):
                gr += (gmat[p, q] * rho[q, p]).real
        grad_a = (gmat @ a - gr * a) / t_nrm
        gnorm2 = (np.abs(grad_a) ** 2).sum()
        gnorm = np.sqrt(gnorm2)
        if gnorm <= gtol:
            return f, a, it, gnorm
        accepted = False
        t = step
        for _ in range(60):
            ac = a - t * grad_a
            tc = (np.abs(ac) ** 2).sum()
            if tc > 1e-20:
                rc = (ac @ np.ascontiguousarray(ac.conj().T)) / tc
                rcv = np.ascontiguousarray(rc.T).reshape(n * n)
                e_c = (qflat @ rcv).real - y
                fc = (e_c * e_c).sum()
                if np.isfinite(fc) and fc <= f - 1e-4 * t * gnorm2:
                    a = ac
                    t_nrm = tc
                    rho = rc
                    e = e_c
                    f = fc
                    step = min(t * 2.0, 64.0)
                    accepted = True
                    break
            t *= 0.5
        if not accepted:
            return f, a, it + 1, gnorm
    return f, a, it + 1, gnorm


if use_numba():
    _qr_retract = jit(_qr_retract)
    _apply_effects = jit(_apply_effects)
    _riemannian_gradient = jit(_riemannian_gradient)
    certify_descent = jit(certify_descent)
    reconstruct_descent = jit(reconstruct_descent)


def warmup():
    """Trigger (cached) jit compilation on a toy instance."""
    qflat = np.eye(4, dtype=np.complex128)
    w = np.eye(2, dtype=np.complex128)
    lam = np.array([1.0, -1.0]) / np.sqrt(2.0)
    certify_descent(qflat, w, lam, True, 3, 1e-10)
    reconstruct_descent(qflat, np.zeros(4), w[:, :1].copy(), 3, 1e-10, 0.0)
