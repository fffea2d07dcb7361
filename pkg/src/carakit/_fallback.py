"""Pure numpy implementations of the scan kernels.

Same signatures and results as the compiled ``_kernels`` module; selected by
:mod:`carakit.kernels` when the extension is unavailable.
"""
import numpy as np

# points per chunk in rotation_worst, bounds the (points x lambdas) temporary
_CHUNK = 4096


def slack_c(phi, omega):
    phi = np.asarray(phi, dtype=complex)
    omega = np.asarray(omega, dtype=complex)
    p2 = phi.real**2 + phi.imag**2
    w2 = omega.real**2 + omega.imag**2
    return (1.0 - w2) * (1.0 - p2) - 4.0 * np.sqrt(p2) * np.abs(omega.imag)


def slack_d(F, phi):
    F = np.asarray(F, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    p = np.abs(phi)
    return np.arctan2(1.0 - p * p, 2.0 * p) - np.abs(np.arctan2(F.imag, F.real))


def rotation_worst(phi, omega, n_lambda):
    phi = np.asarray(phi, dtype=complex).ravel()
    omega = np.asarray(omega, dtype=complex).ravel()
    lam = np.exp(2j * np.pi * np.arange(n_lambda) / n_lambda)
    best, best_i, best_k = -1.0, 0, 0
    for start in range(0, phi.size, _CHUNK):
        lp = lam[None, :] * phi[start:start + _CHUNK, None]
        om = omega[start:start + _CHUNK, None]
        mod = np.abs(lp + om) / np.abs(1.0 + lp * om)
        flat = int(np.argmax(mod))
        i, k = divmod(flat, n_lambda)
        if mod[i, k] > best:
            best, best_i, best_k = float(mod[i, k]), start + i, k
    return best, best_i, best_k


def leaf_contains(w):
    w = np.asarray(w, dtype=complex)
    x, y = w.real, w.imag
    s = x * x + y * y
    return (4.0 * np.abs(y) * np.sqrt(s) < (1.0 - s) ** 2) & (s < 1.0)
