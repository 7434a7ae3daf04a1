"""Independent numerical oracles and random-object helpers shared across tests.

Everything here deliberately avoids the package's own computational routes
(spectral decomposition, projector algebra) so agreement is meaningful.
"""

import numpy as np


def expm_series(h, theta, tol=1e-25, max_terms=300):
    """Truncated Taylor series for exp(-i * theta * h).

    Plain term-by-term summation; accurate to roughly machine precision for
    the small norms used in tests (||theta * h|| up to ~10).
    """
    h = np.asarray(h, dtype=complex)
    a = -1j * theta * h
    term = np.eye(h.shape[0], dtype=complex)
    total = term.copy()
    for k in range(1, max_terms):
        term = term @ a / k
        total += term
        if np.max(np.abs(term)) < tol:
            return total
    raise RuntimeError("series did not converge")


def random_state(rng, dim=4):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim=4, rank=3):
    """Random mixed state as a convex mixture of random pure states."""
    weights = rng.random(rank)
    weights /= weights.sum()
    rho = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        psi = random_state(rng, dim)
        rho += w * np.outer(psi, psi.conj())
    return rho


def random_unitary(rng, dim=4):
    """Haar-ish random unitary from the QR decomposition of a Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, dim=4):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (z + z.conj().T) / 2.0
