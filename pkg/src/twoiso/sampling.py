"""Seeded generators for randomized trials and the rank-one search command.

Intended for unit-weight coordinate spaces, where the weighted inner
product is the plain Euclidean one.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "random_unitary",
    "random_complex_vector",
    "isometric_correction_pair",
    "invariant_kernel_pair",
]


def random_complex_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR with the standard phase fix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))[None, :]


def isometric_correction_pair(
    V: np.ndarray, v: np.ndarray, theta: float
) -> tuple[np.ndarray, np.ndarray]:
    """A rank-one direction making V + u⊗v an isometry again.

    For unit v and c = e^{i theta} - 1 (so |c + 1| = 1), the choice
    u = c V v turns V + u⊗v into V composed with a rotation of span{v},
    which is unitary. Returns (u, v) with v normalized.
    """
    vhat = v / np.linalg.norm(v)
    c = np.exp(1j * theta) - 1.0
    return c * (V @ vhat), vhat


def invariant_kernel_pair(
    V: np.ndarray, theta: float, which: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """A perturbation along an eigenvector of V, preserving 2-isometry.

    With V v = lam v and u = lam (e^{i theta} - 1) v, the perturbed
    operator acts as lam e^{i theta} on span{v} and as V on its
    complement, so it stays unitary; the kernel of the perturbation is
    V-invariant, which makes this a branch I instance.
    """
    lam, vecs = np.linalg.eig(V)
    v = vecs[:, which]
    v = v / np.linalg.norm(v)
    u = lam[which] * (np.exp(1j * theta) - 1.0) * v
    return u, v
