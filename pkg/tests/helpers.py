"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import numpy as np

from twoiso import Op, WeightedSpace, make_coordinate_space


def random_weighted_space(rng: np.random.Generator, max_dim: int = 8) -> WeightedSpace:
    dim = int(rng.integers(1, max_dim + 1))
    weights = rng.uniform(0.2, 5.0, size=dim)
    return make_coordinate_space(dim, weights=tuple(weights))


def random_vec(space: WeightedSpace, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)


def random_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_op(space: WeightedSpace, rng: np.random.Generator) -> Op:
    return Op.from_exact_matrix(space, random_matrix(space.dim, rng))


def brute_force_adjoint(A: Op) -> np.ndarray:
    """Adjoint matrix found by solving the defining equations column by column.

    For each basis vector b_j, the column c = A* b_j satisfies
    <b_i, c> = <A b_i, b_j> for every i; with the diagonal Gram matrix this
    is a linear system in conj(c). Never forms the conjugate transpose, so
    it is an independent check of the W^-1 A^H W formula.
    """
    space = A.space
    n = space.dim
    gram = np.diag(space.weight_array).astype(complex)
    out = np.zeros((n, n), dtype=complex)
    for j in range(n):
        bj = space.basis_vector(j)
        rhs = np.array(
            [space.inner(A.matrix @ space.basis_vector(i), bj) for i in range(n)]
        )
        conj_c = np.linalg.solve(gram, rhs)
        out[:, j] = conj_c.conj()
    return out


def projection_by_expansion(sub, x) -> np.ndarray:
    """Projection computed as an explicit orthonormal expansion sum."""
    space = sub.space
    out = space.zeros()
    for e in sub.basis_vectors():
        out = out + space.inner(x, e) * e
    return out
