"""Finite-dimensional weighted coefficient spaces.

A :class:`WeightedSpace` is an ordered list of monomial-style basis labels
together with strictly positive diagonal weights; the inner product is

    <x, y> = sum_i w_i * x_i * conj(y_i)

(linear in the first argument, conjugate-linear in the second). Vectors are
bare complex numpy arrays indexed against the space's basis order. The basis
order is fixed by the constructors (graded, then lexicographic within a
degree) so that matrix representations reproduce bit for bit across runs.

Three families of spaces are provided:

* ``make_dirichlet_space(N)``: monomials 1, z, ..., z^N with weight k+1 on
  z^k. The weight on the constant is 1, so the constant function has norm 1.
* ``make_bidisc_space(N)``: monomials z1^m z2^n with m+n <= N, unit weights.
* ``make_coordinate_space(d)``: a plain C^d with unit multi-index labels.
  Every label has total degree 1, so any operator on such a space has degree
  growth 0 and the whole space counts as truncation-exact.

Subspaces carry an orthonormal basis computed by modified Gram-Schmidt in
the weighted inner product; vectors whose residual drops below the rank
tolerance are discarded, which is what detects the rank of a generated span
such as span{v, T*v}.

All objects here are immutable values; they can be shared freely across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "RANK_TOL",
    "BasisLabel",
    "WeightedSpace",
    "Subspace",
    "make_dirichlet_space",
    "make_bidisc_space",
    "make_coordinate_space",
    "span",
    "monomial_span",
    "whole_space",
    "orthogonal_complement",
    "weighted_gram_schmidt",
    "vec_to_pairs",
    "vec_from_pairs",
]

# Residual norm below which a generator is treated as linearly dependent.
RANK_TOL = 1e-10


@dataclass(frozen=True)
class BasisLabel:
    """One basis monomial, identified by its exponent multi-index."""

    multi_index: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(k) for k in self.multi_index)
        if len(idx) == 0:
            raise ValueError("multi-index must have at least one entry")
        if any(k < 0 for k in idx):
            raise ValueError(f"multi-index entries must be non-negative, got {idx}")
        object.__setattr__(self, "multi_index", idx)

    @property
    def total_degree(self) -> int:
        return sum(self.multi_index)

    def __str__(self) -> str:
        if self.total_degree == 0:
            return "1"
        parts = []
        for var, exp in enumerate(self.multi_index):
            if exp == 0:
                continue
            name = "z" if len(self.multi_index) == 1 else f"z{var + 1}"
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts)


@dataclass(frozen=True)
class WeightedSpace:
    """An ordered monomial basis with strictly positive diagonal weights."""

    labels: tuple[BasisLabel, ...]
    weights: tuple[float, ...]
    kind: str = "custom"

    def __post_init__(self):
        labels = tuple(
            lab if isinstance(lab, BasisLabel) else BasisLabel(tuple(lab))
            for lab in self.labels
        )
        weights = tuple(float(w) for w in self.weights)
        if len(labels) == 0:
            raise ValueError("a space needs at least one basis label")
        if len(labels) != len(weights):
            raise ValueError(
                f"{len(labels)} labels but {len(weights)} weights"
            )
        if any(w <= 0 for w in weights):
            raise ValueError("all weights must be strictly positive")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be pairwise distinct")
        nvars = {len(lab.multi_index) for lab in labels}
        if len(nvars) != 1:
            raise ValueError("all labels must have the same multi-index length")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", weights)

    # -- structure ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def weight_array(self) -> np.ndarray:
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        return w

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.array([lab.total_degree for lab in self.labels], dtype=int)
        d.setflags(write=False)
        return d

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max())

    @cached_property
    def _label_index(self) -> dict[tuple[int, ...], int]:
        return {lab.multi_index: i for i, lab in enumerate(self.labels)}

    def index_of(self, multi_index) -> int:
        key = (int(multi_index),) if np.isscalar(multi_index) else tuple(
            int(k) for k in multi_index
        )
        try:
            return self._label_index[key]
        except KeyError:
            raise ValueError(f"no basis label with multi-index {key}") from None

    # -- vectors -----------------------------------------------------------

    def check_vec(self, x) -> np.ndarray:
        arr = np.asarray(x, dtype=complex)
        if arr.shape != (self.dim,):
            raise ValueError(
                f"vector has shape {arr.shape}, expected ({self.dim},)"
            )
        return arr

    def zeros(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=complex)

    def basis_vector(self, i: int) -> np.ndarray:
        out = self.zeros()
        out[i] = 1.0
        return out

    def unit_vector(self, i: int) -> np.ndarray:
        """Basis monomial i scaled to weighted norm 1."""
        out = self.zeros()
        out[i] = 1.0 / np.sqrt(self.weights[i])
        return out

    def monomial(self, multi_index) -> np.ndarray:
        """Coefficient-1 vector for the monomial with the given exponents."""
        return self.basis_vector(self.index_of(multi_index))

    # -- inner product -----------------------------------------------------

    def inner(self, x, y) -> complex:
        """<x, y> = sum_i w_i x_i conj(y_i); conjugate-linear in y."""
        x = self.check_vec(x)
        y = self.check_vec(y)
        return complex(np.vdot(y, self.weight_array * x))

    def norm(self, x) -> float:
        x = self.check_vec(x)
        val = np.real(np.vdot(x, self.weight_array * x))
        return float(np.sqrt(max(val, 0.0)))

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "max_degree": self.max_degree if self.kind in ("dirichlet", "bidisc") else None,
            "weights": [float(w) for w in self.weights],
            "labels": [list(lab.multi_index) for lab in self.labels],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "WeightedSpace":
        kind = doc.get("kind", "custom")
        labels = tuple(BasisLabel(tuple(ix)) for ix in doc["labels"])
        return cls(labels=labels, weights=tuple(doc["weights"]), kind=kind)


def make_dirichlet_space(max_degree: int) -> WeightedSpace:
    """Truncated Dirichlet space: monomials z^0..z^N, weight k+1 on z^k.

    The constant is included with weight 1 so the norm of 1 is 1.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    labels = tuple(BasisLabel((k,)) for k in range(max_degree + 1))
    weights = tuple(float(k + 1) for k in range(max_degree + 1))
    return WeightedSpace(labels=labels, weights=weights, kind="dirichlet")


def make_bidisc_space(max_total_degree: int) -> WeightedSpace:
    """Truncated Hardy space of the bidisc: z1^m z2^n, m+n <= N, unit weights.

    Labels are ordered by total degree and then by m descending within a
    degree, so the layout is reproducible.
    """
    if max_total_degree < 0:
        raise ValueError("max_total_degree must be non-negative")
    labels = []
    for d in range(max_total_degree + 1):
        for m in range(d, -1, -1):
            labels.append(BasisLabel((m, d - m)))
    weights = tuple(1.0 for _ in labels)
    return WeightedSpace(labels=tuple(labels), weights=weights, kind="bidisc")


def make_coordinate_space(dim: int, weights: Sequence[float] | None = None) -> WeightedSpace:
    """C^dim with unit multi-index labels (every label has total degree 1).

    With all labels at the same degree, any dense matrix on this space has
    degree growth 0, which models an exact, non-truncated space.
    """
    if dim < 1:
        raise ValueError("dim must be at least 1")
    labels = tuple(
        BasisLabel(tuple(1 if j == i else 0 for j in range(dim)))
        for i in range(dim)
    )
    if weights is None:
        weights = tuple(1.0 for _ in range(dim))
    return WeightedSpace(labels=labels, weights=tuple(weights), kind="custom")


# ---------------------------------------------------------------------------
# subspaces


def weighted_gram_schmidt(
    space: WeightedSpace, vectors: Iterable, tol: float = RANK_TOL
) -> list[np.ndarray]:
    """Modified Gram-Schmidt in the weighted inner product.

    Vectors whose residual norm falls below ``tol`` are dropped, so the
    result is an orthonormal basis of the span with numerically detected
    rank. A second orthogonalization pass guards against loss of
    orthogonality on nearly dependent inputs.
    """
    basis: list[np.ndarray] = []
    for vec in vectors:
        work = space.check_vec(vec).copy()
        for b in basis:
            work -= space.inner(work, b) * b
        for b in basis:
            work -= space.inner(work, b) * b
        nrm = space.norm(work)
        if nrm > tol:
            basis.append(work / nrm)
    return basis


@dataclass(eq=False)
class Subspace:
    """A subspace with a stored weighted-orthonormal basis.

    ``onb`` holds the orthonormal basis as columns of a (dim, r) array; an
    empty subspace has r = 0 and projects everything to zero.
    """

    space: WeightedSpace
    generators: tuple[np.ndarray, ...]
    onb: np.ndarray

    def __post_init__(self):
        onb = np.asarray(self.onb, dtype=complex)
        if onb.ndim != 2 or onb.shape[0] != self.space.dim:
            raise ValueError("orthonormal basis must be a (dim, r) array")
        onb = onb.copy()
        onb.setflags(write=False)
        object.__setattr__(self, "onb", onb)
        object.__setattr__(
            self,
            "generators",
            tuple(self.space.check_vec(g).copy() for g in self.generators),
        )

    @property
    def dim(self) -> int:
        return self.onb.shape[1]

    def basis_vectors(self) -> list[np.ndarray]:
        return [self.onb[:, j] for j in range(self.dim)]

    def coefficients(self, x) -> np.ndarray:
        """Inner products <x, e_j> against the orthonormal basis."""
        x = self.space.check_vec(x)
        return self.onb.conj().T @ (self.space.weight_array * x)

    def project(self, x) -> np.ndarray:
        """Orthogonal projection of x onto this subspace."""
        return self.onb @ self.coefficients(x)

    def contains(self, x, tol: float = 1e-10) -> bool:
        x = self.space.check_vec(x)
        resid = self.space.norm(x - self.project(x))
        return resid <= tol * max(1.0, self.space.norm(x))


def span(space: WeightedSpace, vectors: Iterable, tol: float = RANK_TOL) -> Subspace:
    """Subspace spanned by the given vectors, with rank detection."""
    gens = tuple(space.check_vec(v) for v in vectors)
    basis = weighted_gram_schmidt(space, gens, tol=tol)
    onb = (
        np.stack(basis, axis=1)
        if basis
        else np.zeros((space.dim, 0), dtype=complex)
    )
    return Subspace(space=space, generators=gens, onb=onb)


def monomial_span(space: WeightedSpace, indices: Sequence[int]) -> Subspace:
    """Span of selected basis monomials; the basis is exactly orthonormal."""
    indices = list(indices)
    onb = np.zeros((space.dim, len(indices)), dtype=complex)
    for j, i in enumerate(indices):
        onb[i, j] = 1.0 / np.sqrt(space.weights[i])
    gens = tuple(space.basis_vector(i) for i in indices)
    return Subspace(space=space, generators=gens, onb=onb)


def whole_space(space: WeightedSpace) -> Subspace:
    return monomial_span(space, range(space.dim))


def orthogonal_complement(
    sub: Subspace, within: Subspace | None = None, tol: float = RANK_TOL
) -> Subspace:
    """All vectors of the ambient (sub)space orthogonal to ``sub``.

    ``within`` defaults to the whole space. The caller is responsible for
    ``sub`` being contained in the ambient subspace; then the dimensions add
    up to the ambient dimension.
    """
    space = sub.space
    ambient = within if within is not None else whole_space(space)
    candidates = [col - sub.project(col) for col in ambient.basis_vectors()]
    basis = weighted_gram_schmidt(space, candidates, tol=tol)
    onb = (
        np.stack(basis, axis=1)
        if basis
        else np.zeros((space.dim, 0), dtype=complex)
    )
    return Subspace(space=space, generators=tuple(candidates), onb=onb)


# ---------------------------------------------------------------------------
# JSON helpers for vectors


def vec_to_pairs(x) -> list[list[float]]:
    """Encode a complex vector as a list of [re, im] pairs."""
    arr = np.asarray(x, dtype=complex).ravel()
    return [[float(z.real), float(z.imag)] for z in arr]


def vec_from_pairs(pairs: Sequence[Sequence[float]]) -> np.ndarray:
    """Decode a list of [re, im] pairs into a complex vector."""
    out = np.empty(len(pairs), dtype=complex)
    for i, pair in enumerate(pairs):
        re, im = pair
        out[i] = complex(float(re), float(im))
    return out
