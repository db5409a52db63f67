"""Decision procedure for rank-one perturbations of 2-isometries.

Given a 2-isometry T and nonzero vectors u, v with ||v|| = 1, write
K = u⊗v and consider the perturbation T + K. The perturbation is again a
2-isometry exactly when v lies in the kernel of the perturbed defect
operator and exactly one of two mutually exclusive branches holds:

* branch I: ker K is invariant under T, equivalently T*v is parallel to v.
  Nothing else is required.
* branch II: otherwise there is (up to scale) a unique witness vector
  x = T*v - <T*v, v> v spanning the part of ker K orthogonal to the stable
  kernel, and two conditions must hold:
  (a) the perturbed defect maps the stable kernel into itself (equivalently
      the witness line into itself), and
  (b) the norm balance ||u||^2 = -2 (gamma + Re <u, Tv>) with the coupling
      constant gamma = Re( <T* P T* u, x> / <T*v, x> ), P the projection
      onto ker K.

Every residual reported here is evaluated through forward applications of
the operator only (the gamma formula is folded to
Re( <u, T P T x> / <v, T x> ), and defect values come from the polarized
quadratic form), so all numbers are exact on the truncation-safe window of
a degree-truncated model. The independent oracle is the polarized defect
form over the whole safe window; the theorem verdict and the oracle verdict
must agree, and both are recorded in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import (
    Op,
    add,
    adjoint,
    apply,
    defect_apply_in_window,
    polarized_defect_form,
    rank_one,
    safe_subspace,
    require_truncation_safe,
)
from .spaces import (
    Subspace,
    WeightedSpace,
    orthogonal_complement,
    span,
)

__all__ = [
    "DEFAULT_RANK_TOL",
    "DEFAULT_DEFECT_TOL",
    "PerturbationProblem",
    "TheoremReport",
    "normalize_pair",
    "stable_kernel",
    "witness_vector",
    "classify_branch",
    "gamma_coefficient",
    "condition_iib_residual",
    "condition_iia_residual",
    "kernel_condition_residual",
    "theorem_verdict",
]

# Two orders above accumulated round-off for dense products at dim <= 100.
DEFAULT_RANK_TOL = 1e-9
DEFAULT_DEFECT_TOL = 1e-8


def normalize_pair(space: WeightedSpace, u, v) -> tuple[np.ndarray, np.ndarray]:
    """Rescale (u, v) so that ||v|| = 1 without changing u⊗v.

    Returns (||v|| u, v / ||v||); both inputs must be nonzero.
    """
    u = space.check_vec(u)
    v = space.check_vec(v)
    nu = space.norm(u)
    nv = space.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("not rank one: u and v must both be nonzero")
    return nv * u, v / nv


def stable_kernel(T: Op, v) -> Subspace:
    """Vectors orthogonal to both v and T*v.

    This is the part of ker(u⊗v) whose image under T stays inside the
    kernel. Its dimension is dim - 1 when T*v is parallel to v and dim - 2
    otherwise.
    """
    v = T.space.check_vec(v)
    tstar_v = apply(adjoint(T), v)
    return orthogonal_complement(span(T.space, [v, tstar_v]))


def witness_vector(T: Op, v, tol_rank: float = DEFAULT_RANK_TOL) -> np.ndarray | None:
    """Component of T*v orthogonal to v, or None when they are parallel.

    For unit v the returned vector x spans the orthocomplement of the
    stable kernel inside ker(u⊗v), and <T*v, x> = ||x||^2 > 0.
    """
    v = T.space.check_vec(v)
    tstar_v = apply(adjoint(T), v)
    x = tstar_v - T.space.inner(tstar_v, v) * v
    if T.space.norm(x) <= tol_rank:
        return None
    return x


def gamma_coefficient(
    T: Op, u, v, x, tol_rank: float = DEFAULT_RANK_TOL
) -> float:
    """The coupling constant Re( <T* P T* u, x> / <T*v, x> ).

    P is the orthogonal projection onto the orthocomplement of v, and x is
    any nonzero vector in the witness line; the value does not depend on
    the choice of x because the scale factors cancel in the ratio. Both
    inner products are folded onto forward applications,

        <T* P T* u, x> = <u, T P T x>,    <T*v, x> = <v, T x>,

    so the value is truncation-exact for safe x. Requires ||v|| = 1.
    Raises on a degenerate denominator, which cannot happen for the
    canonical witness but guards user-supplied x.
    """
    space = T.space
    u = space.check_vec(u)
    v = space.check_vec(v)
    x = space.check_vec(x)
    tx = apply(T, x)
    denom = space.inner(v, tx)
    if abs(denom) <= tol_rank:
        raise ValueError(
            "degenerate denominator: <T*v, x> is numerically zero, "
            "x does not witness branch II"
        )
    ptx = tx - space.inner(tx, v) * v
    numer = space.inner(u, apply(T, ptx))
    return float(np.real(numer / denom))


@dataclass
class PerturbationProblem:
    """A base 2-isometry with a rank-one perturbation direction.

    The pair (u, v) is normalized at construction so that ||v|| = 1 without
    changing u⊗v; ``v_was_normalized`` records whether that happened. The
    base operator is validated to be a 2-isometry at truncation scale via
    the polarized defect form on its safe window (override with
    ``allow_non_2_isometric_base`` for exploratory use).
    """

    base: Op
    u: np.ndarray
    v: np.ndarray
    tol_rank: float = DEFAULT_RANK_TOL
    tol_defect: float = DEFAULT_DEFECT_TOL
    allow_non_2_isometric_base: bool = False
    v_was_normalized: bool = field(init=False)
    base_defect: float = field(init=False)

    def __post_init__(self):
        if self.tol_rank <= 0 or self.tol_defect <= 0:
            raise ValueError("tolerances must be positive")
        space = self.base.space
        u = space.check_vec(self.u)
        v = space.check_vec(self.v)
        if space.norm(u) == 0.0 or space.norm(v) == 0.0:
            raise ValueError("not rank one: u and v must both be nonzero")
        nv = space.norm(v)
        self.v_was_normalized = abs(nv - 1.0) > 1e-12
        if self.v_was_normalized:
            u, v = normalize_pair(space, u, v)
        self.u = u
        self.v = v
        base_report = polarized_defect_form(self.base, safe_subspace(self.base))
        self.base_defect = base_report.max_residual
        if not self.allow_non_2_isometric_base and self.base_defect > self.tol_defect:
            raise ValueError(
                "base operator is not a 2-isometry at truncation scale "
                f"(safe-window defect {self.base_defect:.3e} > "
                f"{self.tol_defect:.1e}); pass allow_non_2_isometric_base=True "
                "to analyze anyway"
            )

    @property
    def space(self) -> WeightedSpace:
        return self.base.space

    def perturbation(self) -> Op:
        return rank_one(self.space, self.u, self.v)

    def perturbed(self) -> Op:
        return add(self.base, self.perturbation())


@dataclass
class TheoremReport:
    """Branch decision, residuals, and the two verdicts for one problem.

    In branch I the fields gamma, cond_iia_residual and cond_iib_residual
    are None, not zero: the branch conditions are mutually exclusive and
    the branch II conditions are not evaluated when the kernel of the
    perturbation is invariant.
    """

    branch: str
    kernel_residual: float
    gamma: float | None
    cond_iia_residual: float | None
    cond_iib_residual: float | None
    oracle_defect: float
    verdict_theorem: bool
    verdict_oracle: bool
    tol_rank: float
    tol_defect: float
    safe_dim: int
    s_dim_evaluated: int | None
    v_was_normalized: bool
    base_defect: float
    space: WeightedSpace

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "paper_branch": "(i)" if self.branch == "I" else "(ii)",
            "kernel_residual": self.kernel_residual,
            "gamma": self.gamma,
            "cond_iia_residual": self.cond_iia_residual,
            "cond_iib_residual": self.cond_iib_residual,
            "oracle_defect": self.oracle_defect,
            "verdict_theorem": bool(self.verdict_theorem),
            "verdict_oracle": bool(self.verdict_oracle),
            "tol_rank": self.tol_rank,
            "tol_defect": self.tol_defect,
            "safe_dim": self.safe_dim,
            "s_dim_evaluated": self.s_dim_evaluated,
            "v_was_normalized": bool(self.v_was_normalized),
            "base_defect": self.base_defect,
            "space": self.space.to_dict(),
        }


def classify_branch(problem: PerturbationProblem) -> str:
    """"I" when ker(u⊗v) is invariant under the base operator, else "II"."""
    x = witness_vector(problem.base, problem.v, problem.tol_rank)
    return "I" if x is None else "II"


def condition_iib_residual(problem: PerturbationProblem, gamma: float) -> float:
    """| ||u||^2 + 2 (gamma + Re <u, Tv>) |, the branch II norm balance."""
    space = problem.space
    u, v = problem.u, problem.v
    tv = apply(problem.base, v)
    return float(
        abs(space.norm(u) ** 2 + 2.0 * (gamma + np.real(space.inner(u, tv))))
    )


def condition_iia_residual(
    Ttilde: Op,
    stable: Subspace,
    safe: Subspace,
    witness: np.ndarray | None = None,
) -> float:
    """Invariance residual of the perturbed defect on the stable kernel.

    For each orthonormal s in ``stable`` the defect image (reconstructed
    inside the safe window by polarization) is projected off ``stable``;
    the residual is the largest leftover norm. When a witness vector is
    given, the same check runs on its line, which is the equivalent
    formulation of the invariance condition; the max of both is returned.
    Pass the stable kernel already intersected with the safe window, since
    polarization refuses unsafe vectors.
    """
    space = Ttilde.space
    resid = 0.0
    for s in stable.basis_vectors():
        img = defect_apply_in_window(Ttilde, s, safe)
        resid = max(resid, space.norm(img - stable.project(img)))
    if witness is not None:
        xhat = space.check_vec(witness)
        xhat = xhat / space.norm(xhat)
        img = defect_apply_in_window(Ttilde, xhat, safe)
        leftover = img - space.inner(img, xhat) * xhat
        resid = max(resid, space.norm(leftover))
    return resid


def kernel_condition_residual(Ttilde: Op, v, safe: Subspace | None = None) -> float:
    """|| (perturbed defect) v || read off the safe window by polarization.

    Raises when v is not supported on the truncation-safe window.
    """
    if safe is None:
        safe = safe_subspace(Ttilde)
    img = defect_apply_in_window(Ttilde, v, safe)
    return Ttilde.space.norm(img)


def _stable_kernel_in_window(T: Op, v, safe: Subspace) -> Subspace:
    """The stable kernel intersected with the safe window.

    Computed as the complement, inside the window, of the projections of v
    and T*v onto the window; for safe x the pairings <x, v> and <x, T*v>
    only see those projections, so this is the genuine intersection.
    """
    space = T.space
    tstar_v = apply(adjoint(T), v)
    gens = [safe.project(v), safe.project(tstar_v)]
    return orthogonal_complement(span(space, gens), within=safe)


def theorem_verdict(problem: PerturbationProblem) -> TheoremReport:
    """Run the full decision procedure and cross-validate with the oracle.

    The theorem verdict combines the kernel condition with the branch
    conditions; the oracle verdict thresholds the polarized defect form of
    the perturbed operator over the whole safe window. The two must agree;
    both are reported.
    """
    T = problem.base
    space = problem.space
    u, v = problem.u, problem.v
    tol = problem.tol_defect

    Ttilde = problem.perturbed()
    safe = safe_subspace(Ttilde)
    kernel_residual = kernel_condition_residual(Ttilde, v, safe)

    x = witness_vector(T, v, problem.tol_rank)
    if x is None:
        branch = "I"
        gamma = None
        iia = None
        iib = None
        s_dim = None
        verdict_theorem = kernel_residual <= tol
    else:
        branch = "II"
        xhat = x / space.norm(x)
        require_truncation_safe(Ttilde, [xhat], "witness vector")
        gamma = gamma_coefficient(T, u, v, xhat, problem.tol_rank)
        iib = condition_iib_residual(problem, gamma)
        stable = _stable_kernel_in_window(T, v, safe)
        iia = condition_iia_residual(Ttilde, stable, safe, witness=xhat)
        s_dim = stable.dim
        verdict_theorem = kernel_residual <= tol and iia <= tol and iib <= tol

    oracle = polarized_defect_form(Ttilde, safe)
    verdict_oracle = oracle.max_residual <= tol

    return TheoremReport(
        branch=branch,
        kernel_residual=kernel_residual,
        gamma=gamma,
        cond_iia_residual=iia,
        cond_iib_residual=iib,
        oracle_defect=oracle.max_residual,
        verdict_theorem=bool(verdict_theorem),
        verdict_oracle=bool(verdict_oracle),
        tol_rank=problem.tol_rank,
        tol_defect=problem.tol_defect,
        safe_dim=safe.dim,
        s_dim_evaluated=s_dim,
        v_was_normalized=problem.v_was_normalized,
        base_defect=problem.base_defect,
        space=space,
    )
