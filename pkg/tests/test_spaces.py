"""Weighted space construction, inner products, subspaces, projections."""

import numpy as np
import pytest

from twoiso import (
    BasisLabel,
    WeightedSpace,
    make_bidisc_space,
    make_coordinate_space,
    make_dirichlet_space,
    monomial_span,
    orthogonal_complement,
    span,
    vec_from_pairs,
    vec_to_pairs,
    weighted_gram_schmidt,
    whole_space,
)
from helpers import projection_by_expansion, random_vec, random_weighted_space


# ---------------------------------------------------------------------------
# constructors


def test_dirichlet_weights():
    space = make_dirichlet_space(3)
    assert list(space.weights) == [1.0, 2.0, 3.0, 4.0]
    assert [lab.multi_index for lab in space.labels] == [(0,), (1,), (2,), (3,)]


def test_dirichlet_degree_zero():
    space = make_dirichlet_space(0)
    assert list(space.weights) == [1.0]


def test_dirichlet_dimension():
    assert make_dirichlet_space(5).dim == 6


def test_bidisc_dimension():
    assert make_bidisc_space(2).dim == 6


def test_bidisc_degree_zero():
    assert list(make_bidisc_space(0).weights) == [1.0]


def test_bidisc_labels_degree_one():
    space = make_bidisc_space(1)
    assert [lab.multi_index for lab in space.labels] == [(0, 0), (1, 0), (0, 1)]


def test_bidisc_order_within_degree():
    space = make_bidisc_space(2)
    assert [lab.multi_index for lab in space.labels] == [
        (0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2),
    ]


def test_coordinate_space_labels_all_degree_one():
    space = make_coordinate_space(4)
    assert all(lab.total_degree == 1 for lab in space.labels)
    assert space.max_degree == 1


def test_label_validation():
    with pytest.raises(ValueError):
        BasisLabel((-1,))
    with pytest.raises(ValueError):
        BasisLabel(())


def test_space_validation():
    with pytest.raises(ValueError):
        WeightedSpace(labels=(BasisLabel((0,)),), weights=(0.0,))
    with pytest.raises(ValueError):
        WeightedSpace(labels=(BasisLabel((0,)), BasisLabel((0,))), weights=(1.0, 1.0))
    with pytest.raises(ValueError):
        WeightedSpace(labels=(BasisLabel((0,)), BasisLabel((0, 1))), weights=(1.0, 1.0))
    with pytest.raises(ValueError):
        WeightedSpace(labels=(), weights=())


# ---------------------------------------------------------------------------
# inner product


def test_inner_monomials_dirichlet():
    space = make_dirichlet_space(3)
    z = space.monomial((1,))
    one = space.monomial((0,))
    assert space.inner(z, z) == pytest.approx(2.0)
    assert space.inner(one, one) == pytest.approx(1.0)
    assert space.inner(z, one) == 0


def test_inner_dimension_mismatch():
    space = make_dirichlet_space(3)
    with pytest.raises(ValueError, match="shape"):
        space.inner(np.ones(2), np.ones(4))


def test_inner_conjugate_symmetry():
    rng = np.random.default_rng(11)
    for _ in range(50):
        space = random_weighted_space(rng)
        x, y = random_vec(space, rng), random_vec(space, rng)
        assert abs(space.inner(x, y) - np.conj(space.inner(y, x))) <= 1e-12 * (
            1 + abs(space.inner(x, y))
        )


def test_inner_positivity():
    rng = np.random.default_rng(12)
    for _ in range(50):
        space = random_weighted_space(rng)
        x = random_vec(space, rng)
        val = space.inner(x, x)
        assert abs(val.imag) <= 1e-12 * (1 + abs(val))
        assert val.real > 0


def test_inner_second_argument_conjugate_linear():
    space = make_coordinate_space(3)
    rng = np.random.default_rng(13)
    x, y = random_vec(space, rng), random_vec(space, rng)
    c = 0.7 - 1.3j
    assert space.inner(x, c * y) == pytest.approx(np.conj(c) * space.inner(x, y))


# ---------------------------------------------------------------------------
# subspaces and projections


def test_project_idempotent():
    rng = np.random.default_rng(21)
    for _ in range(30):
        space = random_weighted_space(rng)
        sub = span(space, [random_vec(space, rng) for _ in range(3)])
        x = random_vec(space, rng)
        once = sub.project(x)
        twice = sub.project(once)
        assert space.norm(once - twice) <= 1e-12 * max(1.0, space.norm(x))


def test_pythagoras():
    rng = np.random.default_rng(22)
    for _ in range(30):
        space = random_weighted_space(rng)
        sub = span(space, [random_vec(space, rng) for _ in range(2)])
        x = random_vec(space, rng)
        p = sub.project(x)
        lhs = space.norm(x) ** 2
        rhs = space.norm(p) ** 2 + space.norm(x - p) ** 2
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, lhs)


def test_project_inside_and_orthogonal():
    space = make_coordinate_space(3)
    sub = span(space, [space.basis_vector(0), space.basis_vector(1)])
    inside = space.basis_vector(0) + 2j * space.basis_vector(1)
    assert space.norm(sub.project(inside) - inside) <= 1e-12
    assert space.norm(sub.project(space.basis_vector(2))) <= 1e-12


def test_project_negative_monomial_onto_complement_is_zero():
    # -z1 lies in span{z1}, so its projection onto the complement vanishes;
    # cross-checked against an explicit orthonormal expansion.
    space = make_bidisc_space(2)
    z1 = space.monomial((1, 0))
    comp = orthogonal_complement(span(space, [z1]))
    x = -z1
    assert space.norm(comp.project(x)) <= 1e-12
    assert space.norm(projection_by_expansion(comp, x)) <= 1e-12


def test_projection_matches_expansion_oracle():
    rng = np.random.default_rng(23)
    for _ in range(20):
        space = random_weighted_space(rng)
        sub = span(space, [random_vec(space, rng) for _ in range(2)])
        x = random_vec(space, rng)
        assert space.norm(sub.project(x) - projection_by_expansion(sub, x)) <= 1e-10


def test_orthonormal_basis_invariants():
    rng = np.random.default_rng(24)
    for _ in range(20):
        space = random_weighted_space(rng)
        sub = span(space, [random_vec(space, rng) for _ in range(4)])
        basis = sub.basis_vectors()
        for i, e in enumerate(basis):
            assert abs(space.norm(e) - 1.0) <= 1e-12
            for f in basis[i + 1:]:
                assert abs(space.inner(e, f)) <= 1e-12


def test_gram_schmidt_rank_detection():
    space = make_coordinate_space(3)
    v = space.basis_vector(0) + space.basis_vector(1)
    basis = weighted_gram_schmidt(space, [v, 2.0 * v, space.basis_vector(2)])
    assert len(basis) == 2


def test_complement_of_e2_in_c2():
    space = make_coordinate_space(2)
    comp = orthogonal_complement(span(space, [space.basis_vector(1)]))
    assert comp.dim == 1
    assert abs(abs(comp.onb[0, 0]) - 1.0) <= 1e-12
    assert abs(comp.onb[1, 0]) <= 1e-12


def test_complement_dimension_bidisc():
    space = make_bidisc_space(2)
    sub = span(space, [space.monomial((0, 0)), space.monomial((1, 0))])
    comp = orthogonal_complement(sub)
    assert comp.dim == 4


def test_complement_of_whole_space_is_trivial():
    space = make_dirichlet_space(3)
    comp = orthogonal_complement(whole_space(space))
    assert comp.dim == 0


def test_complement_dimensions_add_up():
    rng = np.random.default_rng(25)
    for _ in range(20):
        space = random_weighted_space(rng)
        k = int(rng.integers(0, space.dim + 1))
        sub = span(space, [random_vec(space, rng) for _ in range(k)])
        comp = orthogonal_complement(sub)
        assert sub.dim + comp.dim == space.dim


def test_monomial_span_exactly_orthonormal():
    space = make_dirichlet_space(4)
    sub = monomial_span(space, [0, 2])
    for e in sub.basis_vectors():
        assert space.norm(e) == pytest.approx(1.0, abs=1e-15)


# ---------------------------------------------------------------------------
# serialization


@pytest.mark.parametrize(
    "space",
    [
        make_dirichlet_space(4),
        make_bidisc_space(3),
        make_coordinate_space(3, weights=(1.0, 2.5, 0.5)),
    ],
)
def test_space_json_round_trip(space):
    doc = space.to_dict()
    back = WeightedSpace.from_dict(doc)
    assert back == space
    assert doc["kind"] == space.kind
    if space.kind in ("dirichlet", "bidisc"):
        assert doc["max_degree"] == space.max_degree
    else:
        assert doc["max_degree"] is None


def test_vec_pairs_round_trip():
    x = np.array([1.0 + 2.0j, -0.5, 3.0j])
    assert np.allclose(vec_from_pairs(vec_to_pairs(x)), x)
