import random
import time
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modules.compalg.scalars import identity, is_zero_matrix, random_rational_vector
from modules.errors import DimensionError, InvalidParametersError
from modules.heisalg.algebra import (
    apply_j,
    bracket,
    build_algebra,
    inner,
    j_basis_matrices,
    j_matrix,
    normalize_kind,
)
from modules.heisalg.checks import (
    check_anticommutation,
    check_bracket,
    check_composition,
    check_heisenberg_type,
    check_skew,
    check_volume_element,
    is_isotypic,
    isotypic_signature,
    volume_element,
)
from modules.heisalg.group import GroupElement, group_commutator, group_inv, group_mul, identity_element
from modules.heisalg.isomorphism import swap_isomorphism

GRID = [
    (kind, p, q)
    for kind in ("quaternion", "octonion")
    for p, q in ((1, 0), (1, 1), (2, 0), (2, 1), (3, 0))
]


@pytest.mark.parametrize("alias,expected", [
    ("O", "octonion"),
    ("oct", "octonion"),
    ("Octonions", "octonion"),
    ("h", "quaternion"),
    ("QUAT", "quaternion"),
])
def test_kind_aliases(alias, expected):
    assert normalize_kind(alias) == expected


@pytest.mark.parametrize("p,q", [(0, 0), (-1, 2), (1, -1)])
def test_build_rejects_bad_parameters(p, q):
    with pytest.raises(InvalidParametersError):
        build_algebra("octonion", p, q)


def test_unknown_kind():
    with pytest.raises(InvalidParametersError):
        build_algebra("sedenion", 1, 0)


def test_dimensions(oct11):
    assert (oct11.dim_v, oct11.dim_z, oct11.dim) == (16, 7, 23)
    assert [oct11.slot_side(s) for s in range(2)] == ["left", "right"]
    assert build_algebra("octonion", 2, 1).dim == 31


def test_j_matrix_left_and_right_slots(oct11):
    # slot 1 multiplies from the right: j_{e1} applied to 1 in that slot is 1 . e1 = e1
    jm = j_matrix(oct11, (1, 0, 0, 0, 0, 0, 0))
    assert jm[9, 8] == 1
    # left slot: e1 . e2 = e3, right slot: e2 . e1 = -e3
    assert jm[3, 2] == 1
    assert jm[11, 10] == -1


def test_j_matrix_checks_length(oct11):
    with pytest.raises(DimensionError):
        j_matrix(oct11, (1, 0, 0))


def test_j_matrix_exactness_follows_input(oct11):
    floating = j_matrix(oct11, (0.5, 0, 0, 0, 0, 0, 0))
    exact = j_matrix(oct11, (Fraction(1, 2), 0, 0, 0, 0, 0, 0))
    assert floating.dtype == np.float64
    assert exact.dtype == object
    assert exact[9, 8] == Fraction(1, 2)
    assert floating[9, 8] == 0.5


def test_j_matrix_is_combination_of_basis(oct11):
    z = (Fraction(1, 3), -2, 0, 0, Fraction(5, 7), 0, 1)
    total = sum(c * jk for c, jk in zip(z, j_basis_matrices(oct11)))
    assert is_zero_matrix(j_matrix(oct11, z) - total)


@pytest.mark.parametrize("kind,p,q", GRID)
def test_heisenberg_type_exact(kind, p, q):
    report = check_heisenberg_type(build_algebra(kind, p, q), samples=100, seed=7)
    assert report.exact
    assert report.max_residual == 0
    assert report.ok
    assert report.samples == build_algebra(kind, p, q).dim_z + 100


def test_heisenberg_type_grid_within_budget():
    started = time.perf_counter()
    assert all(check_heisenberg_type(build_algebra(*case), samples=100).ok for case in GRID)
    assert time.perf_counter() - started < 5


@pytest.mark.parametrize("kind,p,q", GRID)
def test_skew_and_polarization(kind, p, q):
    alg = build_algebra(kind, p, q)
    assert check_skew(alg, samples=5).ok
    assert check_anticommutation(alg, samples=5).ok


@pytest.mark.parametrize("kind,p,q", [("quaternion", 1, 1), ("octonion", 1, 1), ("octonion", 2, 1)])
def test_bracket_duality(kind, p, q):
    started = time.perf_counter()
    report = check_bracket(build_algebra(kind, p, q), samples=500, seed=3)
    assert time.perf_counter() - started < 5
    assert report.ok and report.samples == 500


@pytest.mark.parametrize("dim", [4, 8])
def test_composition_check(dim):
    report = check_composition(dim, samples=10)
    assert report.ok
    assert report.algebra["kind"] == ("quaternion" if dim == 4 else "octonion")


def test_bracket_matches_definition(oct11):
    rng = random.Random(11)
    for _ in range(10):
        x = random_rational_vector(rng, 16)
        y = random_rational_vector(rng, 16)
        z = random_rational_vector(rng, 7)
        assert inner(bracket(oct11, x, y), z) == inner(apply_j(oct11, z, x), y)


@pytest.mark.parametrize("kind", ["quaternion", "octonion"])
def test_volume_element_separates_11_from_20(kind):
    a = build_algebra(kind, 1, 1)
    b = build_algebra(kind, 2, 0)
    assert isotypic_signature(a) == 0
    assert abs(isotypic_signature(b)) == 2
    assert not is_isotypic(a)
    assert is_isotypic(b)


@pytest.mark.parametrize("kind,p,q", GRID)
def test_volume_element_squares_to_identity(kind, p, q):
    alg = build_algebra(kind, p, q)
    report = check_volume_element(alg)
    assert report.ok
    assert abs(report.details["signature"]) == abs(p - q)
    omega = volume_element(alg)
    assert is_zero_matrix(omega @ omega - identity(alg.dim_v))


def test_signature_flips_with_swap():
    assert isotypic_signature(build_algebra("octonion", 2, 1)) == -isotypic_signature(build_algebra("octonion", 1, 2))


@pytest.mark.parametrize("kind", ["quaternion", "octonion"])
@pytest.mark.parametrize("p,q", [(1, 0), (0, 1), (1, 1), (2, 0)])
def test_swap_isomorphism_preserves_bracket(kind, p, q):
    alg = build_algebra(kind, p, q)
    target, phi, psi = swap_isomorphism(alg)
    assert (target.p, target.q) == (q, p)
    assert is_zero_matrix(phi.T @ phi - identity(alg.dim_v))
    rng = random.Random(5)
    for _ in range(5):
        x = random_rational_vector(rng, alg.dim_v)
        y = random_rational_vector(rng, alg.dim_v)
        px = tuple(phi @ np.array(x, dtype=object))
        py = tuple(phi @ np.array(y, dtype=object))
        lhs = bracket(target, px, py)
        rhs = tuple(psi @ np.array(bracket(alg, x, y), dtype=object))
        assert lhs == rhs


# -------------------------
# Group law
# -------------------------

coords = st.integers(min_value=-4, max_value=4).map(Fraction)


def group_elements(alg):
    return st.builds(
        GroupElement,
        st.lists(coords, min_size=alg.dim_v, max_size=alg.dim_v).map(tuple),
        st.lists(coords, min_size=alg.dim_z, max_size=alg.dim_z).map(tuple),
    )


QUAT11 = build_algebra("quaternion", 1, 1)


@settings(max_examples=25, deadline=None)
@given(group_elements(QUAT11), group_elements(QUAT11), group_elements(QUAT11))
def test_group_is_associative(a, b, c):
    alg = QUAT11
    assert group_mul(alg, group_mul(alg, a, b), c) == group_mul(alg, a, group_mul(alg, b, c))


@settings(max_examples=25, deadline=None)
@given(group_elements(QUAT11))
def test_group_inverse(a):
    alg = QUAT11
    assert group_mul(alg, a, group_inv(alg, a)) == identity_element(alg)
    assert group_mul(alg, identity_element(alg), a) == a


@settings(max_examples=25, deadline=None)
@given(group_elements(QUAT11), group_elements(QUAT11))
def test_commutator_is_central_bracket(a, b):
    alg = QUAT11
    comm = group_commutator(alg, a, b)
    assert all(x == 0 for x in comm.x)
    assert comm.z == bracket(alg, a.x, b.x)


def test_group_rejects_wrong_shape(oct11):
    with pytest.raises(DimensionError):
        group_mul(oct11, identity_element(QUAT11), identity_element(oct11))
