import random
from fractions import Fraction

import numpy as np
import pytest

from modules.compalg.scalars import all_exact, dot, random_rational, random_rational_vector
from modules.errors import DegenerateDirectionError, DimensionError, InvalidNuError
from modules.heisalg.algebra import build_algebra
from modules.intertwine.pullback import pullback
from modules.intertwine.sigma import (
    choose_nu,
    identity_sigma,
    j_intertwine_residual,
    orthogonality_residual,
    sigma_for_mode,
    sigma_map,
)
from modules.spectral.polynomial import FourierMode, ModePolynomial

E1 = (1, 0, 0, 0, 0, 0, 0)


def test_choose_nu_for_basis_direction():
    assert choose_nu(E1) == (0, 1, 0, 0, 0, 0, 0)
    assert choose_nu((0, 1, 0)) == (1, 0, 0)


def test_choose_nu_stays_exact_when_possible():
    nu = choose_nu((3, 4, 0))
    assert nu == (Fraction(4, 5), Fraction(-3, 5), 0)
    assert all(isinstance(x, Fraction) for x in nu)


def test_choose_nu_falls_back_to_floats():
    nu = choose_nu((1, 1, 0))
    assert isinstance(nu[0], float)
    assert nu[0] == pytest.approx(2 ** -0.5)
    assert nu[1] == pytest.approx(-(2 ** -0.5))


def test_choose_nu_on_random_directions():
    rng = random.Random(7)
    checked = 0
    while checked < 1000:
        z = random_rational_vector(rng, 7)
        if all(v == 0 for v in z):
            continue
        nu = choose_nu(z)
        norm, inner = dot(nu, nu), dot(nu, z)
        if all_exact(nu):
            assert norm == 1 and inner == 0
        else:
            assert abs(float(norm) - 1) < 1e-12
            assert abs(float(inner)) < 1e-12 * max(1.0, float(dot(z, z)) ** 0.5)
        checked += 1


def test_choose_nu_rejects_degenerate_input():
    with pytest.raises(DegenerateDirectionError):
        choose_nu((0, 0, 0))
    with pytest.raises(DimensionError):
        choose_nu((1,))


def test_sigma_matrix_entries(oct11):
    sig = sigma_map(oct11, E1)
    m = sig.matrix
    # first slot untouched
    assert all(m[i, i] == 1 for i in range(8))
    # second slot: e_0 -> conj(e_0 . e_2) = -e_2
    assert m[10, 8] == -1
    assert sig.target.p == 2 and sig.target.q == 0
    assert sig.signed_permutation is not None


@pytest.mark.parametrize("kind", ["quaternion", "octonion"])
@pytest.mark.parametrize("p,q", [(1, 1), (0, 1), (1, 2), (2, 1)])
def test_sigma_is_orthogonal_and_intertwines_j(kind, p, q):
    alg = build_algebra(kind, p, q)
    for k in range(alg.dim_z):
        z = tuple(1 if i == k else 0 for i in range(alg.dim_z))
        sig = sigma_map(alg, z)
        assert orthogonality_residual(sig).ok
        res = j_intertwine_residual(sig)
        assert res.exact and res.ok
        assert res.residual_norm == 0


def test_scaled_direction_still_intertwines(oct11):
    sig = sigma_map(oct11, E1)
    for scale in (2, -3, Fraction(1, 2)):
        assert j_intertwine_residual(sig, scale=scale).ok


def test_exact_non_permutation_sigma(quat11):
    sig = sigma_map(quat11, (3, 4, 0))
    assert sig.is_exact
    assert sig.signed_permutation is None
    assert orthogonality_residual(sig).residual_norm == 0
    assert j_intertwine_residual(sig).ok


def test_float_sigma_within_tolerance(quat11):
    sig = sigma_map(quat11, (1, 1, 0))
    assert not sig.is_exact
    orth = orthogonality_residual(sig)
    res = j_intertwine_residual(sig)
    assert not res.exact
    assert orth.ok and res.ok
    assert res.residual_norm < 1e-12


def test_explicit_nu(quat11):
    sig = sigma_map(quat11, (1, 0, 0), nu=(0, 0, 1))
    assert sig.nu == (0, 0, 1)
    assert j_intertwine_residual(sig).ok


@pytest.mark.parametrize("nu", [(1, 0, 0), (0, 2, 0), (0, 1)])
def test_invalid_nu(quat11, nu):
    with pytest.raises(InvalidNuError):
        sigma_map(quat11, (1, 0, 0), nu=nu)


def test_direction_length_checked(oct11):
    with pytest.raises(DimensionError):
        sigma_map(oct11, (1, 0, 0))


def test_zero_mode_uses_identity(oct11):
    sig = sigma_for_mode(oct11, FourierMode.zero(7))
    assert sig.nu is None
    assert sig.signed_permutation == [(i, 1) for i in range(16)]
    assert sigma_for_mode(oct11, FourierMode.basis(7, 2)).nu is not None


def test_sigma_record_is_json_friendly(quat11):
    record = orthogonality_residual(sigma_map(quat11, (3, 4, 0))).to_record()
    assert record["nu"] == ["4/5", "-3/5", "0"]
    assert record["ok"] is True
    assert record["check"] == "sigma_orthogonality"


def test_sigma_on_isotypic_source_is_identity():
    sig = sigma_map(build_algebra("octonion", 2, 0), E1)
    assert sig.signed_permutation == [(i, 1) for i in range(16)]


# -------------------------
# Pullback
# -------------------------

def _var(n, i, mode=None):
    return ModePolynomial.variable(n, i, mode)


def test_pullback_on_permutation_sigma(oct11):
    sig = sigma_map(oct11, E1)
    assert pullback(sig, _var(16, 0)) == _var(16, 0)
    assert pullback(sig, _var(16, 8)) == -_var(16, 10)
    assert pullback(sig, _var(16, 8) ** 2) == _var(16, 10) ** 2


def test_pullback_fixes_constants_and_radial(quat11):
    for sig in (sigma_map(quat11, (3, 4, 0)), sigma_map(quat11, (1, 0, 0))):
        one = ModePolynomial.constant(8, 5)
        assert pullback(sig, one) == one
        assert pullback(sig, ModePolynomial.radial(8)) == ModePolynomial.radial(8)


def test_pullback_is_multiplicative(quat11):
    sig = sigma_map(quat11, (3, 4, 0))
    f = _var(8, 4) * 3 + _var(8, 1) * _var(8, 5)
    g = _var(8, 6) - _var(8, 7) ** 2
    assert pullback(sig, f * g) == pullback(sig, f) * pullback(sig, g)
    assert pullback(sig, f).degree == f.degree


def test_pullback_keeps_mode(quat11):
    mode = FourierMode((3, 4, 0))
    f = _var(8, 5, mode) ** 2
    assert pullback(sigma_map(quat11, mode.z_vector()), f).mode == mode


def test_general_pullback_matches_evaluation(quat11):
    sig = sigma_map(quat11, (1, 1, 0))
    f = _var(8, 4) * _var(8, 6) + _var(8, 7) ** 3 - _var(8, 0)
    rng = np.random.default_rng(3)
    m = sig.matrix.astype(float)
    for _ in range(5):
        x = rng.uniform(-1, 1, 8)
        assert abs(pullback(sig, f).evaluate(x) - f.evaluate(m @ x)) < 1e-12


def test_pullback_checks_variables(oct11):
    with pytest.raises(DimensionError):
        pullback(identity_sigma(oct11), ModePolynomial.constant(8))


def _random_polynomial(rng, nvars, terms=4, top=2):
    f = ModePolynomial.zero(nvars)
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(rng.randint(0, top)):
            exps[rng.randrange(nvars)] += 1
        f = f + ModePolynomial.monomial(exps, random_rational(rng))
    return f


@pytest.mark.parametrize("z", [(3, 4, 0), (1, 0, 0), (0, 0, 2)])
def test_pullback_is_a_ring_map_on_random_pairs(quat11, z):
    sig = sigma_map(quat11, z)
    rng = random.Random(11)
    for _ in range(40):
        f, g = _random_polynomial(rng, 8), _random_polynomial(rng, 8)
        assert pullback(sig, f * g) == pullback(sig, f) * pullback(sig, g)
        assert pullback(sig, f + g) == pullback(sig, f) + pullback(sig, g)
