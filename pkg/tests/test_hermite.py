import math
import time

import numpy as np
import pytest
from numpy.polynomial.hermite import hermgauss, hermval

from modules.errors import DimensionError, InvalidParametersError, ResourceError
from modules.heisalg.algebra import build_algebra
from modules.spectral.eigen import compare_spectra, eigenvalues, extreme, spectrum_rows
from modules.spectral.fiber import FiberOperator
from modules.spectral.finite_difference import finite_difference_consistency
from modules.spectral.hermite import (
    basis_size,
    calibration_eigenvalues,
    calibration_matrix,
    hermite_1d_elements,
    hermite_matrix,
)
from modules.spectral.polynomial import FourierMode, ModePolynomial


def _op(alg, k=0, c=None):
    return FiberOperator(alg, FourierMode.basis(alg.dim_z, k), c)


def _normalized_hermite(n, nodes):
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    return hermval(nodes, coeffs) / math.sqrt(2 ** n * math.factorial(n) * math.sqrt(math.pi))


# -------------------------
# One-dimensional elements
# -------------------------

def test_position_elements_match_quadrature():
    n_max = 8
    nodes, weights = hermgauss(40)
    elems = hermite_1d_elements(n_max)
    h = [_normalized_hermite(n, nodes) for n in range(n_max + 1)]
    for m in range(n_max + 1):
        for n in range(n_max + 1):
            assert elems["x"][m, n] == pytest.approx(np.sum(weights * h[m] * nodes * h[n]), abs=1e-10)
            assert elems["x2"][m, n] == pytest.approx(np.sum(weights * h[m] * nodes ** 2 * h[n]), abs=1e-10)


def test_derivative_elements():
    elems = hermite_1d_elements(10)
    assert np.allclose(elems["d"], -elems["d"].T)
    # h_n'' = (x^2 - (2n + 1)) h_n
    assert np.allclose(elems["d2"], elems["x2"] - np.diag(2 * np.arange(11) + 1.0))
    inner = (elems["x"] @ elems["x"])[:-1, :-1]
    assert np.allclose(inner, elems["x2"][:-1, :-1])


# -------------------------
# Assembly
# -------------------------

def test_basis_sizes():
    assert basis_size(16, 3) == 969
    assert basis_size(8, 4) == 70


def test_zero_mode_is_free_laplacian(quat10):
    trunc = hermite_matrix(FiberOperator(quat10, FourierMode.zero(3)), 2)
    dense = trunc.dense()
    assert np.allclose(dense.imag, 0)
    assert np.allclose(dense, dense.T)
    assert dense[0, 0] == pytest.approx(-2.0)


@pytest.mark.parametrize("kind,p,q,d", [("quaternion", 1, 1, 3), ("octonion", 1, 1, 2), ("octonion", 2, 1, 2)])
def test_truncation_is_hermitian(kind, p, q, d):
    alg = build_algebra(kind, p, q)
    trunc = hermite_matrix(_op(alg, 1), d)
    assert trunc.hermitian_defect() <= 1e-12
    assert trunc.size == basis_size(alg.dim_v, d)


def test_calibration_spectrum(quat11):
    trunc = calibration_matrix(quat11, 3)
    assert trunc.matrix.nnz == trunc.size
    values = eigenvalues(trunc)
    assert np.max(np.abs(values - calibration_eigenvalues(quat11, 3))) < 1e-10
    assert values[-1] == -8


def test_size_cap(oct11):
    with pytest.raises(ResourceError):
        hermite_matrix(_op(oct11), 3, cap=100)
    with pytest.raises(InvalidParametersError):
        hermite_matrix(_op(oct11), -1)


# -------------------------
# Eigenvalues
# -------------------------

def test_extreme_selection():
    values = np.arange(1.0, 11.0)
    assert list(extreme(values, 5)) == [1, 2, 3, 9, 10]
    assert list(extreme(values, 2)) == [1, 10]
    assert len(extreme(values, 20)) == 10


def test_eigenvalue_count_checked(quat10):
    with pytest.raises(InvalidParametersError):
        eigenvalues(hermite_matrix(_op(quat10), 1), k=0)


def test_iterative_path_matches_dense(quat11):
    trunc = hermite_matrix(_op(quat11), 4)
    dense = eigenvalues(trunc, k=4)
    sparse = eigenvalues(trunc, k=4, dense_limit=100)
    assert np.allclose(dense, sparse, atol=1e-6)


def test_identical_truncations_agree(quat11):
    trunc = hermite_matrix(_op(quat11), 2)
    result = compare_spectra(trunc, trunc)
    assert result.ok and result.max_diff == 0


def test_quaternion_left_and_right_fibers_are_isospectral():
    a = hermite_matrix(_op(build_algebra("quaternion", 1, 0), 2), 4)
    b = hermite_matrix(_op(build_algebra("quaternion", 0, 1), 2), 4)
    assert compare_spectra(a, b, k=None).ok


@pytest.mark.parametrize("kind,d", [("quaternion", 3), ("octonion", 2)])
def test_pair_spectra_agree(kind, d):
    a = hermite_matrix(_op(build_algebra(kind, 1, 1)), d)
    b = hermite_matrix(_op(build_algebra(kind, 2, 0)), d)
    result = compare_spectra(a, b, k=20)
    assert result.ok
    assert len(result.values_a) == 20


@pytest.mark.slow
def test_octonion_pair_degree_three(oct11, oct20):
    a = hermite_matrix(_op(oct11), 3)
    b = hermite_matrix(_op(oct20), 3)
    assert a.size == 969
    assert compare_spectra(a, b, k=20).ok


def test_compare_needs_equal_sizes(quat10):
    with pytest.raises(DimensionError):
        compare_spectra(hermite_matrix(_op(quat10), 2), hermite_matrix(_op(quat10), 3))


def test_spectrum_rows(quat10):
    trunc = hermite_matrix(_op(quat10), 1)
    values = eigenvalues(trunc)
    rows = spectrum_rows(trunc, values, {"algebra": "quaternion", "p": 1, "q": 0})
    assert len(rows) == trunc.size == 5
    assert rows[0]["index"] == 0 and rows[0]["degree"] == 1
    assert rows[-1]["eigenvalue"] == pytest.approx(values[-1])


# -------------------------
# Finite differences
# -------------------------

def _var(n, i):
    return ModePolynomial.variable(n, i)


def test_finite_differences_are_second_order(quat10):
    f = _var(4, 0) ** 2 * _var(4, 1)
    report = finite_difference_consistency(_op(quat10), f, h=1e-2)
    assert report.order == pytest.approx(2.0, abs=0.1)
    assert report.deviation_half < report.deviation


def test_finite_differences_exact_on_quadratics(oct11):
    f = _var(16, 3) * _var(16, 9) + _var(16, 12) ** 2 * 2 - _var(16, 0)
    report = finite_difference_consistency(_op(oct11, 4), f, h=1e-2)
    assert report.deviation < 1e-8


def test_finite_differences_small_at_fine_step(quat11):
    rng = np.random.default_rng(1)
    f = ModePolynomial.zero(8)
    for _ in range(5):
        exps = [0] * 8
        for i in rng.integers(0, 8, size=3):
            exps[int(i)] += 1
        f = f + ModePolynomial.monomial(exps, int(rng.integers(-4, 5)) / 4)
    report = finite_difference_consistency(_op(quat11, 2), f, h=1e-3, radius=0.25)
    assert report.deviation < 1e-6


def test_finite_difference_step_checked(quat10):
    with pytest.raises(InvalidParametersError):
        finite_difference_consistency(_op(quat10), _var(4, 0), h=0)


def _random_exponent(rng, nvars, degree):
    exps = [0] * nvars
    for i in rng.integers(0, nvars, size=degree):
        exps[int(i)] += 1
    return exps


def _random_polynomial(rng, nvars, terms=5, top=2):
    f = ModePolynomial.zero(nvars)
    for _ in range(terms):
        exps = _random_exponent(rng, nvars, int(rng.integers(0, top + 1)))
        f = f + ModePolynomial.monomial(exps, int(rng.integers(-4, 5)) / 4)
    return f


def test_finite_difference_order_on_random_cubics(oct11):
    rng = np.random.default_rng(5)
    op = _op(oct11)
    started = time.perf_counter()
    for _ in range(20):
        cubic = ModePolynomial.monomial(_random_exponent(rng, 16, 3), int(rng.integers(1, 5)) / 4)
        f = cubic + _random_polynomial(rng, 16)
        report = finite_difference_consistency(op, f, h=1e-2)
        assert report.order == pytest.approx(2.0, abs=0.1)
        assert report.deviation_half > report.rounding_floor
    assert time.perf_counter() - started < 30


@pytest.mark.parametrize("mode", [FourierMode.zero(7), FourierMode.basis(7, 0)])
def test_finite_difference_order_is_none_at_rounding_level(oct11, mode):
    rng = np.random.default_rng(6)
    op = FiberOperator(oct11, mode)
    for _ in range(20):
        report = finite_difference_consistency(op, _random_polynomial(rng, 16), h=1e-2)
        assert report.order is None
        assert report.deviation <= report.rounding_floor
