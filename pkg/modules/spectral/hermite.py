"""Fiber operators discretized in the tensor Hermite-function basis.

h_n(x) = (2^n n! sqrt(pi))^(-1/2) H_n(x) exp(-x^2 / 2) and, on R^dim_v,
h_n(X) = prod_i h_{n_i}(x_i). The truncation keeps every multi-index with
|n| <= d, ordered like monomials_up_to. Matrix elements come from the
ladder relations

    x h_n  = sqrt(n/2) h_{n-1} + sqrt((n+1)/2) h_{n+1}
    h_n'   = sqrt(n/2) h_{n-1} - sqrt((n+1)/2) h_{n+1}

so x^2 and d^2/dx^2 are pentadiagonal and sum_{i,k} J_ik x_k d/dx_i maps
|n> to sum_{i != k} J_ik sqrt(n_i (n_k + 1)) |n - e_i + e_k>, which keeps |n|.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np
from scipy import sparse

import config
from modules.compalg.scalars import to_float_matrix
from modules.errors import InvalidParametersError, ResourceError
from modules.heisalg.algebra import HeisenbergAlgebra
from modules.spectral.fiber import FiberOperator
from modules.spectral.polynomial import Exponent, monomials_up_to

log = logging.getLogger(__name__)


def basis_size(nvars: int, d: int) -> int:
    return math.comb(nvars + d, d)


def hermite_basis(nvars: int, d: int) -> List[Exponent]:
    return list(monomials_up_to(nvars, d))


def hermite_1d_elements(n_max: int) -> Dict[str, np.ndarray]:
    """<h_m, A h_n> for A in {x, d/dx, x^2, d^2/dx^2}, m, n <= n_max."""
    size = n_max + 1
    out = {name: np.zeros((size, size)) for name in ("x", "d", "x2", "d2")}
    for n in range(size):
        down = math.sqrt(n / 2)
        up = math.sqrt((n + 1) / 2)
        if n >= 1:
            out["x"][n - 1, n] = down
            out["d"][n - 1, n] = down
        if n + 1 < size:
            out["x"][n + 1, n] = up
            out["d"][n + 1, n] = -up
        out["x2"][n, n] = n + 0.5
        out["d2"][n, n] = -(n + 0.5)
        if n >= 2:
            v = 0.5 * math.sqrt(n * (n - 1))
            out["x2"][n - 2, n] = v
            out["d2"][n - 2, n] = v
        if n + 2 < size:
            v = 0.5 * math.sqrt((n + 1) * (n + 2))
            out["x2"][n + 2, n] = v
            out["d2"][n + 2, n] = v
    return out


@dataclass(frozen=True, eq=False)
class HermiteTruncation:
    label: str
    nvars: int
    max_total_degree: int
    basis: Tuple[Exponent, ...]
    matrix: sparse.csr_matrix

    @property
    def size(self) -> int:
        return len(self.basis)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def hermitian_defect(self) -> float:
        diff = self.matrix - self.matrix.conj().T
        return float(abs(diff).max()) if diff.nnz else 0.0

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "nvars": self.nvars,
            "degree": self.max_total_degree,
            "size": self.size,
            "nnz": int(self.matrix.nnz),
        }


# -------------------------
# Assembly
# -------------------------

def _check_size(nvars: int, d: int, cap: int) -> int:
    if d < 0:
        raise InvalidParametersError(f"truncation degree must be >= 0, got {d}", degree=d)
    size = basis_size(nvars, d)
    if size > cap:
        raise ResourceError(
            f"Hermite basis of degree {d} in {nvars} variables has {size} functions (cap {cap})",
            size=size,
            cap=cap,
        )
    return size


def _add(entries: Dict[Tuple[int, int], complex], key: Tuple[int, int], value: complex) -> None:
    entries[key] = entries.get(key, 0.0) + value


def _assemble(
    nvars: int,
    d: int,
    laplace: float,
    radial: float,
    constant: float,
    jm: np.ndarray,
    j_coef: complex,
    cap: int,
) -> Tuple[List[Exponent], sparse.csr_matrix]:
    """laplace * Delta + radial * |X|^2 + constant + j_coef * (J X) . in the |n| <= d basis."""
    size = _check_size(nvars, d, cap)
    basis = hermite_basis(nvars, d)
    index = {n: i for i, n in enumerate(basis)}
    j_rows = [[(k, float(jm[i, k])) for k in range(nvars) if jm[i, k] != 0] for i in range(nvars)] if j_coef else []

    entries: Dict[Tuple[int, int], complex] = {}
    for col, n in enumerate(basis):
        diag = constant
        for i, ni in enumerate(n):
            diag += (laplace * -(ni + 0.5)) + radial * (ni + 0.5)
            if ni >= 2:
                row = index[n[:i] + (ni - 2,) + n[i + 1:]]
                _add(entries, (row, col), (laplace + radial) * 0.5 * math.sqrt(ni * (ni - 1)))
            lifted = n[:i] + (ni + 2,) + n[i + 1:]
            row = index.get(lifted)
            if row is not None:
                _add(entries, (row, col), (laplace + radial) * 0.5 * math.sqrt((ni + 1) * (ni + 2)))
        _add(entries, (col, col), diag)

        for i, k_entries in enumerate(j_rows):
            if not n[i]:
                continue
            for k, jik in k_entries:
                target = list(n)
                target[i] -= 1
                target[k] += 1
                row = index[tuple(target)]
                _add(entries, (row, col), j_coef * jik * math.sqrt(n[i] * (n[k] + 1)))

    keys = [key for key, value in entries.items() if value != 0]
    rows = np.fromiter((r for r, _ in keys), dtype=np.int64, count=len(keys))
    cols = np.fromiter((c for _, c in keys), dtype=np.int64, count=len(keys))
    data = np.array([entries[key] for key in keys], dtype=np.complex128)
    matrix = sparse.csr_matrix((data, (rows, cols)), shape=(size, size))
    return basis, matrix


def hermite_matrix(op: FiberOperator, d: int, cap: int = config.BASIS_CAP) -> HermiteTruncation:
    alpha2 = op.mode.norm2
    potential = -4 * math.pi ** 2 * alpha2
    jm = to_float_matrix(op.j()) if alpha2 else np.zeros((op.dim_v, op.dim_v))
    basis, matrix = _assemble(
        op.dim_v,
        d,
        laplace=1.0,
        radial=potential * float(op.coeff_c),
        constant=potential,
        jm=jm,
        j_coef=2j * math.pi if alpha2 else 0,
        cap=cap,
    )
    log.info("assembled %s at degree %d: %d x %d, nnz=%d", op.label(), d, len(basis), len(basis), matrix.nnz)
    return HermiteTruncation(op.label(), op.dim_v, d, tuple(basis), matrix)


def calibration_matrix(alg: HeisenbergAlgebra, d: int, cap: int = config.BASIS_CAP) -> HermiteTruncation:
    """Delta_v - |X|^2, diagonal in this basis with entries -(2|n| + dim_v)."""
    basis, matrix = _assemble(
        alg.dim_v,
        d,
        laplace=1.0,
        radial=-1.0,
        constant=0.0,
        jm=np.zeros((alg.dim_v, alg.dim_v)),
        j_coef=0,
        cap=cap,
    )
    return HermiteTruncation(f"calibration {alg.label()}", alg.dim_v, d, tuple(basis), matrix)


def calibration_eigenvalues(alg: HeisenbergAlgebra, d: int) -> np.ndarray:
    """Closed form -(2|n| + dim_v) over the truncated basis, sorted."""
    return np.sort(np.array([-(2 * sum(n) + alg.dim_v) for n in hermite_basis(alg.dim_v, d)], dtype=float))
