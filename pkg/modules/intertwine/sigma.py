"""The slotwise map sigma: O^{p+q} -> O^{p+q} that conjugates j^(p,q) into j^(p+q,0).

sigma fixes the first p slots and sends X_k to conj(X_k . nu) on the last q
slots, where nu is a unit pure element orthogonal to the mode direction Z.
For such nu and every Y:  conj((Y Z) nu) = Z conj(Y nu), which is the matrix
identity  sigma j^(p,q)_Z = j^(p+q,0)_Z sigma.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from modules.compalg.composition import CompositionElement, embed_pure, mul
from modules.compalg.scalars import (
    Vector,
    all_exact,
    as_vector,
    dot,
    format_vector,
    frobenius,
    identity,
    is_zero_matrix,
    max_abs,
    sqrt_scalar,
    standard_basis,
    to_float_matrix,
)
from modules.errors import DegenerateDirectionError, DimensionError, InvalidNuError
from modules.heisalg.algebra import HeisenbergAlgebra, build_algebra, j_matrix
from modules.spectral.polynomial import FourierMode

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SigmaMap:
    source: HeisenbergAlgebra
    target: HeisenbergAlgebra
    z_dir: Vector
    nu: Optional[Vector]
    matrix: np.ndarray

    @property
    def dim_v(self) -> int:
        return self.source.dim_v

    @property
    def is_exact(self) -> bool:
        return self.matrix.dtype == object and all_exact(self.matrix.flat)

    @cached_property
    def signed_permutation(self) -> Optional[List[Tuple[int, int]]]:
        """Per row (column, sign) when every row holds a single +-1, else None."""
        if not self.is_exact:
            return None
        rows = []
        for i in range(self.dim_v):
            nonzero = [(j, x) for j, x in enumerate(self.matrix[i]) if x != 0]
            if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
                return None
            j, x = nonzero[0]
            rows.append((j, int(x)))
        return rows

    def apply(self, x: Sequence) -> Vector:
        xs = as_vector(x)
        return tuple(dot(self.matrix[i], xs) for i in range(self.dim_v))

    def to_dict(self) -> Dict:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "z_dir": format_vector(self.z_dir),
            "nu": None if self.nu is None else format_vector(self.nu),
            "exact": self.is_exact,
        }


# -------------------------
# nu selection
# -------------------------

def choose_nu(z_dir: Sequence, tol: float = config.TOL_MATRIX) -> Vector:
    """Unit vector orthogonal to z_dir: Gram-Schmidt on the first basis vector not parallel to it."""
    z = as_vector(z_dir)
    if len(z) < 2:
        raise DimensionError("need at least two center dimensions to pick nu", dim=len(z))
    exact = all_exact(z)
    zz = dot(z, z)
    if zz == 0 or (not exact and float(zz) < tol * tol):
        raise DegenerateDirectionError("cannot pick nu for a zero direction", z_dir=z)

    for k in range(len(z)):
        coef = z[k] / zz
        w = tuple(e - coef * zi for e, zi in zip(standard_basis(len(z), k), z))
        ww = dot(w, w)
        if ww == 0 or (not exact and float(ww) < tol):
            continue
        norm = sqrt_scalar(ww)
        return tuple(x / norm for x in w)
    raise DegenerateDirectionError("no basis vector independent of z_dir", z_dir=z)


def _validate_nu(z: Vector, nu: Vector, dim_z: int, tol: float) -> None:
    if len(nu) != dim_z:
        raise InvalidNuError(f"nu must have {dim_z} entries, got {len(nu)}", nu=nu)
    norm_defect = dot(nu, nu) - 1
    orth = dot(nu, z)
    if all_exact(nu) and all_exact(z):
        bad = norm_defect != 0 or orth != 0
    else:
        bad = abs(float(norm_defect)) > tol or abs(float(orth)) > tol * max(1.0, float(dot(z, z)) ** 0.5)
    if bad:
        raise InvalidNuError(
            "nu must be a unit vector orthogonal to z_dir",
            norm_defect=norm_defect,
            inner=orth,
        )


# -------------------------
# sigma
# -------------------------

def sigma_map(
    src: HeisenbergAlgebra,
    z_dir: Sequence,
    nu: Optional[Sequence] = None,
    tol: float = config.TOL_MATRIX,
) -> SigmaMap:
    z = as_vector(z_dir)
    if len(z) != src.dim_z:
        raise DimensionError(f"z_dir must have {src.dim_z} entries, got {len(z)}")
    nu_vec = choose_nu(z, tol) if nu is None else as_vector(nu)
    _validate_nu(z, nu_vec, src.dim_z, tol)

    target = build_algebra(src.kind, src.p + src.q, 0)
    exact = all_exact(nu_vec)
    m = identity(src.dim_v, exact)
    inu = embed_pure(nu_vec, src.dim_a)
    for slot in range(src.p, src.slots):
        rows = src.slot_range(slot)
        for b in range(src.dim_a):
            eb = CompositionElement.basis(src.dim_a, b)
            image = mul(eb, inu).conj()
            for i, value in zip(rows, image.coords):
                m[i, rows[b]] = value
    log.debug("sigma for %s along %s (nu=%s, exact=%s)", src.label(), z, nu_vec, exact)
    return SigmaMap(src, target, z, nu_vec, m)


def identity_sigma(src: HeisenbergAlgebra) -> SigmaMap:
    target = build_algebra(src.kind, src.p + src.q, 0)
    return SigmaMap(src, target, as_vector((0,) * src.dim_z), None, identity(src.dim_v))


def sigma_for_mode(src: HeisenbergAlgebra, mode: FourierMode, tol: float = config.TOL_MATRIX) -> SigmaMap:
    """sigma along Z^alpha; the alpha = 0 mode has no j-term and gets the identity."""
    if mode.dim != src.dim_z:
        raise DimensionError(f"mode has {mode.dim} entries, {src.label()} needs {src.dim_z}")
    if mode.is_zero():
        return identity_sigma(src)
    return sigma_map(src, mode.z_vector(), tol=tol)


# -------------------------
# Residuals
# -------------------------

@dataclass(frozen=True, eq=False)
class MatrixResidual:
    name: str
    sigma: SigmaMap
    scale: object
    residual: np.ndarray
    residual_norm: float
    exact: bool
    tolerance: float

    @property
    def ok(self) -> bool:
        if self.exact:
            return is_zero_matrix(self.residual)
        return self.residual_norm <= self.tolerance

    def to_record(self) -> Dict:
        return {
            "check": self.name,
            "p": self.sigma.source.p,
            "q": self.sigma.source.q,
            "z_dir": format_vector(self.sigma.z_dir),
            "nu": None if self.sigma.nu is None else format_vector(self.sigma.nu),
            "residual_norm": self.residual_norm,
            "exact": self.exact,
            "ok": self.ok,
        }


def orthogonality_residual(sig: SigmaMap, tol: float = config.TOL_ORTHOGONAL) -> MatrixResidual:
    m = sig.matrix
    exact = sig.is_exact
    if not exact:
        m = to_float_matrix(m)
    residual = m.T @ m - identity(sig.dim_v, exact)
    return MatrixResidual("sigma_orthogonality", sig, 1, residual, frobenius(residual), exact, tol)


def j_intertwine_residual(sig: SigmaMap, scale=1, tol: float = config.TOL_MATRIX) -> MatrixResidual:
    """sigma j^(p,q)_{s z} - j^(p+q,0)_{s z} sigma for s = scale."""
    z = tuple(scale * x for x in sig.z_dir)
    j_src = j_matrix(sig.source, z)
    j_dst = j_matrix(sig.target, z)
    m = sig.matrix
    exact = sig.is_exact and all_exact(z)
    if not exact:
        m, j_src, j_dst = to_float_matrix(m), to_float_matrix(j_src), to_float_matrix(j_dst)
    residual = m @ j_src - j_dst @ m
    norm = frobenius(residual)
    log.info("j-intertwining %s scale=%s: |residual|=%.3g", sig.source.label(), scale, norm)
    return MatrixResidual("j_intertwining", sig, scale, residual, norm, exact, tol * max(1.0, max_abs(j_src)))
