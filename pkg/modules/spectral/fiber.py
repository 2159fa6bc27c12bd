"""The fiber Laplacian acting on one Fourier mode.

On phi(X) E^alpha(Z) the Laplacian of the quotient acts as

    Delta_v phi + 2 pi i (j_{Z^alpha} X) . phi - 4 pi^2 |Z^alpha|^2 (1 + c |X|^2) phi

where (jX) . phi is the derivative of phi along the vector field X -> j_{Z^alpha} X
and c defaults to dim v / 4. Substituting xi = 2 pi Z^alpha turns the first-order
term into i (j_xi X) . and the potential into |xi|^2 (1 + c |X|^2); only the form
above is implemented.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np
from sympy.polys.rings import PolyElement

from modules.compalg.scalars import Scalar, as_scalar, integer_array
from modules.errors import DimensionError, InvalidParametersError, ModeMismatchError
from modules.heisalg.algebra import HeisenbergAlgebra, j_integer, j_matrix
from modules.spectral.coefficients import TWO_PI_I, minus_four_pi_squared
from modules.spectral.polynomial import FourierMode, ModePolynomial, poly_ring

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiberOperator:
    algebra: HeisenbergAlgebra
    mode: FourierMode
    coeff_c: Optional[Scalar] = None

    def __post_init__(self):
        if self.mode.dim != self.algebra.dim_z:
            raise DimensionError(
                f"mode {self.mode.label()} has {self.mode.dim} entries, "
                f"{self.algebra.label()} has dim z = {self.algebra.dim_z}"
            )
        c = Fraction(self.algebra.dim_v, 4) if self.coeff_c is None else as_scalar(self.coeff_c)
        if c <= 0:
            raise InvalidParametersError(f"radial coefficient must be positive, got {c}", coeff_c=c)
        object.__setattr__(self, "coeff_c", c)

    @property
    def dim_v(self) -> int:
        return self.algebra.dim_v

    def j(self) -> np.ndarray:
        return j_matrix(self.algebra, self.mode.z_vector())

    def label(self) -> str:
        return f"{self.algebra.label()}[alpha={self.mode.label()}]"

    def to_dict(self) -> Dict:
        c = self.coeff_c
        return {
            "algebra": self.algebra.to_dict(),
            "alpha": list(self.mode.alpha),
            "coeff_c": str(c) if isinstance(c, Fraction) else c,
        }


# -------------------------
# Pieces of the operator
# -------------------------

def _check_vars(alg: HeisenbergAlgebra, f: ModePolynomial) -> None:
    if f.nvars != alg.dim_v:
        raise DimensionError(
            f"polynomial has {f.nvars} variables, {alg.label()} has dim v = {alg.dim_v}"
        )


@lru_cache(maxsize=64)
def _field_forms(alg: HeisenbergAlgebra, alpha: Tuple[int, ...], exact: bool) -> Tuple[PolyElement, ...]:
    """(j_{Z^alpha} X)_i = sum_k J[i, k] x_k as linear forms of poly_ring(dim v)."""
    r = poly_ring(alg.dim_v, exact)
    jm = j_integer(alg, integer_array(alpha))
    return tuple(
        sum((int(jm[i, k]) * r.gens[k] for k in np.flatnonzero(jm[i])), r.zero)
        for i in range(alg.dim_v)
    )


def laplacian(f: ModePolynomial) -> ModePolynomial:
    p = f.poly
    out = p.ring.zero
    for x in p.ring.gens[:f.nvars]:
        out += p.diff(x).diff(x)
    return ModePolynomial(f.nvars, mode=f.mode, poly=out)


def radial_multiply(f: ModePolynomial) -> ModePolynomial:
    """|X|^2 f."""
    gens = f.poly.ring.gens[:f.nvars]
    return ModePolynomial(f.nvars, mode=f.mode, poly=f.poly * sum((x * x for x in gens), f.poly.ring.zero))


def derivation_term(alg: HeisenbergAlgebra, mode: FourierMode, f: ModePolynomial) -> ModePolynomial:
    """(j_{Z^alpha} X) . f = sum_i df/dx_i <j_{Z^alpha} X, u_i>."""
    _check_vars(alg, f)
    if mode.dim != alg.dim_z:
        raise DimensionError(f"mode {mode.label()} does not fit {alg.label()}")
    if mode.is_zero():
        return ModePolynomial.zero(f.nvars, f.mode)
    p = f.poly
    forms = _field_forms(alg, mode.alpha, f.is_exact)
    out = p.ring.zero
    for x, form in zip(p.ring.gens, forms):
        if form:
            out += form * p.diff(x)
    return ModePolynomial(f.nvars, mode=f.mode, poly=out)


def fiber_apply(op: FiberOperator, f: ModePolynomial) -> ModePolynomial:
    _check_vars(op.algebra, f)
    if f.mode is not None and f.mode != op.mode:
        raise ModeMismatchError(
            f"polynomial lives on mode {f.mode.label()}, operator on {op.mode.label()}",
            polynomial=f.mode.alpha,
            operator=op.mode.alpha,
        )
    f = ModePolynomial(f.nvars, mode=op.mode, poly=f.poly)
    result = laplacian(f)
    if op.mode.is_zero():
        return result
    result = result + derivation_term(op.algebra, op.mode, f) * TWO_PI_I
    potential = f + radial_multiply(f) * op.coeff_c
    return result + potential * minus_four_pi_squared(op.mode.norm2)
