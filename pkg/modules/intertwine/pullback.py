from __future__ import annotations

import logging

from sympy.polys.rings import PolyElement

from modules.compalg.scalars import all_exact
from modules.errors import DimensionError
from modules.intertwine.sigma import SigmaMap
from modules.spectral.coefficients import to_domain
from modules.spectral.polynomial import ModePolynomial, inexact, poly_ring

log = logging.getLogger(__name__)


def _pullback_permutation(rows, f: ModePolynomial) -> ModePolynomial:
    # x_i -> sign_i * x_{col_i}: each monomial maps to one monomial.
    p = f.poly
    out = {}
    for monom, coeff in p.items():
        new = [0] * f.nvars + [monom[-1]]
        sign = 1
        for i, e in enumerate(monom[:-1]):
            if e:
                col, s = rows[i]
                new[col] += e
                if s < 0 and e % 2:
                    sign = -sign
        out[tuple(new)] = coeff if sign > 0 else -coeff
    return ModePolynomial(f.nvars, mode=f.mode, poly=p.ring.from_dict(out))


def _pullback_general(sig: SigmaMap, f: ModePolynomial) -> ModePolynomial:
    n = f.nvars
    exact = f.is_exact and all_exact(sig.matrix.flat)
    p = f.poly if exact else inexact(f.poly, n)
    r = poly_ring(n, exact)
    unit = [tuple(1 if k == j else 0 for k in range(n + 1)) for j in range(n)]
    forms = [
        r.from_dict({unit[j]: to_domain(x, exact) for j, x in enumerate(sig.matrix[i]) if x != 0})
        for i in range(n)
    ]
    return ModePolynomial(n, mode=f.mode, poly=p.compose(list(zip(r.gens[:n], forms))))


def pullback(sig: SigmaMap, f: ModePolynomial) -> ModePolynomial:
    """f o sigma, i.e. every x_i replaced by (sigma X)_i."""
    if f.nvars != sig.dim_v:
        raise DimensionError(
            f"polynomial has {f.nvars} variables, sigma acts on {sig.dim_v}",
            nvars=f.nvars,
            dim_v=sig.dim_v,
        )
    rows = sig.signed_permutation
    if rows is not None:
        return _pullback_permutation(rows, f)
    log.debug("general pullback of %d terms", len(f.poly))
    return _pullback_general(sig, f)
