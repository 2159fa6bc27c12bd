"""Exact check that sigma^* intertwines the fiber Laplacians.

With sigma j^(p,q) = j^(p+q,0) sigma, the chain rule gives

    sigma^* o L_dst = L_src o sigma^*

for the fiber operators L of the same mode, sigma^* f = f o sigma. The check
applies both sides to every monomial up to a given degree and records the
largest surviving coefficient.

When sigma is a signed permutation (every canonical mode e_k) both sides are
integer sparse matrices between monomial blocks, one per operator piece, and
the whole sweep is a handful of sparse sums. Other sigma go monomial by
monomial through the polynomial ring.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

import config
from modules.compalg.scalars import Scalar, as_vector, integer_scaling, is_exact
from modules.errors import InvalidPairError, InvalidParametersError, ModeMismatchError, ResourceError
from modules.heisalg.algebra import HeisenbergAlgebra
from modules.intertwine.pullback import pullback
from modules.intertwine.sigma import SigmaMap
from modules.spectral.blocks import (
    BlockImages,
    block_size,
    derivation_block,
    laplacian_block,
    pullback_block,
    radial_block,
)
from modules.spectral.fiber import FiberOperator, fiber_apply
from modules.spectral.polynomial import FourierMode, ModePolynomial, monomials_up_to

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeResidual:
    degree: int
    monomials: int
    max_residual: float
    nonzero: int

    def to_dict(self) -> Dict:
        return {
            "degree": self.degree,
            "monomials": self.monomials,
            "max_residual": self.max_residual,
            "nonzero": self.nonzero,
        }


@dataclass(frozen=True)
class SymbolicResidualReport:
    source: Dict
    target: Dict
    alpha: tuple
    coeff_c: str
    max_degree: int
    exact: bool
    tolerance: float
    per_degree: List[DegreeResidual] = field(default_factory=list)
    method: str = "monomial"

    @property
    def max_residual(self) -> float:
        return max((r.max_residual for r in self.per_degree), default=0.0)

    @property
    def monomials(self) -> int:
        return sum(r.monomials for r in self.per_degree)

    @property
    def ok(self) -> bool:
        if self.exact:
            return all(r.nonzero == 0 for r in self.per_degree)
        return self.max_residual <= self.tolerance

    def to_dict(self) -> Dict:
        return {
            "source": self.source,
            "target": self.target,
            "alpha": list(self.alpha),
            "coeff_c": self.coeff_c,
            "max_degree": self.max_degree,
            "exact": self.exact,
            "tolerance": self.tolerance,
            "method": self.method,
            "monomials": self.monomials,
            "max_residual": self.max_residual,
            "ok": self.ok,
            "per_degree": [r.to_dict() for r in self.per_degree],
        }


# -------------------------
# Mode of a sigma
# -------------------------

def _parallel(z_dir, alpha) -> bool:
    z = as_vector(z_dir)
    a = as_vector(alpha)
    z_zero = all(x == 0 for x in z)
    a_zero = all(x == 0 for x in a)
    if z_zero or a_zero:
        return z_zero and a_zero
    tol = config.TOL_MATRIX
    for i in range(len(z)):
        for k in range(i + 1, len(z)):
            cross = z[i] * a[k] - z[k] * a[i]
            if cross != 0 and abs(float(cross)) > tol:
                return False
    return True


def lattice_direction(z_dir, max_denominator: int = config.LATTICE_DENOMINATOR) -> Tuple[int, ...]:
    """Integral z_dir as given; anything else as the primitive lattice point along it.

    Float entries are read back as the nearest fractions with bounded
    denominators, so (0.6, 0.8, 0) gives (3, 4, 0).
    """
    z = as_vector(z_dir)
    if all(is_exact(x) and Fraction(x).denominator == 1 for x in z):
        return tuple(int(x) for x in z)
    fracs = [Fraction(x) if is_exact(x) else Fraction(x).limit_denominator(max_denominator) for x in z]
    w, _ = integer_scaling(fracs)
    ints = [int(x) for x in w]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _mode_for(sig: SigmaMap, mode: Optional[FourierMode]) -> FourierMode:
    if mode is None:
        mode = FourierMode(lattice_direction(sig.z_dir))
    if mode.dim != len(sig.z_dir) or not _parallel(sig.z_dir, mode.alpha):
        raise ModeMismatchError(
            f"sigma was built along {list(map(str, sig.z_dir))}, not along mode {mode.label()}",
            z_dir=sig.z_dir,
            alpha=mode.alpha,
        )
    return mode


# -------------------------
# Monomial by monomial
# -------------------------

def residual_for(sig: SigmaMap, src_op: FiberOperator, dst_op: FiberOperator, f: ModePolynomial) -> ModePolynomial:
    """sigma^*(L_dst f) - L_src(sigma^* f)."""
    return pullback(sig, fiber_apply(dst_op, f)) - fiber_apply(src_op, pullback(sig, f))


def _sweep_monomials(sig: SigmaMap, src_op: FiberOperator, dst_op: FiberOperator, d: int) -> List[DegreeResidual]:
    buckets: Dict[int, List] = {}
    for exps in monomials_up_to(src_op.dim_v, d):
        deg = sum(exps)
        f = ModePolynomial.monomial(exps, 1, src_op.mode)
        diff = residual_for(sig, src_op, dst_op, f)
        bucket = buckets.setdefault(deg, [0, 0.0, 0])
        bucket[0] += 1
        if not diff.is_zero():
            bucket[1] = max(bucket[1], diff.max_abs_coeff())
            bucket[2] += 1
    return [DegreeResidual(deg, n, worst, bad) for deg, (n, worst, bad) in sorted(buckets.items())]


# -------------------------
# Whole blocks at once (signed permutation sigma)
# -------------------------

def _piece_residual(
    rows: Tuple[Tuple[int, int], ...],
    dst_images: BlockImages,
    src_images: BlockImages,
    count: int,
) -> sparse.csc_matrix:
    """sigma^* P_dst - P_src sigma^* on one block, columns indexed by input rank."""
    k, t = dst_images.degree, dst_images.target_degree
    perm_t, sign_t = pullback_block(rows, t)
    perm_k, sign_k = pullback_block(rows, k)
    inverse_k = np.empty_like(perm_k)
    inverse_k[perm_k] = np.arange(len(perm_k))

    src_cols = inverse_k[src_images.cols]
    data = np.concatenate([
        dst_images.data * sign_t[dst_images.rows],
        -src_images.data * sign_k[src_cols],
    ])
    row_idx = np.concatenate([perm_t[dst_images.rows], src_images.rows])
    col_idx = np.concatenate([dst_images.cols, src_cols])
    residual = sparse.coo_matrix((data, (row_idx, col_idx)), shape=(block_size(len(rows), t), count)).tocsc()
    residual.eliminate_zeros()
    return residual


def _column_stats(residual: sparse.csc_matrix, count: int) -> Tuple[np.ndarray, np.ndarray]:
    if residual.nnz == 0:
        return np.zeros(count, dtype=bool), np.zeros(count)
    touched = np.diff(residual.indptr) > 0
    worst = np.asarray(abs(residual).max(axis=0).todense(), dtype=np.float64).ravel()
    return touched, worst


def _sweep_blocks(sig: SigmaMap, src_op: FiberOperator, dst_op: FiberOperator, d: int) -> List[DegreeResidual]:
    rows = tuple(sig.signed_permutation)
    n = src_op.dim_v
    alpha = src_op.mode.alpha
    weights = {
        "laplacian": 1.0,
        "derivation": 2 * math.pi,
        "radial": 4 * math.pi ** 2 * src_op.mode.norm2 * abs(float(src_op.coeff_c)),
    }
    per_degree = []
    for k in range(d + 1):
        count = block_size(n, k)
        pieces = [("laplacian", laplacian_block(n, k), laplacian_block(n, k))]
        if not src_op.mode.is_zero():
            pieces.append(("derivation", derivation_block(dst_op.algebra, alpha, k), derivation_block(src_op.algebra, alpha, k)))
            pieces.append(("radial", radial_block(n, k), radial_block(n, k)))
        # the identity part of L cancels: sigma^* f - sigma^* f
        touched = np.zeros(count, dtype=bool)
        worst = np.zeros(count)
        for name, dst_images, src_images in pieces:
            if dst_images.size == 0 and src_images.size == 0:
                continue
            part_touched, part_worst = _column_stats(_piece_residual(rows, dst_images, src_images, count), count)
            touched |= part_touched
            worst = np.maximum(worst, part_worst * weights[name])
        per_degree.append(DegreeResidual(k, count, float(worst.max(initial=0.0)), int(touched.sum())))
    return per_degree


def intertwine_residual_sym(
    src: HeisenbergAlgebra,
    dst: HeisenbergAlgebra,
    sig: SigmaMap,
    d: int,
    coeff_c: Optional[Scalar] = None,
    mode: Optional[FourierMode] = None,
    cap: int = config.MONOMIAL_CAP,
    method: Optional[str] = None,
) -> SymbolicResidualReport:
    """Residual sweep over every monomial of degree <= d.

    method is "blocks" (signed permutation sigma only), "monomial", or None to
    take blocks whenever sigma allows it.
    """
    if d < 0:
        raise InvalidParametersError(f"degree must be >= 0, got {d}", degree=d)
    count = math.comb(src.dim_v + d, d)
    if count > cap:
        raise ResourceError(f"{count} monomials up to degree {d} exceed the cap of {cap}", count=count, cap=cap)
    if src != sig.source or dst != sig.target:
        raise InvalidPairError(
            f"sigma maps {sig.source.label()} -> {sig.target.label()}, "
            f"got {src.label()} -> {dst.label()}"
        )
    mode = _mode_for(sig, mode)
    if mode.dim != src.dim_z:
        raise ModeMismatchError(f"sigma direction does not fit {src.label()}")

    src_op = FiberOperator(src, mode, coeff_c)
    dst_op = FiberOperator(dst, mode, coeff_c)
    c = src_op.coeff_c
    exact = sig.is_exact and is_exact(c)
    tolerance = config.TOL_MATRIX * (1 + 4 * math.pi ** 2 * mode.norm2 * (1 + float(c)))
    started = time.perf_counter()

    if method is None:
        method = "monomial" if sig.signed_permutation is None else "blocks"
    if method == "blocks":
        if sig.signed_permutation is None:
            raise InvalidParametersError("block sweep needs a signed permutation sigma", method=method)
        per_degree = _sweep_blocks(sig, src_op, dst_op, d)
    elif method == "monomial":
        per_degree = _sweep_monomials(sig, src_op, dst_op, d)
    else:
        raise InvalidParametersError(f"unknown sweep method '{method}'", method=method)

    report = SymbolicResidualReport(
        source=src.to_dict(),
        target=dst.to_dict(),
        alpha=mode.alpha,
        coeff_c=str(c),
        max_degree=d,
        exact=exact,
        tolerance=tolerance,
        per_degree=per_degree,
        method=method,
    )
    log.info(
        "symbolic intertwining %s -> %s alpha=%s d=%d (%s): %d monomials, max residual %.3g (%.2fs)",
        src.label(),
        dst.label(),
        mode.label(),
        d,
        method,
        report.monomials,
        report.max_residual,
        time.perf_counter() - started,
    )
    return report
