from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import eigsh

import config
from modules.errors import DimensionError, InvalidParametersError
from modules.spectral.hermite import HermiteTruncation

log = logging.getLogger(__name__)


def extreme(values: np.ndarray, k: int) -> np.ndarray:
    """The ceil(k/2) smallest and floor(k/2) largest entries of a sorted array."""
    if k >= len(values):
        return values
    lo = math.ceil(k / 2)
    hi = k - lo
    return np.concatenate([values[:lo], values[len(values) - hi:]])


def eigenvalues(
    trunc: HermiteTruncation,
    k: Optional[int] = None,
    tol: float = config.EIGEN_TOL,
    dense_limit: int = config.DENSE_EIGEN_LIMIT,
) -> np.ndarray:
    """Sorted real eigenvalues; the k extreme ones when k is given."""
    if k is not None and k < 1:
        raise InvalidParametersError(f"eigenvalue count must be >= 1, got {k}", k=k)
    n = trunc.size
    iterative = n > dense_limit and k is not None and k < n - 1
    if not iterative:
        values = np.sort(linalg.eigvalsh(trunc.dense()))
        return values if k is None else extreme(values, k)

    lo = math.ceil(k / 2)
    hi = k - lo
    parts = [eigsh(trunc.matrix, k=lo, which="SA", tol=tol, return_eigenvectors=False)]
    if hi:
        parts.append(eigsh(trunc.matrix, k=hi, which="LA", tol=tol, return_eigenvectors=False))
    log.debug("iterative eigensolve on %d x %d (k=%d)", n, n, k)
    return np.sort(np.concatenate(parts).real)


@dataclass(frozen=True, eq=False)
class SpectrumComparison:
    label_a: str
    label_b: str
    size: int
    k: Optional[int]
    values_a: np.ndarray
    values_b: np.ndarray
    max_diff: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.max_diff <= self.tolerance

    def to_dict(self) -> Dict:
        return {
            "a": self.label_a,
            "b": self.label_b,
            "size": self.size,
            "k": self.k,
            "max_diff": self.max_diff,
            "tolerance": self.tolerance,
            "ok": self.ok,
        }


def compare_spectra(
    a: HermiteTruncation,
    b: HermiteTruncation,
    k: Optional[int] = 20,
    tol: float = config.TOL_SPECTRUM,
) -> SpectrumComparison:
    if a.size != b.size:
        raise DimensionError(f"truncations have sizes {a.size} and {b.size}", left=a.size, right=b.size)
    va = eigenvalues(a, k)
    vb = eigenvalues(b, k)
    diff = float(np.max(np.abs(va - vb))) if len(va) else 0.0
    log.info("spectra %s vs %s: max diff %.3g over %d values", a.label, b.label, diff, len(va))
    return SpectrumComparison(a.label, b.label, a.size, k, va, vb, diff, tol)


def spectrum_rows(trunc: HermiteTruncation, values: np.ndarray, meta: Dict) -> List[Dict]:
    """One row per eigenvalue, in index order."""
    return [dict(meta, degree=trunc.max_total_degree, index=i, eigenvalue=float(v)) for i, v in enumerate(values)]
