"""Numerical cross-check of fiber_apply.

Delta_v is replaced by axis-wise second central differences and the
derivation term by a central difference along the field X -> J X:

    (f(X + h J X) - f(X - h J X)) / (2h)

The potential term is evaluated exactly. Both error terms are O(h^2); for
cubic f the derivation error is exactly (h^2 / 6) D^3 f[JX, JX, JX], so the
observed order is 2 whenever the mode is nonzero and f has a cubic part.

Below a degree three part everything is exact up to rounding, and rounding
grows like eps |f| / h^2. Deviations under that floor carry no order.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

import config
from modules.compalg.scalars import to_float_matrix
from modules.errors import InvalidParametersError
from modules.spectral.coefficients import domain_to_complex
from modules.spectral.fiber import FiberOperator, fiber_apply
from modules.spectral.polynomial import ModePolynomial

log = logging.getLogger(__name__)

ROUNDING_SAFETY = 64.0


@dataclass(frozen=True)
class FiniteDifferenceReport:
    step: float
    points: int
    deviation: float
    deviation_half: float
    order: Optional[float]
    rounding_floor: float = 0.0

    def to_dict(self) -> Dict:
        return {
            "step": self.step,
            "points": self.points,
            "deviation": self.deviation,
            "deviation_half": self.deviation_half,
            "order": self.order,
            "rounding_floor": self.rounding_floor,
        }


def _sample_points(nvars: int, n_points: int, radius: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(-radius, radius, size=(n_points, nvars))


def fd_apply(op: FiberOperator, f: ModePolynomial, points: np.ndarray, h: float) -> np.ndarray:
    """Finite-difference value of the fiber operator on f at each point."""
    n = op.dim_v
    values = f.evaluate_many(points)
    lap = np.zeros(len(points), dtype=np.complex128)
    for i in range(n):
        shift = np.zeros(n)
        shift[i] = h
        lap += (f.evaluate_many(points + shift) - 2 * values + f.evaluate_many(points - shift)) / (h * h)
    if op.mode.is_zero():
        return lap

    field = points @ to_float_matrix(op.j()).T
    deriv = (f.evaluate_many(points + h * field) - f.evaluate_many(points - h * field)) / (2 * h)
    radial = np.sum(points * points, axis=1)
    potential = -4 * math.pi ** 2 * op.mode.norm2 * (1 + float(op.coeff_c) * radial)
    return lap + 2j * math.pi * deriv + potential * values


def deviation_at(op: FiberOperator, f: ModePolynomial, points: np.ndarray, h: float) -> float:
    exact = fiber_apply(op, f).evaluate_many(points)
    return float(np.max(np.abs(exact - fd_apply(op, f, points, h))))


def magnitude(f: ModePolynomial, points: np.ndarray, reach: float = 0.0) -> float:
    """max over points of sum |c| |x|^E, with every |x_i| widened by reach."""
    widened = np.abs(np.asarray(points, dtype=np.float64)) + reach
    total = np.zeros(widened.shape[0])
    for monom, c in f.poly.items():
        weight = abs(domain_to_complex(c)) * math.pi ** monom[-1]
        total += weight * np.prod(widened ** np.asarray(monom[:-1]), axis=1)
    return float(total.max(initial=0.0))


def rounding_floor(op: FiberOperator, f: ModePolynomial, points: np.ndarray, h: float) -> float:
    """Deviation that rounding alone can produce at step h."""
    reach = h * (1.0 + math.sqrt(op.mode.norm2))
    scale = max(magnitude(f, points, reach), 1.0)
    return ROUNDING_SAFETY * op.dim_v * np.finfo(np.float64).eps * scale / (h * h)


def finite_difference_consistency(
    op: FiberOperator,
    f: ModePolynomial,
    h: float = 1e-2,
    n_points: int = 20,
    radius: float = 0.5,
    seed: int = config.DEFAULT_SEED,
) -> FiniteDifferenceReport:
    """Deviation at h and h/2; order = log2 of their ratio.

    The order is None unless both deviations clear the rounding floor of
    their step and halving the step shrinks the deviation.
    """
    if h <= 0:
        raise InvalidParametersError(f"grid step must be positive, got {h}", h=h)
    points = _sample_points(op.dim_v, n_points, radius, seed)
    dev = deviation_at(op, f, points, h)
    dev_half = deviation_at(op, f, points, h / 2)
    floor = rounding_floor(op, f, points, h)
    floor_half = rounding_floor(op, f, points, h / 2)
    order = None
    if dev > floor and dev_half > floor_half and dev_half < dev:
        order = math.log2(dev / dev_half)
    log.debug(
        "finite differences on %s: h=%g dev=%.3g dev(h/2)=%.3g floor=%.3g order=%s",
        op.label(), h, dev, dev_half, floor, order,
    )
    return FiniteDifferenceReport(h, n_points, dev, dev_half, order, floor)
