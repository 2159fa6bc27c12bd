"""Structural checks on n(p, q): Heisenberg type, polarization and the
Clifford volume element that separates n_{p,q} from n_{p',q'}."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

import numpy as np

import config
from modules.compalg.composition import CompositionElement, mul, structure_table
from modules.compalg.scalars import fraction_matrix, integer_scaling, random_rational_vector
from modules.heisalg.algebra import (
    HeisenbergAlgebra,
    bracket_integer,
    center_basis,
    j_basis_stack,
    j_integer,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckReport:
    name: str
    algebra: Dict
    max_residual: float
    exact: bool
    samples: int
    tolerance: float
    details: Dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        if self.exact:
            return self.max_residual == 0
        return self.max_residual <= self.tolerance

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "algebra": self.algebra,
            "max_residual": self.max_residual,
            "exact": self.exact,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "ok": self.ok,
            "details": self.details,
        }


def _sample_centers(alg: HeisenbergAlgebra, samples: int, seed: int) -> List[tuple]:
    rng = random.Random(seed)
    return center_basis(alg) + [random_rational_vector(rng, alg.dim_z) for _ in range(samples)]


def _int_dot(a, b) -> int:
    # triple products can leave int64
    return sum(int(x) * int(y) for x, y in zip(a, b))


def _scaled_max(residual: np.ndarray, den: int) -> float:
    """Largest |entry| of an integral residual, divided back by its scale."""
    if residual.size == 0:
        return 0.0
    top = int(np.max(np.abs(residual)))
    return float(Fraction(top, den)) if top else 0.0


def check_heisenberg_type(
    alg: HeisenbergAlgebra,
    samples: int = config.RANDOM_SAMPLES,
    seed: int = config.DEFAULT_SEED,
) -> CheckReport:
    """Max residual of j_Z^2 + |Z|^2 Id over the center basis and random rational Z.

    Z = w / den with w integral, so the identity is checked as
    j_w^2 + |w|^2 Id = 0 on integer matrices.
    """
    eye = np.eye(alg.dim_v, dtype=np.int64)
    worst = 0.0
    for z in _sample_centers(alg, samples, seed):
        w, den = integer_scaling(z)
        jw = j_integer(alg, w)
        residual = jw @ jw + int(w @ w) * eye
        worst = max(worst, _scaled_max(residual, den * den))
    log.info("heisenberg type %s: residual %.3g", alg.label(), worst)
    return CheckReport(
        name="heisenberg_type",
        algebra=alg.to_dict(),
        max_residual=worst,
        exact=True,
        samples=alg.dim_z + samples,
        tolerance=0.0,
    )


def check_skew(alg: HeisenbergAlgebra, samples: int = config.RANDOM_SAMPLES, seed: int = config.DEFAULT_SEED) -> CheckReport:
    worst = 0.0
    for z in _sample_centers(alg, samples, seed):
        w, den = integer_scaling(z)
        jw = j_integer(alg, w)
        worst = max(worst, _scaled_max(jw + jw.T, den))
    return CheckReport("skew_symmetry", alg.to_dict(), worst, True, alg.dim_z + samples, 0.0)


def check_anticommutation(
    alg: HeisenbergAlgebra,
    samples: int = config.RANDOM_SAMPLES,
    seed: int = config.DEFAULT_SEED,
) -> CheckReport:
    """Polarized Heisenberg identity: j_a j_b + j_b j_a + 2<a,b> Id = 0."""
    rng = random.Random(seed + 1)
    eye = np.eye(alg.dim_v, dtype=np.int64)
    worst = 0.0
    pairs = [(a, b) for a in center_basis(alg) for b in center_basis(alg)]
    pairs += [
        (random_rational_vector(rng, alg.dim_z), random_rational_vector(rng, alg.dim_z))
        for _ in range(samples)
    ]
    for a, b in pairs:
        wa, da = integer_scaling(a)
        wb, db = integer_scaling(b)
        ja, jb = j_integer(alg, wa), j_integer(alg, wb)
        residual = ja @ jb + jb @ ja + 2 * int(wa @ wb) * eye
        worst = max(worst, _scaled_max(residual, da * db))
    return CheckReport("anticommutation", alg.to_dict(), worst, True, len(pairs), 0.0)


# -------------------------
# Clifford volume element
# -------------------------

def _volume_integer(alg: HeisenbergAlgebra) -> np.ndarray:
    omega = np.eye(alg.dim_v, dtype=np.int64)
    for jk in j_basis_stack(alg):
        omega = omega @ jk
    return omega


def volume_element(alg: HeisenbergAlgebra) -> np.ndarray:
    """Ordered product j_{e_1} j_{e_2} ... j_{e_m} over the center basis."""
    return fraction_matrix(_volume_integer(alg))


def isotypic_signature(alg: HeisenbergAlgebra) -> int:
    """trace(omega) / dim A, which equals +-(p - q) for this family."""
    return int(np.trace(_volume_integer(alg))) // alg.dim_a


def is_isotypic(alg: HeisenbergAlgebra) -> bool:
    return abs(isotypic_signature(alg)) == alg.slots


def check_volume_element(alg: HeisenbergAlgebra) -> CheckReport:
    omega = _volume_integer(alg)
    worst = _scaled_max(omega @ omega - np.eye(alg.dim_v, dtype=np.int64), 1)
    signature = isotypic_signature(alg)
    return CheckReport(
        name="volume_element",
        algebra=alg.to_dict(),
        max_residual=worst,
        exact=True,
        samples=1,
        tolerance=0.0,
        details={"signature": signature, "isotypic": abs(signature) == alg.slots},
    )


# -------------------------
# Composition law and bracket duality
# -------------------------

def _table_defect(dim: int) -> int:
    """Violations of the basis table: rows and columns must be signed
    permutations, e_a^2 = -1 and e_a e_b = -e_b e_a for distinct pure units."""
    table = structure_table(dim)
    bad = 0
    for a in range(dim):
        bad += len({table[(a, b)][1] for b in range(dim)}) != dim
        bad += len({table[(b, a)][1] for b in range(dim)}) != dim
    for a in range(1, dim):
        bad += table[(a, a)] != (-1, 0)
        for b in range(a + 1, dim):
            sign, c = table[(a, b)]
            bad += table[(b, a)] != (-sign, c)
    return bad


def check_composition(dim: int, samples: int = config.RANDOM_SAMPLES, seed: int = config.DEFAULT_SEED) -> CheckReport:
    """|ab|^2 = |a|^2 |b|^2, left alternativity and conj(ab) = conj(b) conj(a).

    Basis pairs are read from the structure table, random rational pairs go
    through the Cayley-Dickson product.
    """
    rng = random.Random(seed + 2)
    worst = Fraction(_table_defect(dim))
    pairs = [
        (CompositionElement(random_rational_vector(rng, dim)), CompositionElement(random_rational_vector(rng, dim)))
        for _ in range(samples)
    ]
    for a, b in pairs:
        ab = mul(a, b)
        worst = max(worst, abs(ab.norm2() - a.norm2() * b.norm2()))
        alt = mul(mul(a, a), b) - mul(a, ab)
        flip = ab.conj() - mul(b.conj(), a.conj())
        worst = max([worst] + [abs(x) for x in alt.coords + flip.coords])
    kind = CompositionElement.zero(dim).kind
    return CheckReport("composition_law", {"kind": kind}, float(worst), True, dim * dim + len(pairs), 0.0)


def check_bracket(alg: HeisenbergAlgebra, samples: int = config.RANDOM_SAMPLES, seed: int = config.DEFAULT_SEED) -> CheckReport:
    """<[X,Y], Z> = <j_Z X, Y> and [X,Y] = -[Y,X] on random rational triples.

    X, Y and Z are scaled to integral u, t and w, and both identities are
    compared on integers.
    """
    rng = random.Random(seed + 3)
    worst = 0.0
    for _ in range(samples):
        u, dx = integer_scaling(random_rational_vector(rng, alg.dim_v))
        t, dy = integer_scaling(random_rational_vector(rng, alg.dim_v))
        w, dz = integer_scaling(random_rational_vector(rng, alg.dim_z))
        ut = bracket_integer(alg, u, t)
        duality = _int_dot(ut, w) - _int_dot(j_integer(alg, w) @ u, t)
        if duality:
            worst = max(worst, float(Fraction(abs(duality), dx * dy * dz)))
        worst = max(worst, _scaled_max(ut + bracket_integer(alg, t, u), dx * dy))
    return CheckReport("bracket_duality", alg.to_dict(), worst, True, samples, 0.0)
