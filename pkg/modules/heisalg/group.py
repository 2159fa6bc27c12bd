"""Group law of N(p, q) in exponential coordinates.

The group is 2-step nilpotent, so the Campbell-Baker-Hausdorff series stops
after the first bracket: exp(X+Z) exp(X'+Z') = exp(X+X' + Z+Z' + [X,X']/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

from modules.compalg.scalars import Vector, as_vector, format_vector
from modules.errors import DimensionError
from modules.heisalg.algebra import HeisenbergAlgebra, bracket

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GroupElement:
    x: Vector
    z: Vector

    def __post_init__(self):
        object.__setattr__(self, "x", as_vector(self.x))
        object.__setattr__(self, "z", as_vector(self.z))

    def to_dict(self) -> Dict:
        return {"x": format_vector(self.x), "z": format_vector(self.z)}


def _check(alg: HeisenbergAlgebra, a: GroupElement) -> None:
    if len(a.x) != alg.dim_v or len(a.z) != alg.dim_z:
        raise DimensionError(
            f"group element of shape ({len(a.x)}, {len(a.z)}) does not belong to {alg.label()}",
            dim_v=alg.dim_v,
            dim_z=alg.dim_z,
        )


def identity_element(alg: HeisenbergAlgebra) -> GroupElement:
    return GroupElement((0,) * alg.dim_v, (0,) * alg.dim_z)


def group_mul(alg: HeisenbergAlgebra, a: GroupElement, b: GroupElement) -> GroupElement:
    _check(alg, a)
    _check(alg, b)
    br = bracket(alg, a.x, b.x)
    x = tuple(u + v for u, v in zip(a.x, b.x))
    z = tuple(u + v + HALF * w for u, v, w in zip(a.z, b.z, br))
    return GroupElement(x, z)


def group_inv(alg: HeisenbergAlgebra, a: GroupElement) -> GroupElement:
    _check(alg, a)
    return GroupElement(tuple(-u for u in a.x), tuple(-u for u in a.z))


def group_commutator(alg: HeisenbergAlgebra, a: GroupElement, b: GroupElement) -> GroupElement:
    """a b a^-1 b^-1, which is (0, [X_a, X_b]) in a 2-step group."""
    ab = group_mul(alg, a, b)
    return group_mul(alg, group_mul(alg, ab, group_inv(alg, a)), group_inv(alg, b))

