"""The generalized Heisenberg algebras n(p, q) = v + z built from j^(p,q).

v = A^p + A^q (p slots multiplied on the left by the center, q slots on the
right), z = pure part of A. The coordinate basis of v + z is declared
orthonormal, so the inner product g is the Euclidean dot product.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence

import numpy as np

from modules.compalg.composition import KIND_BY_DIM, structure_table
from modules.compalg.scalars import (
    Vector,
    all_exact,
    as_vector,
    dot,
    fraction_matrix,
    fraction_vector,
    integer_scaling,
    standard_basis,
)
from modules.errors import DimensionError, InvalidParametersError

log = logging.getLogger(__name__)

DIM_BY_KIND = {kind: dim for dim, kind in KIND_BY_DIM.items()}


def normalize_kind(name: str) -> str:
    n = (name or "").strip().lower()
    n = n.replace(" ", "").replace("-", "").replace("_", "")

    aliases = {
        "o": "octonion",
        "oct": "octonion",
        "octonions": "octonion",
        "octonion": "octonion",
        "h": "quaternion",
        "q": "quaternion",
        "quat": "quaternion",
        "quaternions": "quaternion",
        "quaternion": "quaternion",
    }
    if n not in aliases:
        raise InvalidParametersError(f"unknown algebra kind '{name}'", kind=name)
    return aliases[n]


@dataclass(frozen=True)
class HeisenbergAlgebra:
    kind: str
    p: int
    q: int

    @property
    def dim_a(self) -> int:
        return DIM_BY_KIND[self.kind]

    @property
    def dim_v(self) -> int:
        return self.dim_a * (self.p + self.q)

    @property
    def dim_z(self) -> int:
        return self.dim_a - 1

    @property
    def dim(self) -> int:
        return self.dim_v + self.dim_z

    @property
    def slots(self) -> int:
        return self.p + self.q

    def slot_side(self, slot: int) -> str:
        """'left' for the first p slots (Z.X), 'right' for the last q (X.Z)."""
        return "left" if slot < self.p else "right"

    def slot_range(self, slot: int) -> range:
        return range(slot * self.dim_a, (slot + 1) * self.dim_a)

    def label(self) -> str:
        return f"{self.kind}({self.p},{self.q})"

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "p": self.p, "q": self.q}

    @classmethod
    def from_dict(cls, data: Dict) -> "HeisenbergAlgebra":
        return build_algebra(data.get("kind"), int(data.get("p", 0)), int(data.get("q", 0)))


def build_algebra(kind: str, p: int, q: int) -> HeisenbergAlgebra:
    kind = normalize_kind(kind)
    if p < 0 or q < 0 or p + q < 1:
        raise InvalidParametersError(
            f"need p >= 0, q >= 0 and p + q >= 1, got p={p}, q={q}", p=p, q=q
        )
    alg = HeisenbergAlgebra(kind, int(p), int(q))
    log.debug("built %s: dim v=%d, dim z=%d", alg.label(), alg.dim_v, alg.dim_z)
    return alg


# -------------------------
# j-map
# -------------------------

def _check_len(vec: Sequence, expected: int, what: str) -> None:
    if len(vec) != expected:
        raise DimensionError(
            f"{what} must have length {expected}, got {len(vec)}", expected=expected, got=len(vec)
        )


@lru_cache(maxsize=None)
def j_basis_stack(alg: HeisenbergAlgebra) -> np.ndarray:
    """J_k = j_{e_k} for every center basis vector, stacked as (dim z, dim v, dim v) int64.

    Each J_k is a signed permutation read off the basis product table: the
    pure unit e_{k+1} multiplies a left slot from the left and a right slot
    from the right.
    """
    table = structure_table(alg.dim_a)
    stack = np.zeros((alg.dim_z, alg.dim_v, alg.dim_v), dtype=np.int64)
    for k in range(alg.dim_z):
        unit = k + 1
        for slot in range(alg.slots):
            base = alg.slot_range(slot).start
            left = alg.slot_side(slot) == "left"
            for b in range(alg.dim_a):
                sign, c = table[(unit, b)] if left else table[(b, unit)]
                stack[k, base + c, base + b] = sign
    stack.setflags(write=False)
    return stack


def j_integer(alg: HeisenbergAlgebra, w: np.ndarray) -> np.ndarray:
    """sum_k w_k J_k for an integral center vector w."""
    return np.tensordot(w, j_basis_stack(alg), axes=1)


def j_matrix(alg: HeisenbergAlgebra, z: Sequence) -> np.ndarray:
    """Matrix of j_Z on v in the standard basis (columns are images of basis vectors).

    Exact Z gives a Fraction matrix, any float entry gives float64.
    """
    _check_len(z, alg.dim_z, "center vector")
    zs = as_vector(z)
    if not all_exact(zs):
        return np.tensordot(np.asarray(zs, dtype=np.float64), j_basis_stack(alg), axes=1)
    w, den = integer_scaling(zs)
    return fraction_matrix(j_integer(alg, w), den)


def center_basis(alg: HeisenbergAlgebra) -> List[Vector]:
    return [standard_basis(alg.dim_z, k) for k in range(alg.dim_z)]


def j_basis_matrices(alg: HeisenbergAlgebra) -> List[np.ndarray]:
    return [fraction_matrix(jk) for jk in j_basis_stack(alg)]


def apply_j(alg: HeisenbergAlgebra, z: Sequence, x: Sequence) -> Vector:
    _check_len(z, alg.dim_z, "center vector")
    _check_len(x, alg.dim_v, "v-vector")
    zs, xs = as_vector(z), as_vector(x)
    if all_exact(zs) and all_exact(xs):
        w, dz = integer_scaling(zs)
        u, dx = integer_scaling(xs)
        return fraction_vector(j_integer(alg, w) @ u, dz * dx)
    jz = j_matrix(alg, zs).astype(np.float64)
    return tuple(float(v) for v in jz @ np.asarray(xs, dtype=np.float64))


def bracket_integer(alg: HeisenbergAlgebra, u: np.ndarray, t: np.ndarray) -> np.ndarray:
    """<J_k u, t> for every k, on integral vectors."""
    return (j_basis_stack(alg) @ u) @ t


def bracket(alg: HeisenbergAlgebra, x: Sequence, y: Sequence) -> Vector:
    """[X, Y] in z, assembled from <[X,Y], e_k> = <j_{e_k} X, Y>."""
    _check_len(x, alg.dim_v, "v-vector")
    _check_len(y, alg.dim_v, "v-vector")
    xs, ys = as_vector(x), as_vector(y)
    if all_exact(xs) and all_exact(ys):
        u, dx = integer_scaling(xs)
        t, dy = integer_scaling(ys)
        return fraction_vector(bracket_integer(alg, u, t), dx * dy)
    stack = j_basis_stack(alg).astype(np.float64)
    out = (stack @ np.asarray(xs, dtype=np.float64)) @ np.asarray(ys, dtype=np.float64)
    return tuple(float(v) for v in out)


def inner(u: Sequence, v: Sequence):
    return dot(as_vector(u), as_vector(v))
