"""Quaternion and octonion arithmetic by Cayley-Dickson doubling.

Convention (applied twice, starting from the complex numbers):

    (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))

Coordinates are stored real part first. Exact elements hold Fractions,
floating elements hold floats; both go through the same code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Dict, Sequence, Tuple

from modules.compalg.scalars import Scalar, Vector, as_vector, is_exact
from modules.errors import DimensionError

QUATERNION_DIM = 4
OCTONION_DIM = 8
SUPPORTED_DIMS = (QUATERNION_DIM, OCTONION_DIM)

KIND_BY_DIM = {QUATERNION_DIM: "quaternion", OCTONION_DIM: "octonion"}


# -------------------------
# Tuple-level Cayley-Dickson recursion
# -------------------------

def _t_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _t_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _t_conj(a: Vector) -> Vector:
    return (a[0],) + tuple(-x for x in a[1:])


def _cd_mul(a: Vector, b: Vector) -> Vector:
    n = len(a)
    if n == 1:
        return (a[0] * b[0],)
    h = n // 2
    a1, a2 = a[:h], a[h:]
    c, d = b[:h], b[h:]
    left = _t_sub(_cd_mul(a1, c), _cd_mul(_t_conj(d), a2))
    right = _t_add(_cd_mul(d, a1), _cd_mul(a2, _t_conj(c)))
    return left + right


@dataclass(frozen=True)
class CompositionElement:
    coords: Vector

    def __post_init__(self):
        coords = as_vector(self.coords)
        if len(coords) not in SUPPORTED_DIMS:
            raise DimensionError(
                f"composition algebra dimension must be one of {SUPPORTED_DIMS}, got {len(coords)}",
                dim=len(coords),
            )
        object.__setattr__(self, "coords", coords)

    # ---------- constructors ----------

    @classmethod
    def zero(cls, dim: int) -> "CompositionElement":
        return cls((Fraction(0),) * dim)

    @classmethod
    def one(cls, dim: int) -> "CompositionElement":
        return cls.basis(dim, 0)

    @classmethod
    def basis(cls, dim: int, k: int) -> "CompositionElement":
        return cls(tuple(Fraction(1) if i == k else Fraction(0) for i in range(dim)))

    # ---------- properties ----------

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def kind(self) -> str:
        return KIND_BY_DIM[self.dim]

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in self.coords)

    # ---------- arithmetic ----------

    def _check(self, other: "CompositionElement") -> None:
        if other.dim != self.dim:
            raise DimensionError(
                f"cannot combine a {self.kind} with a {other.kind}",
                left=self.dim,
                right=other.dim,
            )

    def __add__(self, other: "CompositionElement") -> "CompositionElement":
        self._check(other)
        return CompositionElement(_t_add(self.coords, other.coords))

    def __sub__(self, other: "CompositionElement") -> "CompositionElement":
        self._check(other)
        return CompositionElement(_t_sub(self.coords, other.coords))

    def __neg__(self) -> "CompositionElement":
        return CompositionElement(tuple(-x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, CompositionElement):
            return mul(self, other)
        if isinstance(other, Number):
            return CompositionElement(tuple(other * x for x in self.coords))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return CompositionElement(tuple(other * x for x in self.coords))
        return NotImplemented

    def conj(self) -> "CompositionElement":
        return CompositionElement(_t_conj(self.coords))

    def re(self) -> Scalar:
        return self.coords[0]

    def norm2(self) -> Scalar:
        return sum((x * x for x in self.coords), Fraction(0))

    def is_pure(self) -> bool:
        return self.coords[0] == 0

    def pure_part(self) -> Vector:
        return self.coords[1:]


# -------------------------
# Public operations
# -------------------------

def mul(a: CompositionElement, b: CompositionElement) -> CompositionElement:
    a._check(b)
    return CompositionElement(_cd_mul(a.coords, b.coords))


def conj(a: CompositionElement) -> CompositionElement:
    return a.conj()


def re(a: CompositionElement) -> Scalar:
    return a.re()


def norm2(a: CompositionElement) -> Scalar:
    return a.norm2()


def is_pure(a: CompositionElement) -> bool:
    return a.is_pure()


def embed_pure(z: Sequence, dim: int = OCTONION_DIM) -> CompositionElement:
    """The embedding of R^(dim-1) onto the pure elements of the algebra."""
    if dim not in SUPPORTED_DIMS:
        raise DimensionError(f"unsupported algebra dimension {dim}", dim=dim)
    if len(z) != dim - 1:
        raise DimensionError(
            f"pure embedding into dimension {dim} needs {dim - 1} coordinates, got {len(z)}",
            expected=dim - 1,
            got=len(z),
        )
    return CompositionElement((Fraction(0),) + tuple(z))


@lru_cache(maxsize=None)
def structure_table(dim: int) -> Dict[Tuple[int, int], Tuple[int, int]]:
    """Map (a, b) -> (sign, c) with e_a * e_b = sign * e_c."""
    table = {}
    for a in range(dim):
        ea = CompositionElement.basis(dim, a)
        for b in range(dim):
            prod = mul(ea, CompositionElement.basis(dim, b)).coords
            c = next(i for i, x in enumerate(prod) if x != 0)
            table[(a, b)] = (int(prod[c]), c)
    return table
