from __future__ import annotations

import math
import random
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

Scalar = Union[Fraction, float]
Vector = Tuple[Scalar, ...]


def as_scalar(x) -> Scalar:
    """Integers and rationals become Fractions, floats stay floats."""
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


def as_vector(values: Iterable) -> Vector:
    return tuple(as_scalar(v) for v in values)


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def all_exact(values: Iterable) -> bool:
    return all(is_exact(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Scalar:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def exact_sqrt(q: Fraction) -> Optional[Fraction]:
    """Square root of a non-negative rational when it is rational, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt_scalar(x: Scalar) -> Scalar:
    if is_exact(x):
        root = exact_sqrt(x)
        if root is not None:
            return root
    return math.sqrt(float(x))


# -------------------------
# Matrices (object arrays hold Fractions, float64 otherwise)
# -------------------------

def zeros(rows: int, cols: int, exact: bool = True) -> np.ndarray:
    if exact:
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((rows, cols), dtype=np.float64)


def identity(n: int, exact: bool = True) -> np.ndarray:
    out = zeros(n, n, exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def matrix_is_exact(m: np.ndarray) -> bool:
    return m.dtype == object and all(is_exact(x) for x in m.flat)


def is_zero_matrix(m: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(m).flat)


def frobenius(m: np.ndarray) -> float:
    arr = np.asarray(m)
    if arr.dtype == object:
        return math.sqrt(sum(float(abs(x)) ** 2 for x in arr.flat))
    return float(np.linalg.norm(arr))


def max_abs(m: np.ndarray) -> float:
    arr = np.asarray(m)
    if arr.size == 0:
        return 0.0
    if arr.dtype == object:
        return max(float(abs(x)) for x in arr.flat)
    return float(np.max(np.abs(arr)))


def to_float_matrix(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=np.float64)


# -------------------------
# Integer scaling (exact work happens on integer arrays)
# -------------------------

INT64_SAFE = 1 << 20


def integer_array(values: Iterable[int]) -> np.ndarray:
    """int64 when entries are small enough for products of sums to stay exact, Python ints otherwise."""
    ints = [int(v) for v in values]
    if all(abs(v) < INT64_SAFE for v in ints):
        return np.array(ints, dtype=np.int64)
    return np.array(ints, dtype=object)


def integer_scaling(values: Iterable) -> Tuple[np.ndarray, int]:
    """(w, den) with values == w / den and w integral. Exact inputs only."""
    fracs = [Fraction(v) for v in values]
    den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    return integer_array(f.numerator * (den // f.denominator) for f in fracs), den


def fraction_matrix(m: np.ndarray, den: int = 1) -> np.ndarray:
    m = np.asarray(m)
    return np.array([Fraction(int(x), den) for x in m.flat], dtype=object).reshape(m.shape)


def fraction_vector(v: Iterable, den: int = 1) -> Vector:
    return tuple(Fraction(int(x), den) for x in v)


# -------------------------
# Seeded samples
# -------------------------

def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_rational_vector(rng: random.Random, n: int, bound: int = 9) -> Vector:
    return tuple(random_rational(rng, bound) for _ in range(n))


def random_integer_vector(rng: random.Random, n: int, bound: int = 9) -> Vector:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))


def standard_basis(n: int, k: int) -> Vector:
    return tuple(Fraction(1) if i == k else Fraction(0) for i in range(n))


def format_vector(v: Sequence) -> List:
    """JSON-friendly rendering: exact values as "p/q" strings, floats as floats."""
    out = []
    for x in v:
        if is_exact(x):
            x = Fraction(x)
            out.append(str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}")
        else:
            out.append(float(x))
    return out
