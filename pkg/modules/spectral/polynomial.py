"""Fourier modes and the mode polynomials phi(X) E^alpha(Z).

A ModePolynomial stores only phi, as an element of the sympy polynomial ring
Q(i)[x0, ..., x{n-1}, pi] (CC[...] once a float coefficient enters), tagged
with its mode alpha. pi is a free generator, so exact polynomials compare
exactly. E^alpha(Z) = exp(2 pi i <Z^alpha, Z>) is implicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.polys.domains import CC, QQ_I
from sympy.polys.rings import PolyElement, PolyRing, ring

from modules.errors import DimensionError, InvalidInputError, ModeMismatchError
from modules.spectral.coefficients import (
    PiScalar,
    domain_to_complex,
    float_copy,
    is_exact_ring,
    to_domain,
)

Exponent = Tuple[int, ...]
Terms = Dict[Exponent, PiScalar]


@dataclass(frozen=True)
class FourierMode:
    alpha: Tuple[int, ...]

    def __post_init__(self):
        values = []
        for a in self.alpha:
            if isinstance(a, float) and not a.is_integer():
                raise InvalidInputError(f"mode entries must be integers, got {a}", alpha=self.alpha)
            if isinstance(a, Fraction) and a.denominator != 1:
                raise InvalidInputError(f"mode entries must be integers, got {a}", alpha=self.alpha)
            values.append(int(a))
        object.__setattr__(self, "alpha", tuple(values))

    @classmethod
    def zero(cls, dim_z: int) -> "FourierMode":
        return cls((0,) * dim_z)

    @classmethod
    def basis(cls, dim_z: int, k: int) -> "FourierMode":
        return cls(tuple(1 if i == k else 0 for i in range(dim_z)))

    @classmethod
    def parse(cls, text: str, dim_z: Optional[int] = None) -> "FourierMode":
        """Parse '1,0,0,0,0,0,0'. Lattice points only: floats are rejected."""
        pieces = [p.strip() for p in (text or "").split(",") if p.strip()]
        values = []
        for piece in pieces:
            try:
                values.append(int(piece))
            except ValueError:
                raise InvalidInputError(
                    f"mode entry '{piece}' is not an integer (modes are lattice points)", text=text
                ) from None
        if dim_z is not None and len(values) != dim_z:
            raise InvalidInputError(
                f"mode needs {dim_z} integer entries, got {len(values)}", text=text
            )
        return cls(tuple(values))

    @property
    def dim(self) -> int:
        return len(self.alpha)

    @property
    def norm2(self) -> int:
        return sum(a * a for a in self.alpha)

    def is_zero(self) -> bool:
        return self.norm2 == 0

    def z_vector(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(a) for a in self.alpha)

    def label(self) -> str:
        return ",".join(str(a) for a in self.alpha)


# -------------------------
# Polynomial rings
# -------------------------

@lru_cache(maxsize=None)
def poly_ring(nvars: int, exact: bool = True) -> PolyRing:
    """Q(i)[x0, ..., x{n-1}, pi], or CC[...] when inexact. pi is the last generator."""
    names = ",".join([f"x{i}" for i in range(nvars)] + ["pi"])
    return ring(names, QQ_I if exact else CC)[0]


def inexact(poly: PolyElement, nvars: int) -> PolyElement:
    if is_exact_ring(poly.ring):
        return float_copy(poly, poly_ring(nvars, False))
    return poly


def embed_scalar(value: PiScalar, nvars: int, exact: bool) -> PolyElement:
    """A PiScalar as a constant (in X) of poly_ring(nvars, exact)."""
    zero = (0,) * nvars
    return poly_ring(nvars, exact).from_dict(
        {zero + monom: to_domain(c, exact) for monom, c in value.poly.items()}
    )


def _poly_from_terms(nvars: int, terms: Mapping) -> PolyElement:
    coeffs: Terms = {}
    for exps, value in terms.items():
        exps = tuple(int(e) for e in exps)
        if len(exps) != nvars:
            raise DimensionError(f"exponent {exps} does not have {nvars} entries", nvars=nvars)
        coeffs[exps] = coeffs[exps] + value if exps in coeffs else PiScalar.of(value)
    exact = all(c.is_exact for c in coeffs.values())
    r = poly_ring(nvars, exact)
    data = {}
    for exps, c in coeffs.items():
        for (pi_power,), v in c.poly.items():
            data[exps + (pi_power,)] = to_domain(v, exact)
    return r.from_dict(data)


class ModePolynomial:
    __slots__ = ("nvars", "poly", "mode")

    def __init__(
        self,
        nvars: int,
        terms: Optional[Mapping[Exponent, object]] = None,
        mode: Optional[FourierMode] = None,
        poly: Optional[PolyElement] = None,
    ):
        self.nvars = nvars
        self.mode = mode
        self.poly = poly if poly is not None else _poly_from_terms(nvars, terms or {})

    def _wrap(self, poly: PolyElement, mode: Optional[FourierMode] = None) -> "ModePolynomial":
        return ModePolynomial(self.nvars, mode=mode if mode is not None else self.mode, poly=poly)

    # ---------- constructors ----------

    @classmethod
    def zero(cls, nvars: int, mode: Optional[FourierMode] = None) -> "ModePolynomial":
        return cls(nvars, {}, mode)

    @classmethod
    def constant(cls, nvars: int, value=1, mode: Optional[FourierMode] = None) -> "ModePolynomial":
        return cls(nvars, {(0,) * nvars: value}, mode)

    @classmethod
    def monomial(cls, exps: Sequence[int], value=1, mode: Optional[FourierMode] = None) -> "ModePolynomial":
        return cls(len(exps), {tuple(exps): value}, mode)

    @classmethod
    def variable(cls, nvars: int, i: int, mode: Optional[FourierMode] = None) -> "ModePolynomial":
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for {nvars} variables")
        return cls.monomial(tuple(1 if k == i else 0 for k in range(nvars)), 1, mode)

    @classmethod
    def linear(cls, coeffs: Sequence, mode: Optional[FourierMode] = None) -> "ModePolynomial":
        n = len(coeffs)
        terms = {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(coeffs) if c != 0}
        return cls(n, terms, mode)

    @classmethod
    def radial(cls, nvars: int, mode: Optional[FourierMode] = None) -> "ModePolynomial":
        """|X|^2 = sum of x_i^2."""
        return cls(nvars, {tuple(2 if k == i else 0 for k in range(nvars)): 1 for i in range(nvars)}, mode)

    @classmethod
    def from_terms(cls, nvars: int, items: Iterable[Tuple[Exponent, object]], mode: Optional[FourierMode] = None) -> "ModePolynomial":
        total: Terms = {}
        for exps, coeff in items:
            exps = tuple(exps)
            total[exps] = total[exps] + coeff if exps in total else PiScalar.of(coeff)
        return cls(nvars, total, mode)

    # ---------- arithmetic ----------

    def _check(self, other: "ModePolynomial") -> None:
        if other.nvars != self.nvars:
            raise DimensionError(
                f"polynomials in {self.nvars} and {other.nvars} variables cannot be combined"
            )
        if self.mode is not None and other.mode is not None and self.mode != other.mode:
            raise ModeMismatchError(
                f"mode {self.mode.label()} and mode {other.mode.label()} never mix",
                left=self.mode.alpha,
                right=other.mode.alpha,
            )

    def _common(self, other: "ModePolynomial") -> Tuple[PolyElement, PolyElement]:
        self._check(other)
        a, b = self.poly, other.poly
        if a.ring != b.ring:
            a, b = inexact(a, self.nvars), inexact(b, self.nvars)
        return a, b

    def _mode_with(self, other: "ModePolynomial") -> Optional[FourierMode]:
        return self.mode if self.mode is not None else other.mode

    def __add__(self, other: "ModePolynomial") -> "ModePolynomial":
        a, b = self._common(other)
        return self._wrap(a + b, self._mode_with(other))

    def __neg__(self) -> "ModePolynomial":
        return self._wrap(-self.poly)

    def __sub__(self, other: "ModePolynomial") -> "ModePolynomial":
        a, b = self._common(other)
        return self._wrap(a - b, self._mode_with(other))

    def __mul__(self, other) -> "ModePolynomial":
        if not isinstance(other, ModePolynomial):
            return self.scale(other)
        a, b = self._common(other)
        return self._wrap(a * b, self._mode_with(other))

    def __rmul__(self, other) -> "ModePolynomial":
        return self.scale(other)

    def __pow__(self, k: int) -> "ModePolynomial":
        return self._wrap(self.poly ** k)

    def scale(self, value) -> "ModePolynomial":
        value = PiScalar.of(value)
        exact = self.is_exact and value.is_exact
        p = self.poly if exact else inexact(self.poly, self.nvars)
        return self._wrap(p * embed_scalar(value, self.nvars, exact))

    def derivative(self, i: int) -> "ModePolynomial":
        if not 0 <= i < self.nvars:
            raise DimensionError(f"variable index {i} out of range for {self.nvars} variables")
        return self._wrap(self.poly.diff(self.poly.ring.gens[i]))

    # ---------- inspection ----------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModePolynomial):
            return NotImplemented
        if self.nvars != other.nvars or self.mode != other.mode:
            return False
        a, b = self._common(other)
        return not (a - b)

    __hash__ = None

    def __repr__(self) -> str:
        mode = None if self.mode is None else self.mode.label()
        return f"ModePolynomial({self.nvars}, {self.terms!r}, mode={mode})"

    def is_zero(self) -> bool:
        return not self.poly

    @property
    def terms(self) -> Terms:
        """Exponent tuple -> PiScalar coefficient."""
        grouped: Dict[Exponent, Dict] = {}
        for monom, c in self.poly.items():
            grouped.setdefault(monom[:-1], {})[(monom[-1],)] = c
        pi_ring = PiScalar.of(1 if self.is_exact else 1.0).poly.ring
        return {exps: PiScalar(pi_ring.from_dict(parts)) for exps, parts in grouped.items()}

    @property
    def degree(self) -> int:
        """Total degree in X; -1 for the zero polynomial."""
        return max((sum(monom[:-1]) for monom in self.poly.keys()), default=-1)

    @property
    def is_exact(self) -> bool:
        return is_exact_ring(self.poly.ring)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def coefficient(self, exps: Sequence[int]) -> PiScalar:
        return self.terms.get(tuple(exps), PiScalar())

    # ---------- evaluation ----------

    def evaluate(self, point: Sequence[float]) -> complex:
        total = 0j
        for monom, c in self.poly.items():
            value = domain_to_complex(c) * math.pi ** monom[-1]
            for x, e in zip(point, monom[:-1]):
                if e:
                    value *= float(x) ** e
            total += value
        return total

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.float64)
        out = np.zeros(points.shape[0], dtype=np.complex128)
        for monom, c in self.poly.items():
            value = domain_to_complex(c) * math.pi ** monom[-1]
            out += value * np.prod(points ** np.asarray(monom[:-1]), axis=1)
        return out

    def as_expr(self, symbols: Optional[List[sympy.Symbol]] = None) -> sympy.Expr:
        """Sympy rendering (pi and i kept symbolic)."""
        xs = list(symbols or sympy.symbols(f"x0:{self.nvars}"))
        return sympy.expand(self.poly.as_expr(*xs, sympy.pi))


def monomials_up_to(nvars: int, degree: int) -> Iterable[Exponent]:
    """Every exponent tuple of total degree <= degree, graded then lexicographic."""
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            yield tuple(exps)
