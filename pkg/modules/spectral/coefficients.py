"""Exact coefficients for the fiber Laplacian.

The fiber operator multiplies by 2*pi*i and by 4*pi^2, so its coefficients
live in Q(i)[pi]. A PiScalar wraps an element of the sympy polynomial ring
QQ_I[pi] with pi a free generator: two PiScalars are equal exactly when their
coefficients agree. Values with a float anywhere live in CC[pi] instead.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number
from typing import Dict, Tuple

from sympy.polys.domains import CC, QQ, QQ_I
from sympy.polys.rings import PolyElement, PolyRing, ring

from modules.compalg.scalars import is_exact

Key = Tuple[int, int]

EXACT_PI_RING: PolyRing = ring("pi", QQ_I)[0]
FLOAT_PI_RING: PolyRing = ring("pi", CC)[0]


# -------------------------
# Ground domain conversions (shared with the polynomial rings)
# -------------------------

def _fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def gaussian(re, im=0):
    """re + i im as a QQ_I element."""
    re, im = Fraction(re), Fraction(im)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def domain_to_complex(value) -> complex:
    if isinstance(value, QQ_I.dtype):
        return complex(float(_fraction(value.x)), float(_fraction(value.y)))
    return complex(value)


def to_domain(value, exact: bool):
    """A number (or a QQ_I / CC element) as an element of QQ_I when exact, CC otherwise."""
    if isinstance(value, QQ_I.dtype):
        return value if exact else CC.convert(domain_to_complex(value))
    if exact:
        return gaussian(value)
    return CC.convert(complex(value))


def float_copy(poly: PolyElement, float_ring: PolyRing) -> PolyElement:
    """The same polynomial with every coefficient moved into CC."""
    return float_ring.from_dict({m: CC.convert(domain_to_complex(c)) for m, c in poly.items()})


def is_exact_ring(r: PolyRing) -> bool:
    return bool(r.domain.is_Exact)


# -------------------------
# PiScalar
# -------------------------

class PiScalar:
    __slots__ = ("poly",)

    def __init__(self, poly: PolyElement = None):
        self.poly = EXACT_PI_RING.zero if poly is None else poly

    @classmethod
    def of(cls, value) -> "PiScalar":
        if isinstance(value, PiScalar):
            return value
        exact = is_exact(value)
        r = EXACT_PI_RING if exact else FLOAT_PI_RING
        return cls(r.ground_new(to_domain(value, exact)))

    @classmethod
    def term(cls, value, pi_power: int = 0, imaginary: bool = False) -> "PiScalar":
        if is_exact(value):
            coeff = gaussian(0, value) if imaginary else gaussian(value)
            return cls(EXACT_PI_RING.from_dict({(pi_power,): coeff}))
        coeff = complex(value) * (1j if imaginary else 1)
        return cls(FLOAT_PI_RING.from_dict({(pi_power,): CC.convert(coeff)}))

    # ---------- arithmetic ----------

    def _pair(self, other) -> Tuple[PolyElement, PolyElement]:
        a, b = self.poly, PiScalar.of(other).poly
        if a.ring != b.ring:
            a, b = float_copy(a, FLOAT_PI_RING), float_copy(b, FLOAT_PI_RING)
        return a, b

    def __add__(self, other) -> "PiScalar":
        a, b = self._pair(other)
        return PiScalar(a + b)

    __radd__ = __add__

    def __neg__(self) -> "PiScalar":
        return PiScalar(-self.poly)

    def __sub__(self, other) -> "PiScalar":
        a, b = self._pair(other)
        return PiScalar(a - b)

    def __rsub__(self, other) -> "PiScalar":
        return PiScalar.of(other) - self

    def __mul__(self, other) -> "PiScalar":
        a, b = self._pair(other)
        return PiScalar(a * b)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (PiScalar, Number)):
            a, b = self._pair(other)
            return not (a - b)
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.poly

    @property
    def is_exact(self) -> bool:
        return is_exact_ring(self.poly.ring)

    @property
    def parts(self) -> Dict[Key, object]:
        """(pi_power, i_power) -> real value, Fractions when exact."""
        out: Dict[Key, object] = {}
        for (pi_power,), c in self.poly.items():
            if isinstance(c, QQ_I.dtype):
                re, im = _fraction(c.x), _fraction(c.y)
            else:
                z = complex(c)
                re, im = z.real, z.imag
            if re != 0:
                out[(pi_power, 0)] = re
            if im != 0:
                out[(pi_power, 1)] = im
        return out

    # ---------- numerics ----------

    def to_complex(self) -> complex:
        return sum(
            (domain_to_complex(c) * math.pi ** pi_power for (pi_power,), c in self.poly.items()),
            0j,
        )

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self) -> str:
        parts = self.parts
        if not parts:
            return "0"
        pieces = []
        for (pi_power, i_power), value in sorted(parts.items()):
            if isinstance(value, Fraction) and value.denominator == 1:
                value = value.numerator
            factor = "" if pi_power == 0 else ("pi" if pi_power == 1 else f"pi^{pi_power}")
            unit = "i" if i_power else ""
            tail = "*".join(x for x in (factor, unit) if x)
            pieces.append(f"{value}*{tail}" if tail else f"{value}")
        return " + ".join(pieces)


TWO_PI_I = PiScalar.term(2, pi_power=1, imaginary=True)


def minus_four_pi_squared(scale) -> PiScalar:
    if is_exact(scale):
        return PiScalar.term(-4 * Fraction(scale), pi_power=2)
    return PiScalar.term(-4 * float(scale), pi_power=2)
