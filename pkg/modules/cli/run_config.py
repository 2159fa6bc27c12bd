from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

import config
from modules.compalg.scalars import Scalar
from modules.errors import InvalidInputError, InvalidParametersError
from modules.heisalg.algebra import HeisenbergAlgebra, build_algebra, normalize_kind
from modules.spectral.polynomial import FourierMode

OUTPUT_FORMATS = ("json", "csv", "text")


def parse_coeff(text: Optional[str]) -> Optional[Scalar]:
    """'7', '1/2' and '0.25' all parse to exact Fractions."""
    if text is None:
        return None
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"radial coefficient '{text}' is not a number", text=text) from None


def parse_pair(text: str) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """'1,1:2,0' -> ((1, 1), (2, 0))."""
    try:
        left, right = text.split(":")
        a = tuple(int(x) for x in left.split(","))
        b = tuple(int(x) for x in right.split(","))
    except ValueError:
        raise InvalidInputError(f"pair '{text}' must look like p,q:p',q'", text=text) from None
    if len(a) != 2 or len(b) != 2:
        raise InvalidInputError(f"pair '{text}' must look like p,q:p',q'", text=text)
    return a, b


@dataclass(frozen=True)
class RunConfig:
    kind: str = "octonion"
    p: int = 1
    q: int = 1
    alpha: Optional[str] = None
    degree: int = 2
    coeff_c: Optional[str] = None
    k: int = 20
    seed: int = config.DEFAULT_SEED
    samples: int = config.RANDOM_SAMPLES
    output: Optional[str] = None
    fmt: str = "json"
    tolerances: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        if self.degree < 0:
            raise InvalidParametersError(f"degree must be >= 0, got {self.degree}", degree=self.degree)
        if self.k < 1:
            raise InvalidParametersError(f"eigenvalue count must be >= 1, got {self.k}", k=self.k)
        if self.samples < 0:
            raise InvalidParametersError(f"sample count must be >= 0, got {self.samples}")
        if self.fmt not in OUTPUT_FORMATS:
            raise InvalidParametersError(f"unknown output format '{self.fmt}'", fmt=self.fmt)

    def algebra(self) -> HeisenbergAlgebra:
        return build_algebra(self.kind, self.p, self.q)

    def mode(self, dim_z: int) -> FourierMode:
        """The configured mode, e_1 when none was given."""
        if self.alpha is None:
            return FourierMode.basis(dim_z, 0)
        return FourierMode.parse(self.alpha, dim_z)

    def coefficient(self) -> Optional[Scalar]:
        return parse_coeff(self.coeff_c)

    def tol(self, name: str) -> float:
        return self.tolerances.get(name, getattr(config, name.upper()))

    def to_dict(self) -> Dict:
        data = asdict(self)
        # output location is not part of the report
        data.pop("output")
        return data
