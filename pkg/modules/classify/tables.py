"""Which generalized Heisenberg groups are commutative, weakly symmetric or g.o.

The classification is a finite table in (dim z, dim v, isotypic):

    commutative   dim z in {1, 2, 3};  dim z = 5, 6, 7 with dim v = 8;
                  dim z = 7 with dim v = 16 and v isotypic
    weakly symm.  same as commutative (narrow sense: not when dim z = 1)
    g.o.          commutative cases and dim z = 7 with dim v = 24, v isotypic

Anything outside the lists is negative.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, fields
from typing import Dict, List, Tuple

from modules.errors import InvalidInputError
from modules.heisalg.algebra import HeisenbergAlgebra
from modules.heisalg.checks import is_isotypic

log = logging.getLogger(__name__)

# dimension of an irreducible module of Cl(m) with j_Z^2 = -|Z|^2, m = 1..8
_IRREDUCIBLE = {1: 2, 2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16}

COMMUTATIVE_SMALL_CENTER = (1, 2, 3)
COMMUTATIVE_CASES = {(5, 8), (6, 8), (7, 8)}
COMMUTATIVE_ISOTYPIC_CASES = {(7, 16)}
GO_ONLY_ISOTYPIC_CASES = {(7, 24)}


@dataclass(frozen=True)
class PropertyProfile:
    commutative: bool
    weakly_symmetric_broad: bool
    weakly_symmetric_narrow: bool
    go_space: bool

    def to_dict(self) -> Dict[str, bool]:
        return asdict(self)

    def differences(self, other: "PropertyProfile") -> List[str]:
        return [f.name for f in fields(self) if getattr(self, f.name) != getattr(other, f.name)]


PROPERTY_NAMES = tuple(f.name for f in fields(PropertyProfile))


def irreducible_dim(dim_z: int) -> int:
    if dim_z < 1:
        raise InvalidInputError(f"center dimension must be >= 1, got {dim_z}", dim_z=dim_z)
    scale = 1
    m = dim_z
    while m > 8:
        m -= 8
        scale *= 16
    return scale * _IRREDUCIBLE[m]


def realizable(dim_z: int, dim_v: int, isotypic: bool) -> bool:
    if dim_z < 1 or dim_v < 1:
        return False
    n0 = irreducible_dim(dim_z)
    if dim_v % n0:
        return False
    if dim_z % 4 != 3:
        # a single irreducible module: v is always isotypic
        return isotypic
    return isotypic or dim_v >= 2 * n0


def classify(dim_z: int, dim_v: int, isotypic: bool) -> PropertyProfile:
    if not realizable(dim_z, dim_v, isotypic):
        raise InvalidInputError(
            f"no generalized Heisenberg algebra has dim z = {dim_z}, dim v = {dim_v}"
            f" ({'isotypic' if isotypic else 'non-isotypic'})",
            dim_z=dim_z,
            dim_v=dim_v,
            isotypic=isotypic,
        )
    key = (dim_z, dim_v)
    commutative = (
        dim_z in COMMUTATIVE_SMALL_CENTER
        or key in COMMUTATIVE_CASES
        or (isotypic and key in COMMUTATIVE_ISOTYPIC_CASES)
    )
    go_space = commutative or (isotypic and key in GO_ONLY_ISOTYPIC_CASES)
    return PropertyProfile(
        commutative=commutative,
        weakly_symmetric_broad=commutative,
        weakly_symmetric_narrow=commutative and dim_z != 1,
        go_space=go_space,
    )


def classify_algebra(alg: HeisenbergAlgebra) -> PropertyProfile:
    iso = is_isotypic(alg)
    log.debug("%s: isotypic=%s", alg.label(), iso)
    return classify(alg.dim_z, alg.dim_v, iso)


def scan_cases(max_dim_z: int = 7, max_multiplicity: int = 4) -> List[Tuple[int, int, bool]]:
    """Every realizable (dim z, dim v, isotypic) with dim v up to max_multiplicity irreducibles."""
    cases = []
    for dim_z in range(1, max_dim_z + 1):
        n0 = irreducible_dim(dim_z)
        for k in range(1, max_multiplicity + 1):
            for iso in (True, False):
                if realizable(dim_z, k * n0, iso):
                    cases.append((dim_z, k * n0, iso))
    return cases
