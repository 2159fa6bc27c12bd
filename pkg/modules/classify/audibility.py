from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from modules.classify.tables import PropertyProfile, classify_algebra
from modules.errors import InvalidPairError
from modules.heisalg.algebra import HeisenbergAlgebra

log = logging.getLogger(__name__)

SCOPE = "non_compact"
COMPACT_NOTE = (
    "Compact quotients with p+q equal are isospectral and, when {p,q} differ, "
    "not locally isometric; whether they inherit the global properties listed "
    "here is not claimed. The octonion quotient N^{2,0} is weakly locally "
    "symmetric while N^{1,1} is not, so weak local symmetry is inaudible for "
    "closed manifolds in dimension 23."
)

# Weak local symmetry of the compact quotient N^{p,q}, where it is settled.
COMPACT_WEAKLY_LOCALLY_SYMMETRIC = {
    ("octonion", 2, 0): True,
    ("octonion", 1, 1): False,
}


def compact_weakly_locally_symmetric(alg: HeisenbergAlgebra) -> Optional[bool]:
    return COMPACT_WEAKLY_LOCALLY_SYMMETRIC.get((alg.kind, alg.p, alg.q))


@dataclass(frozen=True)
class AudibilityReport:
    pair: Tuple[Dict, Dict]
    isospectral: bool
    locally_isometric: bool
    profiles: Tuple[PropertyProfile, PropertyProfile]
    inaudible_properties: List[str] = field(default_factory=list)
    differing_properties: List[str] = field(default_factory=list)
    scope: str = SCOPE
    compact_isospectral: bool = False
    compact_locally_isometric: bool = False
    compact_weakly_locally_symmetric: Tuple[Optional[bool], Optional[bool]] = (None, None)
    compact_inaudible_properties: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "pair": list(self.pair),
            "isospectral": self.isospectral,
            "locally_isometric": self.locally_isometric,
            "profiles": [p.to_dict() for p in self.profiles],
            "inaudible_properties": list(self.inaudible_properties),
            "differing_properties": list(self.differing_properties),
            "scope": self.scope,
            "compact": {
                "isospectral": self.compact_isospectral,
                "locally_isometric": self.compact_locally_isometric,
                "weakly_locally_symmetric": list(self.compact_weakly_locally_symmetric),
                "inaudible_properties": list(self.compact_inaudible_properties),
                "note": COMPACT_NOTE,
            },
        }


def audibility_report(a: HeisenbergAlgebra, b: HeisenbergAlgebra) -> AudibilityReport:
    if a.kind != b.kind:
        raise InvalidPairError(
            f"cannot compare a {a.kind} algebra with a {b.kind} algebra",
            left=a.kind,
            right=b.kind,
        )
    isospectral = a.p + a.q == b.p + b.q
    locally_isometric = Counter((a.p, a.q)) == Counter((b.p, b.q))
    prof_a, prof_b = classify_algebra(a), classify_algebra(b)
    differing = prof_a.differences(prof_b)
    inaudible = differing if isospectral and not locally_isometric else []

    wls = (compact_weakly_locally_symmetric(a), compact_weakly_locally_symmetric(b))
    compact_inaudible = []
    if isospectral and None not in wls and wls[0] != wls[1]:
        compact_inaudible.append("weakly_locally_symmetric")
    log.info("audibility %s vs %s: inaudible=%s compact=%s", a.label(), b.label(), inaudible, compact_inaudible)
    return AudibilityReport(
        pair=(a.to_dict(), b.to_dict()),
        isospectral=isospectral,
        locally_isometric=locally_isometric,
        profiles=(prof_a, prof_b),
        inaudible_properties=inaudible,
        differing_properties=differing,
        compact_isospectral=isospectral,
        compact_locally_isometric=locally_isometric,
        compact_weakly_locally_symmetric=wls,
        compact_inaudible_properties=compact_inaudible,
    )
