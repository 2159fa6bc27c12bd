from __future__ import annotations

from fractions import Fraction
from typing import Tuple

import numpy as np

from modules.compalg.scalars import identity, zeros
from modules.heisalg.algebra import HeisenbergAlgebra, build_algebra


def swap_isomorphism(alg: HeisenbergAlgebra) -> Tuple[HeisenbergAlgebra, np.ndarray, np.ndarray]:
    """Explicit isomorphism n_{p,q} -> n_{q,p}.

    Every slot is conjugated and the right slots move to the front; the center
    is negated. conj(Z X) = -conj(X) Z turns left multiplication into right
    multiplication by -Z (and vice versa), so [phi X, phi Y] = psi [X, Y].
    """
    target = build_algebra(alg.kind, alg.q, alg.p)
    conj_block = identity(alg.dim_a)
    for i in range(1, alg.dim_a):
        conj_block[i, i] = Fraction(-1)

    order = list(range(alg.p, alg.slots)) + list(range(alg.p))
    phi = zeros(alg.dim_v, alg.dim_v)
    for new_slot, old_slot in enumerate(order):
        rows = target.slot_range(new_slot)
        cols = alg.slot_range(old_slot)
        phi[rows.start:rows.stop, cols.start:cols.stop] = conj_block

    psi = -identity(alg.dim_z)
    return target, phi, psi
