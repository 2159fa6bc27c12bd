"""Graded monomial blocks and the fiber operator pieces on them, in integers.

Monomials of total degree t in n variables are addressed by colex rank: the
sorted variable list c_0 <= ... <= c_{t-1} becomes the strictly increasing
b_j = c_j + j, and rank = sum_j C(b_j, j + 1). Ranks run over
0 .. C(n + t - 1, t) - 1 with no gaps, so a block is an array indexed by rank.

An operator piece applied to a whole block is kept as its images: triples
(column, row, value) where column is the rank of the input monomial in its
block and row the rank of the output monomial in the target block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Tuple

import numpy as np

from modules.compalg.scalars import integer_array
from modules.heisalg.algebra import HeisenbergAlgebra, j_integer


@dataclass(frozen=True, eq=False)
class BlockImages:
    degree: int
    target_degree: int
    cols: np.ndarray
    rows: np.ndarray
    data: np.ndarray

    @property
    def size(self) -> int:
        return len(self.data)


def block_size(nvars: int, degree: int) -> int:
    return math.comb(nvars + degree - 1, degree)


@lru_cache(maxsize=None)
def _binomials(top: int, width: int) -> np.ndarray:
    table = np.zeros((top + 1, width + 1), dtype=np.int64)
    for a in range(top + 1):
        for b in range(width + 1):
            table[a, b] = math.comb(a, b)
    table.setflags(write=False)
    return table


def block_rank(exps: np.ndarray) -> np.ndarray:
    """Colex rank of every row of an (m, n) exponent array of one total degree."""
    m, n = exps.shape
    t = int(exps[0].sum()) if m else 0
    if m == 0 or t == 0:
        return np.zeros(m, dtype=np.int64)
    var = np.repeat(np.tile(np.arange(n), m), exps.ravel().astype(np.intp)).reshape(m, t)
    return _binomials(n + t, t)[var + np.arange(t), np.arange(1, t + 1)].sum(axis=1)


@lru_cache(maxsize=None)
def monomial_block(nvars: int, degree: int) -> np.ndarray:
    """Every exponent row of total degree `degree`, row r holding the monomial of rank r."""
    count = block_size(nvars, degree)
    combos = np.array(list(combinations_with_replacement(range(nvars), degree)), dtype=np.intp)
    combos = combos.reshape(count, degree)
    exps = np.zeros((count, nvars), dtype=np.int16)
    np.add.at(exps, (np.repeat(np.arange(count), degree), combos.ravel()), 1)
    block = np.empty_like(exps)
    block[block_rank(exps)] = exps
    block.setflags(write=False)
    return block


def _images(degree: int, target: int, cols: np.ndarray, exps: np.ndarray, data: np.ndarray) -> BlockImages:
    keep = data != 0
    cols, exps, data = cols[keep], exps[keep], data[keep]
    return BlockImages(degree, target, cols.astype(np.int64), block_rank(exps), data.astype(np.int64))


def _spread(block: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Every (row, variable) pair of a block, with a copy of the row to edit."""
    count, n = block.shape
    cols = np.repeat(np.arange(count), n)
    var = np.tile(np.arange(n), count)
    return cols, var, block[cols]


@lru_cache(maxsize=None)
def laplacian_block(nvars: int, degree: int) -> BlockImages:
    """Delta x^E = sum_i E_i (E_i - 1) x^(E - 2 e_i)."""
    if degree < 2:
        empty = np.zeros(0, dtype=np.int64)
        return BlockImages(degree, degree - 2, empty, empty, empty)
    cols, var, exps = _spread(monomial_block(nvars, degree))
    picked = np.arange(len(cols))
    e = exps[picked, var]
    exps[picked, var] -= 2
    return _images(degree, degree - 2, cols, exps, e * (e - 1))


@lru_cache(maxsize=None)
def radial_block(nvars: int, degree: int) -> BlockImages:
    """|X|^2 x^E = sum_i x^(E + 2 e_i)."""
    cols, var, exps = _spread(monomial_block(nvars, degree))
    exps[np.arange(len(cols)), var] += 2
    return _images(degree, degree + 2, cols, exps, np.ones(len(cols), dtype=np.int64))


@lru_cache(maxsize=32)
def derivation_block(alg: HeisenbergAlgebra, alpha: Tuple[int, ...], degree: int) -> BlockImages:
    """(J X) . x^E = sum_{i, m} J[i, m] E_i x^(E - e_i + e_m) with J = j_{Z^alpha} integral."""
    jm = j_integer(alg, integer_array(alpha))
    rows_i, cols_m = np.nonzero(jm)
    values = np.asarray(jm[rows_i, cols_m], dtype=np.int64)
    block = monomial_block(alg.dim_v, degree)
    count, pairs = len(block), len(values)
    cols = np.repeat(np.arange(count), pairs)
    pair = np.tile(np.arange(pairs), count)
    exps = block[cols]
    picked = np.arange(len(cols))
    e = exps[picked, rows_i[pair]]
    exps[picked, rows_i[pair]] -= 1
    exps[picked, cols_m[pair]] += 1
    return _images(degree, degree, cols, exps, e * values[pair])


@lru_cache(maxsize=16)
def pullback_block(signed_rows: Tuple[Tuple[int, int], ...], degree: int) -> Tuple[np.ndarray, np.ndarray]:
    """For x_i -> s_i x_{c_i}: the monomial of rank r goes to sign[r] times the monomial of rank perm[r]."""
    nvars = len(signed_rows)
    block = monomial_block(nvars, degree)
    targets = np.array([c for c, _ in signed_rows], dtype=np.intp)
    negated = np.array([s < 0 for _, s in signed_rows], dtype=bool)
    moved = np.zeros_like(block)
    moved[:, targets] = block
    sign = 1 - 2 * (block[:, negated].sum(axis=1) % 2)
    return block_rank(moved), sign.astype(np.int64)
