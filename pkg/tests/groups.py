"""Shared group constructions for the test suite: the five bundled
examples plus a corpus of standard finite point groups in GL2(Z) and
GL3(Z) scrambled by random unimodular conjugation."""

from __future__ import annotations

import random

from orbichi.intlinalg import Mat, identity, inverse_unimodular, mat_mul
from orbichi.matgroup import FiniteMatrixGroup, close_group


def transpose(m):
    return tuple(zip(*m))


def blockdiag(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    at = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[at + i][at + j] = x
        at += len(b)
    return tuple(tuple(r) for r in out)


I2 = ((1, 0), (0, 1))
NEG_I2 = ((-1, 0), (0, -1))
U_ROT4 = ((0, -1), (1, 0))
SWAP2 = ((0, 1), (1, 0))
ROT3 = ((0, -1), (1, -1))
ROT6 = ((0, -1), (1, 1))
MIRROR2 = ((1, 0), (0, -1))

NEG_I4 = blockdiag(NEG_I2, NEG_I2)
S3_X = SWAP2
S3_Y = ROT3

# the alternating-group generators act on row vectors in their usual
# presentation; transposed here to match the column convention
A5_X = transpose(((1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (-1, -1, -1, -1)))
A5_Y = transpose(((0, 1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0), (1, 0, 0, 0)))

C4_T6_GEN = blockdiag(NEG_I2, U_ROT4, U_ROT4)
C2C2_X = blockdiag(NEG_I2, NEG_I2, I2)
C2C2_Y = blockdiag(NEG_I2, I2, NEG_I2)


def kummer_group() -> FiniteMatrixGroup:
    return close_group(4, [NEG_I4])


def c4_t6_group() -> FiniteMatrixGroup:
    return close_group(6, [C4_T6_GEN])


def c2c2_t6_group() -> FiniteMatrixGroup:
    return close_group(6, [C2C2_X, C2C2_Y])


def s3_group() -> FiniteMatrixGroup:
    return close_group(2, [S3_X, S3_Y])


def a5_group() -> FiniteMatrixGroup:
    return close_group(4, [A5_X, A5_Y])


PERM3_12 = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
PERM3_123 = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
NEG_I3 = tuple(tuple(-1 if i == j else 0 for j in range(3)) for i in range(3))
DIAG_MPP = ((-1, 0, 0), (0, 1, 0), (0, 0, 1))
ROT4_Z = ((0, -1, 0), (1, 0, 0), (0, 0, 1))

# (label, rank, generators) for the standard point groups used to build
# the randomized corpus
STANDARD_POINT_GROUPS: list[tuple[str, int, list[Mat]]] = [
    ("gl2_trivial", 2, []),
    ("gl2_c2_neg", 2, [NEG_I2]),
    ("gl2_c2_mirror", 2, [MIRROR2]),
    ("gl2_c2_swap", 2, [SWAP2]),
    ("gl2_c3", 2, [ROT3]),
    ("gl2_c4", 2, [U_ROT4]),
    ("gl2_c6", 2, [ROT6]),
    ("gl2_d2", 2, [NEG_I2, MIRROR2]),
    ("gl2_d3_swap", 2, [ROT3, SWAP2]),
    ("gl2_d3_antiswap", 2, [ROT3, ((0, -1), (-1, 0))]),
    ("gl2_d4", 2, [U_ROT4, MIRROR2]),
    ("gl2_d6", 2, [ROT6, SWAP2]),
    ("gl3_c2_neg", 3, [NEG_I3]),
    ("gl3_c2_mirror", 3, [DIAG_MPP]),
    ("gl3_c3_perm", 3, [PERM3_123]),
    ("gl3_s3_perm", 3, [PERM3_12, PERM3_123]),
    ("gl3_c4", 3, [ROT4_Z]),
    ("gl3_diag_signs", 3, [DIAG_MPP, ((1, 0, 0), (0, -1, 0), (0, 0, 1)),
                           ((1, 0, 0), (0, 1, 0), (0, 0, -1))]),
    ("gl3_cube_rotations", 3, [ROT4_Z, PERM3_123]),
    ("gl3_octahedral", 3, [ROT4_Z, PERM3_123, NEG_I3]),
    ("gl3_c6", 3, [blockdiag(ROT6, ((1,),))]),
    ("gl3_s3_x_c2", 3, [blockdiag(ROT3, ((1,),)), blockdiag(SWAP2, ((-1,),))]),
]


def random_unimodular(rng: random.Random, n: int, ops: int = 8) -> Mat:
    """Product of random elementary matrices; |det| = 1 by construction."""
    m = [list(row) for row in identity(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.choice((-1, 1))
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 2:
            m[i] = [-x for x in m[i]]
    return tuple(tuple(row) for row in m)


def conjugated_generators(gens: list[Mat], t: Mat) -> list[Mat]:
    tinv = inverse_unimodular(t)
    return [mat_mul(mat_mul(t, g), tinv) for g in gens]


def corpus_groups(seed: int = 2024) -> list[tuple[str, FiniteMatrixGroup]]:
    """At least twenty finite subgroups of GL2(Z) and GL3(Z), each a
    random unimodular conjugate of a standard point group."""
    rng = random.Random(seed)
    out = []
    for label, rank, gens in STANDARD_POINT_GROUPS:
        t = random_unimodular(rng, rank)
        out.append((label, close_group(rank, conjugated_generators(gens, t))))
    return out
