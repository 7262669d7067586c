"""Arithmetic in the crystallographic group formed by a finite point group
acting on the translation lattice Z^n, and fixed-lattice computations.

Convention (used everywhere in this package): matrices act on column
vectors by left multiplication, and group elements (k, a) compose as the
affine maps x -> k.x + a, i.e. (k1, a1)(k2, a2) = (k1 k2, a1 + k1.a2).
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .intlinalg import (
    LatticeBasis,
    Vec,
    kernel_lattice,
    mat_vec,
    vec_add,
    vec_neg,
)
from .matgroup import FiniteMatrixGroup, NotASubgroupError


class NonIntegralAverageError(Exception):
    pass


class GammaElement(NamedTuple):
    """An element (k, a) of the crystallographic group: point part by id,
    translation part as an integer vector."""

    point: int
    translation: Vec


class Crystal:
    """The group K acting on Z^n, with cached fixed-lattice data."""

    def __init__(self, group: FiniteMatrixGroup):
        self.group = group
        self.rank = group.rank
        # per-subgroup solvers for stacked (h - I).a = rhs systems,
        # populated lazily by the cohomology module
        self.translation_solvers: dict[frozenset[int], object] = {}

    # -- semidirect product arithmetic ---------------------------------

    @property
    def gamma_identity(self) -> GammaElement:
        return GammaElement(self.group.identity, (0,) * self.rank)

    def act(self, k: int, v: Vec) -> Vec:
        return mat_vec(self.group.elements[k], v)

    def gamma_mul(self, g1: GammaElement, g2: GammaElement) -> GammaElement:
        return GammaElement(
            self.group.mult[g1.point][g2.point],
            vec_add(g1.translation, self.act(g1.point, g2.translation)),
        )

    def gamma_inv(self, g: GammaElement) -> GammaElement:
        ki = self.group.inv[g.point]
        return GammaElement(ki, vec_neg(self.act(ki, g.translation)))

    # -- fixed lattices -------------------------------------------------

    @lru_cache(maxsize=None)
    def fixed_lattice(self, subgroup: frozenset[int]) -> LatticeBasis:
        """Canonical basis of the sublattice of Z^n fixed pointwise by the
        subgroup: the integer kernel of the stacked matrices (k - I)."""
        self.group.require_subgroup(subgroup)
        rows = []
        for k in sorted(subgroup):
            if k == self.group.identity:
                continue
            m = self.group.elements[k]
            rows.extend(
                tuple(x - (1 if i == j else 0) for j, x in enumerate(row))
                for i, row in enumerate(m)
            )
        return kernel_lattice(tuple(rows), ncols=self.rank)

    def fixed_rank(self, subgroup: frozenset[int]) -> int:
        return self.fixed_lattice(subgroup).rank

    def character_fixed_rank(self, subgroup: frozenset[int]) -> int:
        """Dimension of the fixed subspace computed character-style, as the
        average of the traces over the subgroup.  Always a non-negative
        integer for an actual subgroup; a non-integral average signals a
        bug upstream."""
        self.group.require_subgroup(subgroup)
        total = sum(
            sum(self.group.elements[k][i][i] for i in range(self.rank))
            for k in subgroup
        )
        q, r = divmod(total, len(subgroup))
        if r:
            raise NonIntegralAverageError("non-integral average")
        if q < 0:
            raise NonIntegralAverageError("negative trace average")
        return q

    def centralizer_index_finite(self, sub: frozenset[int],
                                 sup: frozenset[int]) -> bool:
        """Whether the centralizer of the smaller finite subgroup meets the
        centralizer of the larger one in finite index; for these groups
        this is equivalent to equality of the fixed-lattice ranks."""
        if not sub <= sup:
            raise NotASubgroupError("not a subgroup")
        return self.fixed_rank(sub) == self.fixed_rank(sup)


def gamma_conjugate(crystal: Crystal, g: GammaElement,
                    by: GammaElement) -> GammaElement:
    return crystal.gamma_mul(crystal.gamma_mul(by, g), crystal.gamma_inv(by))
