"""Branch posets inside finite point groups and reduced Euler
characteristics of their augmented order complexes.

The branch poset for a pair H < F collects the subgroups strictly between
them whose fixed lattice is nontrivial; its reduced Euler characteristic
is the alternating chain count -1 + N0 - N1 + N2 - ... where Nt is the
number of chains of t+1 vertices.  The empty poset contributes -1 (the
augmentation term alone).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from .crystal import Crystal


class PosetError(Exception):
    pass


@dataclass(frozen=True)
class FinitePoset:
    """A finite strict poset: hashable vertex keys plus the full strict
    order relation as index pairs (i, j) meaning vertex i < vertex j."""

    vertices: tuple[Hashable, ...]
    less_than: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = len(self.vertices)
        for i, j in self.less_than:
            if i == j:
                raise PosetError("strict order cannot be reflexive")
            if not (0 <= i < n and 0 <= j < n):
                raise PosetError("relation index out of range")
        for i, j in self.less_than:
            for j2, k in self.less_than:
                if j2 == j and (i, k) not in self.less_than:
                    raise PosetError("relation is not transitively closed")

    @property
    def size(self) -> int:
        return len(self.vertices)


def poset_from_order(vertices: Sequence[Hashable], lt) -> FinitePoset:
    """Build a FinitePoset from a comparison predicate lt(a, b)."""
    verts = tuple(vertices)
    rel = frozenset(
        (i, j)
        for i in range(len(verts))
        for j in range(len(verts))
        if i != j and lt(verts[i], verts[j])
    )
    return FinitePoset(verts, rel)


def build_branch_poset(crystal: Crystal, lower: frozenset[int],
                       upper: frozenset[int],
                       subgroups: Sequence[frozenset[int]]) -> FinitePoset:
    """Poset of subgroups S with lower < S < upper (both strict) whose
    fixed lattice has rank >= 1, ordered by inclusion.

    ``subgroups`` must contain every subgroup of ``upper`` (a full
    subgroup list of the ambient group is fine).
    """
    if not (lower < upper):
        raise PosetError("H not a proper subgroup of F")
    crystal.group.require_subgroup(lower)
    crystal.group.require_subgroup(upper)
    verts = sorted(
        (s for s in set(subgroups)
         if lower < s < upper and crystal.fixed_rank(s) >= 1),
        key=lambda s: (len(s), tuple(sorted(s))),
    )
    return poset_from_order(verts, lambda a, b: a < b)


def chain_counts(poset: FinitePoset) -> list[int]:
    """[N0, N1, ...] where Nt counts chains of t+1 vertices, computed by
    memoized counts of chains ending at each vertex."""
    n = poset.size
    below = [[] for _ in range(n)]
    for i, j in poset.less_than:
        below[j].append(i)
    order = sorted(range(n), key=lambda v: sum(1 for i, j in poset.less_than if j == v))
    # ending[v][l] = number of chains of l+1 vertices with maximum v
    ending: list[list[int]] = [[] for _ in range(n)]
    for v in order:
        counts = [1]
        for u in below[v]:
            for l, c in enumerate(ending[u]):
                while len(counts) <= l + 1:
                    counts.append(0)
                counts[l + 1] += c
        ending[v] = counts
    totals: list[int] = []
    for v in range(n):
        for l, c in enumerate(ending[v]):
            while len(totals) <= l:
                totals.append(0)
            totals[l] += c
    return totals


def reduced_euler_characteristic(poset: FinitePoset) -> int:
    """-1 + N0 - N1 + N2 - ... ; the empty poset gives -1."""
    total = -1
    for t, count in enumerate(chain_counts(poset)):
        total += count if t % 2 == 0 else -count
    return total


def is_directed(poset: FinitePoset) -> bool:
    """Whether every pair of vertices has an upper bound in the poset
    (vacuously true when empty).  A nonempty directed finite poset has a
    maximum, so its reduced Euler characteristic is 0."""
    n = poset.size
    above = [set() for _ in range(n)]
    for i, j in poset.less_than:
        above[i].add(j)
    for i in range(n):
        above[i].add(i)
    return all(above[i] & above[j] for i in range(n) for j in range(n))
