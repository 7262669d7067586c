"""Finite subgroups of GL_n(Z): closure from generators, multiplication
tables, and the full subgroup lattice with conjugacy-class data.

Elements are referred to by id (index into a canonically sorted element
list), so everything downstream works on ints and a Cayley table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intlinalg import Mat, identity, is_unimodular, mat_mul


class GroupError(Exception):
    pass


class NonUnimodularGeneratorError(GroupError):
    pass


class OrderCapExceededError(GroupError):
    pass


class NotASubgroupError(GroupError):
    pass


DEFAULT_ORDER_CAP = 512


@dataclass(frozen=True)
class FiniteMatrixGroup:
    """A finite group of n x n integer matrices, closed and canonically
    indexed.  ``elements`` is sorted by flattened entries, so ids are
    stable across runs; ``mult[a][b]`` is the id of elements[a]*elements[b].
    """

    rank: int
    elements: tuple[Mat, ...]
    generators: tuple[int, ...]
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def conjugate(self, a: int, k: int) -> int:
        """id of k * a * k^-1."""
        return self.mult[self.mult[k][a]][self.inv[k]]

    def conjugate_set(self, ids: frozenset[int], k: int) -> frozenset[int]:
        return frozenset(self.conjugate(a, k) for a in ids)

    def closure(self, seed: frozenset[int] | set[int]) -> frozenset[int]:
        """Subgroup generated by ``seed``, via the multiplication table."""
        gens = sorted(set(seed) | {self.identity})
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mult[a][g]
                    if b not in elems:
                        elems.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(elems)

    def is_subgroup(self, ids: frozenset[int]) -> bool:
        if self.identity not in ids:
            return False
        return all(self.mult[a][b] in ids for a in ids for b in ids)

    def require_subgroup(self, ids: frozenset[int]) -> None:
        if not self.is_subgroup(ids):
            raise NotASubgroupError("not a subgroup")

    def element_order(self, a: int) -> int:
        n = 1
        x = a
        while x != self.identity:
            x = self.mult[x][a]
            n += 1
        return n


def close_group(rank: int, generators: list[Mat],
                order_cap: int = DEFAULT_ORDER_CAP) -> FiniteMatrixGroup:
    """Close a generating set of integer matrices into a FiniteMatrixGroup.

    Raises NonUnimodularGeneratorError for |det| != 1 input and
    OrderCapExceededError when the closure grows past ``order_cap`` (which
    catches accidentally infinite groups).
    """
    gens = [tuple(tuple(int(x) for x in row) for row in g) for g in generators]
    for g in gens:
        if len(g) != rank or any(len(row) != rank for row in g):
            raise GroupError("generator has wrong shape")
        if not is_unimodular(g):
            raise NonUnimodularGeneratorError("non-unimodular generator")
    ident = identity(rank)
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mat_mul(a, g)
                if b not in elems:
                    if len(elems) >= order_cap:
                        raise OrderCapExceededError("order cap exceeded")
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    ordered = tuple(sorted(elems))
    index = {m: i for i, m in enumerate(ordered)}
    mult = tuple(tuple(index[mat_mul(a, b)] for b in ordered) for a in ordered)
    inv = [0] * len(ordered)
    for i, row in enumerate(mult):
        inv[i] = row.index(index[ident])
    return FiniteMatrixGroup(
        rank=rank,
        elements=ordered,
        generators=tuple(sorted({index[g] for g in gens})),
        mult=mult,
        inv=tuple(inv),
        identity=index[ident],
    )


def generating_ids(group: FiniteMatrixGroup, ids: frozenset[int]) -> tuple[int, ...]:
    """Canonical small generating list for a subgroup: greedily add the
    least element id that enlarges the generated subgroup."""
    gens: list[int] = []
    span = frozenset({group.identity})
    for a in sorted(ids):
        if a in span:
            continue
        gens.append(a)
        span = group.closure(frozenset(gens))
        if span == ids:
            break
    return tuple(gens)


def all_subgroups(group: FiniteMatrixGroup) -> tuple[frozenset[int], ...]:
    """Every subgroup, as frozensets of element ids, canonically sorted.

    Seeds with all cyclic subgroups and closes under joins with cyclic
    subgroups; every subgroup is reached since it is a join of the cyclic
    subgroups of its own elements.
    """
    cyclic: dict[frozenset[int], int] = {}
    for a in sorted(range(group.order)):
        sub = group.closure({a})
        if sub not in cyclic:
            cyclic[sub] = a
    found: dict[frozenset[int], tuple[int, ...]] = {
        sub: (a,) for sub, a in cyclic.items()
    }
    worklist = list(found)
    while worklist:
        sub = worklist.pop()
        gens = found[sub]
        for cyc, a in cyclic.items():
            if cyc <= sub:
                continue
            joined = group.closure(frozenset(gens + (a,)))
            if joined not in found:
                found[joined] = gens + (a,)
                worklist.append(joined)
    return tuple(sorted(found, key=lambda s: (len(s), tuple(sorted(s)))))


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups of the ambient point group."""

    class_id: int
    representative: frozenset[int]
    order: int
    normalizer: frozenset[int]
    conjugates_count: int
    element_class_count: int


def element_class_count(subgroup: frozenset[int],
                        group: FiniteMatrixGroup) -> int:
    """Number of conjugacy classes of elements of the subgroup (equals the
    number of its irreducible complex characters)."""
    group.require_subgroup(subgroup)
    seen: set[int] = set()
    count = 0
    for a in sorted(subgroup):
        if a in seen:
            continue
        count += 1
        seen.update(group.conjugate(a, k) for k in subgroup)
    return count


def normalizer(group: FiniteMatrixGroup, subgroup: frozenset[int]) -> frozenset[int]:
    return frozenset(
        k for k in range(group.order)
        if group.conjugate_set(subgroup, k) == subgroup
    )


@dataclass(frozen=True)
class SubgroupLattice:
    """All subgroups of a group bucketed into conjugacy classes, plus a
    lookup taking any subgroup to (class id, conjugator onto the class
    representative)."""

    group: FiniteMatrixGroup
    subgroups: tuple[frozenset[int], ...]
    classes: tuple[SubgroupClass, ...]
    lookup: dict[frozenset[int], tuple[int, int]] = field(repr=False)

    def class_of(self, subgroup: frozenset[int]) -> tuple[int, int]:
        """(class id, element k with k.S.k^-1 = representative)."""
        try:
            return self.lookup[subgroup]
        except KeyError:
            raise NotASubgroupError("not a subgroup") from None


def subgroup_lattice(group: FiniteMatrixGroup) -> SubgroupLattice:
    subs = all_subgroups(group)
    key = lambda s: tuple(sorted(s))
    remaining = set(subs)
    buckets: list[list[frozenset[int]]] = []
    for sub in subs:
        if sub not in remaining:
            continue
        orbit = {group.conjugate_set(sub, k) for k in range(group.order)}
        remaining -= orbit
        buckets.append(sorted(orbit, key=key))
    reps = [min(bucket, key=key) for bucket in buckets]
    order = sorted(range(len(buckets)), key=lambda i: (len(reps[i]), key(reps[i])))
    classes = []
    lookup: dict[frozenset[int], tuple[int, int]] = {}
    for cid, b in enumerate(order):
        rep = reps[b]
        norm = normalizer(group, rep)
        classes.append(SubgroupClass(
            class_id=cid,
            representative=rep,
            order=len(rep),
            normalizer=norm,
            conjugates_count=group.order // len(norm),
            element_class_count=element_class_count(rep, group),
        ))
        for member in buckets[b]:
            k = next(k for k in range(group.order)
                     if group.conjugate_set(member, k) == rep)
            lookup[member] = (cid, k)
    return SubgroupLattice(group=group, subgroups=subs,
                           classes=tuple(classes), lookup=lookup)


def subgroup_classes(group: FiniteMatrixGroup) -> tuple[SubgroupClass, ...]:
    """One record per conjugacy class of subgroups, covering all subgroups
    including the trivial and full ones, sorted by (order, canonical key)."""
    return subgroup_lattice(group).classes
