"""Classification of the conjugacy classes of finite subgroups of the
crystallographic group, with containment order and the derived flags.

Every finite subgroup meets the translation lattice trivially and projects
isomorphically onto a subgroup of the point group, so it is a translate of
a complement {(h, f(h))} for a 1-cocycle f.  Two complements are conjugate
exactly when their point groups are conjugate and the transported cocycle
classes lie in the same normalizer orbit, so the classes are indexed by
pairs (point-group class, normalizer orbit on H^1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cohom1 import (
    Cocycle,
    H1Data,
    first_cohomology,
    normalizer_orbits,
    restrict_cocycle,
    translation_rhs,
    transport_cocycle,
    zero_cocycle,
    DEFAULT_H1_CAP,
    _translation_solver,
)
from .crystal import Crystal, GammaElement
from .intlinalg import Vec, vec_sub
from .matgroup import (
    FiniteMatrixGroup,
    SubgroupLattice,
    subgroup_lattice,
)


@dataclass
class GammaClass:
    """One conjugacy class of finite subgroups of the crystallographic
    group.  The representative is the complement of ``rep_cocycle`` over
    the representative point subgroup."""

    class_id: int
    label: str
    point_class: int
    point_rep: frozenset[int]
    cocycle_orbit: tuple[int, ...]
    rep_cocycle: Cocycle
    order: int
    fixed_rank: int
    is_maximal: bool = False
    in_omega: bool = False
    flag_contractible: bool = False
    covers: tuple[int, ...] = ()  # ids of all classes strictly containing this one

    @property
    def has_zero_orbit(self) -> bool:
        """Whether this class contains the zero cocycle (i.e. is the class
        of the plain point subgroup sitting inside the point group)."""
        return 0 in self.cocycle_orbit


class Classification:
    """All conjugacy classes of finite subgroups of K acting on Z^n, plus
    the machinery to decide containment and to locate arbitrary
    complements among the classes."""

    def __init__(self, group: FiniteMatrixGroup, h1_cap: int = DEFAULT_H1_CAP):
        self.group = group
        self.crystal = Crystal(group)
        self.lattice: SubgroupLattice = subgroup_lattice(group)
        self.h1: dict[int, H1Data] = {}
        self.classes: list[GammaClass] = []
        self._containment: dict[tuple[int, int], bool] = {}
        self._build(h1_cap)

    # -- construction ----------------------------------------------------

    def _build(self, h1_cap: int) -> None:
        crystal = self.crystal
        raw: list[tuple[int, int, frozenset[int], tuple[int, ...], Cocycle]] = []
        for sc in self.lattice.classes:
            data = first_cohomology(crystal, sc.representative, h1_cap)
            self.h1[sc.class_id] = data
            orbits = normalizer_orbits(crystal, data, sc.normalizer)
            for orbit in orbits:
                rep = min((data.class_reps[i] for i in orbit),
                          key=lambda f: f.flat())
                raw.append((sc.order, sc.class_id, sc.representative, orbit, rep))
        raw.sort(key=lambda r: (r[0], r[1], r[4].flat()))
        per_order: dict[int, int] = {}
        for cid, (order, pcid, prep, orbit, rep) in enumerate(raw):
            idx = per_order.get(order, 0)
            per_order[order] = idx + 1
            self.classes.append(GammaClass(
                class_id=cid,
                label=f"C{order}#{idx}",
                point_class=pcid,
                point_rep=prep,
                cocycle_orbit=orbit,
                rep_cocycle=rep,
                order=order,
                fixed_rank=crystal.fixed_rank(prep),
            ))
        self._decorate()

    def _decorate(self) -> None:
        for c in self.classes:
            c.covers = tuple(
                d.class_id for d in self.classes
                if d.class_id != c.class_id and self.class_contained_in(c, d)
            )
        for c in self.classes:
            c.is_maximal = not c.covers
            c.in_omega = c.is_maximal and c.fixed_rank == 0
            c.flag_contractible = any(
                self.classes[j].fixed_rank == c.fixed_rank for j in c.covers
            )

    # -- containment -----------------------------------------------------

    def conjugation_witness(self, sub: frozenset[int], f: Cocycle,
                            g: Cocycle, k: int) -> Vec | None:
        """Translation a making (k, a) conjugate the complement of f into
        the complement of g, given that k carries f's point group into a
        subgroup of g's.  Solves the stacked system
        (h' - I).a = k.f(k^-1 h' k) - g(h') over h' in sub = f.subgroup^k.
        """
        moved = transport_cocycle(self.crystal, f, k)
        rhs_map = {h: vec_sub(moved.values[h], g.values[h]) for h in sub}
        if len(sub) == 1:
            return (0,) * self.crystal.rank
        solver = _translation_solver(self.crystal, sub)
        return solver.solve(translation_rhs(self.crystal, sub, rhs_map))

    def class_contained_in(self, c1: GammaClass, c2: GammaClass) -> bool:
        """Whether some conjugate of c1's representative is a subgroup of
        c2's representative."""
        if c1.class_id == c2.class_id:
            return True
        key = (c1.class_id, c2.class_id)
        cached = self._containment.get(key)
        if cached is not None:
            return cached
        result = False
        if c1.order < c2.order and c2.order % c1.order == 0:
            if c1.order == 1:
                result = True
            else:
                for k in range(self.group.order):
                    moved_sub = self.group.conjugate_set(c1.point_rep, k)
                    if not moved_sub <= c2.point_rep:
                        continue
                    g = restrict_cocycle(c2.rep_cocycle, moved_sub)
                    if self.conjugation_witness(moved_sub, c1.rep_cocycle,
                                                g, k) is not None:
                        result = True
                        break
        self._containment[key] = result
        return result

    # -- locating complements ---------------------------------------------

    def locate(self, f: Cocycle) -> GammaClass:
        """The class of the complement {(h, f(h))} of an arbitrary cocycle:
        transport the point group onto its class representative, identify
        the cohomology class, and find the orbit that contains it."""
        pcid, k = self.lattice.class_of(f.subgroup)
        moved = transport_cocycle(self.crystal, f, k)
        idx = self.h1[pcid].class_index(moved)
        for c in self.classes:
            if c.point_class == pcid and idx in c.cocycle_orbit:
                return c
        raise RuntimeError("orbit bookkeeping is inconsistent")

    def locate_gamma_subgroup(self, elements: frozenset[GammaElement]) -> GammaClass:
        """Class of a finite subgroup given by explicit elements."""
        points = frozenset(g.point for g in elements)
        if len(points) != len(elements):
            raise ValueError("not a complement: point projection not injective")
        values = {g.point: g.translation for g in elements}
        return self.locate(Cocycle(points, values))

    # -- reported invariants ----------------------------------------------

    @property
    def vcd(self) -> int:
        """Virtual cohomological dimension of the crystallographic group,
        which also equals its proper-action cohomological dimension."""
        return self.group.rank

    def omega_classes(self) -> list[GammaClass]:
        return [c for c in self.classes if c.in_omega]

    def a_count(self, point_class: int) -> int:
        """Number of classes of complements over the given point-group
        class that are maximal finite (the multiplicity a_F)."""
        return sum(1 for c in self.classes
                   if c.point_class == point_class and c.in_omega)

    def omega_self_normalizing(self, c: GammaClass) -> bool:
        """Check that the representative of a class in Omega is its own
        normalizer: no (k, a) outside it conjugates it to itself."""
        if not c.in_omega:
            raise ValueError("only meaningful for classes in Omega")
        sc = self.lattice.classes[c.point_class]
        f = c.rep_cocycle
        for k in sorted(sc.normalizer):
            witness = self.conjugation_witness(c.point_rep, f, f, k)
            if k in c.point_rep:
                if witness is None:
                    return False
                # C_A is trivial, so the witness is unique and must be the
                # translation part of the group element itself
                if witness != f.values[k]:
                    return False
            elif witness is not None:
                return False
        return True


def classify_finite_subgroups(group: FiniteMatrixGroup,
                              h1_cap: int = DEFAULT_H1_CAP) -> Classification:
    """Classify the finite subgroups of the crystallographic group built
    from the point group, decorated with maximality, Omega membership,
    fixed rank, and contractibility flags."""
    return Classification(group, h1_cap)
