"""Assembly of the equivariant Euler class in the Grothendieck group of
proper orbit types, and its orbifold / quotient / string specializations.

The class is a sum of blocks, one for each conjugacy class F of maximal
finite subgroups with trivial fixed lattice: the block contributes [G/F]
plus, for every subgroup H < F with nontrivial fixed lattice, the reduced
Euler characteristic of the branch poset between them weighted by
1/|N_F(H):H| (collecting H up to F-conjugacy) or equivalently by 1/|F:H|
(per individual subgroup).  Both weightings are computed and must agree;
the final coefficients are integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classify import Classification, GammaClass
from .cohom1 import restrict_cocycle
from .orderposet import build_branch_poset, reduced_euler_characteristic


class AssemblyError(Exception):
    pass


@dataclass(frozen=True)
class BurnsideElement:
    """Formal rational combination of orbit types, keyed by class id.
    Zero coefficients are dropped, so equal elements compare equal."""

    coefficients: dict[int, Fraction] = field(default_factory=dict)

    @staticmethod
    def of(pairs) -> "BurnsideElement":
        coeffs: dict[int, Fraction] = {}
        for cid, w in pairs:
            w = Fraction(w)
            if w:
                coeffs[cid] = coeffs.get(cid, Fraction(0)) + w
                if not coeffs[cid]:
                    del coeffs[cid]
        return BurnsideElement({k: coeffs[k] for k in sorted(coeffs)})

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        return BurnsideElement.of(
            list(self.coefficients.items()) + list(other.coefficients.items())
        )

    def scaled(self, factor) -> "BurnsideElement":
        return BurnsideElement.of(
            (cid, Fraction(factor) * w) for cid, w in self.coefficients.items()
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, BurnsideElement) and \
            self.coefficients == other.coefficients

    def is_integral(self) -> bool:
        return all(w.denominator == 1 for w in self.coefficients.values())


def conjugacy_buckets(classification: Classification,
                      ambient: frozenset[int]) -> list[frozenset[int]]:
    """Representatives of the ambient-conjugacy classes of proper
    subgroups of ``ambient``, canonically chosen."""
    group = classification.group
    inside = [s for s in classification.lattice.subgroups if s < ambient]
    key = lambda s: (len(s), tuple(sorted(s)))
    reps = []
    seen: set[frozenset[int]] = set()
    for s in sorted(inside, key=key):
        if s in seen:
            continue
        orbit = {group.conjugate_set(s, k) for k in ambient}
        seen |= orbit
        reps.append(min(orbit, key=key))
    return reps


def block_per_conjugacy(classification: Classification,
                        omega_class: GammaClass) -> BurnsideElement:
    """Block of one maximal class, summing subgroups up to F-conjugacy
    with weight e(branch poset) / |N_F(H):H|."""
    crystal = classification.crystal
    group = classification.group
    fbar = omega_class.point_rep
    f = omega_class.rep_cocycle
    terms = [(omega_class.class_id, Fraction(1))]
    for sub in conjugacy_buckets(classification, fbar):
        if crystal.fixed_rank(sub) < 1:
            continue
        poset = build_branch_poset(crystal, sub, fbar,
                                   classification.lattice.subgroups)
        e = reduced_euler_characteristic(poset)
        if e == 0:
            continue
        norm_in_f = sum(
            1 for k in fbar if group.conjugate_set(sub, k) == sub
        )
        weight = Fraction(e * len(sub), norm_in_f)
        target = classification.locate(restrict_cocycle(f, sub))
        terms.append((target.class_id, weight))
    return BurnsideElement.of(terms)


def block_per_subgroup(classification: Classification,
                       omega_class: GammaClass) -> BurnsideElement:
    """The same block summed over every individual subgroup H < F with
    weight e(branch poset) / |F:H|."""
    crystal = classification.crystal
    fbar = omega_class.point_rep
    f = omega_class.rep_cocycle
    terms = [(omega_class.class_id, Fraction(1))]
    for sub in classification.lattice.subgroups:
        if not sub < fbar or crystal.fixed_rank(sub) < 1:
            continue
        poset = build_branch_poset(crystal, sub, fbar,
                                   classification.lattice.subgroups)
        e = reduced_euler_characteristic(poset)
        if e == 0:
            continue
        weight = Fraction(e * len(sub), len(fbar))
        target = classification.locate(restrict_cocycle(f, sub))
        terms.append((target.class_id, weight))
    return BurnsideElement.of(terms)


def euler_class_per_conjugacy(classification: Classification) -> BurnsideElement:
    total = BurnsideElement()
    for c in classification.omega_classes():
        total = total + block_per_conjugacy(classification, c)
    return total


def euler_class_per_subgroup(classification: Classification) -> BurnsideElement:
    total = BurnsideElement()
    for c in classification.omega_classes():
        total = total + block_per_subgroup(classification, c)
    return total


def equivariant_euler_class(classification: Classification) -> BurnsideElement:
    """The equivariant Euler class of the classifying space for proper
    actions, computed by both weightings, cross-checked, and verified to
    have integer coefficients."""
    chi = euler_class_per_conjugacy(classification)
    chi2 = euler_class_per_subgroup(classification)
    if chi != chi2:
        raise AssemblyError("per-conjugacy and per-subgroup assemblies differ")
    if not chi.is_integral():
        raise AssemblyError("non-integral coefficient")
    return chi


def specialize(chi: BurnsideElement, kind: str,
               classification: Classification) -> Fraction:
    """Evaluate the Euler class at one of the standard weightings:

    - ``orbifold``: [G/H] -> 1/|H| (always 0 for these groups)
    - ``quotient``: [G/H] -> 1 (Euler characteristic of the quotient space)
    - ``string``:   [G/H] -> number of conjugacy classes of H
    """
    total = Fraction(0)
    for cid, w in chi.coefficients.items():
        c = classification.classes[cid]
        if kind == "orbifold":
            total += w / c.order
        elif kind == "quotient":
            total += w
        elif kind == "string":
            sc = classification.lattice.classes[c.point_class]
            total += w * sc.element_class_count
        else:
            raise ValueError(f"unknown specialization {kind!r}")
    return total


SPECIALIZATIONS = ("orbifold", "quotient", "string")


def grouped_by_point_class(chi: BurnsideElement,
                           classification: Classification) -> dict[int, Fraction]:
    """Total coefficient per point-group class (every point class listed,
    zeros included).  This is the coarsened form in which the multiplicity
    of each maximal point group appears as a single coefficient."""
    out = {sc.class_id: Fraction(0) for sc in classification.lattice.classes}
    for cid, w in chi.coefficients.items():
        out[classification.classes[cid].point_class] += w
    return out
