"""Finite-subgroup classification and equivariant Euler classes of
crystallographic groups built from a finite integer matrix group acting
on its translation lattice."""

from .assemble import (
    BurnsideElement,
    SPECIALIZATIONS,
    equivariant_euler_class,
    euler_class_per_conjugacy,
    euler_class_per_subgroup,
    grouped_by_point_class,
    specialize,
)
from .classify import Classification, GammaClass, classify_finite_subgroups
from .cohom1 import (
    Cocycle,
    H1Data,
    coboundary_witness,
    complement_subgroup,
    first_cohomology,
    normalizer_orbits,
)
from .crystal import Crystal, GammaElement
from .intlinalg import (
    AbelianInvariants,
    LatticeBasis,
    hermite_normal_form,
    kernel_lattice,
    smith_normal_form,
    solve_linear,
)
from .matgroup import (
    FiniteMatrixGroup,
    SubgroupClass,
    close_group,
    element_class_count,
    subgroup_classes,
    subgroup_lattice,
)
from .orderposet import (
    FinitePoset,
    build_branch_poset,
    is_directed,
    reduced_euler_characteristic,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "BurnsideElement",
    "Classification",
    "Cocycle",
    "Crystal",
    "FiniteMatrixGroup",
    "FinitePoset",
    "GammaClass",
    "GammaElement",
    "H1Data",
    "LatticeBasis",
    "SPECIALIZATIONS",
    "SubgroupClass",
    "classify_finite_subgroups",
    "close_group",
    "coboundary_witness",
    "complement_subgroup",
    "element_class_count",
    "equivariant_euler_class",
    "euler_class_per_conjugacy",
    "euler_class_per_subgroup",
    "first_cohomology",
    "grouped_by_point_class",
    "hermite_normal_form",
    "is_directed",
    "kernel_lattice",
    "normalizer_orbits",
    "build_branch_poset",
    "reduced_euler_characteristic",
    "smith_normal_form",
    "solve_linear",
    "specialize",
    "subgroup_classes",
    "subgroup_lattice",
    "__version__",
]
