from itertools import combinations

import pytest

import groups

from orbichi.matgroup import (
    NonUnimodularGeneratorError,
    NotASubgroupError,
    OrderCapExceededError,
    all_subgroups,
    close_group,
    element_class_count,
    generating_ids,
    subgroup_classes,
    subgroup_lattice,
)


def test_close_group_examples(kummer, a5):
    assert kummer.order == 2
    assert a5.order == 60
    trivial = close_group(3, [])
    assert trivial.order == 1


def test_close_group_rejects_bad_input():
    with pytest.raises(NonUnimodularGeneratorError):
        close_group(2, [((2, 0), (0, 1))])
    with pytest.raises(OrderCapExceededError):
        close_group(2, [((1, 1), (0, 1))])


def test_group_tables_are_consistent(s3):
    e = s3.identity
    for a in range(s3.order):
        assert s3.mult[a][e] == a and s3.mult[e][a] == a
        assert s3.mult[a][s3.inv[a]] == e
        for b in range(s3.order):
            for c in range(s3.order):
                assert s3.mult[s3.mult[a][b]][c] == s3.mult[a][s3.mult[b][c]]


def test_canonical_element_order_is_stable(s3):
    rebuilt = close_group(2, [groups.S3_Y, groups.S3_X])
    assert rebuilt.elements == s3.elements
    assert rebuilt.mult == s3.mult


def test_subgroup_classes_small():
    c2 = groups.kummer_group()
    assert [c.order for c in subgroup_classes(c2)] == [1, 2]


def test_subgroup_classes_s3(s3):
    classes = subgroup_classes(s3)
    assert [c.order for c in classes] == [1, 2, 3, 6]
    assert [c.conjugates_count for c in classes] == [1, 3, 1, 1]
    assert [c.element_class_count for c in classes] == [1, 2, 3, 3]


def test_subgroup_classes_a5(a5):
    classes = subgroup_classes(a5)
    assert [c.order for c in classes] == [1, 2, 3, 4, 5, 6, 10, 12, 60]
    assert [c.conjugates_count for c in classes] == [1, 15, 10, 5, 6, 10, 6, 5, 1]
    assert sum(c.conjugates_count for c in classes) == 59
    full = next(c for c in classes if c.order == 60)
    assert full.element_class_count == 5


def brute_force_subgroups(group):
    """Independent oracle: close every generating set of size <= 4."""
    found = {frozenset({group.identity})}
    ids = range(group.order)
    for size in range(1, 5):
        for seed in combinations(ids, size):
            found.add(group.closure(frozenset(seed)))
    return found


@pytest.mark.parametrize("label,rank,gens", [
    ("s3", 2, [groups.S3_X, groups.S3_Y]),
    ("d4", 2, [groups.U_ROT4, groups.MIRROR2]),
    ("d6", 2, [groups.ROT6, groups.SWAP2]),
    ("c2c2c2", 3, [groups.DIAG_MPP,
                   ((1, 0, 0), (0, -1, 0), (0, 0, 1)),
                   ((1, 0, 0), (0, 1, 0), (0, 0, -1))]),
    ("s3perm_x_c2", 3, [groups.PERM3_12, groups.PERM3_123,
                        groups.NEG_I3]),
])
def test_subgroup_enumeration_against_brute_force(label, rank, gens):
    group = close_group(rank, gens)
    assert group.order <= 24
    subs = set(all_subgroups(group))
    assert subs == brute_force_subgroups(group)
    classes = subgroup_classes(group)
    assert sum(c.conjugates_count for c in classes) == len(subs)


def test_normalizer_and_lagrange_properties(a5):
    classes = subgroup_classes(a5)
    for c in classes:
        assert a5.order % c.order == 0
        assert c.representative <= c.normalizer
        for k in c.normalizer:
            assert a5.conjugate_set(c.representative, k) == c.representative
        assert c.conjugates_count == a5.order // len(c.normalizer)


def test_lattice_lookup_maps_onto_representative(a5):
    lattice = subgroup_lattice(a5)
    for sub in lattice.subgroups:
        cid, k = lattice.class_of(sub)
        rep = lattice.classes[cid].representative
        assert a5.conjugate_set(sub, k) == rep
    with pytest.raises(NotASubgroupError):
        lattice.class_of(frozenset({1, 2, 3}) - {a5.identity})


def test_element_class_count_validates_input(s3):
    with pytest.raises(NotASubgroupError):
        element_class_count(frozenset({min(set(range(s3.order)) - {s3.identity})}),
                            s3)
    assert element_class_count(frozenset({s3.identity}), s3) == 1


def test_element_class_count_abelian_equals_order():
    v4 = close_group(2, [groups.NEG_I2, groups.MIRROR2])
    assert v4.order == 4
    assert element_class_count(frozenset(range(4)), v4) == 4


def test_generating_ids_generate(a5):
    lattice = subgroup_lattice(a5)
    for c in lattice.classes:
        gens = generating_ids(a5, c.representative)
        assert a5.closure(frozenset(gens)) == c.representative
        assert len(gens) <= 2
