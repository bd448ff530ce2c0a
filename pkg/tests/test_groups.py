from math import factorial

import pytest
import sympy
from sympy.combinatorics.named_groups import SymmetricGroup

from osforest.characters import Block, SubgroupSpec, wreath_summand_spec
from osforest.exact import Cyclotomic
from osforest.forests import GroupElement
from osforest.groups import (
    InconsistentCharacter,
    WreathGroup,
    YoungSubgroup,
    generate_subgroup,
    hook_length_dimension,
    induce,
    induce_bruteforce,
    irreducible,
    label_text,
    linear_class_function,
    mn_character,
    multipartitions,
    partitions,
    restrict,
    subgroup_inner,
    trivial_class_function,
)


@pytest.mark.parametrize("n", range(1, 9))
def test_partition_counts(n):
    assert len(partitions(n)) == int(sympy.partition(n))


def test_multipartition_count():
    # number of conjugacy classes of W(2,3) is 10
    assert len(multipartitions(2, 3)) == 10


@pytest.mark.parametrize("r, n", [(1, 4), (2, 3), (3, 2), (2, 4)])
def test_class_sizes_partition_the_group(r, n):
    group = WreathGroup(r, n)
    assert sum(group.class_size(c) for c in group.classes()) == group.order
    seen = {}
    for g in group.elements():
        lab = group.label_of(g)
        seen[lab] = seen.get(lab, 0) + 1
    assert seen == {c: group.class_size(c) for c in group.classes()}
    for c in group.classes():
        assert group.label_of(group.representative(c)) == c


def test_young_subgroup():
    y = YoungSubgroup([(1, 2), (3, 4)])
    elems = list(y.elements())
    assert len(elems) == y.order == 4
    assert sum(y.class_size(c) for c in y.classes()) == 4
    assert all(y.contains(g) for g in elems)
    assert not y.contains(GroupElement.from_perm((3, 2, 1, 4)))


def test_mn_examples():
    assert all(mn_character((4,), mu) == 1 for mu in partitions(4))
    assert mn_character((1, 1, 1, 1), (2, 1, 1)) == -1
    assert mn_character((3, 1), (1, 1, 1, 1)) == 3
    with pytest.raises(ValueError):
        mn_character((2,), (1, 1, 1))


@pytest.mark.parametrize("n", range(1, 7))
def test_dimensions_match_hook_length(n):
    for lam in partitions(n):
        assert mn_character(lam, (1,) * n) == hook_length_dimension(lam)
    assert sum(hook_length_dimension(lam) ** 2 for lam in partitions(n)) == factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_column_orthogonality(n):
    group = WreathGroup(1, n)
    lams = partitions(n)
    for mu in lams:
        for nu in lams:
            s = sum(mn_character(lam, mu) * mn_character(lam, nu) for lam in lams)
            assert s == (group.centralizer_order(mu) if mu == nu else 0)


@pytest.mark.parametrize("n", range(1, 6))
def test_row_orthogonality(n):
    chars = [irreducible(lam) for lam in partitions(n)]
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            assert a.inner(b) == (1 if i == j else 0)


def test_mn_against_sympy_permutation_signs():
    # the sign character through an independent permutation implementation
    for p in SymmetricGroup(4).generate():
        cyc = sorted((len(c) for c in p.full_cyclic_form), reverse=True)
        assert mn_character((1, 1, 1, 1), cyc) == p.signature()


def test_generate_subgroup_and_consistency():
    ident = GroupElement.identity(1, 3)
    cyc = GroupElement.from_perm((2, 3, 1))
    h = generate_subgroup([(cyc, Cyclotomic.zeta(3))], ident)
    assert len(h) == 3
    with pytest.raises(InconsistentCharacter):
        generate_subgroup([(cyc, -1)], ident)


def test_cyclic_two_induces_sign():
    spec = SubgroupSpec(1, 2, [[Block((1, 2))]], [False])
    chi = induce(WreathGroup(1, 2), spec.subgroup())
    assert chi == linear_class_function(WreathGroup(1, 2), "eps")


@pytest.mark.parametrize(
    "spec",
    [
        SubgroupSpec(1, 4, [[Block((1, 2, 3, 4))]], [False]),
        SubgroupSpec(1, 4, [[Block((1, 2)), Block((3, 4))]], [True]),
        wreath_summand_spec(2, 3, (1,), (2,)),
        wreath_summand_spec(2, 3, (1, 1, 1), ()),
        wreath_summand_spec(3, 2, (), (2,)),
    ],
)
def test_class_sum_induction_matches_bruteforce(spec):
    group = WreathGroup(spec.r, spec.n)
    h = spec.subgroup()
    assert induce(group, h) == induce_bruteforce(group, h)


@pytest.mark.parametrize(
    "spec",
    [
        SubgroupSpec(1, 4, [[Block((1, 2, 3, 4))]], [False]),
        SubgroupSpec(1, 4, [[Block((1, 2)), Block((3, 4))]], [True]),
        SubgroupSpec(1, 3, [[Block((1, 2)), Block((3,))]], [False]),
    ],
)
def test_frobenius_reciprocity(spec):
    group = WreathGroup(1, spec.n)
    h = spec.subgroup()
    ind = induce(group, h)
    for lam in partitions(spec.n):
        theta = irreducible(lam)
        assert ind.inner(theta) == subgroup_inner(h, restrict(theta, h))


def test_frobenius_reciprocity_in_wreath_group():
    spec = wreath_summand_spec(2, 3, (1,), (2,))
    group = WreathGroup(2, 3)
    h = spec.subgroup()
    ind = induce(group, h)
    for name in ("eps", "prod", "det"):
        lin = linear_class_function(group, name)
        assert ind.inner(lin) == subgroup_inner(h, restrict(lin, h))


def test_class_function_algebra():
    group = WreathGroup(2, 2)
    triv = trivial_class_function(group)
    prod = linear_class_function(group, "prod")
    assert (triv + prod).degree() == 2
    assert (prod * prod) == triv
    assert (triv - triv).inner(triv) == 0
    assert label_text(((2,), ())) == "2|-"
    with pytest.raises(ValueError):
        (triv + prod).decompose()


def test_decompose_in_symmetric_group():
    group = WreathGroup(1, 3)
    regular = {lab: (6 if lab == (1, 1, 1) else 0) for lab in group.classes()}
    from osforest.groups import ClassFunction

    dec = ClassFunction(group, regular).decompose()
    assert dec == {(3,): 1, (2, 1): 2, (1, 1, 1): 1}
