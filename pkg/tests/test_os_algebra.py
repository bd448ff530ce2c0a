from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from osforest.forests import GroupElement, enumerate_forests, group_elements, parse_forest
from osforest.forms import alpha_form, omega_i, omega_ijq, realize_os, verify_action
from osforest.groups import WreathGroup, linear_class_function, trivial_class_function
from osforest.os_algebra import (
    act_os,
    filtration_respected,
    forest_relation_instances,
    graded_dimension,
    induction_decomposition,
    open_between_sign,
    os_character,
    poincare_coefficients,
    rectified_shape_count,
    reduce_alpha,
    reduce_element,
    SizeGuardError,
)
from osforest.verify import two_two_table

HALF = Fraction(1, 2)


@pytest.mark.parametrize("text, form", two_two_table(), ids=[t for t, _ in two_two_table()])
def test_two_two_catalog(text, form):
    f = parse_forest(text, n=2, r=2)
    assert alpha_form(f) == form
    assert realize_os(reduce_alpha(f), 2) == form


def test_catalog_has_twelve_distinct_forests():
    texts = [t for t, _ in two_two_table()]
    assert len(set(texts)) == 12
    assert {parse_forest(t, n=2, r=2) for t in texts} == set(enumerate_forests(2, 2))


def test_unrectified_edge_reduces_with_sign():
    for e in (0, 1):
        f = parse_forest(f"2->1[e{e}]", r=2)
        assert reduce_alpha(f) == {parse_forest(f"1->2[e{(-e) % 2}]", r=2): -1}
    assert omega_ijq(2, 2, 1, HALF) == omega_ijq(2, 1, 2, HALF)
    assert omega_ijq(3, 2, 1, Fraction(1, 3)) == omega_ijq(3, 1, 2, Fraction(2, 3))


def test_rectified_forest_is_its_own_reduction():
    for f in enumerate_forests(2, 3, rectified_only=True):
        assert reduce_alpha(f) == {f: 1}
    assert reduce_element({}) == {}


@pytest.mark.parametrize("r, n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_reduction_agrees_with_form_arithmetic(r, n):
    cache = {}
    for f in enumerate_forests(r, n):
        assert realize_os(reduce_alpha(f, cache=cache), n) == alpha_form(f), f.text()


def test_open_reversal_sign_counts_open_roots_between():
    f = parse_forest("3->1;2", r=1)
    assert open_between_sign(f, 3, 1) == -1
    assert open_between_sign(parse_forest("2->1;3"), 2, 1) == 1


@pytest.mark.parametrize("r, n", [(1, 3), (2, 2), (2, 3)])
def test_defining_relations_vanish(r, n):
    cache = {}
    for kind, terms in forest_relation_instances(r, n):
        total = {}
        for f, c in terms:
            for g, d in reduce_alpha(f, cache=cache).items():
                total[g] = total.get(g, 0) + c * d
        assert all(v == 0 for v in total.values()), (kind, [t.text() for t, _ in terms])


@pytest.mark.parametrize("r, n", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_filtration(r, n):
    assert filtration_respected(r, n)


# -- dimensions ------------------------------------------------------------------

def test_two_two_graded_dimensions():
    dims = {(k, l): graded_dimension(2, 2, k, l) for k in range(2) for l in range(3) if k + l <= 2}
    assert dims == {(0, 0): 1, (1, 0): 2, (0, 1): 2, (1, 1): 2, (0, 2): 1}


@pytest.mark.parametrize("r, n", [(1, 3), (1, 4), (2, 3), (3, 3), (2, 4)])
def test_graded_dimensions_sum_to_poincare(r, n):
    coeffs = poincare_coefficients(r, n)
    for p, c in enumerate(coeffs):
        total = sum(graded_dimension(r, n, k, p - k) for k in range(0, min(p, n - 1) + 1))
        assert total == c
        assert total == sum(rectified_shape_count(r, n, k, p - k) for k in range(0, min(p, n - 1) + 1))


def test_poincare_polynomial():
    assert poincare_coefficients(2, 2) == [1, 4, 3]
    assert sum(poincare_coefficients(3, 4)) == 2 * 5 * 8 * 11


# -- characters of graded pieces ---------------------------------------------------

def test_two_two_characters():
    group = WreathGroup(2, 2)
    triv = trivial_class_function(group)
    prod = linear_class_function(group, "prod")
    eps = linear_class_function(group, "eps")
    assert os_character(2, 2, 1, 0) == triv + prod
    assert os_character(2, 2, 0, 2) == eps


@pytest.mark.parametrize("r, n", [(1, 3), (2, 3)])
def test_character_degree_is_dimension(r, n):
    for k in range(n):
        for l in range(n - k + 1):
            assert os_character(r, n, k, l).degree() == graded_dimension(r, n, k, l)


def test_character_size_guard():
    with pytest.raises(SizeGuardError):
        os_character(3, 5, 1, 0, guard=1000)


W23 = list(group_elements(2, 3))
F23 = list(enumerate_forests(2, 3))


@given(st.sampled_from(W23), st.sampled_from(W23), st.sampled_from(F23))
def test_action_on_algebra_composes(g, h, f):
    x = {f: 1}
    assert act_os(g * h, x) == act_os(g, act_os(h, x))


@given(st.sampled_from(list(group_elements(2, 2))), st.sampled_from(list(enumerate_forests(2, 2))))
def test_action_matches_substitution(g, f):
    assert verify_action(g, f)


def test_action_example_swap_on_closed_root():
    f = parse_forest("1;2*")
    g = GroupElement.from_perm((2, 1))
    assert realize_os(act_os(g, {f: 1}), 2) == omega_i(2, 1)


# -- induction data -----------------------------------------------------------------

def test_induction_summands():
    one = induction_decomposition(2, 2, 1, 0)
    assert [(s["open_blocks"], s["closed_blocks"]) for s in one] == [([2], [])]
    two = induction_decomposition(2, 2, 0, 1)
    assert [(s["open_blocks"], s["closed_blocks"]) for s in two] == [([1], [1])]
    three = induction_decomposition(1, 3, 2, 0)
    assert [(s["open_blocks"], s["closed_blocks"]) for s in three] == [([3], [])]
