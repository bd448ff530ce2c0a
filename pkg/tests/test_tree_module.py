"""Rectification, chain expansion and group-algebra identities on tree modules."""
import itertools
from fractions import Fraction

import pytest
import sympy

from osforest.forests import GroupElement, enumerate_trees, parse_tree
from osforest.tree_module import (
    act_module,
    annihilator_check,
    chain_expand,
    chain_expand_bruteforce,
    chain_T0,
    chains_to_module,
    check_relations,
    decompose_by_Z,
    dimension_certificate,
    module_trace,
    p_tree_inverse,
    realization_rank,
    realize_r1,
    rectified_basis,
    rectify_tree,
    shuffle_representatives,
    verify_ls_identity,
)

Z = sympy.symbols("z1:5")


def _inverse_p(t, zs):
    out = sympy.Integer(1)
    for i, j, _ in t.edges():
        out /= zs[i - 1] - zs[j - 1]
    return out


def sympy_rectify(t):
    """Independent route: solve 1/p_T = sum c_S / p_S over rectified S with sympy."""
    n = t.n
    zs = Z[:n]
    basis = rectified_basis(1, n)
    cs = sympy.symbols(f"c0:{len(basis)}")
    expr = sum(c * _inverse_p(s, zs) for c, s in zip(cs, basis)) - _inverse_p(t, zs)
    num = sympy.numer(sympy.together(expr))
    eqs = sympy.Poly(sympy.expand(num), *zs).coeffs()
    sol = sympy.solve(eqs, cs, dict=True)[0]
    return {s: Fraction(str(sol[c])) for c, s in zip(cs, basis) if sol[c] != 0}


def test_rectified_tree_is_fixed():
    t = parse_tree("1->3;2->3")
    assert rectify_tree(t) == {t: 1}


def test_two_vertex_reversal():
    assert rectify_tree(parse_tree("2->1")) == {parse_tree("1->2"): -1}


@pytest.mark.parametrize("t", list(enumerate_trees(1, 3)), ids=lambda t: t.text())
def test_rectify_matches_sympy_solution(t):
    assert rectify_tree(t) == sympy_rectify(t)


@pytest.mark.parametrize("t", list(enumerate_trees(1, 4))[::7], ids=lambda t: t.text())
def test_rectify_realizes_inverse_product(t):
    assert realize_r1(rectify_tree(t)) == p_tree_inverse(t)


def test_realization_examples():
    t0 = parse_tree("1->2")
    f = realize_r1({t0: 1})
    assert f.evaluate((3, 1)) == Fraction(1, 2)
    assert realize_r1({}, n=2).is_zero()
    assert realize_r1(rectify_tree(parse_tree("2->1"))) == p_tree_inverse(parse_tree("2->1"))
    with pytest.raises(ValueError):
        realize_r1({parse_tree("1->2", r=2): 1})


@pytest.mark.parametrize("n", [2, 3, 4])
def test_realization_rank_is_full(n):
    assert realization_rank(n) == len(rectified_basis(1, n))


def test_decompose_by_diagonal():
    zeta, base = decompose_by_Z(chain_T0(3, 3))
    assert zeta == (0, 0, 0) and base == chain_T0(3, 3)
    zeta, base = decompose_by_Z(parse_tree("1->2[e1]", r=2))
    assert zeta == (1, 0)
    assert base == parse_tree("1->2", r=2)


@pytest.mark.parametrize("r, n", [(1, 3), (2, 3), (1, 4), (3, 2)])
def test_decompose_reconstructs(r, n):
    for t in enumerate_trees(r, n):
        zeta, base = decompose_by_Z(t)
        assert zeta[-1] == 0 and not any(base.label)
        assert GroupElement.diagonal(r, zeta).act(base) == t


def test_chain_expansion_examples():
    assert chain_expand(chain_T0(1, 3)) == {((0, 0, 0), (1, 2, 3)): 1}
    assert chain_expand(parse_tree("1->3;2->3")) == {((0, 0, 0), (1, 2, 3)): 1, ((0, 0, 0), (2, 1, 3)): 1}


@pytest.mark.parametrize("r, n", [(1, 4), (2, 3), (3, 2)])
def test_chain_expansion_matches_bruteforce(r, n):
    for t in enumerate_trees(r, n, rectified_only=True):
        assert chain_expand(t) == chain_expand_bruteforce(t)


@pytest.mark.parametrize("r, n", [(1, 3), (2, 3)])
def test_chain_expansion_is_consistent_with_rectification(r, n):
    cache = {}
    for t in enumerate_trees(r, n, rectified_only=True):
        assert chains_to_module(r, chain_expand(t), cache) == {t: 1}


def test_identity_acts_trivially():
    v = {chain_T0(2, 3): 2, parse_tree("1->3[e1];2->3", r=2): -1}
    assert act_module(GroupElement.identity(2, 3), v) == v


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_lehrer_solomon_identity(n):
    cache = {}
    assert all(verify_ls_identity(n, p, cache) for p in range(n))


def test_lehrer_solomon_bounds():
    with pytest.raises(ValueError):
        verify_ls_identity(3, 3)


def test_longest_element_on_chain():
    n = 4
    w0 = tuple(range(n, 0, -1))
    v = act_module(GroupElement.from_perm(w0), {chain_T0(1, n): 1})
    assert v == {chain_T0(1, n): (-1) ** (n - 1)}


def test_shuffle_sum_annihilates_small_case():
    reps = shuffle_representatives(2, 1)
    out = {}
    for w in reps:
        for t, c in act_module(GroupElement.from_perm(w), {chain_T0(1, 2): 1}).items():
            out[t] = out.get(t, 0) + c
    assert all(c == 0 for c in out.values())
    assert len(shuffle_representatives(4, 2)) == 6


@pytest.mark.parametrize("r, n", [(1, 3), (1, 4), (2, 3), (3, 3)])
def test_annihilator(r, n):
    assert annihilator_check(r, n)


@pytest.mark.parametrize("r, n", [(1, 3), (2, 2), (2, 3), (3, 2)])
def test_relations_and_dimension(r, n):
    checked, failed = check_relations(r, n)
    assert checked > 0 and failed == 0
    cert = dimension_certificate(r, n)
    assert cert["dimension"] == r ** (n - 1) * sympy.factorial(n - 1)
    assert cert["rectified_fixed"] and cert["images_in_span"]


def test_module_trace_at_identity_is_dimension():
    for r, n in [(1, 4), (2, 3)]:
        assert module_trace(GroupElement.identity(r, n), r, n) == len(rectified_basis(r, n))


def test_module_trace_is_class_function():
    r, n = 2, 3
    perms = list(itertools.permutations(range(1, n + 1)))
    g = GroupElement(r, (1, 0, 0), (2, 3, 1))
    h = GroupElement(r, (0, 1, 1), perms[3])
    conj = h * g * h.inverse()
    assert module_trace(g, r, n) == module_trace(conj, r, n)
