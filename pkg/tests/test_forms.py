"""Differential forms over factored hyperplane denominators."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from osforest.exact import FRF
from osforest.forests import GroupElement, enumerate_forests, enumerate_trees, group_elements, parse_forest, parse_tree
from osforest.forms import (
    DifferentialForm,
    alpha_form,
    beta_bar_form,
    coefficient_rows,
    form_rank,
    monomial_times,
    nbc_chain_sides,
    omega_i,
    omega_ijq,
    realize_os,
    twisted_differential,
    unbreakable_factor,
    verify_action,
    verify_nbc_chain_identity,
    verify_pullback_identity,
    weight_form,
    wedge_all,
)
from osforest.local_system import admissible_forests

F = Fraction
HALF = F(1, 2)
MINUS_HALF = [-HALF] * 4


def inv(n, i, j):
    return FRF.inverse_hyperplane(n, i, j)


def top(coeff):
    return DifferentialForm.dz(4, 1, 2, 3, 4, coeff=coeff)


def z(i):
    e = [0, 0, 0, 0]
    e[i - 1] = 1
    return FRF.monomial(e)


NINE = [
    ("1->2;2->3;3->4*", z(2) * inv(4, 1, 2) * inv(4, 2, 3) * inv(4, 3, 4)),
    ("1->2;2->4*;3->4", z(2) * inv(4, 1, 2) * inv(4, 2, 4) * inv(4, 3, 4)),
    ("1->3;3->4*;2->4", z(3) * inv(4, 1, 3) * inv(4, 2, 4) * inv(4, 3, 4)),
    ("1->4*;3->4;2->3", z(3) * inv(4, 1, 4) * inv(4, 2, 3) * inv(4, 3, 4)),
    ("1->3;3->4*;2->3", z(3) * inv(4, 1, 3) * inv(4, 2, 3) * inv(4, 3, 4)),
    ("1->4*;3->4;2->4", z(4) * inv(4, 1, 4) * inv(4, 2, 4) * inv(4, 3, 4)),
    ("1->2*;3->4*", inv(4, 1, 2) * inv(4, 3, 4)),
    ("1->3*;2->4*", inv(4, 1, 3) * inv(4, 2, 4)),
    ("1->4*;2->3*", inv(4, 1, 4) * inv(4, 2, 3)),
]


@pytest.mark.parametrize("text, coeff", NINE, ids=[t for t, _ in NINE])
def test_nine_forest_table(text, coeff):
    f = parse_forest(text, n=4)
    assert beta_bar_form(f, MINUS_HALF) == top(coeff)


def test_nine_forests_are_the_top_degree_basis():
    got = {f for f in admissible_forests(MINUS_HALF) if f.degree == 4}
    assert got == {parse_forest(t, n=4) for t, _ in NINE}


def test_table_latex_row():
    f = parse_forest("1->2;2->3;3->4*")
    tex = beta_bar_form(f, MINUS_HALF).latex()
    assert tex.startswith("\\frac{z_{2}}{(z_{1}-z_{2})(z_{2}-z_{3})(z_{3}-z_{4})}")


# -- wedge and d ---------------------------------------------------------------------

def test_wedge_examples():
    w1 = omega_i(2, 1)
    assert (w1.wedge(w1)).is_zero()
    for q in (F(0), HALF, F(1, 3)):
        lhs = omega_ijq(2, 1, 2, q).wedge(omega_i(2, 2)) + omega_i(2, 1).wedge(omega_ijq(2, 2, 1, -q))
        assert lhs == omega_i(2, 1).wedge(omega_i(2, 2))


def test_d_examples():
    assert omega_i(3, 2).d().is_zero()
    assert omega_ijq(3, 1, 3, F(1, 3)).d().is_zero()
    form = DifferentialForm.dz(2, 2, coeff=FRF.monomial((1, 0)))
    assert form.d() == DifferentialForm.dz(2, 1, 2)


def test_twisted_differential_examples():
    form = DifferentialForm.dz(2, 1, coeff=FRF.monomial((0, 2)))
    assert twisted_differential([0, 0], form) == form.d()
    mono = DifferentialForm.scalar(3, FRF.monomial((-1, 2, 0)))
    assert twisted_differential([F(1), F(-2), F(0)], mono).is_zero()


def test_dz_sign_and_repeats():
    assert DifferentialForm.dz(3, 2, 1) == -DifferentialForm.dz(3, 1, 2)
    assert DifferentialForm.dz(3, 1, 1).is_zero()


def test_unbreakable_factor():
    lhs = unbreakable_factor(2, 1, 2)
    want = (omega_i(2, 1) - omega_i(2, 2)).scale(inv(2, 1, 2))
    assert lhs == want
    assert lhs.coefficient(1).evaluate((3, 5)) == F(1, 3) / (3 - 5)
    assert lhs.coefficient(2).evaluate((3, 5)) == -F(1, 5) / (3 - 5)


def test_weight_form():
    wf = weight_form([HALF, F(0), F(-1)])
    assert wf == omega_i(3, 1).scale(HALF) - omega_i(3, 3)


# -- realizations -------------------------------------------------------------------------

def test_alpha_examples():
    assert alpha_form(parse_forest("1;2*")) == omega_i(2, 2)
    assert alpha_form(parse_forest("1*;2*")) == omega_i(2, 1).wedge(omega_i(2, 2))
    assert realize_os({}, 3).is_zero()
    with pytest.raises(ValueError):
        realize_os({})


@pytest.mark.parametrize("r, n", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_alphas_are_independent_in_each_degree(r, n):
    for k in range(n):
        for l in range(n - k + 1):
            forms = [alpha_form(f) for f in enumerate_forests(r, n, k, l, rectified_only=True)]
            assert form_rank(forms) == len(forms)


def test_coefficient_rows_share_denominator():
    rows = coefficient_rows([omega_i(2, 1), omega_i(2, 1).scale(2)])
    assert {k: 2 * v for k, v in rows[0].items()} == rows[1]


# -- pullback ---------------------------------------------------------------------------------

def test_pullback_of_log_forms():
    assert omega_i(2, 1).pullback_power(3) == omega_i(2, 1).scale(3)
    lhs = omega_ijq(2, 1, 2).pullback_power(2)
    assert lhs == omega_ijq(2, 1, 2, 0) + omega_ijq(2, 1, 2, HALF)
    lhs3 = omega_ijq(3, 1, 3).pullback_power(3)
    assert lhs3 == omega_ijq(3, 1, 3, 0) + omega_ijq(3, 1, 3, F(1, 3)) + omega_ijq(3, 1, 3, F(2, 3))


def test_pullback_of_monomial_differential():
    form = DifferentialForm.dz(2, 1, coeff=FRF.monomial((1, 1)))
    got = form.pullback_power(2)
    assert got == DifferentialForm.dz(2, 1, coeff=FRF.monomial((3, 2), 2))


def test_pullback_commutes_with_d():
    form = DifferentialForm.dz(3, 2, coeff=FRF.monomial((2, 0, 1)) * inv(3, 1, 3))
    for r in (2, 3):
        assert form.d().pullback_power(r) == form.pullback_power(r).d()


@pytest.mark.parametrize(
    "text, a",
    [
        ("1->2", [HALF, HALF]),
        ("1->2*", [HALF, HALF]),
        ("1->2->3*", [F(1, 3)] * 3),
        ("1->3;2->3", [F(1, 3)] * 3),
    ],
)
def test_pullback_identity_examples(text, a):
    assert verify_pullback_identity(parse_forest(text, n=len(a)), a)


def test_pullback_identity_with_r_one_is_monomial_times_alpha():
    a = [F(1), F(-2), F(0)]
    for f in admissible_forests(a):
        want = monomial_times([-1, 2, 0], alpha_form(f))
        assert beta_bar_form(f, a) == want
        assert verify_pullback_identity(f, a)


def test_beta_bar_rejects_non_admissible():
    with pytest.raises(ValueError):
        beta_bar_form(parse_forest("1;2"), [HALF, HALF])


# -- closedness ----------------------------------------------------------------------------------

@pytest.mark.parametrize("a", [[HALF] * 3 + [F(-1, 2)], [F(1, 3)] * 3, [HALF, HALF, F(-1), F(0)]])
def test_beta_bar_is_twisted_closed(a):
    for f in admissible_forests(a):
        assert twisted_differential(a, beta_bar_form(f, a)).is_zero(), f.text()


# -- chain identity --------------------------------------------------------------------------------

def test_chain_identity_two_vertices():
    lhs, rhs = nbc_chain_sides(parse_tree("1->2"))
    assert lhs == omega_ijq(2, 1, 2)
    assert rhs == DifferentialForm.dz(2, 1, coeff=inv(2, 1, 2)) + DifferentialForm.dz(2, 2, coeff=-inv(2, 1, 2))


@pytest.mark.parametrize("t", list(enumerate_trees(1, 4, rectified_only=True)), ids=lambda t: t.text())
def test_chain_identity(t):
    assert verify_nbc_chain_identity(t)


def test_chain_identity_rejects_labels():
    with pytest.raises(ValueError):
        nbc_chain_sides(parse_tree("1->2", r=2))


# -- action ---------------------------------------------------------------------------------------------

def test_action_by_transposition():
    g = GroupElement.from_perm((2, 1))
    assert omega_i(2, 2).act(g) == omega_i(2, 1)


@given(st.sampled_from(list(group_elements(2, 3))), st.sampled_from(list(enumerate_forests(2, 3))))
def test_action_on_alpha(g, f):
    assert verify_action(g, f)


@given(st.sampled_from(list(group_elements(3, 2))), st.sampled_from(list(group_elements(3, 2))))
def test_action_on_forms_composes(g, h):
    form = omega_ijq(2, 1, 2, F(1, 3)).wedge(omega_i(2, 2)) + DifferentialForm.dz(2, 1, coeff=FRF.monomial((2, 0)))
    assert form.act(g * h) == form.act(h).act(g)


def test_wedge_all_empty():
    assert wedge_all(2, []) == DifferentialForm.scalar(2, 1)


def test_closedness_detects_wrong_weights():
    a = [HALF] * 4
    wrong = [HALF, HALF, HALF, -HALF]
    lower = [f for f in admissible_forests(a) if f.degree < 4]
    failures = sum(not twisted_differential(wrong, beta_bar_form(f, a)).is_zero() for f in lower)
    assert failures > 0
