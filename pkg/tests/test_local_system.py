import itertools
from fractions import Fraction
from math import gcd

import pytest

from osforest.exact import Cyclotomic, EchelonBasis, root_of_unity
from osforest.forests import GroupElement, parse_forest
from osforest.groups import WreathGroup, YoungSubgroup
from osforest.local_system import (
    WeightVector,
    admissible_forests,
    b_exponents,
    b_exponents_orientation_free,
    beta_element,
    beta_element_bruteforce,
    beta_relation_instances,
    betti_numbers,
    breakable_edges,
    is_admissible,
    is_breakable,
    is_resonant,
    isotypic_character,
    isotypic_trace_via_cover,
    module_generator_candidates,
    module_generators,
)
from osforest.os_algebra import SizeGuardError, graded_trace, reduce_alpha, reduce_element, rectified_forests

F = Fraction
HALF = F(1, 2)


def test_weight_vector_validation():
    w = WeightVector.of(["1/2", "-1/3"])
    assert w.r == 6 and w.n == 2
    assert WeightVector.constant(3, F(1, 3)).r == 3
    with pytest.raises(ValueError):
        WeightVector((F(1, 3),), 2)
    with pytest.raises(ValueError):
        WeightVector((F(1),), 0)
    assert WeightVector.of([HALF, HALF, -1]).stabilizer_blocks() == [[1, 2], [3]]


def test_admissible_examples():
    assert list(admissible_forests([F(1, 3)] * 2)) == []
    n4 = list(admissible_forests([-HALF] * 4))
    assert sum(1 for f in n4 if f.degree == 4) == 9
    assert not is_admissible(parse_forest("1;2->3"), [F(1, 3)] * 3)


@pytest.mark.parametrize("n, s", [(n, s) for n in range(2, 7) for s in (1, -1, 5) if gcd(s, n) == 1])
def test_coprime_constant_weights_only_spanning_trees(n, s):
    kls = {(f.k, f.l) for f in admissible_forests([F(s, n)] * n)}
    assert kls == {(n - 1, 0), (n - 1, 1)}


def test_betti_examples():
    assert betti_numbers([-HALF] * 4) == {2: 3, 3: 12, 4: 9}
    assert betti_numbers([HALF] * 4) == {2: 3, 3: 12, 4: 9}
    assert betti_numbers([F(0)] * 3) == {0: 1, 1: 6, 2: 11, 3: 6}


def _isotypic_dimension(w: WeightVector, p: int) -> int:
    """Projection formula over the diagonal torus, traced on the graded pieces."""
    r, n = w.r, w.n
    total = Cyclotomic.rational(0)
    cache = {}
    for k in range(n):
        l = p - k
        if l < 0 or k + l > n:
            continue
        basis = rectified_forests(r, n, k, l)
        for zeta in itertools.product(range(r), repeat=n):
            g = GroupElement.diagonal(r, zeta)
            chi = root_of_unity(sum((z * x for z, x in zip(zeta, w.a)), F(0)))
            total = total + chi * graded_trace(g, basis, cache)
    return (total / (r**n)).to_fraction()


@pytest.mark.parametrize(
    "a",
    [
        (HALF, HALF),
        (HALF, HALF, F(0)),
        (F(1, 3), F(1, 3), F(1, 3)),
        (F(2, 3), F(1, 3), F(0)),
        (HALF, -HALF, F(1, 2)),
    ],
)
def test_betti_numbers_match_projection_formula(a):
    w = WeightVector.of(a)
    got = betti_numbers(w)
    for p in range(w.n + 1):
        assert _isotypic_dimension(w, p) == got.get(p, 0)


def test_b_exponent_examples():
    chain = parse_forest("1->2->3->4*")
    assert b_exponents(chain, [-HALF] * 4) == (1, 1, 1, 1)
    for n in (3, 4):
        for f in admissible_forests([F(-1, n)] * n, k=n - 1):
            assert b_exponents(f, [F(-1, n)] * n) == (1,) * n
    a = [F(2), F(-1), F(3)]
    assert b_exponents(parse_forest("1;2;3"), a) == (-2, 1, -3)


@pytest.mark.parametrize("a", [[-HALF] * 4, [HALF] * 4, [F(1, 3)] * 3, [HALF, HALF, F(-1), F(0)]])
def test_b_exponents_two_formulas_agree(a):
    for f in admissible_forests(a):
        assert b_exponents(f, a) == b_exponents_orientation_free(f, a)


def test_breakable_edges():
    a = [F(1), F(2), F(0)]
    f = parse_forest("1->3;2->3")
    assert breakable_edges(f, a) == [(1, 3), (2, 3)]
    t = parse_forest("1->2->3")
    assert breakable_edges(t, [F(1, 3)] * 3) == []
    assert is_breakable(parse_forest("1->2;3->4"), [HALF] * 4, 1) is False
    with pytest.raises(ValueError):
        is_breakable(t, [F(1, 3)] * 3, 3)


# -- isotypic elements -----------------------------------------------------------

def test_beta_of_non_admissible_is_zero():
    assert beta_element(parse_forest("1;2"), [HALF, HALF]) == {}


def test_beta_with_r_one_is_alpha():
    f = parse_forest("1->3;2*")
    assert beta_element(f, [F(1), F(-1), F(0)]) == reduce_alpha(f)


def test_beta_leading_coefficient():
    for a in ([HALF] * 4, [F(1, 3)] * 3):
        w = WeightVector.of(a)
        for f in admissible_forests(w):
            b = beta_element(f, w)
            assert b[f.with_r(w.r)] == w.r ** len(f.roots())


@pytest.mark.parametrize("a", [[HALF, HALF], [HALF] * 4, [F(1, 3)] * 3, [HALF, HALF, F(0)]])
def test_beta_coset_sum_matches_full_sum(a):
    w = WeightVector.of(a)
    for f in admissible_forests(w):
        assert beta_element(f, w) == reduce_element(beta_element_bruteforce(f, w))


@pytest.mark.parametrize("a, rs", [([HALF, HALF, F(0)], (2, 4)), ([F(1, 3)] * 3, (3, 6))])
def test_betas_are_independent_for_any_cover(a, rs):
    for r in rs:
        w = WeightVector.of(a, r)
        forests = list(admissible_forests(w))
        basis = EchelonBasis()
        assert all(basis.add(beta_element(f, w)) for f in forests)


@pytest.mark.parametrize("a", [[HALF, HALF], [HALF] * 3 + [F(-1, 2)], [F(1, 3)] * 3])
def test_relations_hold_among_betas(a):
    w = WeightVector.of(a)
    count = 0
    for kind, terms in beta_relation_instances(w):
        total = {}
        for f, c in terms:
            for g, d in beta_element(f, w).items():
                total[g] = total.get(g, 0) + c * d
        assert all(v == 0 for v in total.values()), kind
        count += 1
    assert count > 0


# -- resonance ------------------------------------------------------------------------

def test_resonance_examples():
    assert is_resonant([F(1)] * 4)[0]
    assert is_resonant([F(0)] * 3) == (False, None, None)
    ok, cond, witness = is_resonant([HALF, HALF, F(-1)])
    assert ok and cond == 3 and witness == (1, 2)
    assert is_resonant([F(1, 3)] * 2, {(1, 2): F(1, 3)})[1] == 1
    assert is_resonant(["1/2", "1/3"], {(1, 2): F(1)})[1] == 2
    with pytest.raises(SizeGuardError):
        is_resonant([F(0)] * 30)


# -- generators -------------------------------------------------------------------------

def test_generators_half_weights():
    rep = module_generators([HALF] * 4)
    assert rep.by_degree == {2: 3}
    assert sorted(f.text() for f in rep.generators) == ["1->2;3->4", "1->3;2->4", "1->4;2->3"]


def test_generators_integral():
    rep = module_generators([F(0)] * 3)
    assert rep.by_degree == {0: 1}
    assert [f.text() for f in rep.generators] == ["1;2;3"]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_generators_coprime_weights(n):
    a = [F(1, n)] * n
    rep = module_generators(a)
    assert rep.by_degree == {n - 1: len(list(admissible_forests(a, k=n - 1, l=0)))}
    assert all(f.k == n - 1 and f.l == 0 for f in rep.generators)
    assert len(rep.candidates) == len(rep.generators)


def test_generator_size_guard():
    with pytest.raises(SizeGuardError):
        module_generators([F(1, 5)] * 5)


def test_candidates_have_no_breakable_edges():
    a = [HALF, HALF, F(-1), F(0)]
    for f in module_generator_candidates(a):
        assert f.l == 0 and not breakable_edges(f, a)


# -- isotypic characters ------------------------------------------------------------------

def test_isotypic_examples():
    a = WeightVector.constant(4, HALF, 2)
    assert isotypic_character(a, 2, 0).decompose() == {(3, 1): 1}
    assert isotypic_character(a, 2, 2).decompose() == {(4,): 1, (2, 2): 1}


def test_isotypic_on_young_subgroup():
    a = WeightVector.of([HALF, HALF, F(-1), F(0)])
    chi = isotypic_character(a, 1, 0)
    assert isinstance(chi.group, YoungSubgroup)
    assert chi.degree() == len(list(admissible_forests(a, 1, 0)))


@pytest.mark.parametrize("a", [[HALF] * 4, [F(1, 3)] * 3, [F(2, 3)] * 3])
def test_isotypic_trace_two_routes(a):
    w = WeightVector.of(a)
    group = WreathGroup(1, w.n)
    for k in range(w.n):
        for l in range(w.n - k + 1):
            chi = isotypic_character(w, k, l)
            for lab in group.classes():
                g = group.representative(lab)
                assert isotypic_trace_via_cover(w, k, l, g) == chi[lab]


def test_cover_trace_rejects_non_stabilizer():
    w = WeightVector.of([HALF, HALF, F(0)])
    with pytest.raises(ValueError):
        isotypic_trace_via_cover(w, 1, 0, GroupElement.from_perm((3, 2, 1)))
