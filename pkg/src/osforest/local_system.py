"""Weight vectors, admissible forests and the isotypic part of the OS algebra.

For weights ``a_1..a_n`` with ``r a_i`` integral, the ``(a_i)``-isotypic part
of ``A(T(r,n))`` under ``mu_r^n`` has the basis ``beta(F)`` over rectified
admissible forests (every tree has integral weight sum), and the same forests
index explicit forms ``beta_bar(F)`` on ``T(1,n)`` representing the twisted
cohomology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Iterator, Sequence

from .exact import Scalar, is_integral, parse_rational, root_of_unity
from .forests import (
    DecoratedForest,
    GroupElement,
    act_forest,
    components,
    descendants,
    enumerate_forests,
    root_of,
)
from .os_algebra import SizeGuardError, act_os, add_into, reduce_alpha, reduce_element


@dataclass(frozen=True)
class WeightVector:
    a: tuple[Fraction, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        if self.r < 1:
            raise ValueError("r must be positive")
        bad = [x for x in self.a if (x * self.r).denominator != 1]
        if bad:
            raise ValueError(f"r = {self.r} does not clear the denominator of {bad[0]}")

    @classmethod
    def of(cls, a: Sequence, r: int | None = None) -> WeightVector:
        a = tuple(parse_rational(x) if isinstance(x, str) else Fraction(x) for x in a)
        if r is None:
            r = lcm(*(x.denominator for x in a)) if a else 1
        return cls(a, r)

    @classmethod
    def constant(cls, n: int, q: Fraction, r: int | None = None) -> WeightVector:
        return cls.of([Fraction(q)] * n, r)

    @property
    def n(self) -> int:
        return len(self.a)

    def total(self) -> Fraction:
        return sum(self.a, Fraction(0))

    def stabilizes(self, perm: Sequence[int]) -> bool:
        return all(self.a[perm[i] - 1] == self.a[i] for i in range(self.n))

    def stabilizer_blocks(self) -> list[list[int]]:
        blocks: dict[Fraction, list[int]] = {}
        for i, x in enumerate(self.a, start=1):
            blocks.setdefault(x, []).append(i)
        return sorted(blocks.values())

    def is_constant(self) -> bool:
        return len(set(self.a)) <= 1

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.a) + f"; r={self.r})"


def _as_weights(a, r: int | None = None) -> WeightVector:
    return a if isinstance(a, WeightVector) else WeightVector.of(a, r)


# ---------------------------------------------------------------------------
# forests


def below_sum(f: DecoratedForest, a: Sequence[Fraction], i: int) -> Fraction:
    """``sum of a_k over k with a path k -> ... -> i``."""
    return sum((a[k - 1] for k in descendants(f.parent, i)), Fraction(0))


def is_admissible(f: DecoratedForest, a) -> bool:
    w = _as_weights(a)
    if f.n != w.n:
        raise ValueError("forest and weights have different n")
    return all(is_integral(sum((w.a[v - 1] for v in c), Fraction(0))) for c in components(f.parent))


def admissible_forests(a, k: int | None = None, l: int | None = None, rectified_only: bool = True) -> Iterator[DecoratedForest]:
    w = _as_weights(a)
    if not is_integral(w.total()):
        return
    for f in enumerate_forests(1, w.n, k, l, rectified_only):
        if is_admissible(f, w):
            yield f


def betti_numbers(a) -> dict[int, int]:
    """Nonzero twisted Betti numbers ``p -> dim`` from the rectified admissible forests."""
    w = _as_weights(a)
    out: dict[int, int] = {}
    for f in admissible_forests(w):
        out[f.degree] = out.get(f.degree, 0) + 1
    return dict(sorted(out.items()))


def b_exponents(f: DecoratedForest, a) -> tuple[int, ...]:
    """``b_j = -floor(sum_{k below j} a_k) + sum_{i -> j} ceil(sum_{k below i} a_k)``."""
    w = _as_weights(a)
    sums = [below_sum(f, w.a, j) for j in range(1, w.n + 1)]
    out = []
    for j in range(1, w.n + 1):
        b = -floor(sums[j - 1])
        for i in range(1, w.n + 1):
            if f.parent[i - 1] == j:
                b += ceil(sums[i - 1])
        out.append(b)
    return tuple(out)


def b_exponents_orientation_free(f: DecoratedForest, a) -> tuple[int, ...]:
    """Same exponents written through the tree sum and the complement of the down-set."""
    w = _as_weights(a)
    out = []
    for j in range(1, w.n + 1):
        rt = root_of(f.parent, j)
        tree = [v for v in range(1, w.n + 1) if root_of(f.parent, v) == rt]
        down = set(descendants(f.parent, j))
        total = sum((w.a[v - 1] for v in tree), Fraction(0))
        rest = sum((w.a[v - 1] for v in tree if v not in down), Fraction(0))
        b = -total + ceil(rest)
        for i in range(1, w.n + 1):
            if f.parent[i - 1] == j:
                b += ceil(below_sum(f, w.a, i))
        out.append(int(b))
    return tuple(out)


def is_breakable(f: DecoratedForest, a, i: int) -> bool:
    """Edge out of ``i`` is breakable when the weight below it is integral."""
    w = _as_weights(a)
    if not f.parent[i - 1]:
        raise ValueError(f"vertex {i} is a root")
    return is_integral(below_sum(f, w.a, i))


def breakable_edges(f: DecoratedForest, a) -> list[tuple[int, int]]:
    return [(i, p) for i, p, _ in f.edges() if is_breakable(f, a, i)]


# ---------------------------------------------------------------------------
# isotypic elements


def _coset_zetas(f: DecoratedForest, r: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors vanishing at every root: one per coset of the stabilizer."""
    free = [i for i in range(f.n) if f.parent[i]]
    for vals in itertools.product(range(r), repeat=len(free)):
        z = [0] * f.n
        for i, v in zip(free, vals):
            z[i] = v
        yield tuple(z)


def _weight_value(zeta: Sequence[int], a: Sequence[Fraction]) -> Scalar:
    return root_of_unity(sum((c * x for c, x in zip(zeta, a)), Fraction(0)))


def beta_element(f: DecoratedForest, a, r: int | None = None, reduce: bool = True) -> dict:
    """``sum over zeta in mu_r^n of zeta^{r a} alpha(zeta.F)``, via the per-tree stabilizer sum.

    ``f`` has trivial labels (``r = 1``) and is lifted to ``T(r,n)``.
    """
    w = _as_weights(a, r)
    if r is not None and r != w.r:
        w = WeightVector(w.a, r)
    rr = w.r
    if not is_admissible(f, w):
        return {}
    lifted = f.with_r(rr)
    scale = rr ** len(f.roots())
    ident = tuple(range(1, f.n + 1))
    out: dict = {}
    for zeta in _coset_zetas(f, rr):
        g = act_forest(GroupElement(rr, zeta, ident), lifted)
        add_into(out, {g: 1}, _weight_value(zeta, w.a) * scale)
    return reduce_element(out) if reduce else out


def beta_element_bruteforce(f: DecoratedForest, a, r: int | None = None) -> dict:
    """The full ``r**n`` sum, unreduced."""
    w = _as_weights(a, r)
    if r is not None and r != w.r:
        w = WeightVector(w.a, r)
    rr = w.r
    lifted = f.with_r(rr)
    ident = tuple(range(1, f.n + 1))
    out: dict = {}
    for zeta in itertools.product(range(rr), repeat=f.n):
        g = act_forest(GroupElement(rr, zeta, ident), lifted)
        add_into(out, {g: 1}, _weight_value(zeta, w.a))
    return out


def beta_relation_instances(a) -> Iterator[tuple[str, list[tuple[DecoratedForest, int]]]]:
    """Triangle, open reversal and closed reversal relations among admissible forests.

    ``closed-split`` is the three-term relation whose split forest is also
    admissible; ``closed-pair`` the two-term one whose split forest is not.
    """
    from .os_algebra import forest_relation_instances

    w = _as_weights(a)
    for kind, terms in forest_relation_instances(1, w.n):
        if kind == "closed":
            pair = [(f, c) for f, c in terms[:2]]
            if not all(is_admissible(f, w) for f, _ in pair):
                continue
            split = terms[2][0]
            if is_admissible(split, w):
                yield "closed-split", terms
            else:
                yield "closed-pair", pair
        elif all(is_admissible(f, w) for f, _ in terms):
            yield kind, terms


# ---------------------------------------------------------------------------
# resonance


def _pair(pairs, i: int, j: int) -> Fraction:
    if pairs is None:
        return Fraction(0)
    if isinstance(pairs, dict):
        return Fraction(pairs.get((i, j), 0))
    return Fraction(pairs[i - 1][j - 1])


def is_resonant(a: Sequence, pairs=None, max_n: int = 20) -> tuple[bool, int | None, tuple[int, ...] | None]:
    """``(resonant, violated condition 1/2/3, witness subset)``.

    Conditions: total sum a nonzero integer; some pair sum over a subset a
    positive integer; some proper-subset sum a positive integer.  Subsets are
    scanned by size, then lexicographically.
    """
    a = [parse_rational(x) if isinstance(x, str) else Fraction(x) for x in a]
    n = len(a)
    if n > max_n:
        raise SizeGuardError(f"n = {n} exceeds subset-scan limit {max_n}")
    verts = tuple(range(1, n + 1))

    def pair_sum(sub):
        return sum((_pair(pairs, i, j) for i, j in itertools.combinations(sub, 2)), Fraction(0))

    total = sum(a, Fraction(0)) + pair_sum(verts)
    if is_integral(total) and total != 0:
        return True, 1, verts
    for size in range(2, n + 1):
        for sub in itertools.combinations(verts, size):
            s = pair_sum(sub)
            if is_integral(s) and s > 0:
                return True, 2, sub
    for size in range(1, n):
        for sub in itertools.combinations(verts, size):
            s = sum((a[i - 1] for i in sub), Fraction(0)) + pair_sum(sub)
            if is_integral(s) and s > 0:
                return True, 3, sub
    return False, None, None


# ---------------------------------------------------------------------------
# module generators


def module_generator_candidates(a) -> list[DecoratedForest]:
    """Rectified admissible forests with no closed roots and no breakable edges."""
    w = _as_weights(a)
    return [f for f in admissible_forests(w, l=0) if not breakable_edges(f, w)]


def untwisted_one_forms(n: int, r: int):
    """Pullbacks of ``omega_i`` and ``omega_{i,j}`` to ``T(r,n)`` as honest forms."""
    from .forms import omega_i, omega_ijq

    out = []
    for i in range(1, n + 1):
        out.append(omega_i(n, i).scale(r))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            f = omega_ijq(n, i, j, 0)
            for t in range(1, r):
                f = f + omega_ijq(n, i, j, Fraction(t, r))
            out.append(f)
    return out


@dataclass
class GeneratorReport:
    generators: list[DecoratedForest]
    by_degree: dict[int, int]
    candidates: list[DecoratedForest]

    @property
    def degrees(self) -> list[int]:
        return sorted(self.by_degree)


def module_generators(a, max_n: int = 4) -> GeneratorReport:
    """A minimal generating set of the cohomology as a module over the untwisted cohomology.

    Works in the isotypic part of ``A(T(r,n))``: the untwisted classes act by
    wedging with pulled-back ``omega_i`` and ``omega_{i,j}``.  In each degree
    the decomposables are spanned first; basis elements ``beta(F)`` are then
    added greedily (literal-rule candidates first) until the degree is spanned.
    """
    from .exact import EchelonBasis
    from .forms import coefficient_rows, realize_os

    w = _as_weights(a)
    n = w.n
    if n > max_n:
        raise SizeGuardError(f"n = {n} exceeds the symbolic limit {max_n}")
    forests = list(admissible_forests(w))
    candidates = module_generator_candidates(w)
    cand_set = set(candidates)
    realized = {f: realize_os(beta_element(f, w), n) for f in forests}
    ones = untwisted_one_forms(n, w.r)
    gens: list[DecoratedForest] = []
    by_degree: dict[int, int] = {}
    for p in range(n + 1):
        here = sorted((f for f in forests if f.degree == p), key=lambda f: (f not in cand_set, f.sort_key()))
        if not here:
            continue
        lower = [realized[g] for g in forests if g.degree == p - 1]
        products = [u.wedge(x) for u in ones for x in lower]
        products = [x for x in products if not x.is_zero()]
        rows = coefficient_rows(products + [realized[f] for f in here])
        basis = EchelonBasis()
        for row in rows[: len(products)]:
            basis.add(row)
        for f, row in zip(here, rows[len(products):]):
            if basis.add(row):
                gens.append(f)
                by_degree[p] = by_degree.get(p, 0) + 1
    return GeneratorReport(gens, by_degree, candidates)


# ---------------------------------------------------------------------------
# characters of the isotypic pieces


def isotypic_character(a, k: int, l: int):
    """Character of the ``(k,l)`` graded piece on the stabilizer of the weights.

    Trace of ``w <F> = eps_n(w) eps(w,F) <w.F>`` on rectified admissible
    forests; the graded relations among admissible forests are those of the
    ``r = 1`` graded algebra, so ``<w.F>`` is reduced there.
    """
    from .groups import ClassFunction, WreathGroup, YoungSubgroup
    from .os_algebra import action_sign

    w = _as_weights(a)
    group = WreathGroup(1, w.n) if w.is_constant() else YoungSubgroup(w.stabilizer_blocks())
    basis = list(admissible_forests(w, k, l))
    cache: dict = {}
    values = {}
    for lab in group.classes():
        g = group.representative(lab)
        total = 0
        for f in basis:
            c = reduce_alpha(act_forest(g, f), graded=True, cache=cache).get(f, 0)
            if c:
                total += action_sign(g, f) * c
        values[lab] = total
    return ClassFunction(group, values)


def isotypic_trace_via_cover(a, k: int, l: int, g: GroupElement) -> Scalar:
    """Same trace computed in ``A(T(r,n))`` through ``beta(F)`` and the graded cover reduction."""
    w = _as_weights(a)
    if not w.stabilizes(g.perm) or any(g.zeta):
        raise ValueError("element must lie in the stabilizer of the weights")
    lifted_g = GroupElement(w.r, (0,) * w.n, g.perm)
    cache: dict = {}
    total: Scalar = 0
    for f in admissible_forests(w, k, l):
        beta = beta_element(f, w, reduce=False)
        image = act_os(lifted_g, beta, graded=True, cache=cache)
        lead = f.with_r(w.r)
        c = image.get(lead, 0)
        if c:
            total = total + c / Fraction(w.r ** len(f.roots()))
    return total
