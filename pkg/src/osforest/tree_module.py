"""The tree module: formal combinations of labelled trees modulo the triangle
and edge-reversal relations, reduced to the basis of rectified trees.

Two relations generate everything:

* triangle: ``[T1] + [T2] = [T3]`` where the three trees agree except near
  ``i, j, k``: ``T1`` has ``i -(eta/theta)-> j -theta-> k``, ``T2`` has
  ``j -(theta/eta)-> i -eta-> k``, ``T3`` has ``i -eta-> k <-theta- j``;
* reversal: ``[T] + [T'] = 0`` where ``T`` has ``i -eta-> j`` into the root
  ``j`` and ``T'`` has ``j -(1/eta)-> i`` into the root ``i``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Sequence

from .exact import FRF, Atom, MultiPoly, matrix_rank
from .forests import (
    GroupElement,
    LabelledTree,
    act_forest,
    enumerate_trees,
    path_to_root,
)

ModuleVector = dict  # rectified LabelledTree -> Fraction
ChainVector = dict  # (zeta, w) -> Fraction


def _add(acc: dict, key, c) -> None:
    y = acc.get(key, 0) + c
    if y:
        acc[key] = y
    else:
        acc.pop(key, None)


def reverse_root_edge(parent: Sequence[int], label: Sequence[int], r: int, c: int):
    """Reverse the edge ``c -> root`` so that ``c`` becomes the root."""
    parent = list(parent)
    label = list(label)
    rho = parent[c - 1]
    eta = label[c - 1]
    parent[rho - 1] = c
    label[rho - 1] = (-eta) % r
    parent[c - 1] = 0
    label[c - 1] = 0
    return tuple(parent), tuple(label)


def descending_vertex(parent: Sequence[int]) -> int:
    """Largest ``i`` with an edge ``i -> j``, ``j < i``; 0 when rectified."""
    for i in range(len(parent), 0, -1):
        p = parent[i - 1]
        if p and p < i:
            return i
    return 0


def triangle_pair(parent: Sequence[int], label: Sequence[int], r: int, i: int):
    """For ``i -x-> j -theta-> k`` return the other two trees of the triangle.

    With ``T = T1`` this gives ``(T3, T2)`` so that ``[T] = [T3] - [T2]``.
    """
    j = parent[i - 1]
    k = parent[j - 1]
    x = label[i - 1]
    theta = label[j - 1]
    eta = (x + theta) % r
    p3 = list(parent)
    l3 = list(label)
    p3[i - 1] = k
    l3[i - 1] = eta
    p2 = list(p3)
    l2 = list(l3)
    p2[j - 1] = i
    l2[j - 1] = (-x) % r
    return (tuple(p3), tuple(l3)), (tuple(p2), tuple(l2))


def rectify_tree(t: LabelledTree, cache: dict | None = None) -> ModuleVector:
    """Coordinates of ``[t]`` in the rectified basis."""
    if cache is None:
        cache = {}
    return dict(_rectify(t, cache))


def _rectify(t: LabelledTree, cache: dict) -> dict:
    hit = cache.get(t)
    if hit is not None:
        return hit
    n = t.n
    r = t.r
    parent, label = t.parent, t.label
    sign = 1
    rho = parent.index(0) + 1
    if rho != n:
        # walk the root towards n, one reversal at a time
        path = path_to_root(parent, n)
        for c in reversed(path[:-1]):
            parent, label = reverse_root_edge(parent, label, r, c)
            sign = -sign
    i = descending_vertex(parent)
    if i == 0:
        out = {LabelledTree(r, parent, label): sign}
    else:
        (p3, l3), (p2, l2) = triangle_pair(parent, label, r, i)
        out = {}
        for key, c in _rectify(LabelledTree(r, p3, l3), cache).items():
            _add(out, key, sign * c)
        for key, c in _rectify(LabelledTree(r, p2, l2), cache).items():
            _add(out, key, -sign * c)
    cache[t] = out
    return out


def rectify_vector(v: dict, cache: dict | None = None) -> ModuleVector:
    """Rectify a combination of arbitrary trees."""
    if cache is None:
        cache = {}
    out: dict = {}
    for t, c in v.items():
        for key, d in _rectify(t, cache).items():
            _add(out, key, c * d)
    return out


def rectified_basis(r: int, n: int) -> list[LabelledTree]:
    return list(enumerate_trees(r, n, rectified_only=True))


# ---------------------------------------------------------------------------
# decomposition by the diagonal subgroup


def decompose_by_Z(t: LabelledTree) -> tuple[tuple[int, ...], LabelledTree]:
    """Unique ``zeta`` with ``zeta_n = 1`` and an unlabelled ``base`` with ``zeta.base = t``."""
    n, r = t.n, t.r
    zeta = [None] * n
    root = t.root

    # labels satisfy e(i->j) = zeta_i - zeta_j; fix zeta_root, then shift so zeta_n = 0
    zeta[root - 1] = 0

    def value(v: int) -> int:
        if zeta[v - 1] is None:
            p = t.parent[v - 1]
            zeta[v - 1] = (t.label[v - 1] + value(p)) % r
        return zeta[v - 1]

    for v in range(1, n + 1):
        value(v)
    shift = zeta[n - 1]
    zeta_t = tuple((z - shift) % r for z in zeta)
    base = LabelledTree(r, t.parent, (0,) * n)
    return zeta_t, base


# ---------------------------------------------------------------------------
# chains


def chain_tree(r: int, zeta: Sequence[int], word: Sequence[int]) -> LabelledTree:
    """``zeta w . T_0`` where ``word = (w(1), ..., w(n))``: the chain ``w(1) -> ... -> w(n)``."""
    n = len(word)
    parent = [0] * n
    label = [0] * n
    for a, b in zip(word, word[1:]):
        parent[a - 1] = b
        label[a - 1] = (zeta[a - 1] - zeta[b - 1]) % r
    return LabelledTree(r, tuple(parent), tuple(label))


def linear_extensions(parent: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Orderings in which each vertex precedes its parent."""
    n = len(parent)
    indeg = [0] * (n + 1)
    for p in parent:
        if p:
            indeg[p] += 1

    def rec(prefix, avail, indeg):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in sorted(avail):
            p = parent[v - 1]
            new_avail = set(avail)
            new_avail.discard(v)
            new_indeg = indeg
            if p:
                new_indeg = list(indeg)
                new_indeg[p] -= 1
                if new_indeg[p] == 0:
                    new_avail.add(p)
            prefix.append(v)
            yield from rec(prefix, new_avail, new_indeg)
            prefix.pop()

    start = {v for v in range(1, n + 1) if indeg[v] == 0}
    yield from rec([], start, indeg)


def refines(zeta: Sequence[int], word: Sequence[int], t: LabelledTree) -> bool:
    pos = {v: k for k, v in enumerate(word)}
    for i, j, e in t.edges():
        if pos[i] >= pos[j] or e != (zeta[i - 1] - zeta[j - 1]) % t.r:
            return False
    return True


def chain_expand(t: LabelledTree) -> ChainVector:
    """``[t]`` as the sum of the chains refining it, each with coefficient 1."""
    zeta, _ = decompose_by_Z(t)
    return {(zeta, word): 1 for word in linear_extensions(t.parent)}


def chain_expand_bruteforce(t: LabelledTree) -> ChainVector:
    n, r = t.n, t.r
    out = {}
    for zeta in itertools.product(range(r), repeat=n - 1):
        z = zeta + (0,)
        for word in itertools.permutations(range(1, n + 1)):
            if refines(z, word, t):
                out[(z, word)] = 1
    return out


def chains_to_module(r: int, cv: ChainVector, cache: dict | None = None) -> ModuleVector:
    return rectify_vector({chain_tree(r, z, w): c for (z, w), c in cv.items()}, cache)


# ---------------------------------------------------------------------------
# action and realization


def act_module(g: GroupElement, v: ModuleVector, cache: dict | None = None) -> ModuleVector:
    if cache is None:
        cache = {}
    out: dict = {}
    for t, c in v.items():
        for key, d in _rectify(act_forest(g, t), cache).items():
            _add(out, key, c * d)
    return out


def p_tree_inverse(t: LabelledTree) -> FRF:
    """``1 / p_T`` with ``p_T`` the product of ``z_i - z_j`` over edges."""
    if t.r != 1:
        raise ValueError("the polynomial realization is only defined for r = 1")
    n = t.n
    sign = 1
    den: dict = {}
    for i, j, _ in t.edges():
        if i < j:
            den[Atom(i, j)] = den.get(Atom(i, j), 0) + 1
        else:
            sign = -sign
            den[Atom(j, i)] = den.get(Atom(j, i), 0) + 1
    return FRF(MultiPoly.constant(n, sign), den)


def realize_r1(v: ModuleVector, n: int | None = None) -> FRF:
    if any(t.r != 1 for t in v):
        raise ValueError("realize_r1 rejects r > 1 input")
    if n is None:
        if not v:
            raise ValueError("need n for the zero vector")
        n = next(iter(v)).n
    return FRF.sum([p_tree_inverse(t) * c for t, c in v.items()], n)


def realization_rank(n: int) -> int:
    """Rank of ``{1/p_T}`` over rectified ``T``, by numerator coefficients over a common denominator."""
    basis = rectified_basis(1, n)
    common = {Atom(i, j): 1 for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    rows = []
    for t in basis:
        f = p_tree_inverse(t)
        p = f.num
        for a in common:
            if a not in f.den:
                p = p.mul_atom(a)
        rows.append(dict(p.terms))
    return matrix_rank(rows)


# ---------------------------------------------------------------------------
# relation instances


def relation_instances(r: int, n: int) -> Iterator[tuple[str, list[tuple[LabelledTree, int]]]]:
    """Every triangle and reversal relation as ``(kind, [(tree, coeff), ...])`` summing to zero."""
    for t in enumerate_trees(r, n):
        parent, label = t.parent, t.label
        # triangles with t as T3: two distinct children i, j of a common k
        for k in range(1, n + 1):
            kids = [v for v in range(1, n + 1) if parent[v - 1] == k]
            for i, j in itertools.permutations(kids, 2):
                eta, theta = label[i - 1], label[j - 1]
                p1, l1 = list(parent), list(label)
                p1[i - 1] = j
                l1[i - 1] = (eta - theta) % r
                p2, l2 = list(parent), list(label)
                p2[j - 1] = i
                l2[j - 1] = (theta - eta) % r
                yield "triangle", [
                    (LabelledTree(r, tuple(p1), tuple(l1)), 1),
                    (LabelledTree(r, tuple(p2), tuple(l2)), 1),
                    (t, -1),
                ]
        # reversal of each edge into the root
        root = t.root
        for c in range(1, n + 1):
            if parent[c - 1] == root:
                p, lab = reverse_root_edge(parent, label, r, c)
                yield "reversal", [(t, 1), (LabelledTree(r, p, lab), 1)]


def check_relations(r: int, n: int, cache: dict | None = None) -> tuple[int, int]:
    """Return ``(instances checked, failures)`` for rectification respecting the relations."""
    if cache is None:
        cache = {}
    checked = failed = 0
    for _, terms in relation_instances(r, n):
        out: dict = {}
        for t, c in terms:
            for key, d in _rectify(t, cache).items():
                _add(out, key, c * d)
        checked += 1
        if out:
            failed += 1
    return checked, failed


def dimension_certificate(r: int, n: int) -> dict:
    """Evidence that ``dim V(r,n)`` equals the number of rectified trees.

    Rectification uses only the defining relations, so the rectified trees
    span; every relation maps to zero and rectified trees are fixed, so
    rectification is a well-defined surjection onto their span.
    """
    cache: dict = {}
    basis = rectified_basis(r, n)
    fixed = all(rectify_tree(t, cache) == {t: 1} for t in basis)
    total = 0
    span_ok = True
    bset = set(basis)
    for t in enumerate_trees(r, n):
        total += 1
        if not set(_rectify(t, cache)) <= bset:
            span_ok = False
    checked, failed = check_relations(r, n, cache)
    return {
        "r": r,
        "n": n,
        "trees": total,
        "rectified": len(basis),
        "rectified_fixed": fixed,
        "images_in_span": span_ok,
        "relations_checked": checked,
        "relations_failed": failed,
        "dimension": len(basis) if (fixed and span_ok and failed == 0) else None,
    }


# ---------------------------------------------------------------------------
# group algebra


def perm_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Composition ``a o b`` (apply ``b`` first)."""
    return tuple(a[x - 1] for x in b)


def cycle_perm(n: int, i: int) -> tuple[int, ...]:
    """The cycle ``(1 2 ... i)`` in ``S_n``."""
    return tuple((x % i) + 1 if x <= i else x for x in range(1, n + 1))


def algebra_mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for a, c in x.items():
        for b, d in y.items():
            _add(out, perm_mul(a, b), c * d)
    return out


def algebra_act(x: dict, v: ModuleVector, r: int = 1, cache: dict | None = None) -> ModuleVector:
    if cache is None:
        cache = {}
    out: dict = {}
    for perm, c in x.items():
        g = GroupElement.from_perm(perm, r)
        for key, d in act_module(g, v, cache).items():
            _add(out, key, c * d)
    return out


def chain_T0(r: int, n: int) -> LabelledTree:
    return chain_tree(r, (0,) * n, tuple(range(1, n + 1)))


def ls_coefficients(n: int) -> list[dict]:
    """Group-algebra coefficients ``b_{n,p}`` of ``(1 - c_{n-1} t) ... (1 - c_1 t)``."""
    ident = tuple(range(1, n + 1))
    poly: list[dict] = [{ident: 1}]
    for i in range(n - 1, 0, -1):
        factor = [{ident: 1}, {cycle_perm(n, i): -1}]
        new: list[dict] = [dict() for _ in range(len(poly) + 1)]
        for p, x in enumerate(poly):
            for q, y in enumerate(factor):
                for key, c in algebra_mul(x, y).items():
                    _add(new[p + q], key, c)
        poly = new
    return poly


def verify_ls_identity(n: int, p: int, cache: dict | None = None) -> bool:
    """``c_n^p . [T_0] = b_{n,p} . [T_0]`` in ``V(1,n)``."""
    if not 0 <= p <= n - 1:
        raise ValueError("need 0 <= p <= n-1")
    if cache is None:
        cache = {}
    t0 = {chain_T0(1, n): 1}
    cn = cycle_perm(n, n)
    power = tuple(range(1, n + 1))
    for _ in range(p):
        power = perm_mul(cn, power)
    lhs = algebra_act({power: 1}, t0, 1, cache)
    rhs = algebra_act(ls_coefficients(n)[p], t0, 1, cache)
    return lhs == rhs


def shuffle_representatives(n: int, d: int) -> list[tuple[int, ...]]:
    """Minimal coset representatives: words that interleave ``1..d`` and ``d+1..n`` in order."""
    out = []
    for first in itertools.combinations(range(n), d):
        word = [0] * n
        lo = iter(range(1, d + 1))
        hi = iter(range(d + 1, n + 1))
        fs = set(first)
        for pos in range(n):
            word[pos] = next(lo) if pos in fs else next(hi)
        out.append(tuple(word))
    return out


def annihilator_check(r: int, n: int, cache: dict | None = None) -> bool:
    if cache is None:
        cache = {}
    t0 = {chain_T0(r, n): 1}
    for z in range(r):
        g = GroupElement.diagonal(r, [z] * n)
        if act_module(g, t0, cache) != t0:
            return False
    for d in range(1, n):
        total: dict = {}
        for word in shuffle_representatives(n, d):
            for key, c in act_module(GroupElement.from_perm(word, r), t0, cache).items():
                _add(total, key, c)
        if total:
            return False
    return True


def module_trace(g: GroupElement, r: int, n: int, cache: dict | None = None, basis=None) -> Fraction:
    if cache is None:
        cache = {}
    if basis is None:
        basis = rectified_basis(r, n)
    return sum((_rectify(act_forest(g, t), cache).get(t, 0) for t in basis), 0)
