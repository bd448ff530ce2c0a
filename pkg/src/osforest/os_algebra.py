"""The Orlik-Solomon algebra of T(r,n) in the rectified-forest basis.

``alpha(F)`` is the wedge ``alpha_1(F) ^ ... ^ alpha_n(F)`` with slot ``i``
holding a sign (open root), ``omega_i`` (closed root) or
``omega_{i,j,eta}`` (edge ``i -eta-> j``).  Any ``alpha(F)`` is reduced to
rectified forests by moving every root to the largest vertex of its tree and
then straightening descending edges with the triangle relation.  Moving a
closed root produces a correction term with one more closed root; the graded
reduction drops it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterable

from .exact import Scalar
from .forests import (
    DecoratedForest,
    GroupElement,
    act_forest,
    enumerate_forests,
    parent_functions,
    path_to_root,
    permutation_sign,
    root_of,
    sign_epsilon_w,
)
from .tree_module import descending_vertex, reverse_root_edge, triangle_pair

OSElement = dict  # rectified DecoratedForest -> scalar


def _add(acc: dict, key, c) -> None:
    y = acc.get(key, 0) + c
    if y:
        acc[key] = y
    else:
        acc.pop(key, None)


def add_into(acc: dict, x: dict, scale: Scalar = 1) -> dict:
    for key, c in x.items():
        _add(acc, key, c * scale)
    return acc


def _unsorted_root(f: DecoratedForest) -> tuple[int, int] | None:
    """First tree (by root) whose root is not its largest vertex: ``(root, max vertex)``."""
    best: dict[int, int] = {}
    for v in range(1, f.n + 1):
        rt = root_of(f.parent, v)
        if v > best.get(rt, 0):
            best[rt] = v
    for rt in sorted(best):
        if best[rt] != rt:
            return rt, best[rt]
    return None


def open_between_sign(f: DecoratedForest, i: int, j: int) -> int:
    """``(-1)`` to the number of open roots strictly between ``i`` and ``j``.

    Moving an open root across an edge flips the scalar slot of every open
    root in between, so for forests the two-term reversal carries this sign.
    """
    lo, hi = min(i, j), max(i, j)
    m = sum(1 for v in range(lo + 1, hi) if f.is_open_root(v))
    return -1 if m % 2 else 1


def reduce_alpha(f: DecoratedForest, graded: bool = False, cache: dict | None = None) -> OSElement:
    """Coordinates of ``alpha(f)`` in the rectified basis.

    With ``graded=True`` the correction terms with more closed roots are
    dropped, giving the coordinates of ``[f]`` in its graded piece.
    """
    if cache is None:
        cache = {}
    return dict(_reduce(f, graded, cache))


def _reduce(f: DecoratedForest, graded: bool, cache: dict) -> dict:
    key = (f, graded)
    hit = cache.get(key)
    if hit is not None:
        return hit
    r = f.r
    out: dict = {}
    bad = _unsorted_root(f)
    if bad is not None:
        rho, top = bad
        path = path_to_root(f.parent, top)
        c = path[-2]
        parent, label = reverse_root_edge(f.parent, f.label, r, c)
        if rho in f.closed:
            # alpha(F) = alpha(F'') - alpha(F'), F'' opens no edge and closes both
            closed = (f.closed - {rho}) | {c}
            flipped = DecoratedForest(r, parent, label, frozenset(closed))
            add_into(out, _reduce(flipped, graded, cache), -1)
            if not graded:
                p2 = list(f.parent)
                l2 = list(f.label)
                p2[c - 1] = 0
                l2[c - 1] = 0
                split = DecoratedForest(r, tuple(p2), tuple(l2), f.closed | {c})
                add_into(out, _reduce(split, graded, cache), 1)
        else:
            flipped = DecoratedForest(r, parent, label, f.closed)
            add_into(out, _reduce(flipped, graded, cache), -open_between_sign(f, rho, c))
    else:
        i = descending_vertex(f.parent)
        if i == 0:
            out = {f: 1}
        else:
            (p3, l3), (p2, l2) = triangle_pair(f.parent, f.label, r, i)
            add_into(out, _reduce(DecoratedForest(r, p3, l3, f.closed), graded, cache), 1)
            add_into(out, _reduce(DecoratedForest(r, p2, l2, f.closed), graded, cache), -1)
    cache[key] = out
    return out


def reduce_element(x: dict, graded: bool = False, cache: dict | None = None) -> OSElement:
    if cache is None:
        cache = {}
    out: dict = {}
    for f, c in x.items():
        add_into(out, _reduce(f, graded, cache), c)
    return out


def action_sign(g: GroupElement, f: DecoratedForest) -> int:
    return permutation_sign(g.perm) * sign_epsilon_w(g.perm, f)


def act_os(g: GroupElement, x: dict, graded: bool = False, cache: dict | None = None) -> OSElement:
    """``g.alpha(F) = eps_n(w) eps(w,F) alpha(g.F)``, extended linearly and reduced."""
    if cache is None:
        cache = {}
    out: dict = {}
    for f, c in x.items():
        add_into(out, _reduce(act_forest(g, f), graded, cache), c * action_sign(g, f))
    return out


def rectified_forests(r: int, n: int, k: int | None = None, l: int | None = None) -> list[DecoratedForest]:
    return list(enumerate_forests(r, n, k, l, rectified_only=True))


def graded_dimension(r: int, n: int, k: int, l: int) -> int:
    return sum(1 for _ in enumerate_forests(r, n, k, l, rectified_only=True))


def poincare_coefficients(r: int, n: int) -> list[int]:
    """Coefficients of ``prod_{i=0}^{n-1} (1 + (r i + 1) t)``."""
    coeffs = [1]
    for i in range(n):
        c = r * i + 1
        coeffs = [a + c * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return coeffs


def rectified_shape_count(r: int, n: int, k: int, l: int) -> int:
    """Closed-form-free count of rectified ``(k,l)`` forests: shapes times labels times root choices."""
    from math import comb

    shapes = sum(1 for p in parent_functions(n, rectified=True) if p.count(0) == n - k)
    return shapes * r**k * comb(n - k, l)


def graded_trace(g: GroupElement, basis: Iterable[DecoratedForest], cache: dict | None = None) -> int:
    if cache is None:
        cache = {}
    total = 0
    for f in basis:
        c = _reduce(act_forest(g, f), True, cache).get(f, 0)
        if c:
            total += action_sign(g, f) * c
    return total


def os_character(r: int, n: int, k: int, l: int, guard: int | None = 10**5):
    """Character of the graded piece ``A^{k,l}(T(r,n))`` as a class function on ``W(r,n)``."""
    from .groups import ClassFunction, WreathGroup

    group = WreathGroup(r, n)
    if guard is not None and group.order > guard:
        raise SizeGuardError(f"|W({r},{n})| = {group.order} exceeds {guard}")
    basis = rectified_forests(r, n, k, l)
    cache: dict = {}
    values = {lab: graded_trace(group.representative(lab), basis, cache) for lab in group.classes()}
    return ClassFunction(group, values)


class SizeGuardError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# induction data


def partitions_of_length(total: int, length: int, max_part: int | None = None):
    if max_part is None:
        max_part = total
    if length == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total - (length - 1), max_part), 0, -1):
        for rest in partitions_of_length(total - first, length - 1, first):
            yield (first,) + rest


def partition_pairs(total: int, open_trees: int, closed_trees: int):
    """Pairs ``(lam1, lam2)`` with ``|lam1| + |lam2| = total`` and the given lengths."""
    if open_trees < 0 or closed_trees < 0:
        return
    for s1 in range(total + 1):
        for lam1 in partitions_of_length(s1, open_trees):
            for lam2 in partitions_of_length(total - s1, closed_trees):
                yield lam1, lam2


def induction_decomposition(r: int, n: int, k: int, l: int) -> list[dict]:
    """Summands of ``eps_n (x) A^{k,l}(T(r,n))`` as inductions of one-dimensional characters.

    Each summand is the stabilizer of a set partition into open blocks of sizes
    ``lam1`` and closed blocks of sizes ``lam2``; inside it the subgroup
    ``mu_r x mu_m`` of each block carries ``1 x psi_m`` and permutations of
    equal open blocks carry the sign.
    """
    out = []
    for lam1, lam2 in partition_pairs(n, n - k - l, l):
        out.append(
            {
                "open_blocks": list(lam1),
                "closed_blocks": list(lam2),
                "block_subgroup": "mu_r x mu_m",
                "diagonal_order": r,
                "cyclic_orders": [m for m in lam1 + lam2],
                "sign_on_open_permutations": True,
                "sign_on_closed_permutations": False,
            }
        )
    return out


def filtration_respected(r: int, n: int) -> bool:
    """Every reduced term has at least as many closed roots as the input forest."""
    cache: dict = {}
    for f in enumerate_forests(r, n):
        for g in reduce_alpha(f, cache=cache):
            if g.l < f.l or g.degree != f.degree:
                return False
    return True


def closed_root_histogram(x: dict) -> Counter:
    return Counter(f.l for f in x)


# ---------------------------------------------------------------------------
# relation instances among arbitrary decorated forests


def forest_relation_instances(r: int, n: int):
    """Every defining relation as ``(kind, [(forest, coeff), ...])`` summing to zero.

    ``triangle``: ``F1 + F2 - F3``; ``open``: ``F +- F'`` with the root moved
    across an edge (sign from the open roots in between); ``closed``: ``F + F' - F''`` where ``F''`` closes both
    ends and drops the edge.
    """
    for f in enumerate_forests(r, n):
        parent, label = f.parent, f.label
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
                    (DecoratedForest(r, tuple(p1), tuple(l1), f.closed), 1),
                    (DecoratedForest(r, tuple(p2), tuple(l2), f.closed), 1),
                    (f, -1),
                ]
        for j in f.roots():
            for i in range(1, n + 1):
                if parent[i - 1] != j:
                    continue
                p, lab = reverse_root_edge(parent, label, r, i)
                if j in f.closed:
                    other = DecoratedForest(r, p, lab, (f.closed - {j}) | {i})
                    p2, l2 = list(parent), list(label)
                    p2[i - 1] = 0
                    l2[i - 1] = 0
                    split = DecoratedForest(r, tuple(p2), tuple(l2), f.closed | {i})
                    yield "closed", [(f, 1), (other, 1), (split, -1)]
                else:
                    yield "open", [(f, 1), (DecoratedForest(r, p, lab, f.closed), open_between_sign(f, i, j))]
