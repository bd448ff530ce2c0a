"""Labelled trees, decorated forests, the wreath-product action and the signs.

Vertices are the integers ``1..n``.  A forest is stored as two tuples indexed
by ``vertex - 1``: ``parent`` (0 for a root) and ``label`` (the exponent
``e`` of the edge label ``exp(2 pi i e / r)``, 0 at roots), plus the set of
closed roots.  Trees are the one-component, no-closed-root special case and
get their own lightweight type because they are enumerated by the million.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import Iterator, NamedTuple, Sequence

from .exact import Scalar, root_of_unity


class LabelledTree(NamedTuple):
    r: int
    parent: tuple[int, ...]
    label: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return self.parent.index(0) + 1

    def is_rectified(self) -> bool:
        return all(p == 0 or p > i for i, p in enumerate(self.parent, start=1))

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i, p, e) for i, (p, e) in enumerate(zip(self.parent, self.label), start=1) if p]

    def as_forest(self, closed: bool = False) -> DecoratedForest:
        return DecoratedForest(self.r, self.parent, self.label, frozenset({self.root}) if closed else frozenset())

    def text(self) -> str:
        return self.as_forest().text()


class DecoratedForest(NamedTuple):
    r: int
    parent: tuple[int, ...]
    label: tuple[int, ...]
    closed: frozenset = frozenset()

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def k(self) -> int:
        return sum(1 for p in self.parent if p)

    @property
    def l(self) -> int:
        return len(self.closed)

    @property
    def degree(self) -> int:
        return self.k + self.l

    def roots(self) -> list[int]:
        return [i for i, p in enumerate(self.parent, start=1) if p == 0]

    def open_roots(self) -> list[int]:
        return [i for i, p in enumerate(self.parent, start=1) if p == 0 and i not in self.closed]

    def is_open_root(self, i: int) -> bool:
        return self.parent[i - 1] == 0 and i not in self.closed

    def is_rectified(self) -> bool:
        return all(p == 0 or p > i for i, p in enumerate(self.parent, start=1))

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i, p, e) for i, (p, e) in enumerate(zip(self.parent, self.label), start=1) if p]

    def sort_key(self) -> tuple:
        return (self.k, self.l, self.parent, self.label, tuple(sorted(self.closed)))

    def text(self) -> str:
        return forest_text(self)

    def with_r(self, r: int) -> DecoratedForest:
        return DecoratedForest(r, self.parent, tuple(e % r for e in self.label), self.closed)


# ---------------------------------------------------------------------------
# structure helpers on parent tuples


def is_acyclic(parent: Sequence[int]) -> bool:
    n = len(parent)
    state = [0] * (n + 1)  # 0 unseen, 1 on current path, 2 done
    for start in range(1, n + 1):
        path = []
        v = start
        while v and state[v] == 0:
            state[v] = 1
            path.append(v)
            v = parent[v - 1]
        if v and state[v] == 1:
            return False
        for u in path:
            state[u] = 2
    return True


def root_of(parent: Sequence[int], v: int) -> int:
    while parent[v - 1]:
        v = parent[v - 1]
    return v


def components(parent: Sequence[int]) -> list[list[int]]:
    """Vertex sets of the trees, each sorted, ordered by smallest vertex."""
    groups: dict[int, list[int]] = {}
    for v in range(1, len(parent) + 1):
        groups.setdefault(root_of(parent, v), []).append(v)
    return sorted(groups.values())


def path_to_root(parent: Sequence[int], v: int) -> list[int]:
    out = [v]
    while parent[v - 1]:
        v = parent[v - 1]
        out.append(v)
    return out


def descendants(parent: Sequence[int], i: int) -> list[int]:
    """All ``k`` with a directed path ``k -> ... -> i`` (including ``i``)."""
    return [k for k in range(1, len(parent) + 1) if i in path_to_root(parent, k)]


@lru_cache(maxsize=None)
def parent_functions(n: int, rectified: bool = False) -> tuple[tuple[int, ...], ...]:
    """All acyclic parent tuples on ``1..n``, in lexicographic order."""
    if rectified:
        choices = [(0,) + tuple(range(i + 1, n + 1)) for i in range(1, n + 1)]
        return tuple(itertools.product(*choices))
    choices = [tuple(j for j in range(n + 1) if j != i) for i in range(1, n + 1)]
    return tuple(p for p in itertools.product(*choices) if is_acyclic(p))


@lru_cache(maxsize=None)
def tree_shapes(n: int, rectified: bool = False) -> tuple[tuple[int, ...], ...]:
    return tuple(p for p in parent_functions(n, rectified) if p.count(0) == 1)


# ---------------------------------------------------------------------------
# enumeration


def enumerate_trees(r: int, n: int, rectified_only: bool = False) -> Iterator[LabelledTree]:
    if r < 1 or n < 1:
        raise ValueError("need r >= 1 and n >= 1")
    labels = range(r)
    for parent in tree_shapes(n, rectified_only):
        ranges = [(0,) if p == 0 else labels for p in parent]
        for lab in itertools.product(*ranges):
            yield LabelledTree(r, parent, lab)


def count_trees(r: int, n: int, rectified_only: bool = False) -> int:
    """Count by running the enumeration (not the closed formula)."""
    return sum(1 for _ in enumerate_trees(r, n, rectified_only))


def enumerate_forests(
    r: int,
    n: int,
    k: int | None = None,
    l: int | None = None,
    rectified_only: bool = False,
) -> Iterator[DecoratedForest]:
    """Decorated forests with ``k`` edges and ``l`` closed roots.

    ``None`` for ``k`` or ``l`` means all values.  Order is ``(k, l, parent,
    label, closed)`` lexicographic.
    """
    if r < 1 or n < 1:
        raise ValueError("need r >= 1 and n >= 1")
    ks = range(n) if k is None else [k]
    shapes = parent_functions(n, rectified_only)
    for kk in ks:
        if kk < 0 or kk > n - 1:
            continue
        these = [p for p in shapes if p.count(0) == n - kk]
        ls = range(n - kk + 1) if l is None else [l]
        for ll in ls:
            if ll < 0 or kk + ll > n:
                continue
            for parent in these:
                roots = [i for i, p in enumerate(parent, start=1) if p == 0]
                ranges = [(0,) if p == 0 else range(r) for p in parent]
                closed_sets = [frozenset(c) for c in itertools.combinations(roots, ll)]
                for lab in itertools.product(*ranges):
                    for closed in closed_sets:
                        yield DecoratedForest(r, parent, lab, closed)


# ---------------------------------------------------------------------------
# text encoding

_TOKEN = re.compile(r"^(\d+)(\*?)(?:\[e(-?\d+)\])?(\*?)$")


class ForestSyntaxError(ValueError):
    pass


def parse_forest(text: str, n: int | None = None, r: int = 1) -> DecoratedForest:
    """Parse ``"1->2[e1];3*;4"``; chains ``"1->2->3*"`` are accepted.

    A label ``[eK]`` after a vertex is the label of the edge entering it.
    Vertices not mentioned are open roots.
    """
    parent: dict[int, int] = {}
    label: dict[int, int] = {}
    closed: set[int] = set()
    seen: set[int] = set()
    for item in text.replace(" ", "").split(";"):
        if not item:
            continue
        prev = None
        for tok in item.split("->"):
            m = _TOKEN.match(tok)
            if not m:
                raise ForestSyntaxError(f"bad vertex token {tok!r} in {text!r}")
            v = int(m.group(1))
            if v < 1:
                raise ForestSyntaxError("vertices start at 1")
            seen.add(v)
            if m.group(2) or m.group(4):
                closed.add(v)
            if prev is not None:
                if prev in parent and parent[prev] != v:
                    raise ForestSyntaxError(f"vertex {prev} has two outgoing edges")
                parent[prev] = v
                label[prev] = int(m.group(3) or 0) % r
            elif m.group(3):
                raise ForestSyntaxError(f"label on {tok!r} has no edge")
            prev = v
    size = max(seen, default=0) if n is None else n
    if seen and max(seen) > size:
        raise ForestSyntaxError(f"vertex {max(seen)} exceeds n={size}")
    ptuple = tuple(parent.get(i, 0) for i in range(1, size + 1))
    if not is_acyclic(ptuple):
        raise ForestSyntaxError(f"{text!r} contains a cycle")
    for c in closed:
        if ptuple[c - 1]:
            raise ForestSyntaxError(f"closed vertex {c} is not a root")
    ltuple = tuple(label.get(i, 0) for i in range(1, size + 1))
    return DecoratedForest(r, ptuple, ltuple, frozenset(closed))


def parse_tree(text: str, n: int | None = None, r: int = 1) -> LabelledTree:
    f = parse_forest(text, n, r)
    if f.parent.count(0) != 1 or f.closed:
        raise ForestSyntaxError(f"{text!r} is not a single tree with an open root")
    return LabelledTree(f.r, f.parent, f.label)


def forest_text(f: DecoratedForest | LabelledTree) -> str:
    closed = getattr(f, "closed", frozenset())
    targets = {p for p in f.parent if p}
    items = []
    for i, (p, e) in enumerate(zip(f.parent, f.label), start=1):
        if p:
            items.append((i, f"{i}->{p}" + (f"[e{e}]" if e else "")))
        elif i in closed:
            items.append((i, f"{i}*"))
        elif i not in targets:
            items.append((i, str(i)))
    return ";".join(s for _, s in sorted(items))


def forest_latex(f: DecoratedForest) -> str:
    parts = []
    for i, (p, e) in enumerate(zip(f.parent, f.label), start=1):
        if p:
            arrow = "\\to" if f.r == 1 or e == 0 else f"\\xrightarrow{{\\zeta_{{{f.r}}}^{{{e}}}}}"
            star = "^*" if p in f.closed else ""
            parts.append(f"{i}{arrow}{p}{star}")
    targets = {p for p in f.parent if p}
    for i in f.roots():
        if i in f.closed and i not in targets:
            parts.append(f"{i}^*")
        elif i not in targets:
            parts.append(str(i))
    return ",\\ ".join(parts)


# ---------------------------------------------------------------------------
# the wreath product


class GroupElement(NamedTuple):
    """``(zeta_1..zeta_n) w`` with ``zeta_i = exp(2 pi i zeta[i-1] / r)`` and ``perm[i-1] = w(i)``."""

    r: int
    zeta: tuple[int, ...]
    perm: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, r: int, n: int) -> GroupElement:
        return cls(r, (0,) * n, tuple(range(1, n + 1)))

    @classmethod
    def from_perm(cls, perm: Sequence[int], r: int = 1) -> GroupElement:
        return cls(r, (0,) * len(perm), tuple(perm))

    @classmethod
    def diagonal(cls, r: int, zeta: Sequence[int]) -> GroupElement:
        return cls(r, tuple(z % r for z in zeta), tuple(range(1, len(zeta) + 1)))

    def __mul__(self, other: GroupElement) -> GroupElement:
        # (zeta w)(zeta' w') = (zeta * w.zeta') (w w'),  (w.zeta')_{w(i)} = zeta'_i
        n = self.n
        moved = [0] * n
        for i in range(n):
            moved[self.perm[i] - 1] = other.zeta[i]
        zeta = tuple((a + b) % self.r for a, b in zip(self.zeta, moved))
        perm = tuple(self.perm[other.perm[i] - 1] for i in range(n))
        return GroupElement(self.r, zeta, perm)

    def inverse(self) -> GroupElement:
        n = self.n
        inv = [0] * n
        for i, w in enumerate(self.perm, start=1):
            inv[w - 1] = i
        # (zeta w)^{-1} = w^{-1} zeta^{-1} = (w^{-1}.zeta^{-1}) w^{-1}
        zeta = [0] * n
        for i in range(n):
            zeta[inv[i] - 1] = (-self.zeta[i]) % self.r
        return GroupElement(self.r, tuple(zeta), tuple(inv))

    def is_identity(self) -> bool:
        return not any(self.zeta) and all(w == i for i, w in enumerate(self.perm, start=1))

    def act(self, f):
        return act_forest(self, f)


def all_permutations(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(1, n + 1))


def group_elements(r: int, n: int) -> Iterator[GroupElement]:
    for perm in all_permutations(n):
        for zeta in itertools.product(range(r), repeat=n):
            yield GroupElement(r, zeta, perm)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * (len(perm) + 1)
    for i in range(1, len(perm) + 1):
        if not seen[i]:
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j - 1]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = set()
    out = []
    for i in range(1, len(perm) + 1):
        if i not in seen:
            c = []
            j = i
            while j not in seen:
                seen.add(j)
                c.append(j)
                j = perm[j - 1]
            out.append(c)
    return out


def act_forest(g: GroupElement, f):
    """``g.F``: move vertices by ``w``, then twist labels by ``zeta_i zeta_j^{-1}``."""
    n = len(f.parent)
    if g.n != n:
        raise ValueError("group element and forest have different n")
    r = f.r
    w = g.perm
    parent = [0] * n
    label = [0] * n
    for i in range(n):
        p = f.parent[i]
        if p:
            v = w[i]
            q = w[p - 1]
            parent[v - 1] = q
            label[v - 1] = (f.label[i] + g.zeta[v - 1] - g.zeta[q - 1]) % r
    if isinstance(f, LabelledTree):
        return LabelledTree(r, tuple(parent), tuple(label))
    closed = frozenset(w[c - 1] for c in f.closed)
    return DecoratedForest(r, tuple(parent), tuple(label), closed)


# ---------------------------------------------------------------------------
# signs and characters


def sign_epsilon_i(f: DecoratedForest, i: int) -> int:
    if not 1 <= i <= f.n:
        raise ValueError("vertex out of range")
    below = sum(1 for v in range(1, i) if f.is_open_root(v))
    return -1 if (i - 1 - below) % 2 else 1


def sign_epsilon_w(perm: Sequence[int], f: DecoratedForest) -> int:
    opens = f.open_roots()
    inv = sum(1 for a, b in itertools.combinations(opens, 2) if perm[a - 1] > perm[b - 1])
    return -1 if inv % 2 else 1


def linear_character(name: str, g: GroupElement) -> Scalar:
    if name in ("eps", "epsilon", "sign"):
        return permutation_sign(g.perm)
    if name == "prod":
        return root_of_unity(Fraction(sum(g.zeta), g.r))
    if name == "det":
        return permutation_sign(g.perm) * root_of_unity(Fraction(sum(g.zeta), g.r))
    raise ValueError(f"unknown linear character {name!r}")


# ---------------------------------------------------------------------------
# weight queries


class ForestQueries(NamedTuple):
    components: list[list[int]]
    below: dict[int, list[int]]
    below_sums: dict[int, Fraction]
    tree_sums: dict[int, Fraction]  # keyed by root


def forest_queries(f, a: Sequence[Fraction]) -> ForestQueries:
    if len(a) != len(f.parent):
        raise ValueError("weight vector has the wrong length")
    a = [Fraction(x) for x in a]
    comps = components(f.parent)
    below = {i: descendants(f.parent, i) for i in range(1, len(a) + 1)}
    below_sums = {i: sum((a[k - 1] for k in below[i]), Fraction(0)) for i in below}
    tree_sums = {root_of(f.parent, c[0]): sum((a[v - 1] for v in c), Fraction(0)) for c in comps}
    return ForestQueries(comps, below, below_sums, tree_sums)


def floor_q(x: Fraction) -> int:
    return floor(Fraction(x))


def ceil_q(x: Fraction) -> int:
    return ceil(Fraction(x))
