"""Finite groups used for characters: wreath products ``W(r,n)`` (with
``S_n = W(1,n)``), Young subgroups of ``S_n``, and subgroups given by
generators carrying a one-dimensional character.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Iterable, Sequence

from .exact import Cyclotomic, Scalar, conjugate, is_rational_scalar, as_fraction
from .forests import GroupElement, cycles, group_elements

Partition = tuple  # weakly decreasing positive ints


def partitions(n: int, max_part: int | None = None) -> list[Partition]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def multiplicities(lam: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in lam:
        out[part] = out.get(part, 0) + 1
    return out


def multipartitions(r: int, n: int) -> list[tuple[Partition, ...]]:
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            for lam in partitions(remaining):
                out.append(tuple(prefix) + (lam,))
            return
        for size in range(remaining, -1, -1):
            for lam in partitions(size):
                rec(prefix + [lam], remaining - size, slots - 1)

    rec([], n, r)
    return out


def label_text(label) -> str:
    if label and isinstance(label[0], tuple):
        return "|".join(",".join(map(str, lam)) or "-" for lam in label)
    return ",".join(map(str, label)) or "-"


class WreathGroup:
    """``W(r,n) = mu_r^n x| S_n``; class labels are ``r``-tuples of partitions.

    Cycle ``c`` of ``w`` has colour ``sum_{i in c} zeta_i mod r``; the label
    lists the cycle lengths of each colour.  For ``r = 1`` labels are plain
    partitions.
    """

    def __init__(self, r: int, n: int):
        self.r = r
        self.n = n
        self.order = r**n * factorial(n)

    def __repr__(self) -> str:
        return f"W({self.r},{self.n})" if self.r > 1 else f"S_{self.n}"

    def __eq__(self, other) -> bool:
        return isinstance(other, WreathGroup) and (self.r, self.n) == (other.r, other.n)

    def __hash__(self) -> int:
        return hash(("W", self.r, self.n))

    @property
    def is_symmetric(self) -> bool:
        return self.r == 1

    def classes(self) -> list:
        if self.r == 1:
            return partitions(self.n)
        return multipartitions(self.r, self.n)

    def label_of(self, g: GroupElement):
        parts: list[list[int]] = [[] for _ in range(self.r)]
        for c in cycles(g.perm):
            colour = sum(g.zeta[i - 1] for i in c) % self.r if self.r > 1 else 0
            parts[colour].append(len(c))
        lab = tuple(tuple(sorted(p, reverse=True)) for p in parts)
        return lab[0] if self.r == 1 else lab

    def _as_multi(self, label) -> tuple:
        return (label,) if self.r == 1 else label

    def centralizer_order(self, label) -> int:
        total = 1
        for lam in self._as_multi(label):
            for m, k in multiplicities(lam).items():
                total *= (self.r * m) ** k * factorial(k)
        return total

    def class_size(self, label) -> int:
        return self.order // self.centralizer_order(label)

    def representative(self, label) -> GroupElement:
        n, r = self.n, self.r
        perm = list(range(1, n + 1))
        zeta = [0] * n
        start = 1
        for colour, lam in enumerate(self._as_multi(label)):
            for m in lam:
                block = list(range(start, start + m))
                for a, b in zip(block, block[1:] + block[:1]):
                    perm[a - 1] = b
                zeta[start - 1] = colour
                start += m
        return GroupElement(r, tuple(zeta), tuple(perm))

    def elements(self) -> Iterable[GroupElement]:
        return group_elements(self.r, self.n)

    def identity_label(self):
        ident = GroupElement.identity(self.r, self.n)
        return self.label_of(ident)


class YoungSubgroup:
    """``S_{B_1} x ... x S_{B_k}`` inside ``S_n`` for a set partition into blocks."""

    def __init__(self, blocks: Sequence[Sequence[int]]):
        self.blocks = [tuple(sorted(b)) for b in blocks]
        self.n = sum(len(b) for b in self.blocks)
        self.r = 1
        self.order = 1
        for b in self.blocks:
            self.order *= factorial(len(b))
        self._where = {v: k for k, b in enumerate(self.blocks) for v in b}

    def __repr__(self) -> str:
        return "Young(" + "|".join(",".join(map(str, b)) for b in self.blocks) + ")"

    @property
    def is_symmetric(self) -> bool:
        return len(self.blocks) == 1

    def contains(self, g: GroupElement) -> bool:
        return all(self._where[g.perm[v - 1]] == self._where[v] for v in range(1, self.n + 1))

    def classes(self) -> list:
        return [tuple(c) for c in itertools.product(*(partitions(len(b)) for b in self.blocks))]

    def label_of(self, g: GroupElement):
        parts: list[list[int]] = [[] for _ in self.blocks]
        for c in cycles(g.perm):
            parts[self._where[c[0]]].append(len(c))
        return tuple(tuple(sorted(p, reverse=True)) for p in parts)

    def centralizer_order(self, label) -> int:
        total = 1
        for lam in label:
            for m, k in multiplicities(lam).items():
                total *= m**k * factorial(k)
        return total

    def class_size(self, label) -> int:
        return self.order // self.centralizer_order(label)

    def representative(self, label) -> GroupElement:
        perm = list(range(1, self.n + 1))
        for block, lam in zip(self.blocks, label):
            pos = 0
            for m in lam:
                seg = block[pos:pos + m]
                for a, b in zip(seg, seg[1:] + seg[:1]):
                    perm[a - 1] = b
                pos += m
        return GroupElement(1, (0,) * self.n, tuple(perm))

    def elements(self) -> Iterable[GroupElement]:
        for choice in itertools.product(*(itertools.permutations(b) for b in self.blocks)):
            perm = list(range(1, self.n + 1))
            for block, image in zip(self.blocks, choice):
                for a, b in zip(block, image):
                    perm[a - 1] = b
            yield GroupElement(1, (0,) * self.n, tuple(perm))

    def identity_label(self):
        return tuple(tuple([1] * len(b)) for b in self.blocks)


# ---------------------------------------------------------------------------
# class functions


class ClassFunction:
    __slots__ = ("group", "values")

    def __init__(self, group, values: dict):
        self.group = group
        self.values = dict(values)

    def __call__(self, g: GroupElement) -> Scalar:
        return self.values[self.group.label_of(g)]

    def __getitem__(self, label) -> Scalar:
        return self.values[label]

    def degree(self) -> Scalar:
        return self.values[self.group.identity_label()]

    def _check(self, other: ClassFunction) -> None:
        if self.group != other.group and repr(self.group) != repr(other.group):
            raise ValueError("class functions on different groups")

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, {k: self.values[k] + other.values[k] for k in self.values})

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, {k: self.values[k] - other.values[k] for k in self.values})

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, {k: self.values[k] * other.values[k] for k in self.values})
        return ClassFunction(self.group, {k: v * other for k, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return set(self.values) == set(other.values) and all(
            self.values[k] == other.values[k] for k in self.values
        )

    __hash__ = None

    def inner(self, other: ClassFunction) -> Scalar:
        self._check(other)
        total: Scalar = 0
        for lab, v in self.values.items():
            w = other.values[lab]
            if v and w:
                total = total + self.group.class_size(lab) * v * conjugate(w)
        total = total / self.group.order if isinstance(total, Cyclotomic) else Fraction(total, 1) / self.group.order
        return as_fraction(total) if is_rational_scalar(total) else total

    def is_rational(self) -> bool:
        return all(is_rational_scalar(v) for v in self.values.values())

    def decompose(self) -> dict:
        """Multiplicities of irreducibles; symmetric groups only."""
        if not getattr(self.group, "is_symmetric", False) or not isinstance(self.group, WreathGroup):
            raise ValueError("irreducible decomposition is offered for S_n only")
        n = self.group.n
        out = {}
        for lam in partitions(n):
            chi = irreducible(lam)
            m = self.inner(chi)
            if m:
                out[lam] = m
        return out

    def to_json(self) -> dict:
        from .exact import scalar_text

        return {label_text(k): scalar_text(v) for k, v in self.values.items()}

    def __repr__(self) -> str:
        return f"ClassFunction({self.group!r}, {self.to_json()})"


def linear_class_function(group: WreathGroup, name: str) -> ClassFunction:
    from .forests import linear_character

    return ClassFunction(group, {lab: linear_character(name, group.representative(lab)) for lab in group.classes()})


def trivial_class_function(group) -> ClassFunction:
    return ClassFunction(group, {lab: 1 for lab in group.classes()})


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    m = mu[0]
    rest = mu[1:]
    length = len(lam)
    beta = [lam[i] + (length - 1 - i) for i in range(length)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - m
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        new_beta = sorted([x for x in beta if x != b] + [nb], reverse=True)
        new_lam = tuple(x - (length - 1 - i) for i, x in enumerate(new_beta))
        new_lam = tuple(p for p in new_lam if p > 0)
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def mn_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    lam = tuple(sorted(lam, reverse=True))
    mu = tuple(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError("partitions of different sizes")
    return _mn(lam, mu)


def irreducible(lam: Sequence[int]) -> ClassFunction:
    lam = tuple(lam)
    group = WreathGroup(1, sum(lam))
    return ClassFunction(group, {mu: _mn(lam, mu) for mu in group.classes()})


def hook_length_dimension(lam: Sequence[int]) -> int:
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, p in enumerate(lam):
        for j in range(p):
            prod *= (p - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // prod


# ---------------------------------------------------------------------------
# subgroups with one-dimensional characters


class InconsistentCharacter(ValueError):
    pass


def generate_subgroup(
    generators: Sequence[tuple[GroupElement, Scalar]], identity: GroupElement
) -> dict[GroupElement, Scalar]:
    """Close ``generators`` under products, carrying a one-dimensional character.

    Raises when two words for the same element give different values.
    """
    elems: dict[GroupElement, Scalar] = {identity: 1}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            vh = elems[h]
            for s, vs in generators:
                g = h * s
                v = vh * vs
                old = elems.get(g)
                if old is None:
                    elems[g] = v
                    nxt.append(g)
                elif old != v:
                    raise InconsistentCharacter(f"character is not well defined at {g}")
        frontier = nxt
    return elems


def induce(group, subgroup: dict[GroupElement, Scalar]) -> ClassFunction:
    """Induced class function via ``|C_G(g)| / |H| * sum_{h in H cap cl(g)} chi(h)``."""
    sums: dict = {}
    for h, v in subgroup.items():
        lab = group.label_of(h)
        sums[lab] = sums.get(lab, 0) + v
    order_h = len(subgroup)
    values = {}
    for lab in group.classes():
        s = sums.get(lab, 0)
        if s:
            val = s * group.centralizer_order(lab)
            val = val / order_h if isinstance(val, Cyclotomic) else Fraction(val, order_h)
            values[lab] = as_fraction(val) if is_rational_scalar(val) else val
        else:
            values[lab] = 0
    return ClassFunction(group, values)


def induce_bruteforce(group, subgroup: dict[GroupElement, Scalar]) -> ClassFunction:
    """``(1/|H|) sum_{x in G, x^-1 g x in H} chi(x^-1 g x)`` summed over all of ``G``."""
    elements = list(group.elements())
    inverses = {x: x.inverse() for x in elements}
    values = {}
    for lab in group.classes():
        g = group.representative(lab)
        total: Scalar = 0
        for x in elements:
            y = inverses[x] * g * x
            v = subgroup.get(y)
            if v is not None:
                total = total + v
        val = total / len(subgroup) if isinstance(total, Cyclotomic) else Fraction(total, len(subgroup))
        values[lab] = as_fraction(val) if is_rational_scalar(val) else val
    return ClassFunction(group, values)


def restrict(chi: ClassFunction, subgroup: dict[GroupElement, Scalar]) -> dict[GroupElement, Scalar]:
    return {h: chi(h) for h in subgroup}


def subgroup_inner(a: dict[GroupElement, Scalar], b: dict[GroupElement, Scalar]) -> Scalar:
    total: Scalar = 0
    for h, v in a.items():
        total = total + v * conjugate(b[h])
    val = total / len(a) if isinstance(total, Cyclotomic) else Fraction(total, len(a))
    return as_fraction(val) if is_rational_scalar(val) else val


def class_function_from(group, fn: Callable[[GroupElement], Scalar]) -> ClassFunction:
    return ClassFunction(group, {lab: fn(group.representative(lab)) for lab in group.classes()})
