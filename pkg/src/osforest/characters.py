"""Induced characters from block subgroups and the character identities
between the tree module, the graded OS pieces and their isotypic parts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exact import Cyclotomic, euler_phi, moebius, root_of_unity
from .forests import GroupElement, linear_character
from .groups import (
    ClassFunction,
    WreathGroup,
    generate_subgroup,
    induce,
    induce_bruteforce,
    linear_class_function,
)


# ---------------------------------------------------------------------------
# arithmetic side


def primitive_root_sum(d: int, power: int = 1) -> Fraction:
    """``sum over primitive d-th roots eta of eta**power``, summed exactly."""
    total = 0
    for k in range(d):
        if gcd(k, d) == 1:
            total = total + root_of_unity(Fraction(k * power, d))
    if isinstance(total, Cyclotomic):
        return total.to_fraction()
    return Fraction(total)


def cyclic_induction_value(n: int, d: int) -> int:
    """Centralizer-scaled value of ``Ind_{mu_n}^{S_n} psi_n`` on cycle type ``(d^{n/d})``."""
    if d < 1 or n % d:
        raise ValueError(f"{d} does not divide {n}")
    return moebius(d)


def moebius_identity_sides(r: int, m: int, d: int) -> tuple[Fraction, Fraction, Fraction]:
    """``(mu(d), closed double sum, direct root-of-unity double sum)`` for ``n = r m``."""
    if (r * m) % d:
        raise ValueError("d must divide r m")
    lhs = Fraction(moebius(d))
    closed = Fraction(0)
    direct = Fraction(0)
    for e in (x for x in range(1, r + 1) if r % x == 0):
        for f in (y for y in range(1, m + 1) if m % y == 0):
            if lcm(e, f) != d:
                continue
            g = e // gcd(m, e)
            closed += Fraction(moebius(f) * moebius(g) * euler_phi(e), euler_phi(g))
            direct += primitive_root_sum(e, m) * primitive_root_sum(f)
    return lhs, closed, direct


# ---------------------------------------------------------------------------
# subgroup specifications


@dataclass
class Block:
    vertices: tuple[int, ...]
    cyclic: bool = True  # carries mu_m generated by the block cycle with psi_m
    diagonal: bool = False  # carries the diagonal mu_r acting trivially


@dataclass
class SubgroupSpec:
    """Blocks of consecutive vertices, each with ``mu_m`` (and optionally diagonal ``mu_r``),
    plus block permutations among blocks of equal size within each family."""

    r: int
    n: int
    families: list[list[Block]] = field(default_factory=list)
    family_signs: list[bool] = field(default_factory=list)  # sign character on block permutations

    def generators(self) -> list[tuple[GroupElement, object]]:
        r, n = self.r, self.n
        ident_perm = tuple(range(1, n + 1))
        gens = []
        for family, signed in zip(self.families, self.family_signs):
            for b in family:
                m = len(b.vertices)
                if b.diagonal and r > 1:
                    zeta = [0] * n
                    for v in b.vertices:
                        zeta[v - 1] = 1
                    gens.append((GroupElement(r, tuple(zeta), ident_perm), 1))
                if b.cyclic and m > 1:
                    perm = list(ident_perm)
                    vs = b.vertices
                    for a, c in zip(vs, vs[1:] + vs[:1]):
                        perm[a - 1] = c
                    gens.append((GroupElement(r, (0,) * n, tuple(perm)), root_of_unity(Fraction(1, m))))
            for b1, b2 in zip(family, family[1:]):
                if len(b1.vertices) != len(b2.vertices):
                    continue
                perm = list(ident_perm)
                for a, c in zip(b1.vertices, b2.vertices):
                    perm[a - 1] = c
                    perm[c - 1] = a
                gens.append((GroupElement(r, (0,) * n, tuple(perm)), -1 if signed else 1))
        return gens

    def subgroup(self) -> dict:
        return generate_subgroup(self.generators(), GroupElement.identity(self.r, self.n))


def blocks_from_sizes(sizes: Sequence[int], start: int = 1, diagonal: bool = False) -> list[Block]:
    out = []
    for m in sizes:
        out.append(Block(tuple(range(start, start + m)), cyclic=True, diagonal=diagonal))
        start += m
    return out


def wreath_summand_spec(r: int, n: int, lam1: Sequence[int], lam2: Sequence[int]) -> SubgroupSpec:
    """``((mu_r x mu_lam) ... ) x| prod S_m`` inside ``W(r,n)`` with ``eps psi``."""
    fam1 = blocks_from_sizes(lam1, 1, diagonal=True)
    fam2 = blocks_from_sizes(lam2, 1 + sum(lam1), diagonal=True)
    return SubgroupSpec(r, n, [fam1, fam2], [True, False])


def symmetric_summand_spec(r: int, n: int, lam1: Sequence[int], lam2: Sequence[int]) -> SubgroupSpec:
    """Blocks of sizes ``r lam`` in ``S_n`` with ``mu_{r lam}`` and ``eps psi``."""
    fam1 = blocks_from_sizes([r * x for x in lam1], 1)
    fam2 = blocks_from_sizes([r * x for x in lam2], 1 + r * sum(lam1))
    return SubgroupSpec(1, n, [fam1, fam2], [True, False])


def induced_character(spec: SubgroupSpec, guard: int | None = 10**5, bruteforce: bool = False) -> ClassFunction:
    group = WreathGroup(spec.r, spec.n)
    if guard is not None and group.order > guard:
        from .os_algebra import SizeGuardError

        raise SizeGuardError(f"|{group}| = {group.order} exceeds {guard}")
    h = spec.subgroup()
    return induce_bruteforce(group, h) if bruteforce else induce(group, h)


def cyclic_induced(n: int) -> ClassFunction:
    """``Ind_{mu_n}^{S_n} psi_n`` with ``mu_n`` generated by ``(1 2 ... n)``."""
    return induced_character(SubgroupSpec(1, n, [[Block(tuple(range(1, n + 1)))]], [False]))


def wreath_cyclic_induced(r: int, n: int) -> ClassFunction:
    """``Ind_{mu_r x mu_n}^{W(r,n)} (1 x psi_n)``."""
    return induced_character(SubgroupSpec(r, n, [[Block(tuple(range(1, n + 1)), diagonal=True)]], [False]))


# ---------------------------------------------------------------------------
# W(r, m) inside S_{rm}


def embed_wreath(g: GroupElement) -> GroupElement:
    """Image of ``(zeta, w) in W(r,m)`` in ``S_{rm}`` as the centralizer of ``m`` disjoint ``r``-cycles.

    Vertex ``(b, t)`` (block ``b``, position ``t``) is ``(b-1) r + t + 1``;
    ``w`` moves blocks and ``zeta_b`` rotates block ``b``.
    """
    r, m = g.r, g.n
    perm = [0] * (r * m)
    for b in range(1, m + 1):
        wb = g.perm[b - 1]
        for t in range(r):
            src = (b - 1) * r + t + 1
            dst = (wb - 1) * r + (t + g.zeta[wb - 1]) % r + 1
            perm[src - 1] = dst
    return GroupElement(1, (0,) * (r * m), tuple(perm))


def embedded_subgroup(r: int, m: int, value) -> dict:
    """``{embed(g): value(g)}`` over all of ``W(r,m)``."""
    out = {}
    for g in WreathGroup(r, m).elements():
        out[embed_wreath(g)] = value(g)
    return out


def double_cyclic_induced(r: int, m: int) -> ClassFunction:
    """``Ind_{mu_r x mu_m}^{S_{rm}} (psi_r^m x psi_m)``."""
    n = r * m
    diag = GroupElement(r, (1,) * m, tuple(range(1, m + 1)))
    cyc = GroupElement(r, (0,) * m, tuple(list(range(2, m + 1)) + [1]))
    gens = [(embed_wreath(diag), root_of_unity(Fraction(m, r))), (embed_wreath(cyc), root_of_unity(Fraction(1, m)))]
    h = generate_subgroup(gens, GroupElement.identity(1, n))
    return induce(WreathGroup(1, n), h)


# ---------------------------------------------------------------------------
# identity checks


def _sum(chars: list[ClassFunction], group) -> ClassFunction:
    total = ClassFunction(group, {lab: 0 for lab in group.classes()})
    for c in chars:
        total = total + c
    return total


def graded_induction_sides(r: int, n: int, k: int, l: int) -> tuple[ClassFunction, ClassFunction]:
    from .os_algebra import os_character, partition_pairs

    group = WreathGroup(r, n)
    lhs = linear_class_function(group, "eps") * os_character(r, n, k, l)
    rhs = _sum([induced_character(wreath_summand_spec(r, n, a, b)) for a, b in partition_pairs(n, n - k - l, l)], group)
    return lhs, rhs


def isotypic_induction_sides(r: int, n: int, k: int, l: int, s: int) -> tuple[ClassFunction, ClassFunction]:
    from .local_system import WeightVector, isotypic_character
    from .os_algebra import partition_pairs

    if n % r:
        raise ValueError("need r | n")
    group = WreathGroup(1, n)
    a = WeightVector.constant(n, Fraction(s, r), r)
    lhs = linear_class_function(group, "eps") * isotypic_character(a, k, l)
    pairs = partition_pairs(n // r, n - k - l, l)
    rhs = _sum([induced_character(symmetric_summand_spec(r, n, a1, a2)) for a1, a2 in pairs], group)
    return lhs, rhs


def isotypic_wreath_sides(r: int, n: int, k: int, l: int, s: int) -> tuple[ClassFunction, ClassFunction]:
    from .local_system import WeightVector, isotypic_character
    from .os_algebra import os_character

    if n % r:
        raise ValueError("need r | n")
    m = n // r
    group = WreathGroup(1, n)
    a = WeightVector.constant(n, Fraction(s, r), r)
    lhs = linear_class_function(group, "eps") * isotypic_character(a, k, l)
    kk = k - n + m
    if kk < 0 or kk + l > m:
        rhs = ClassFunction(group, {lab: 0 for lab in group.classes()})
        return lhs, rhs
    inner = os_character(r, m, kk, l)
    h = embedded_subgroup(r, m, lambda g: linear_character("det", g) * inner(g))
    return lhs, induce(group, h)


def wreath_cyclic_sides(r: int, n: int) -> tuple[ClassFunction, ClassFunction]:
    return module_character(r, n), wreath_cyclic_induced(r, n)


def cyclic_induction_sides(n: int) -> tuple[ClassFunction, ClassFunction]:
    return module_character(1, n), cyclic_induced(n)


def double_cyclic_sides(r: int, m: int) -> tuple[ClassFunction, ClassFunction, ClassFunction]:
    """``V(1,rm)``, the double-cyclic induction, and ``Ind_{W(r,m)} (prod (x) V(r,m))``."""
    n = r * m
    inner = module_character(r, m)
    h = embedded_subgroup(r, m, lambda g: linear_character("prod", g) * inner(g))
    return module_character(1, n), double_cyclic_induced(r, m), induce(WreathGroup(1, n), h)


def module_character(r: int, n: int) -> ClassFunction:
    from .tree_module import module_trace, rectified_basis

    group = WreathGroup(r, n)
    cache: dict = {}
    basis = rectified_basis(r, n)
    return ClassFunction(group, {lab: module_trace(group.representative(lab), r, n, cache, basis) for lab in group.classes()})


def verify_identity(case: str, *args) -> bool:
    if case == "graded-induction":
        lhs, rhs = graded_induction_sides(*args)
        return lhs == rhs
    if case == "isotypic-induction":
        lhs, rhs = isotypic_induction_sides(*args)
        return lhs == rhs
    if case == "isotypic-wreath":
        lhs, rhs = isotypic_wreath_sides(*args)
        return lhs == rhs
    if case == "wreath-cyclic":
        lhs, rhs = wreath_cyclic_sides(*args)
        return lhs == rhs
    if case == "cyclic-induction":
        lhs, rhs = cyclic_induction_sides(*args)
        return lhs == rhs
    if case == "double-cyclic":
        r, m = args
        ok = all(len(set(moebius_identity_sides(r, m, d))) == 1 for d in range(1, r * m + 1) if (r * m) % d == 0)
        if r * m <= 6:
            a, b, c = double_cyclic_sides(r, m)
            ok = ok and a == b == c
        return ok
    raise ValueError(f"unknown case {case!r}")


def two_two_decompositions() -> dict[tuple[int, int], bool]:
    """The graded pieces of ``A(T(2,2))`` against their stated sums of linear characters."""
    from .os_algebra import os_character

    group = WreathGroup(2, 2)
    one = linear_class_function(group, "eps") * linear_class_function(group, "eps")
    eps = linear_class_function(group, "eps")
    prod = linear_class_function(group, "prod")
    expected = {
        (0, 0): one,
        (1, 0): one + prod,
        (0, 1): one + eps,
        (1, 1): one + prod,
        (0, 2): eps,
    }
    return {kl: os_character(2, 2, *kl) == chi for kl, chi in expected.items()}


HALF_WEIGHT_N4_EXPECTED = {
    (2, 0): {(3, 1): 1},
    (3, 0): {(3, 1): 1, (2, 1, 1): 1},
    (2, 1): {(4,): 1, (3, 1): 1, (2, 2): 1},
    (3, 1): {(3, 1): 1, (2, 1, 1): 1},
    (2, 2): {(4,): 1, (2, 2): 1},
}


def half_weight_n4_decompositions() -> dict[tuple[int, int], dict]:
    from .local_system import WeightVector, isotypic_character

    a = WeightVector.constant(4, Fraction(1, 2), 2)
    return {kl: isotypic_character(a, *kl).decompose() for kl in HALF_WEIGHT_N4_EXPECTED}
