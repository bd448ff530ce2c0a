"""Acceptance checks, one function per row, each returning a :class:`CheckResult`."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Callable

from .forests import count_trees, enumerate_forests, enumerate_trees, forest_text, parse_forest


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float = 0.0
    limit: float | None = None
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lim = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"[{status}] {self.name}: {self.seconds:.2f}s{lim}"


def _timed(name: str, limit: float | None, body: Callable[[dict], bool]) -> CheckResult:
    details: dict = {}
    t0 = time.perf_counter()
    ok = bool(body(details))
    dt = time.perf_counter() - t0
    if limit is not None and dt > limit:
        details["over_time"] = True
        ok = False
    return CheckResult(name, ok, dt, limit, details)


# 1 ------------------------------------------------------------------------
def check_counting(max_r: int = 4, max_n: int = 6) -> CheckResult:
    def body(d):
        bad = []
        for r in range(1, max_r + 1):
            for n in range(1, max_n + 1):
                total = count_trees(r, n)
                rect = count_trees(r, n, rectified_only=True)
                if total != (r * n) ** (n - 1) or rect != r ** (n - 1) * factorial(n - 1):
                    bad.append((r, n, total, rect))
        d["mismatches"] = bad
        return not bad

    return _timed("1 tree counts", 60, body)


# 2 ------------------------------------------------------------------------
def two_two_table():
    """The twelve forests of F(2,2) with their forms built from generators."""
    from .forms import DifferentialForm, omega_i, omega_ijq

    one = DifferentialForm.scalar(2, 1)
    w1, w2 = omega_i(2, 1), omega_i(2, 2)
    h = Fraction(1, 2)
    rows = [("1;2", one)]
    for e, q in ((0, 0), (1, h)):
        tag = f"[e{e}]" if e else ""
        rows.append((f"1->2{tag}", -omega_ijq(2, 1, 2, q)))
        rows.append((f"2->1{tag}", omega_ijq(2, 2, 1, q)))
        rows.append((f"1->2{tag};2*", omega_ijq(2, 1, 2, q).wedge(w2)))
        rows.append((f"2->1{tag};1*", w1.wedge(omega_ijq(2, 2, 1, q))))
    rows += [("1;2*", w2), ("1*;2", -w1), ("1*;2*", w1.wedge(w2))]
    return rows


def check_two_two_catalog() -> CheckResult:
    from .forms import alpha_form

    def body(d):
        table = {parse_forest(t, 2, 2): form for t, form in two_two_table()}
        enumerated = set(enumerate_forests(2, 2))
        d["entries"] = len(table)
        d["enumerated"] = len(enumerated)
        if set(table) != enumerated or len(table) != 12:
            return False
        bad = [forest_text(f) for f, form in table.items() if alpha_form(f) != form]
        d["mismatches"] = bad
        return not bad

    return _timed("2 F(2,2) catalog", 1, body)


# 3 ------------------------------------------------------------------------
def check_rectification_oracle(ns=(2, 3, 4)) -> CheckResult:
    from .tree_module import p_tree_inverse, realize_r1, rectify_tree

    def body(d):
        cache: dict = {}
        counts = {}
        for n in ns:
            c = 0
            for t in enumerate_trees(1, n):
                c += 1
                if realize_r1(rectify_tree(t, cache), n) != p_tree_inverse(t):
                    d["failure"] = forest_text(t)
                    return False
            counts[n] = c
        d["trees"] = counts
        return True

    return _timed("3 rectification oracle", 60, body)


# 4 ------------------------------------------------------------------------
def check_module_dimension(max_r: int = 3, max_n: int = 5) -> CheckResult:
    from .tree_module import dimension_certificate, realization_rank

    def body(d):
        ok = True
        dims = {}
        for r in range(1, max_r + 1):
            for n in range(1, max_n + 1):
                cert = dimension_certificate(r, n)
                dims[f"{r},{n}"] = cert["dimension"]
                ok &= cert["dimension"] == r ** (n - 1) * factorial(n - 1)
        ranks = {n: realization_rank(n) for n in range(1, max_n + 1)}
        ok &= all(ranks[n] == factorial(n - 1) for n in ranks)
        d["dimensions"] = dims
        d["realization_ranks"] = ranks
        return ok

    return _timed("4 module dimension", 300, body)


# 5 ------------------------------------------------------------------------
def check_lehrer_solomon(max_n: int = 6, max_r: int = 3, max_n_ann: int = 5) -> CheckResult:
    from .tree_module import annihilator_check, verify_ls_identity

    def body(d):
        cache: dict = {}
        ls = {n: all(verify_ls_identity(n, p, cache) for p in range(n)) for n in range(1, max_n + 1)}
        ann = {f"{r},{n}": annihilator_check(r, n) for r in range(1, max_r + 1) for n in range(1, max_n_ann + 1)}
        d["identity"] = ls
        d["annihilator"] = ann
        return all(ls.values()) and all(ann.values())

    return _timed("5 Lehrer-Solomon and annihilator", None, body)


# 6 ------------------------------------------------------------------------
def check_betti(max_n: int = 6) -> CheckResult:
    from .local_system import WeightVector, betti_numbers

    def body(d):
        got = betti_numbers(WeightVector.constant(4, Fraction(-1, 2)))
        d["n4_minus_half"] = got
        ok = got == {2: 3, 3: 12, 4: 9}
        bad = []
        for n in range(1, max_n + 1):
            for s in range(-n, n + 1):
                b = betti_numbers(WeightVector.constant(n, Fraction(s, n)))
                g = gcd(s, n)
                if set(b) != set(range(n - g, n + 1)):
                    bad.append((n, s, b))
        d["window_failures"] = bad
        return ok and not bad

    return _timed("6 Betti numbers", 60, body)


# 7 ------------------------------------------------------------------------
CLOSEDNESS_WEIGHTS = (
    (Fraction(-1, 2),) * 4,
    (Fraction(1, 2),) * 4,
    (Fraction(1, 3),) * 3,
    (Fraction(1, 4),) * 4,
    (Fraction(1, 2), Fraction(1, 2), Fraction(-1), Fraction(0)),
)


def check_closedness(weights=CLOSEDNESS_WEIGHTS) -> CheckResult:
    from .forms import beta_bar_form, twisted_differential
    from .local_system import WeightVector, admissible_forests

    def body(d):
        counts = {}
        for a in weights:
            w = WeightVector.of(a)
            c = 0
            for f in admissible_forests(w):
                c += 1
                if not twisted_differential(w.a, beta_bar_form(f, w)).is_zero():
                    d["failure"] = (str(w), forest_text(f))
                    return False
            counts[str(w)] = c
        d["forests"] = counts
        return True

    return _timed("7 closedness", 600, body)


# 8 ------------------------------------------------------------------------
def check_pullback(max_n: int = 3, max_r: int = 4) -> CheckResult:
    from .forms import verify_pullback_identity
    from .local_system import WeightVector, admissible_forests

    def body(d):
        count = 0
        for n in range(1, max_n + 1):
            for r in range(1, max_r + 1):
                for num in itertools.product(range(r), repeat=n):
                    w = WeightVector(tuple(Fraction(x, r) for x in num), r)
                    for f in admissible_forests(w):
                        count += 1
                        if not verify_pullback_identity(f, w):
                            d["failure"] = (str(w), forest_text(f))
                            return False
        d["instances"] = count
        return True

    return _timed("8 pullback identity", 600, body)


# 9 ------------------------------------------------------------------------
def check_nbc_chain(max_n: int = 4) -> CheckResult:
    from .forms import verify_nbc_chain_identity

    def body(d):
        count = 0
        for n in range(1, max_n + 1):
            for t in enumerate_trees(1, n, rectified_only=True):
                count += 1
                if not verify_nbc_chain_identity(t):
                    d["failure"] = forest_text(t)
                    return False
        d["trees"] = count
        return True

    return _timed("9 NBC chain identity", None, body)


# 10 -----------------------------------------------------------------------
def check_characters() -> CheckResult:
    from . import characters as ch

    def body(d):
        parts = {}
        parts["a_cyclic_induction"] = all(ch.verify_identity("cyclic-induction", n) for n in range(1, 6))
        sides = True
        for r in range(1, 7):
            for m in range(1, 7):
                for dd in range(1, r * m + 1):
                    if (r * m) % dd == 0:
                        sides &= len(set(ch.moebius_identity_sides(r, m, dd))) == 1
        parts["b_moebius_sides"] = sides
        parts["c_half_weight_n4"] = ch.half_weight_n4_decompositions() == {
            kl: {lam: Fraction(v) for lam, v in mult.items()} for kl, mult in ch.HALF_WEIGHT_N4_EXPECTED.items()
        }
        parts["d_isotypic_wreath"] = all(
            ch.verify_identity("isotypic-wreath", 2, 4, k, l, 1) for k in range(4) for l in range(5 - k)
        )
        parts["e_two_two"] = all(ch.two_two_decompositions().values())
        d.update(parts)
        return all(parts.values())

    return _timed("10 character identities", 600, body)


# 11 -----------------------------------------------------------------------
def check_generators(max_n_symbolic: int = 4, max_n_enum: int = 6) -> CheckResult:
    from .local_system import WeightVector, module_generator_candidates, module_generators

    def body(d):
        rep = module_generators(WeightVector.constant(4, Fraction(1, 2)))
        d["half_4"] = {"by_degree": rep.by_degree, "generators": [forest_text(f) for f in rep.generators]}
        ok = rep.by_degree == {2: 3} and all(f.k == 2 and f.l == 0 and len(f.roots()) == 2 for f in rep.generators)
        coprime = {}
        for n in range(2, max_n_enum + 1):
            for s in range(1, n):
                if gcd(s, n) != 1:
                    continue
                w = WeightVector.constant(n, Fraction(s, n))
                cands = module_generator_candidates(w)
                good = len(cands) == factorial(n - 1) and all(f.k == n - 1 and f.l == 0 for f in cands)
                if n <= max_n_symbolic:
                    sym = module_generators(w)
                    good &= sym.by_degree == {n - 1: factorial(n - 1)}
                coprime[f"{s}/{n}"] = good
        d["coprime"] = coprime
        return ok and all(coprime.values())

    return _timed("11 module generators", None, body)


# 12 -----------------------------------------------------------------------
def check_relations(max_n: int = 3, max_r: int = 2) -> CheckResult:
    from .forms import DifferentialForm, alpha_form, realize_os
    from .local_system import WeightVector, beta_element, beta_relation_instances
    from .os_algebra import forest_relation_instances

    def body(d):
        counts: dict = {}
        for r in range(1, max_r + 1):
            for n in range(2, max_n + 1):
                for kind, terms in forest_relation_instances(r, n):
                    counts[kind] = counts.get(kind, 0) + 1
                    total = DifferentialForm.zero(n)
                    for f, c in terms:
                        total = total + alpha_form(f).scale(c)
                    if not total.is_zero():
                        d["failure"] = (kind, [forest_text(f) for f, _ in terms])
                        return False
        beta_counts: dict = {}
        for r in range(1, max_r + 1):
            for n in range(2, max_n + 1):
                for num in itertools.product(range(r), repeat=n):
                    w = WeightVector(tuple(Fraction(x, r) for x in num), r)
                    for kind, terms in beta_relation_instances(w):
                        beta_counts[kind] = beta_counts.get(kind, 0) + 1
                        total = DifferentialForm.zero(n)
                        for f, c in terms:
                            total = total + realize_os(beta_element(f, w, reduce=False), n).scale(c)
                        if not total.is_zero():
                            d["failure"] = (str(w), kind, [forest_text(f) for f, _ in terms])
                            return False
        d["alpha_relations"] = counts
        d["beta_relations"] = beta_counts
        return all(k in beta_counts for k in ("triangle", "open", "closed-split", "closed-pair"))

    return _timed("12 relation suites", None, body)


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "counting": check_counting,
    "catalog": check_two_two_catalog,
    "rectification": check_rectification_oracle,
    "dimension": check_module_dimension,
    "lehrer-solomon": check_lehrer_solomon,
    "betti": check_betti,
    "closedness": check_closedness,
    "pullback": check_pullback,
    "nbc-chain": check_nbc_chain,
    "characters": check_characters,
    "generators": check_generators,
    "relations": check_relations,
}


def run_all(names=None) -> list[CheckResult]:
    return [CHECKS[k]() for k in (names or CHECKS)]
