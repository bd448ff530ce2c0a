"""Exact differential forms on T(r,n) with factored hyperplane denominators.

A form is a sparse map from strictly increasing index tuples ``(i1, ..., ip)``
(standing for ``dz_i1 ^ ... ^ dz_ip``) to :class:`FactoredRationalFunction`
coefficients.  Equality is exact: coefficients are compared over the lcm of
their denominators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import FRF, Atom, MultiPoly, Scalar, hyperplane, root_of_unity
from .forests import DecoratedForest, GroupElement, LabelledTree, act_forest, sign_epsilon_i

Key = tuple[int, ...]


def _merge_sign(a: Key, b: Key) -> int:
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv % 2 else 1


class DifferentialForm:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Key, FRF] | None = None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> DifferentialForm:
        return cls(n)

    @classmethod
    def scalar(cls, n: int, c: Scalar | FRF) -> DifferentialForm:
        f = c if isinstance(c, FRF) else FRF.constant(n, c)
        return cls(n, {(): f})

    @classmethod
    def dz(cls, n: int, *idx: int, coeff: FRF | Scalar = 1) -> DifferentialForm:
        key = tuple(sorted(idx))
        if len(set(key)) != len(key):
            return cls(n)
        sign = 1
        lst = list(idx)
        for x in range(len(lst)):
            for y in range(x + 1, len(lst)):
                if lst[x] > lst[y]:
                    sign = -sign
        c = coeff if isinstance(coeff, FRF) else FRF.constant(n, coeff)
        return cls(n, {key: c * sign})

    @staticmethod
    def _collect(n: int, pieces: Iterable[tuple[Key, FRF]]) -> DifferentialForm:
        buckets: dict[Key, list[FRF]] = {}
        for k, c in pieces:
            if not c.is_zero():
                buckets.setdefault(k, []).append(c)
        return DifferentialForm(n, {k: FRF.sum(v, n) for k, v in buckets.items()})

    # queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}

    def coefficient(self, *idx: int) -> FRF:
        return self.terms.get(tuple(idx), FRF.zero(self.n))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: DifferentialForm) -> DifferentialForm:
        self._check(other)
        return DifferentialForm._collect(self.n, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> DifferentialForm:
        return DifferentialForm(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: DifferentialForm) -> DifferentialForm:
        return self + (-other)

    def scale(self, c: Scalar | FRF) -> DifferentialForm:
        return DifferentialForm(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, DifferentialForm):
            return self.wedge(c)
        return self.scale(c)

    __rmul__ = scale

    def wedge(self, other: DifferentialForm) -> DifferentialForm:
        self._check(other)
        pieces = []
        for k1, c1 in self.terms.items():
            s1 = set(k1)
            for k2, c2 in other.terms.items():
                if s1.intersection(k2):
                    continue
                key = tuple(sorted(k1 + k2))
                pieces.append((key, (c1 * c2) * _merge_sign(k1, k2)))
        return DifferentialForm._collect(self.n, pieces)

    __xor__ = wedge

    def d(self) -> DifferentialForm:
        pieces = []
        for key, c in self.terms.items():
            for k in range(1, self.n + 1):
                if k in key:
                    continue
                dc = c.derivative(k)
                if dc.is_zero():
                    continue
                sign = -1 if sum(1 for x in key if x < k) % 2 else 1
                pieces.append((tuple(sorted(key + (k,))), dc * sign))
        return DifferentialForm._collect(self.n, pieces)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None

    def cancel(self) -> DifferentialForm:
        return DifferentialForm(self.n, {k: c.cancel() for k, c in self.terms.items()})

    def _check(self, other: DifferentialForm) -> None:
        if self.n != other.n:
            raise ValueError("forms on different numbers of variables")

    # transformations ----------------------------------------------------
    def act(self, g: GroupElement) -> DifferentialForm:
        """``g = zeta w`` acting by ``z_i -> zeta_{w(i)}^{-1} z_{w(i)}``."""
        r, w, c = g.r, g.perm, g.zeta
        ph = [Fraction(-c[w[i] - 1], r) for i in range(self.n)]
        images = [(ph[i], w[i], 1) for i in range(self.n)]

        def atom_map(atom: Atom):
            wi = w[atom.i - 1]
            if atom.j == 0:
                return ph[atom.i - 1], [(Atom(wi), 1)]
            wj = w[atom.j - 1]
            q = atom.q + Fraction(c[wi - 1] - c[wj - 1], r)
            s, b = hyperplane(wi, wj, q)
            return ph[atom.i - 1] + s, [(b, 1)]

        pieces = []
        for key, coef in self.terms.items():
            new = coef.substitute(images, atom_map)
            phase = sum((ph[i - 1] for i in key), Fraction(0))
            form = DifferentialForm.dz(self.n, *[w[i - 1] for i in key], coeff=new * root_of_unity(phase))
            pieces.extend(form.terms.items())
        return DifferentialForm._collect(self.n, pieces)

    def pullback_power(self, r: int) -> DifferentialForm:
        """Pull back along ``z_i -> z_i**r``; ``z_i^r - e(q) z_j^r`` splits into ``r`` atoms."""
        if r == 1:
            return self
        images = [(Fraction(0), i, r) for i in range(1, self.n + 1)]

        def atom_map(atom: Atom):
            if atom.j == 0:
                return Fraction(0), [(atom, r)]
            return Fraction(0), [(Atom(atom.i, atom.j, ((atom.q + t) / r) % 1), 1) for t in range(r)]

        out = {}
        for key, coef in self.terms.items():
            new = coef.substitute(images, atom_map)
            exps = [0] * self.n
            for i in key:
                exps[i - 1] = r - 1
            out[key] = new * MultiPoly.monomial(exps, r ** len(key))
        return DifferentialForm(self.n, out)

    # output -------------------------------------------------------------
    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[key].cancel().text()
            if key:
                parts.append(f"({c}) " + "^".join(f"dz{i}" for i in key))
            else:
                parts.append(f"({c})")
        return " + ".join(parts)

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[key].cancel().latex()
            dz = "\\wedge ".join(f"dz_{{{i}}}" for i in key)
            parts.append(f"{c}\\,{dz}" if key else c)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DifferentialForm({self.text()})"


# ---------------------------------------------------------------------------
# generators


def omega_i(n: int, i: int) -> DifferentialForm:
    return DifferentialForm(n, {(i,): FRF.inverse_hyperplane(n, i)})


def omega_ijq(n: int, i: int, j: int, q: Fraction | int = 0) -> DifferentialForm:
    """``(dz_i - e(q) dz_j) / (z_i - e(q) z_j)``."""
    h = FRF.inverse_hyperplane(n, i, j, q)
    return DifferentialForm(n, {(i,): h}) + DifferentialForm(n, {(j,): h * (-root_of_unity(q))})


def unbreakable_factor(n: int, i: int, j: int) -> DifferentialForm:
    """``(z_i - z_j)^{-1} (omega_i - omega_j)``."""
    h = FRF.inverse_hyperplane(n, i, j)
    return (omega_i(n, i) - omega_i(n, j)).scale(h)


def weight_form(a: Sequence[Fraction]) -> DifferentialForm:
    n = len(a)
    out = DifferentialForm.zero(n)
    for i, x in enumerate(a, start=1):
        if x:
            out = out + omega_i(n, i).scale(Fraction(x))
    return out


def twisted_differential(a: Sequence[Fraction], f: DifferentialForm) -> DifferentialForm:
    """``d f + (sum a_i omega_i) ^ f``."""
    return f.d() + weight_form(a).wedge(f)


def wedge_all(n: int, factors: Iterable[DifferentialForm]) -> DifferentialForm:
    out = DifferentialForm.scalar(n, 1)
    for f in factors:
        out = out.wedge(f)
        if out.is_zero():
            break
    return out


def alpha_form(f: DecoratedForest) -> DifferentialForm:
    """The literal wedge ``alpha_1(F) ^ ... ^ alpha_n(F)``."""
    n, r = f.n, f.r
    slots = []
    for i in range(1, n + 1):
        p = f.parent[i - 1]
        if p:
            slots.append(omega_ijq(n, i, p, Fraction(f.label[i - 1], r)))
        elif i in f.closed:
            slots.append(omega_i(n, i))
        else:
            slots.append(DifferentialForm.scalar(n, sign_epsilon_i(f, i)))
    return wedge_all(n, slots)


def realize_os(x: Mapping[DecoratedForest, Scalar], n: int | None = None) -> DifferentialForm:
    if n is None:
        if not x:
            raise ValueError("need n for the zero element")
        n = next(iter(x)).n
    pieces = []
    for f, c in x.items():
        pieces.extend((k, v * c) for k, v in alpha_form(f).terms.items())
    return DifferentialForm._collect(n, pieces)


def beta_bar_form(f: DecoratedForest, a, r: int | None = None) -> DifferentialForm:
    """The twisted-cohomology representative attached to an admissible forest."""
    from .local_system import WeightVector, b_exponents, is_admissible, is_breakable

    w = a if isinstance(a, WeightVector) else WeightVector.of(a, r)
    rr = w.r if r is None else r
    if not is_admissible(f, w):
        raise ValueError(f"forest {f.text()} is not admissible for {w}")
    n = f.n
    slots = []
    for i in range(1, n + 1):
        p = f.parent[i - 1]
        if p:
            slots.append(omega_ijq(n, i, p) if is_breakable(f, w, i) else unbreakable_factor(n, i, p))
        elif i in f.closed:
            slots.append(omega_i(n, i))
        else:
            slots.append(DifferentialForm.scalar(n, sign_epsilon_i(f, i) * rr))
    return wedge_all(n, slots).scale(FRF.monomial(b_exponents(f, w)))


def monomial_times(exps: Sequence[int], f: DifferentialForm) -> DifferentialForm:
    return f.scale(FRF.monomial(exps))


# ---------------------------------------------------------------------------
# identities


def verify_pullback_identity(f: DecoratedForest, a, r: int | None = None) -> bool:
    """``beta(F) == z^{r a} phi^*(beta_bar(F))`` as exact forms on T(r,n)."""
    from .local_system import WeightVector, beta_element

    w = a if isinstance(a, WeightVector) else WeightVector.of(a, r)
    if r is not None and r != w.r:
        w = WeightVector(w.a, r)
    lhs = realize_os(beta_element(f, w), f.n)
    exps = [int(x * w.r) for x in w.a]
    rhs = monomial_times(exps, beta_bar_form(f, w).pullback_power(w.r))
    return lhs == rhs


def nbc_chain_sides(t: LabelledTree) -> tuple[DifferentialForm, DifferentialForm]:
    from .tree_module import p_tree_inverse

    if t.r != 1:
        raise ValueError("the chain identity is stated for r = 1")
    n = t.n
    edges = sorted(t.edges())
    lhs = wedge_all(n, [omega_ijq(n, i, j) for i, j, _ in edges])
    inv = p_tree_inverse(t)
    rhs = DifferentialForm.zero(n)
    for i in range(1, n + 1):
        key = tuple(k for k in range(1, n + 1) if k != i)
        rhs = rhs + DifferentialForm(n, {key: inv * (-1 if (n - i) % 2 else 1)})
    return lhs, rhs


def verify_nbc_chain_identity(t: LabelledTree) -> bool:
    lhs, rhs = nbc_chain_sides(t)
    return lhs == rhs


def verify_action(g: GroupElement, f: DecoratedForest) -> bool:
    """``alpha(g.F) == eps_n(w) eps(w,F) g.alpha(F)`` on the honest forms."""
    from .os_algebra import action_sign

    return alpha_form(act_forest(g, f)) == alpha_form(f).act(g).scale(action_sign(g, f))


# ---------------------------------------------------------------------------
# linear algebra on forms


def coefficient_rows(forms: Sequence[DifferentialForm]) -> list[dict]:
    """Numerator coefficients of each form over one shared denominator."""
    common: dict[Atom, int] = {}
    for f in forms:
        for c in f.terms.values():
            for a, m in c.den.items():
                if common.get(a, 0) < m:
                    common[a] = m
    rows = []
    for f in forms:
        row = {}
        for key, c in f.terms.items():
            p = c.num
            for a, m in common.items():
                for _ in range(m - c.den.get(a, 0)):
                    p = p.mul_atom(a)
            for e, v in p.terms.items():
                row[(key, e)] = v
        rows.append(row)
    return rows


def form_rank(forms: Sequence[DifferentialForm]) -> int:
    from .exact import matrix_rank

    return matrix_rank(coefficient_rows(forms))
