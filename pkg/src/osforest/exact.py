"""Exact scalar kernels.

Rationals are :class:`fractions.Fraction` (plain ``int`` is accepted anywhere a
rational is).  Cyclotomic numbers live in ``Q(zeta_m)`` in the power basis
modulo the ``m``-th cyclotomic polynomial.  Polynomials are sparse dicts of
exponent vectors, and rational functions keep their denominators as multisets
of hyperplane atoms ``z_i`` and ``z_i - eta z_j`` so that no multivariate gcd is
ever needed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "Cyclotomic"]


# ---------------------------------------------------------------------------
# rationals


def parse_rational(text: str) -> Fraction:
    """Parse ``"3"``, ``"-1/2"`` into an exact fraction; decimals are refused."""
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact fraction: {text!r}")
    return Fraction(text)


def rational_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    if op == "+":
        return Fraction(a) + b
    if op == "-":
        return Fraction(a) - b
    if op in ("*", "x"):
        return Fraction(a) * b
    if op == "/":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return Fraction(a) / b
    raise ValueError(f"unknown operation {op!r}")


def is_integral(x: Fraction | int) -> bool:
    return Fraction(x).denominator == 1


# ---------------------------------------------------------------------------
# elementary number theory


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


@lru_cache(maxsize=None)
def factorize(m: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def moebius(d: int) -> int:
    if d < 1:
        raise ValueError("moebius needs d >= 1")
    mu = 1
    for _, e in factorize(d):
        if e > 1:
            return 0
        mu = -mu
    return mu


def euler_phi(d: int) -> int:
    if d < 1:
        raise ValueError("euler_phi needs d >= 1")
    phi = d
    for p, _ in factorize(d):
        phi = phi // p * (p - 1)
    return phi


# ---------------------------------------------------------------------------
# cyclotomic numbers


def _exact_div_monic(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            out[k - dn] = c
            for j, dj in enumerate(den):
                num[k - dn + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        poly = _exact_div_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    # row k holds x^k mod Phi_m in the power basis, 0 <= k < m
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    row = [1] + [0] * (deg - 1) if deg > 0 else []
    rows = []
    for _ in range(m):
        rows.append(tuple(row))
        top = row[-1] if deg else 0
        row = [0] + row[:-1]
        if top:
            row = [row[j] - top * phi[j] for j in range(deg)]
    return tuple(rows)


@lru_cache(maxsize=None)
def _normalized_traces(m: int) -> tuple[Fraction, ...]:
    # Tr(zeta_m^k) / phi(m), a conductor-independent invariant of the value
    out = []
    for k in range(euler_phi(m)):
        g = math.gcd(k, m)
        out.append(Fraction(moebius(m // g), euler_phi(m // g)))
    return tuple(out)


class Cyclotomic:
    """An element of ``Q(zeta_m)``, ``zeta_m = exp(2 pi i / m)``.

    ``coeffs[k]`` is the coefficient of ``zeta_m**k`` for ``k < phi(m)``.
    Values of different conductor are compared after embedding both into the
    field of the lcm conductor.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Sequence[int | Fraction]):
        if m < 1:
            raise ValueError("conductor must be positive")
        coeffs = tuple(coeffs)
        if len(coeffs) != euler_phi(m):
            raise ValueError(f"need {euler_phi(m)} coefficients for conductor {m}")
        self.m = m
        self.coeffs = coeffs

    # construction -------------------------------------------------------
    @classmethod
    def from_powers(cls, m: int, powers: dict[int, int | Fraction]) -> Cyclotomic:
        """Reduce ``sum c_k zeta_m^k`` (any integer ``k``) to the power basis."""
        table = _power_table(m)
        out = [0] * euler_phi(m)
        for k, c in powers.items():
            if c:
                for j, t in enumerate(table[k % m]):
                    if t:
                        out[j] += c * t
        return cls(m, out)

    @classmethod
    def rational(cls, q: int | Fraction) -> Cyclotomic:
        return cls(1, (q,))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> Cyclotomic:
        return cls.from_powers(m, {k: 1})

    # conversions --------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    def embed(self, m: int) -> Cyclotomic:
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"Q(zeta_{self.m}) does not embed in Q(zeta_{m})")
        step = m // self.m
        return Cyclotomic.from_powers(m, {k * step: c for k, c in enumerate(self.coeffs)})

    def _common(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        if self.m == other.m:
            return self, other
        m = math.lcm(self.m, other.m)
        return self.embed(m), other.embed(m)

    # arithmetic ---------------------------------------------------------
    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.m, [-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.m, (self.coeffs[0] + other,) + self.coeffs[1:])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return Cyclotomic(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.m, [c * other for c in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        m = a.m
        prod: dict[int, int | Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] = prod.get(i + j, 0) + x * y
        return Cyclotomic.from_powers(m, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("cyclotomic division by zero")
            return Cyclotomic(self.m, [Fraction(c) / other for c in self.coeffs])
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int) -> Cyclotomic:
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.rational(1).embed(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, k: int) -> Cyclotomic:
        """Apply the automorphism ``zeta_m -> zeta_m^k`` (``gcd(k, m) = 1``)."""
        if math.gcd(k, self.m) != 1:
            raise ValueError("Galois exponent must be a unit")
        return Cyclotomic.from_powers(self.m, {j * k: c for j, c in enumerate(self.coeffs)})

    def conjugate(self) -> Cyclotomic:
        return self.galois(-1 % self.m if self.m > 1 else 1)

    def norm(self) -> Fraction:
        prod = self
        for k in range(2, self.m):
            if math.gcd(k, self.m) == 1:
                prod = prod * self.galois(k)
        return prod.to_fraction()

    def inverse(self) -> Cyclotomic:
        if not self:
            raise ZeroDivisionError("cyclotomic division by zero")
        others = Cyclotomic.rational(1).embed(self.m)
        for k in range(2, self.m):
            if math.gcd(k, self.m) == 1:
                others = others * self.galois(k)
        n = (self * others).to_fraction()
        return others / n

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, Cyclotomic):
            a, b = self._common(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        traces = _normalized_traces(self.m)
        return hash(sum((c * t for c, t in zip(self.coeffs, traces)), Fraction(0)))

    # text ---------------------------------------------------------------
    def __repr__(self) -> str:
        return f"Cyclotomic({self.m}, {list(self.coeffs)!r})"

    def __str__(self) -> str:
        return scalar_text(self)


def root_of_unity(q: Fraction | int) -> Scalar:
    """``exp(2 pi i q)`` for rational ``q``; plus or minus one come back as ints."""
    q = Fraction(q) % 1
    if q == 0:
        return 1
    if q == Fraction(1, 2):
        return -1
    return Cyclotomic.zeta(q.denominator, q.numerator)


def root_of_unity_sum(r: int, a: int) -> int:
    """``sum over zeta in mu_r of zeta**a``: ``r`` if ``r | a`` else ``0``."""
    if r < 1:
        raise ValueError("r must be positive")
    return r if a % r == 0 else 0


def cyclotomic_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x"):
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def conjugate(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, Cyclotomic) else x


def as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Cyclotomic):
        return x.to_fraction()
    return Fraction(x)


def is_rational_scalar(x: Scalar) -> bool:
    return not isinstance(x, Cyclotomic) or x.is_rational()


def _frac_text(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scalar_text(x: Scalar) -> str:
    """Canonical text: rationals as ``p/q``, roots of unity as ``w(k/m)``."""
    if not isinstance(x, Cyclotomic):
        return _frac_text(x)
    if x.is_rational():
        return _frac_text(x.coeffs[0])
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        if k == 0:
            parts.append(_frac_text(c))
            continue
        w = f"w({_frac_text(Fraction(k, x.m))})"
        if c == 1:
            parts.append(w)
        elif c == -1:
            parts.append("-" + w)
        else:
            parts.append(f"{_frac_text(c)}*{w}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def scalar_latex(x: Scalar) -> str:
    if not isinstance(x, Cyclotomic) or x.is_rational():
        q = Fraction(x if not isinstance(x, Cyclotomic) else x.coeffs[0])
        if q.denominator == 1:
            return str(q.numerator)
        sign = "-" if q < 0 else ""
        return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        base = "1" if k == 0 else f"\\zeta_{{{x.m}}}^{{{k}}}" if k > 1 else f"\\zeta_{{{x.m}}}"
        if k == 0:
            parts.append(scalar_latex(c))
        elif c == 1:
            parts.append(base)
        elif c == -1:
            parts.append("-" + base)
        else:
            parts.append(scalar_latex(c) + base)
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# linear algebra over exact scalars


def _divide(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(b, Cyclotomic) or isinstance(a, Cyclotomic):
        if not isinstance(a, Cyclotomic):
            a = Cyclotomic.rational(a)
        return a / b
    return Fraction(a) / b


class EchelonBasis:
    """Incrementally maintained row-echelon basis of sparse vectors.

    Vectors are dicts from hashable keys to scalars; keys are ordered by first
    appearance, which is all the elimination needs.
    """

    def __init__(self):
        self._order: dict = {}
        self._rows: dict[int, dict[int, Scalar]] = {}

    def _encode(self, vec: dict) -> dict[int, Scalar]:
        out = {}
        for key, c in vec.items():
            if c:
                idx = self._order.setdefault(key, len(self._order))
                out[idx] = c
        return out

    def _reduce(self, v: dict[int, Scalar]) -> dict[int, Scalar]:
        while True:
            hits = [k for k in v if k in self._rows]
            if not hits:
                return v
            k = min(hits)
            c = v[k]
            for j, x in self._rows[k].items():
                y = v.get(j, 0) - c * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)

    def contains(self, vec: dict) -> bool:
        return not self._reduce(self._encode(vec))

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True when it was independent of the basis."""
        v = self._reduce(self._encode(vec))
        if not v:
            return False
        p = min(v)
        pivot = v[p]
        self._rows[p] = {j: _divide(x, pivot) for j, x in v.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self._rows)


def matrix_rank(rows: Iterable[dict | Sequence[Scalar]]) -> int:
    basis = EchelonBasis()
    for row in rows:
        if not isinstance(row, dict):
            row = dict(enumerate(row))
        basis.add(row)
    return basis.rank


# ---------------------------------------------------------------------------
# polynomials


def _add_into(acc: dict, key, c) -> None:
    y = acc.get(key, 0) + c
    if y:
        acc[key] = y
    else:
        acc.pop(key, None)


class MultiPoly:
    """Sparse polynomial in ``z_1..z_n`` with exact (possibly cyclotomic) coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[tuple[int, ...], Scalar] | None = None):
        self.n = n
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, n: int, c: Scalar) -> MultiPoly:
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> MultiPoly:
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Scalar = 1) -> MultiPoly:
        return cls(len(exps), {tuple(exps): c})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Scalar]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: MultiPoly) -> MultiPoly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(out, e, c)
        return MultiPoly(self.n, out)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def scale(self, c: Scalar) -> MultiPoly:
        if not c:
            return MultiPoly(self.n)
        return MultiPoly(self.n, {e: x * c for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_into(out, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return MultiPoly(self.n, out)

    def __rmul__(self, c):
        return self.scale(c)

    def shift(self, exps: Sequence[int]) -> MultiPoly:
        """Multiply by the monomial ``z**exps`` (exponents nonnegative)."""
        return MultiPoly(self.n, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def mul_atom(self, atom: Atom) -> MultiPoly:
        i = atom.i - 1
        if atom.j == 0:
            out = {}
            for e, c in self.terms.items():
                f = list(e)
                f[i] += 1
                out[tuple(f)] = c
            return MultiPoly(self.n, out)
        j = atom.j - 1
        eta = -root_of_unity(atom.q)
        out: dict = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] += 1
            _add_into(out, tuple(f), c)
            f[i] -= 1
            f[j] += 1
            _add_into(out, tuple(f), c * eta)
        return MultiPoly(self.n, out)

    def divide_atom(self, atom: Atom) -> MultiPoly | None:
        """Exact quotient by ``atom`` or None when the atom does not divide."""
        i = atom.i - 1
        if atom.j == 0:
            if any(e[i] == 0 for e in self.terms):
                return None
            out = {}
            for e, c in self.terms.items():
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c
            return MultiPoly(self.n, out)
        if self.is_zero():
            return MultiPoly(self.n)
        # synthetic division in z_i by (z_i - eta z_j)
        j = atom.j - 1
        eta = root_of_unity(atom.q)
        by_deg: dict[int, dict] = {}
        for e, c in self.terms.items():
            f = list(e)
            d = f[i]
            f[i] = 0
            by_deg.setdefault(d, {})[tuple(f)] = c
        top = max(by_deg)
        quotient: dict = {}
        carry: dict = {}
        for d in range(top, 0, -1):
            q_d = dict(by_deg.get(d, {}))
            for e, c in carry.items():
                _add_into(q_d, e, c)
            for e, c in q_d.items():
                f = list(e)
                f[i] = d - 1
                quotient[tuple(f)] = c
            carry = {}
            for e, c in q_d.items():
                f = list(e)
                f[j] += 1
                carry[tuple(f)] = c * eta
        rem = dict(by_deg.get(0, {}))
        for e, c in carry.items():
            _add_into(rem, e, c)
        if rem:
            return None
        return MultiPoly(self.n, quotient)

    def derivative(self, k: int) -> MultiPoly:
        i = k - 1
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly(self.n, out)

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        if len(point) != self.n:
            raise ValueError("point has the wrong length")
        total: Scalar = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def substitute(self, images: Sequence[tuple[Scalar, int, int]]) -> MultiPoly:
        """Substitute ``z_i -> c_i * z_{t_i}**p_i`` where ``images[i-1] = (c_i, t_i, p_i)``."""
        out: dict = {}
        for e, c in self.terms.items():
            f = [0] * self.n
            coeff = c
            for (ci, ti, pi), k in zip(images, e):
                if k:
                    f[ti - 1] += pi * k
                    if ci != 1:
                        coeff = coeff * ci**k
            _add_into(out, tuple(f), coeff)
        return MultiPoly(self.n, out)

    def text(self, latex: bool = False) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = []
            for i, k in enumerate(e, start=1):
                if k:
                    v = f"z_{{{i}}}" if latex else f"z{i}"
                    mono.append(v if k == 1 else (f"{v}^{{{k}}}" if latex else f"{v}^{k}"))
            mono_s = (" " if latex else "*").join(mono)
            cs = scalar_latex(c) if latex else scalar_text(c)
            composite = isinstance(c, Cyclotomic) and sum(1 for x in c.coeffs if x) > 1
            if composite:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono_s)
            elif c == -1:
                parts.append("-" + mono_s)
            else:
                parts.append(cs + (" " if latex else "*") + mono_s)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self.text()})"


def poly_eval(p: MultiPoly, point: Sequence[Scalar]) -> Scalar:
    return p.evaluate(point)


# ---------------------------------------------------------------------------
# rational functions over hyperplane atoms


class Atom(NamedTuple):
    """``z_i`` when ``j == 0``, else ``z_i - exp(2 pi i q) z_j`` with ``i < j``."""

    i: int
    j: int = 0
    q: Fraction = Fraction(0)

    def poly(self, n: int) -> MultiPoly:
        return MultiPoly.constant(n, 1).mul_atom(self)

    def partial(self, k: int) -> Scalar:
        if k == self.i:
            return 1
        if k == self.j:
            return -root_of_unity(self.q)
        return 0

    def text(self, latex: bool = False) -> str:
        zi = f"z_{{{self.i}}}" if latex else f"z{self.i}"
        if self.j == 0:
            return zi
        zj = f"z_{{{self.j}}}" if latex else f"z{self.j}"
        if self.q == 0:
            return f"{zi}-{zj}"
        if self.q == Fraction(1, 2):
            return f"{zi}+{zj}"
        if latex:
            return f"{zi}-\\zeta_{{{self.q.denominator}}}^{{{self.q.numerator}}}{zj}"
        return f"{zi}-w({_frac_text(self.q)})*{zj}"


def hyperplane(i: int, j: int = 0, q: Fraction | int = 0) -> tuple[Fraction, Atom]:
    """Normalize ``z_i - exp(2 pi i q) z_j`` as ``exp(2 pi i s) * atom``; returns ``(s, atom)``."""
    q = Fraction(q) % 1
    if j == 0:
        return Fraction(0), Atom(i)
    if i == j:
        raise ValueError("degenerate hyperplane")
    if i < j:
        return Fraction(0), Atom(i, j, q)
    # z_i - eta z_j = -eta (z_j - eta^{-1} z_i)
    return (q + Fraction(1, 2)) % 1, Atom(j, i, (-q) % 1)


class FactoredRationalFunction:
    """``num / prod(atom ** mult)`` with the denominator never expanded."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: dict[Atom, int] | None = None):
        self.num = num
        self.den = {a: m for a, m in (den or {}).items() if m} if not num.is_zero() else {}

    @property
    def n(self) -> int:
        return self.num.n

    @classmethod
    def constant(cls, n: int, c: Scalar) -> FactoredRationalFunction:
        return cls(MultiPoly.constant(n, c))

    @classmethod
    def zero(cls, n: int) -> FactoredRationalFunction:
        return cls(MultiPoly(n))

    @classmethod
    def from_poly(cls, p: MultiPoly) -> FactoredRationalFunction:
        return cls(p)

    @classmethod
    def inverse_hyperplane(cls, n: int, i: int, j: int = 0, q: Fraction | int = 0) -> FactoredRationalFunction:
        s, atom = hyperplane(i, j, q)
        return cls(MultiPoly.constant(n, root_of_unity(-s)), {atom: 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Scalar = 1) -> FactoredRationalFunction:
        """``c * z**exps`` with exponents of any sign."""
        pos = [max(e, 0) for e in exps]
        den = {Atom(i): -e for i, e in enumerate(exps, start=1) if e < 0}
        return cls(MultiPoly.monomial(pos, c), den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def sum(items: Iterable[FactoredRationalFunction], n: int | None = None) -> FactoredRationalFunction:
        """Sum over the lcm of all denominators in one pass."""
        items = [f for f in items if not f.is_zero()]
        if not items:
            if n is None:
                raise ValueError("empty sum needs n")
            return FactoredRationalFunction.zero(n)
        if len(items) == 1:
            return items[0]
        common: dict[Atom, int] = {}
        for f in items:
            for a, m in f.den.items():
                if common.get(a, 0) < m:
                    common[a] = m
        total: dict = {}
        for f in items:
            p = f.num
            for a, m in common.items():
                for _ in range(m - f.den.get(a, 0)):
                    p = p.mul_atom(a)
            for e, c in p.terms.items():
                _add_into(total, e, c)
        return FactoredRationalFunction(MultiPoly(items[0].n, total), common)

    def __add__(self, other: FactoredRationalFunction) -> FactoredRationalFunction:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        return FactoredRationalFunction.sum([self, other])

    def __neg__(self) -> FactoredRationalFunction:
        return FactoredRationalFunction(-self.num, self.den)

    def __sub__(self, other: FactoredRationalFunction) -> FactoredRationalFunction:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FactoredRationalFunction):
            den = dict(self.den)
            for a, m in other.den.items():
                den[a] = den.get(a, 0) + m
            return FactoredRationalFunction(self.num * other.num, den)
        if isinstance(other, MultiPoly):
            return FactoredRationalFunction(self.num * other, self.den)
        return FactoredRationalFunction(self.num.scale(other), self.den)

    def __rmul__(self, c):
        return self * c

    def divide_atom(self, atom: Atom, mult: int = 1) -> FactoredRationalFunction:
        den = dict(self.den)
        den[atom] = den.get(atom, 0) + mult
        return FactoredRationalFunction(self.num, den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredRationalFunction):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # calculus and substitutions ----------------------------------------
    def derivative(self, k: int) -> FactoredRationalFunction:
        """Quotient rule against the factored denominator; no expansion of ``den``."""
        moving = [(a, m) for a, m in self.den.items() if a.partial(k)]
        dn = self.num.derivative(k)
        if not moving:
            return FactoredRationalFunction(dn, self.den)
        # d(N/D) = (N' prod A - N sum m_A A'_k prod_{B != A} B) / (D prod A)
        total = dn
        for a, _ in moving:
            total = total.mul_atom(a)
        for a, m in moving:
            term = self.num.scale(-m * a.partial(k))
            for b, _ in moving:
                if b != a:
                    term = term.mul_atom(b)
            total = total + term
        den = dict(self.den)
        for a, _ in moving:
            den[a] += 1
        return FactoredRationalFunction(total, den)

    def cancel(self) -> FactoredRationalFunction:
        """Strip atoms from the denominator by trial division of the numerator."""
        num = self.num
        den = dict(self.den)
        for a in sorted(den):
            while den[a] > 0:
                q = num.divide_atom(a)
                if q is None:
                    break
                num = q
                den[a] -= 1
        return FactoredRationalFunction(num, den)

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        top = self.num.evaluate(point)
        bottom: Scalar = 1
        for a, m in self.den.items():
            bottom = bottom * a.poly(self.n).evaluate(point) ** m
        if not bottom:
            raise ZeroDivisionError("evaluation point lies on a denominator hyperplane")
        return _divide(top, bottom)

    def evaluation_equal(self, other: FactoredRationalFunction, points: Iterable[Sequence[Scalar]]) -> bool:
        """Compare by cross-multiplied values at the given points."""
        for pt in points:
            lhs = self.num.evaluate(pt)
            rhs = other.num.evaluate(pt)
            for a, m in other.den.items():
                lhs = lhs * a.poly(self.n).evaluate(pt) ** m
            for a, m in self.den.items():
                rhs = rhs * a.poly(self.n).evaluate(pt) ** m
            if lhs != rhs:
                return False
        return True

    def substitute(self, images: Sequence[tuple[Fraction, int, int]], atom_map) -> FactoredRationalFunction:
        """Apply a coordinate substitution given on monomials and on atoms.

        ``images[i-1] = (s_i, t_i, p_i)`` sends ``z_i`` to ``exp(2 pi i s_i) z_{t_i}**p_i``;
        ``atom_map(atom)`` returns ``(s, [(atom', mult'), ...])`` meaning the
        image of ``atom`` is ``exp(2 pi i s) * prod atom'**mult'``.
        """
        num = self.num.substitute([(root_of_unity(s), t, p) for s, t, p in images])
        den: dict[Atom, int] = {}
        phase = Fraction(0)
        for a, m in self.den.items():
            s, factors = atom_map(a)
            phase -= m * s
            for b, k in factors:
                den[b] = den.get(b, 0) + k * m
        return FactoredRationalFunction(num.scale(root_of_unity(phase)), den)

    # text ---------------------------------------------------------------
    def _den_text(self, latex: bool) -> str:
        parts = []
        for a in sorted(self.den):
            m = self.den[a]
            base = a.text(latex)
            if a.j:
                base = f"({base})"
            if m > 1:
                base = f"{base}^{{{m}}}" if latex else f"{base}^{m}"
            parts.append(base)
        return ("" if latex else "*").join(parts)

    def text(self) -> str:
        if not self.den:
            return self.num.text()
        return f"({self.num.text()})/({self._den_text(False)})"

    def latex(self) -> str:
        if not self.den:
            return self.num.text(latex=True)
        return f"\\frac{{{self.num.text(latex=True)}}}{{{self._den_text(True)}}}"

    def __repr__(self) -> str:
        return f"FRF({self.text()})"


FRF = FactoredRationalFunction


def prime_points(n: int, count: int = 5) -> list[tuple[int, ...]]:
    """Deterministic evaluation points with distinct prime coordinates."""
    primes = []
    k = 2
    while len(primes) < n * count:
        if all(k % p for p in primes if p * p <= k):
            primes.append(k)
        k += 1
    return [tuple(primes[c * n:(c + 1) * n]) for c in range(count)]
