"""Differential polynomials in jet variables and the total derivative D.

Three kinds of variables occur:

* ``z_j^(l)`` -- jet coordinates; D raises the order ``l`` by one,
* formal coefficient symbols such as ``A`` with derivatives ``A', A'', ...``
  that D also raises (they stay opaque),
* constant coordinates ``a0, a1, ...`` that D kills (coefficients of the
  hypersurface equation).

Orders of ``z`` are capped: applying D to a polynomial that already contains
``z_j^(cap)`` is an error rather than a silent truncation.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial, prod
from typing import Mapping, Sequence

from .errors import DomainError, ParseError
from .parser import evaluate, identifiers, parse

Z, SYM, CONST = 0, 1, 2
JetVar = tuple  # (kind, name or index, order)


def zvar(order: int = 0, j: int = 1) -> JetVar:
    return (Z, j, order)


def symvar(name: str, order: int = 0) -> JetVar:
    return (SYM, name, order)


def constvar(name: str) -> JetVar:
    return (CONST, name, 0)


def _var_key(v: JetVar):
    kind, name, order = v
    return (kind, str(name) if kind else "", name if kind == Z else 0, order)


def var_name(v: JetVar) -> str:
    kind, name, order = v
    base = ("z" if name == 1 else f"z{name}") if kind == Z else name
    if kind == CONST or order == 0:
        return base
    return base + ("'" * order if order <= 3 else f"{{{order}}}")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class JetPoly:
    """Sparse polynomial over jet variables with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | int | Fraction = 0):
        if isinstance(terms, Mapping):
            self._terms = {}
            for mono, c in terms.items():
                mono = _canon(mono)
                if c:
                    self._terms[mono] = _norm(self._terms.get(mono, 0) + c)
            self._terms = {m: c for m, c in self._terms.items() if c}
        else:
            self._terms = {(): _norm(Fraction(terms))} if terms else {}

    @classmethod
    def _raw(cls, terms: dict) -> "JetPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def of(cls, v: JetVar, power: int = 1) -> "JetPoly":
        return cls._raw({((v, power),): 1} if power else {(): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def variables(self) -> set:
        return {v for mono in self._terms for v, _ in mono}

    def max_order(self, j: int | None = None) -> int:
        orders = [v[2] for v in self.variables() if v[0] == Z and (j is None or v[1] == j)]
        return max(orders, default=-1)

    @staticmethod
    def _lift(other) -> "JetPoly":
        if isinstance(other, JetPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return JetPoly(other)
        raise TypeError

    def __add__(self, other) -> "JetPoly":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return JetPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "JetPoly":
        return JetPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "JetPoly":
        try:
            return self + (-self._lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> "JetPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "JetPoly":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return JetPoly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "JetPoly":
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a nonnegative integer")
        out = JetPoly(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def diff(self, v: JetVar) -> "JetPoly":
        """Partial derivative with respect to one variable."""
        out: dict = {}
        for mono, c in self._terms.items():
            for i, (w, e) in enumerate(mono):
                if w == v:
                    rest = mono[:i] + (((w, e - 1),) if e > 1 else ()) + mono[i + 1 :]
                    out[rest] = out.get(rest, 0) + c * e
        return JetPoly._raw({m: _norm(c) for m, c in out.items() if c})

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), key=lambda t: _mono_sort_key(t[0]))
        parts = []
        for i, (mono, c) in enumerate(items):
            neg = c < 0
            mag = -c if neg else c
            mtext = "*".join(
                var_name(v) if e == 1 else f"{_paren(var_name(v))}^{e}" for v, e in mono
            )
            if not mtext:
                body = str(mag)
            elif mag == 1:
                body = mtext
            else:
                body = f"{mag}*{mtext}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"JetPoly({self.to_text()!r})"


def _paren(name: str) -> str:
    return f"({name})" if "'" in name or "{" in name else name


def _canon(mono) -> tuple:
    acc: dict = {}
    for v, e in mono:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda t: _var_key(t[0])))


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    return _canon(m1 + m2)


def _mono_sort_key(mono):
    deg = sum(e for _, e in mono)
    return (-deg, [(_var_key(v), -e) for v, e in mono])


# -- the total derivative -----------------------------------------------------


class Derivation:
    """The total derivative D with a cap on jet orders."""

    def __init__(self, cap: int):
        if cap < 1:
            raise DomainError("truncation order must be >= 1")
        self.cap = cap

    def of_var(self, v: JetVar) -> JetPoly:
        kind, name, order = v
        if kind == CONST:
            return JetPoly(0)
        if kind == Z and order >= self.cap:
            raise DomainError(
                f"D({var_name(v)}) needs order {order + 1}, above the cap {self.cap}"
            )
        return JetPoly.of((kind, name, order + 1))

    def __call__(self, p: JetPoly, times: int = 1) -> JetPoly:
        for _ in range(times):
            p = apply_vector_field({v: self.of_var(v) for v in p.variables()}, p)
        return p


def apply_vector_field(field: Mapping[JetVar, JetPoly], p: JetPoly) -> JetPoly:
    """``sum_v field[v] * dp/dv``; variables missing from ``field`` are left alone."""
    out = JetPoly(0)
    for v in p.variables():
        coeff = field.get(v)
        if coeff:
            out = out + coeff * p.diff(v)
    return out


def apply_D(p: JetPoly, cap: int | None = None) -> JetPoly:
    """Total derivative, with the product rule; cap defaults to max order + 1."""
    if cap is None:
        cap = max(p.max_order() + 1, 1)
    return Derivation(cap)(p)


# -- Wronskian --------------------------------------------------------------


def wronskian_matrix(kappa: int, cap: int | None = None) -> list[list[JetPoly]]:
    """``M[l][j] = D^l(z^j)`` for ``0 <= l, j <= kappa``."""
    if kappa < 1:
        raise DomainError("kappa must be >= 1")
    D = Derivation(kappa + 2 if cap is None else cap)
    z = JetPoly.of(zvar(0))
    rows = [[z**j for j in range(kappa + 1)]]
    for _ in range(kappa):
        rows.append([D(p) for p in rows[-1]])
    return rows


def determinant(matrix: Sequence[Sequence[JetPoly]]) -> JetPoly:
    """Laplace expansion along rows, memoized on the set of remaining columns."""
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise DomainError("matrix must be square")
    memo: dict = {}

    def minor(row: int, cols: tuple) -> JetPoly:
        if row == size:
            return JetPoly(1)
        if cols in memo:
            return memo[cols]
        acc = JetPoly(0)
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if entry:
                term = entry * minor(row + 1, cols[:pos] + cols[pos + 1 :])
                acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(size)))


def wronskian_closed_form(kappa: int) -> JetPoly:
    """``1! 2! ... kappa! (z')^(kappa(kappa+1)/2)``."""
    c = prod(factorial(i) for i in range(1, kappa + 1))
    return JetPoly.of(zvar(1), kappa * (kappa + 1) // 2) * c


def wronskian_det(kappa: int, cap: int | None = None) -> JetPoly:
    det = determinant(wronskian_matrix(kappa, cap))
    expected = wronskian_closed_form(kappa)
    if det != expected:
        raise AssertionError(f"Wronskian for kappa={kappa}: {det} != {expected}")
    return det


# -- the commutator lemma ------------------------------------------------------


def _coordinate(i: int) -> JetVar:
    return constvar(f"a{i}")


def special_field(P: JetPoly, A_list: Sequence[JetPoly], kappa: int, D: Derivation, j: int = 1):
    """``sum_i A_i d/da_i + sum_{l<=kappa} P^(l) d/dz_j^(l)`` as a variable map."""
    field = {_coordinate(i): A for i, A in enumerate(A_list)}
    Pl = P
    for lam in range(kappa + 1):
        field[zvar(lam, j)] = Pl
        if lam < kappa:
            Pl = D(Pl)
    return field


def commutator_sides(P: JetPoly, A_list: Sequence[JetPoly], kappa: int,
                     u: JetPoly, cap: int | None = None, j: int = 1):
    """Both sides of the commutator identity applied to a test polynomial ``u``."""
    if cap is None:
        top = max([P.max_order(), *(A.max_order() for A in A_list), 0])
        cap = kappa + 1 + max(top, 1)
    D = Derivation(cap)
    T = special_field(P, A_list, kappa, D, j)
    lhs = apply_vector_field(T, D(u)) - D(apply_vector_field(T, u))
    rhs_field = {_coordinate(i): -D(A) for i, A in enumerate(A_list)}
    rhs_field[zvar(kappa, j)] = -D(P, kappa + 1)
    return lhs, apply_vector_field(rhs_field, u)


def commutator_test_set(A_count: int, kappa: int, j: int = 1, seed: int = 0) -> list[JetPoly]:
    gens = [JetPoly.of(zvar(lam, j)) for lam in range(kappa + 2)]
    gens += [JetPoly.of(_coordinate(i)) for i in range(A_count)]
    tests = list(gens)
    tests += [p * q for p, q in combinations_with_replacement(gens, 2)]
    rng = random.Random(seed)
    for _ in range(4):
        q = JetPoly(rng.randint(-3, 3))
        for g in gens:
            q = q + g * rng.randint(-3, 3)
        tests.append(q * q + q)
    return tests


def commutator_check(P: JetPoly, A_list: Sequence[JetPoly], kappa: int,
                     cap: int | None = None, j: int = 1) -> bool:
    """Check ``[T + T_z, D] = -sum A_i' d/da_i - P^(kappa+1) d/dz^(kappa)`` on test polynomials."""
    if kappa < 1:
        raise DomainError("kappa must be >= 1")
    for q in [P, *A_list]:
        bad = [v for v in q.variables() if v[0] != Z]
        if bad:
            raise DomainError(
                f"P and A must be functions of the jet variables; found {var_name(bad[0])}"
            )
    for u in commutator_test_set(len(A_list), kappa, j):
        lhs, rhs = commutator_sides(P, A_list, kappa, u, cap, j)
        if lhs != rhs:
            return False
    return True


# -- Leibniz expansion and the sufficient systems -----------------------------------


def _zpow(alpha) -> JetPoly:
    if isinstance(alpha, int):
        alpha = (alpha,)
    out = JetPoly(1)
    for j, e in enumerate(alpha, start=1):
        out = out * JetPoly.of(zvar(0, j), e)
    return out


def _terms(A_list: Sequence[tuple[str, object]]):
    if not A_list:
        raise DomainError("need at least one coefficient")
    return [(name, _zpow(alpha)) for name, alpha in A_list]


def leibniz_sides(A_list: Sequence[tuple[str, object]], l: int, cap: int | None = None):
    """Both sides of the Leibniz expansion of ``D^(l+1)(sum_alpha A_alpha z^alpha)``.

    ``A_list`` pairs a coefficient symbol name with a multi-index (or a single
    exponent for one variable).
    """
    if l < 0:
        raise DomainError("l must be >= 0")
    terms = _terms(A_list)
    D = Derivation(l + 2 if cap is None else cap)
    F = sum((JetPoly.of(symvar(name)) * zp for name, zp in terms), JetPoly(0))
    lhs = D(F, l + 1)

    def G(k):
        return sum((JetPoly.of(symvar(name, 1)) * D(zp, k) for name, zp in terms), JetPoly(0))

    rhs = sum((JetPoly.of(symvar(name)) * D(zp, l + 1) for name, zp in terms), JetPoly(0))
    rhs = rhs + G(l)
    for k in range(l):
        rhs = rhs + D(G(k), l - k)
    return lhs, rhs


def leibniz_expand(A_list: Sequence[tuple[str, object]], l: int, cap: int | None = None) -> bool:
    lhs, rhs = leibniz_sides(A_list, l, cap)
    return lhs == rhs


def systems_equivalence_check(A_list: Sequence[tuple[str, object]], l: int,
                              cap: int | None = None) -> bool:
    """Relate the three forms of the sufficient conditions up to order ``l``.

    With ``F = sum A z^alpha``, ``G_k = sum A' (z^alpha)^(k)`` and
    ``H_i = sum A^(i) z^alpha`` this checks, for every ``m <= l``::

        D^m F - sum A (z^alpha)^(m) = sum_{k<m} D^(m-1-k) G_k
        G_m = sum_i (-1)^i C(m, i) D^(m-i) H_(i+1)

    so the systems built from the ``G_k`` and from the ``H_i`` generate the
    same differential ideal, and either one is equivalent to the system of
    derived equations.
    """
    terms = _terms(A_list)
    D = Derivation(l + 3 if cap is None else cap)

    def coef(name, order):
        return JetPoly.of(symvar(name, order))

    F = sum((coef(name, 0) * zp for name, zp in terms), JetPoly(0))

    def G(k):
        return sum((coef(name, 1) * D(zp, k) for name, zp in terms), JetPoly(0))

    def H(i):
        return sum((coef(name, i) * zp for name, zp in terms), JetPoly(0))

    for m in range(l + 1):
        lhs = D(F, m) - sum((coef(name, 0) * D(zp, m) for name, zp in terms), JetPoly(0))
        rhs = sum((D(G(k), m - 1 - k) for k in range(m)), JetPoly(0))
        if lhs != rhs:
            return False
        gm = sum(((-1) ** i * comb(m, i) * D(H(i + 1), m - i) for i in range(m + 1)), JetPoly(0))
        if G(m) != gm:
            return False
    return True


def pole_order_bounds(kappa: int) -> dict[str, int]:
    """Pole orders of the vector fields built on the universal family.

    ``kappa^2 + 2 kappa`` when the jet part is solved by Cramer's rule and
    ``kappa`` otherwise. Recorded values, not derived here.
    """
    if kappa < 1:
        raise DomainError("kappa must be >= 1")
    return {"horizontal": kappa * kappa + 2 * kappa, "vertical": kappa}


# -- parsing ----------------------------------------------------------------------

_JET_IDENT = re.compile(r"^(?P<base>[A-Za-z_][A-Za-z0-9_]*?)(?P<mark>'+|\{\d+\})?$")
_Z_BASE = re.compile(r"^z(?P<j>[1-9]\d*)?$")
_CONST_BASE = re.compile(r"^a\d+$")


def _resolve(ident: str) -> JetVar | None:
    m = _JET_IDENT.match(ident)
    if not m:
        return None
    base, mark = m.group("base"), m.group("mark") or ""
    order = len(mark) if mark.startswith("'") else int(mark[1:-1]) if mark else 0
    zm = _Z_BASE.match(base)
    if zm:
        return zvar(order, int(zm.group("j") or 1))
    if _CONST_BASE.match(base):
        return None if order else constvar(base)
    if base[0].isupper():
        return symvar(base, order)
    return None


def parse_jet(text: str) -> JetPoly:
    """Parse ``z``, ``z'``, ``z2''``, ``z{4}``, symbols ``A``, ``A'`` and constants ``a0``."""
    expr = parse(text, lambda name: _resolve(name) is not None)
    env = {name: JetPoly.of(_resolve(name)) for name in identifiers(expr)}
    return evaluate(expr, env, lambda q: JetPoly(q))


__all__ = [
    "Derivation",
    "JetPoly",
    "ParseError",
    "apply_D",
    "commutator_check",
    "constvar",
    "determinant",
    "leibniz_expand",
    "parse_jet",
    "pole_order_bounds",
    "symvar",
    "systems_equivalence_check",
    "wronskian_closed_form",
    "wronskian_det",
    "wronskian_matrix",
    "zvar",
]
