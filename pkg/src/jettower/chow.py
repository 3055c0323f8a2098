"""Graded rings of the jet tower levels and intersection numbers.

Level ``j`` of the tower has dimension ``(j+1)*n + 1`` and is generated (for
our purposes) by

* ``b`` -- pullback of the hyperplane class of the base curve (``b^2 = 0``),
* ``a`` -- pullback of the hyperplane class of P^{n+1} (``a^{n+2} = 0``),
* ``a1 .. aj`` -- the tautological classes of the successive projectivizations.

A monomial is stored as the exponent tuple ``(b, a, a1, ..., aj)``. Powers of
the ``a_i`` are never reduced; they are consumed by pushing forward through
Segre classes, which is all top intersection numbers need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError
from .scalars import ParamScalar, render_terms, format_coeff

Coeff = Union[ParamScalar, int, Fraction]

MAX_DEPTH = 9


def level_dim(n: int, level: int) -> int:
    return (level + 1) * n + 1


def generator_names(level: int) -> list[str]:
    return ["b", "a"] + [f"a{j}" for j in range(1, level + 1)]


class ChowClass:
    """An element of the Chow ring of a tower level with ParamScalar coefficients."""

    __slots__ = ("n", "level", "dim", "_terms")

    def __init__(self, n: int, level: int, terms: dict | None = None):
        if n < 1:
            raise DomainError("relative dimension n must be >= 1")
        if level < 0:
            raise DomainError("level must be >= 0")
        self.n = n
        self.level = level
        self.dim = level_dim(n, level)
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != level + 2:
                raise DomainError(f"monomial {mono} does not belong to level {level}")
            if not self._admissible(mono):
                continue
            c = ParamScalar(c) if not isinstance(c, ParamScalar) else c
            if c:
                clean[mono] = clean[mono] + c if mono in clean else c
        self._terms = {m: c for m, c in clean.items() if c}

    def _admissible(self, mono) -> bool:
        return mono[0] <= 1 and mono[1] <= self.n + 1 and sum(mono) <= self.dim

    @classmethod
    def _raw(cls, n: int, level: int, terms: dict) -> "ChowClass":
        obj = cls.__new__(cls)
        obj.n = n
        obj.level = level
        obj.dim = level_dim(n, level)
        obj._terms = terms
        return obj

    # -- constructors --------------------------------------------------------

    @classmethod
    def scalar(cls, n: int, level: int, value: Coeff) -> "ChowClass":
        zero = (0,) * (level + 2)
        return cls(n, level, {zero: value})

    @classmethod
    def generator(cls, n: int, level: int, name: str) -> "ChowClass":
        names = generator_names(level)
        if name not in names:
            raise DomainError(f"generator {name!r} does not exist at level {level}")
        mono = [0] * (level + 2)
        mono[names.index(name)] = 1
        return cls(n, level, {tuple(mono): 1})

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degrees(self) -> set[int]:
        return {sum(m) for m in self._terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if degree is None:
            return len(degs) == 1
        return degs == {degree}

    def coefficient(self, **gens: int) -> ParamScalar:
        names = generator_names(self.level)
        mono = [0] * (self.level + 2)
        for name, e in gens.items():
            if name not in names:
                raise DomainError(f"generator {name!r} does not exist at level {self.level}")
            mono[names.index(name)] = e
        return self._terms.get(tuple(mono), ParamScalar(0))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "ChowClass") -> None:
        if other.n != self.n or other.level != self.level:
            raise DomainError(
                f"level mismatch: (n={self.n}, level={self.level}) vs "
                f"(n={other.n}, level={other.level})"
            )

    def _lift(self, other) -> "ChowClass":
        if isinstance(other, ChowClass):
            self._check(other)
            return other
        if isinstance(other, (ParamScalar, int, Fraction)) and not isinstance(other, bool):
            return ChowClass.scalar(self.n, self.level, other)
        raise TypeError(f"cannot combine ChowClass with {type(other).__name__}")

    def __add__(self, other) -> "ChowClass":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out[m] + c if m in out else c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ChowClass._raw(self.n, self.level, out)

    __radd__ = __add__

    def __neg__(self) -> "ChowClass":
        return ChowClass._raw(self.n, self.level, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "ChowClass":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ChowClass":
        return self._lift(other) - self

    def __mul__(self, other) -> "ChowClass":
        if isinstance(other, (ParamScalar, int, Fraction)) and not isinstance(other, bool):
            if not other:
                return ChowClass._raw(self.n, self.level, {})
            return ChowClass._raw(
                self.n, self.level, {m: c * other for m, c in self._terms.items()}
            )
        if not isinstance(other, ChowClass):
            return NotImplemented
        self._check(other)
        amax, dim = self.n + 1, self.dim
        out: dict = {}
        for m1, c1 in self._terms.items():
            d1 = sum(m1)
            for m2, c2 in other._terms.items():
                if m1[0] + m2[0] > 1 or m1[1] + m2[1] > amax or d1 + sum(m2) > dim:
                    continue
                m = tuple(i + j for i, j in zip(m1, m2))
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return ChowClass._raw(self.n, self.level, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ChowClass":
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a nonnegative integer")
        result = ChowClass.scalar(self.n, self.level, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChowClass):
            return NotImplemented
        return (self.n, self.level, self._terms) == (other.n, other.level, other._terms)

    def __hash__(self) -> int:
        return hash((self.n, self.level, frozenset(self._terms.items())))

    def map_coefficients(self, f) -> "ChowClass":
        return ChowClass(self.n, self.level, {m: f(c) for m, c in self._terms.items()})

    def pullback(self, level: int) -> "ChowClass":
        """Pull back to a higher level of the same tower."""
        if level < self.level:
            raise DomainError("can only pull back to a higher level")
        pad = (0,) * (level - self.level)
        return ChowClass(self.n, level, {m + pad: c for m, c in self._terms.items()})

    # -- rendering -----------------------------------------------------------

    def _monomial_text(self, mono) -> str:
        names = generator_names(self.level)
        parts = []
        for i in reversed(range(len(mono))):
            e = mono[i]
            if e == 1:
                parts.append(names[i])
            elif e:
                parts.append(f"{names[i]}^{e}")
        return "*".join(parts)

    def sorted_terms(self) -> list:
        return sorted(
            self._terms.items(), key=lambda t: (-sum(t[0]), [-e for e in reversed(t[0])])
        )

    def to_text(self) -> str:
        pieces = []
        for mono, c in self.sorted_terms():
            mtext = self._monomial_text(mono)
            if len(c) == 1:
                (exps, num), = c.items()
                ptext = ParamScalar({exps: 1}).to_text() if any(exps) else ""
                both = "*".join(p for p in (ptext, mtext) if p)
                pieces.append((both, num))
            else:
                ctext = f"({c.to_text()})"
                pieces.append((f"{ctext}*{mtext}" if mtext else ctext, 1))
        return render_terms(pieces, lambda s: s)

    def to_json(self) -> list:
        names = generator_names(self.level)
        return [
            {
                "coeff": c.to_json(),
                "gens": {names[i]: e for i, e in enumerate(mono) if e},
            }
            for mono, c in self.sorted_terms()
        ]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"ChowClass(n={self.n}, level={self.level}, {self.to_text()!r})"


@dataclass(frozen=True)
class BundleWeights:
    """Weights of ``O(lambda, d; m1, ..., mk)`` on level ``k``."""

    lambda_part: Coeff = 0
    d_part: Coeff = 0
    m: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))

    @property
    def total(self):
        """Total weight ``|m| = m1 + ... + mk``."""
        return sum(self.m)


class TowerContext:
    """A tower of depth ``k`` over a family of n-dimensional hypersurfaces.

    The Segre table is built lazily; intersection numbers of monomials are
    memoized per context.
    """

    def __init__(self, n: int, depth: int):
        if n < 1:
            raise DomainError("n must be >= 1")
        if not 0 <= depth <= MAX_DEPTH:
            raise DomainError(f"depth must be in 0..{MAX_DEPTH}")
        self.n = n
        self.depth = depth
        self._segre = None
        self._numbers: dict = {}

    def dim(self, level: int | None = None) -> int:
        return level_dim(self.n, self.depth if level is None else level)

    @property
    def segre(self):
        if self._segre is None:
            from .segre import build_table

            self._segre = build_table(self.n, self.depth)
        return self._segre

    def gen(self, name: str, level: int | None = None) -> ChowClass:
        level = self.depth if level is None else level
        self._check_level(level)
        return ChowClass.generator(self.n, level, name)

    def gens(self, level: int | None = None) -> dict[str, ChowClass]:
        level = self.depth if level is None else level
        return {name: self.gen(name, level) for name in generator_names(level)}

    def scalar(self, value: Coeff, level: int | None = None) -> ChowClass:
        level = self.depth if level is None else level
        self._check_level(level)
        return ChowClass.scalar(self.n, level, value)

    def _check_level(self, level: int) -> None:
        if not 0 <= level <= self.depth:
            raise DomainError(f"level {level} outside 0..{self.depth}")

    def _check_class(self, c: ChowClass) -> None:
        if c.n != self.n:
            raise DomainError(f"class has n={c.n}, context has n={self.n}")
        self._check_level(c.level)

    def segre_class(self, level: int, i: int) -> ChowClass:
        """``s_i(F_level)``; zero outside ``0..dim(level)``."""
        self._check_level(level)
        if i < 0 or i > self.dim(level):
            return ChowClass(self.n, level)
        return self.segre.rows[level][i]

    # -- intersection theory ---------------------------------------------------

    def pushforward_once(self, c: ChowClass) -> ChowClass:
        """Push a class on level j down to level j-1.

        ``pullback(m) * a_j^e`` goes to ``m * s_{e-n}(F_{j-1})``.
        """
        self._check_class(c)
        j = c.level
        if j == 0:
            raise DomainError("cannot push forward from level 0")
        by_power: dict[int, dict] = {}
        for mono, coeff in c.items():
            by_power.setdefault(mono[-1], {})[mono[:-1]] = coeff
        out = ChowClass(self.n, j - 1)
        for e, terms in by_power.items():
            s = self.segre_class(j - 1, e - self.n)
            if s:
                out = out + ChowClass._raw(self.n, j - 1, terms) * s
        return out

    def pushforward(self, c: ChowClass, level: int) -> ChowClass:
        while c.level > level:
            c = self.pushforward_once(c)
        return c

    def monomial_number(self, mono: tuple) -> ParamScalar:
        """Intersection number of a top-degree monomial, memoized."""
        hit = self._numbers.get(mono)
        if hit is not None:
            return hit
        n = self.n
        level = len(mono) - 2
        if mono[0] > 1 or mono[1] > n + 1:
            val = ParamScalar(0)
        elif level == 0:
            b, a = mono
            if (a, b) == (n + 1, 0):
                val = ParamScalar.var("r")
            elif (a, b) == (n, 1):
                val = ParamScalar.var("d")
            else:
                val = ParamScalar(0)
        else:
            rest, e = mono[:-1], mono[-1]
            s = self.segre_class(level - 1, e - n)
            val = ParamScalar(0)
            for m, coeff in s.items():
                sub = tuple(i + k for i, k in zip(rest, m))
                val = val + coeff * self.monomial_number(sub)
        self._numbers[mono] = val
        return val

    def top_intersection(self, c: ChowClass) -> ParamScalar:
        """Degree of a top-dimensional class as an exact parameter polynomial."""
        self._check_class(c)
        if not c.is_homogeneous(c.dim):
            raise DomainError(
                f"class has degrees {sorted(c.degrees())}, expected top degree {c.dim}"
            )
        total = ParamScalar(0)
        for mono, coeff in c.items():
            num = self.monomial_number(mono)
            if num:
                total = total + coeff * num
        return total

    def class_of(self, weights: BundleWeights, level: int | None = None) -> ChowClass:
        """First Chern class ``sum m_j a_j + d_part a + lambda_part b``."""
        k = len(weights.m)
        level = k if level is None else level
        if k > self.depth:
            raise DomainError(f"{k} weights but tower depth is {self.depth}")
        if k > level:
            raise DomainError(f"{k} weights do not fit on level {level}")
        self._check_level(level)
        c = ChowClass(self.n, level)
        g = self.gens(level)
        c = c + g["b"] * _coeff(weights.lambda_part) + g["a"] * _coeff(weights.d_part)
        for j, mj in enumerate(weights.m, start=1):
            c = c + g[f"a{j}"] * _coeff(mj)
        return c

    def divisor_class(self, k: int) -> ChowClass:
        """Class of the k-th forbidden divisor, on level k.

        ``a1 - chi*b`` for k = 1 (c1 of pi^*T_B is -chi*b) and ``a_k - a_{k-1}``
        otherwise. The k = 1 sign is a convention inferred from the bundle.
        """
        if not 1 <= k <= self.depth:
            raise DomainError(f"divisor index {k} outside 1..{self.depth}")
        g = self.gens(k)
        if k == 1:
            return g["a1"] - g["b"] * ParamScalar.var("chi")
        return g[f"a{k}"] - g[f"a{k-1}"]


def _coeff(v: Coeff) -> ParamScalar:
    return v if isinstance(v, ParamScalar) else ParamScalar(v)


__all__ = [
    "BundleWeights",
    "ChowClass",
    "TowerContext",
    "format_coeff",
    "generator_names",
    "level_dim",
]
