"""Exact parameter polynomials in r, d, chi, x, y, z, eps.

A :class:`ParamScalar` is a sparse map from exponent vectors to exact
rational coefficients. The variable universe is closed and ordered::

    r, d, chi, x, y, z, eps

The exponent of ``d`` may be negative; this is how the single kind of
division the engine needs (``eps -> r/((n+1) d)``) is carried. Such a value
reports a monomial ``denominator`` in ``d``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DomainError

VARS = ("r", "d", "chi", "x", "y", "z", "eps")
NVARS = len(VARS)
_INDEX = {v: i for i, v in enumerate(VARS)}
_R, _D, _EPS = _INDEX["r"], _INDEX["d"], _INDEX["eps"]
_ZERO_EXP = (0,) * NVARS

Number = Union[int, Fraction]


def _norm(c: Number) -> Number:
    # ints are much cheaper than Fractions; keep integral values as int
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _as_number(c) -> Number:
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact coefficient: {c!r}")


class ParamScalar:
    """Immutable exact polynomial (Laurent in ``d``) over the fixed variables."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, value: Union["ParamScalar", Number, str, Mapping] = 0):
        if isinstance(value, ParamScalar):
            self._terms = value._terms
        elif isinstance(value, Mapping):
            terms = {}
            for exps, c in value.items():
                exps = tuple(exps)
                if len(exps) != NVARS:
                    raise ValueError(f"exponent vector must have length {NVARS}")
                c = _as_number(c)
                if c:
                    terms[exps] = c
            self._terms = terms
        else:
            c = _as_number(value)
            self._terms = {_ZERO_EXP: c} if c else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ParamScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name: str, power: int = 1) -> "ParamScalar":
        if name not in _INDEX:
            raise DomainError(f"unknown parameter {name!r}; expected one of {VARS}")
        exps = [0] * NVARS
        exps[_INDEX[name]] = power
        return cls._raw({tuple(exps): 1})

    @classmethod
    def monomial(cls, coeff: Number = 1, **exps: int) -> "ParamScalar":
        vec = [0] * NVARS
        for name, e in exps.items():
            if name not in _INDEX:
                raise DomainError(f"unknown parameter {name!r}")
            vec[_INDEX[name]] = e
        return cls({tuple(vec): coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict:
        """A copy of the ``{exponent tuple: coefficient}`` map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant(self) -> Number:
        return self._terms.get(_ZERO_EXP, 0)

    def is_polynomial(self) -> bool:
        return all(e[_D] >= 0 for e in self._terms)

    @property
    def denominator(self) -> "ParamScalar":
        """The monomial ``d^k`` clearing negative powers of ``d`` (1 if none)."""
        k = self._d_shift()
        return ParamScalar.var("d", k) if k else ParamScalar(1)

    @property
    def numerator(self) -> "ParamScalar":
        k = self._d_shift()
        return self * ParamScalar.var("d", k) if k else self

    def _d_shift(self) -> int:
        return max([0] + [-e[_D] for e in self._terms])

    def degree(self, name: str | None = None) -> int:
        """Total degree, or the degree in a single variable."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e) for e in self._terms)
        i = _INDEX[name]
        return max(e[i] for e in self._terms)

    def rd_degree(self) -> int:
        """Degree with deg r = deg d = 1 and every other variable of degree 0."""
        if not self._terms:
            return -1
        return max(e[_R] + e[_D] for e in self._terms)

    def variables(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(VARS[i] for i, k in enumerate(e) if k)
        return used

    def coefficient(self, **exps: int) -> Number:
        vec = [0] * NVARS
        for name, e in exps.items():
            vec[_INDEX[name]] = e
        return self._terms.get(tuple(vec), 0)

    def coeff_of(self, **exps: int) -> "ParamScalar":
        """Collect terms whose exponents on the named variables match exactly.

        The named variables are removed from the result, so
        ``(3*r*d^3*y + chi*d^3).coeff_of(r=1, d=3, chi=0)`` is ``3*y``.
        """
        idx = [(_INDEX[k], v) for k, v in exps.items()]
        out = {}
        for e, c in self._terms.items():
            if all(e[i] == v for i, v in idx):
                e2 = list(e)
                for i, _ in idx:
                    e2[i] = 0
                e2 = tuple(e2)
                out[e2] = out.get(e2, 0) + c
        return ParamScalar._raw({k: v for k, v in out.items() if v})

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "ParamScalar":
        if isinstance(other, ParamScalar):
            return other
        return ParamScalar(other)

    def __add__(self, other) -> "ParamScalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return ParamScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ParamScalar":
        return ParamScalar._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self) -> "ParamScalar":
        return self

    def __sub__(self, other) -> "ParamScalar":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamScalar":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ParamScalar":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return ParamScalar._raw({})
            return ParamScalar._raw({e: _norm(c * other) for e, c in self._terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return ParamScalar._raw({e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ParamScalar":
        # Division by exact numbers only; other division is out of scope.
        if isinstance(other, ParamScalar):
            if not other.is_constant() or not other:
                raise DomainError("only division by a nonzero constant is supported")
            other = other.constant()
        other = _as_number(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (Fraction(1) / other)

    def __pow__(self, k: int) -> "ParamScalar":
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a nonnegative integer")
        result = ParamScalar(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamScalar):
            return self._terms == other._terms
        try:
            return self._terms == ParamScalar(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution and evaluation -------------------------------------

    def substitute_eps(self, n: int) -> "ParamScalar":
        """Replace eps by r/((n+1) d), exactly."""
        if n < 1:
            raise DomainError("n must be >= 1")
        q = n + 1
        out: dict = {}
        for e, c in self._terms.items():
            k = e[_EPS]
            if k:
                e2 = list(e)
                e2[_EPS] = 0
                e2[_R] += k
                e2[_D] -= k
                e = tuple(e2)
                c = Fraction(c, q**k)
            v = out.get(e, 0) + c
            out[e] = v
        return ParamScalar._raw({e: _norm(c) for e, c in out.items() if c})

    def substitute(self, name: str, value) -> "ParamScalar":
        """Replace a variable by a ParamScalar (polynomial values only for negative powers)."""
        i = _INDEX[name]
        value = self._coerce(value)
        powers: dict[int, ParamScalar] = {}
        out = ParamScalar(0)
        rest: dict = {}
        for e, c in self._terms.items():
            k = e[i]
            e2 = list(e)
            e2[i] = 0
            rest.setdefault(k, {})[tuple(e2)] = c
        for k, terms in rest.items():
            if k < 0:
                raise DomainError(f"cannot substitute into negative power of {name}")
            if k not in powers:
                powers[k] = value**k
            out = out + ParamScalar._raw(terms) * powers[k]
        return out

    def rewrite_product(self, factors: Mapping[str, int], value) -> "ParamScalar":
        """Replace every occurrence of the monomial ``prod v^k`` by ``value``.

        Used for stated substitutions such as ``eps*x -> 9 + 3z + y``: a term
        ``eps^2 x^3 y`` becomes ``value^2 * x * y``.
        """
        idx = [(_INDEX[v], k) for v, k in factors.items()]
        if not idx or any(k <= 0 for _, k in idx):
            raise DomainError("factor exponents must be positive")
        value = self._coerce(value)
        out = ParamScalar(0)
        groups: dict = {}
        for e, c in self._terms.items():
            m = min(e[i] // k for i, k in idx)
            e2 = list(e)
            for i, k in idx:
                e2[i] -= m * k
            groups.setdefault(m, {})[tuple(e2)] = c
        for m, terms in groups.items():
            out = out + ParamScalar._raw(terms) * value**m
        return out

    def partial_eval(self, point: Mapping[str, Number]) -> "ParamScalar":
        """Substitute exact numbers for some variables."""
        idx = [(_INDEX[k], _as_number(v)) for k, v in point.items()]
        out: dict = {}
        for e, c in self._terms.items():
            e2 = list(e)
            for i, v in idx:
                k = e[i]
                if k:
                    if not v and k < 0:
                        raise ZeroDivisionError(f"{VARS[i]} = 0 in a denominator")
                    c = c * (Fraction(v) ** k)
                    e2[i] = 0
            e2 = tuple(e2)
            out[e2] = out.get(e2, 0) + c
        return ParamScalar._raw({e: _norm(c) for e, c in out.items() if c})

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        """Exact value at a point; every variable that occurs must be given."""
        missing = self.variables() - set(point)
        if missing:
            raise DomainError(f"no value given for {sorted(missing)}")
        return Fraction(self.partial_eval(point).constant())

    def dominant_term(self) -> "ParamScalar":
        """All terms of maximal (r, d)-degree."""
        if not self._terms:
            return self
        top = self.rd_degree()
        return ParamScalar._raw(
            {e: c for e, c in self._terms.items() if e[_R] + e[_D] == top}
        )

    def rd_part(self, degree: int) -> "ParamScalar":
        return ParamScalar._raw(
            {e: c for e, c in self._terms.items() if e[_R] + e[_D] == degree}
        )

    # -- rendering -----------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), [-k for k in t[0]]))

    def to_text(self) -> str:
        k = self._d_shift()
        if k:
            num = (self * ParamScalar.var("d", k)).to_text()
            den = "d" if k == 1 else f"d^{k}"
            return f"({num})/{den}"
        return render_terms(self.sorted_terms(), _monomial_text)

    def to_json(self) -> list:
        return [
            {
                "coeff": str(Fraction(c)),
                "exps": {VARS[i]: k for i, k in enumerate(e) if k},
            }
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "ParamScalar":
        terms = {}
        for item in data:
            vec = [0] * NVARS
            for name, k in item["exps"].items():
                vec[_INDEX[name]] = int(k)
            terms[tuple(vec)] = Fraction(item["coeff"])
        return cls(terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"ParamScalar({self.to_text()!r})"


def _monomial_text(exps) -> str:
    parts = []
    for name, k in zip(VARS, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_coeff(c: Number) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_terms(terms, monomial_text) -> str:
    """Join ``(monomial, coeff)`` pairs as ``a - 2*b + 1/3*c``.

    Shared by scalar and Chow-class rendering; coefficients here are numbers.
    """
    if not terms:
        return "0"
    out = []
    for i, (mono, c) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        mtext = monomial_text(mono)
        if not mtext:
            body = format_coeff(mag)
        elif mag == 1:
            body = mtext
        else:
            body = f"{format_coeff(mag)}*{mtext}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def symbols() -> tuple[ParamScalar, ...]:
    """``r, d, chi, x, y, z, eps`` as ParamScalars, in that order."""
    return tuple(ParamScalar.var(v) for v in VARS)
