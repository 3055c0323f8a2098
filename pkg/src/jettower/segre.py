"""Segre classes along the jet tower.

``F_0`` is the cotangent bundle of the total space; ``F_k`` lives on level k
and has rank n + 1. The classes of ``F_k`` are obtained from those of
``F_{k-1}`` with the alternating binomial sums :func:`l_number`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .chow import ChowClass, level_dim
from .errors import DomainError
from .scalars import ParamScalar


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero when ``b < 0`` or ``b > a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def l_number(e: int, f: int) -> int:
    """``sum_{i=0}^{f-e} (-1)^i C(e+i, e)``, by the defining alternating sum."""
    if e < 0 or f < e:
        raise DomainError(f"l_number needs 0 <= e <= f, got e={e}, f={f}")
    return sum((-1) ** i * comb(e + i, e) for i in range(f - e + 1))


@lru_cache(maxsize=None)
def _l_pascal(e: int, f: int) -> int:
    if e == f:
        return 1
    if e == 0:
        return 1 - f % 2
    # L_e^f = L_{e-1}^{f-1} - L_e^{f-1}
    return _l_pascal(e - 1, f - 1) - _l_pascal(e, f - 1)


class LTable:
    """The numbers ``L_e^f`` for ``0 <= e <= f <= fmax``, built Pascal-style."""

    def __init__(self, fmax: int):
        if fmax < 0:
            raise DomainError("fmax must be >= 0")
        self.fmax = fmax
        self.entries = {(e, f): _l_pascal(e, f) for f in range(fmax + 1) for e in range(f + 1)}

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries[key]

    def rows(self) -> list[list[int]]:
        return [[self.entries[e, f] for e in range(f + 1)] for f in range(self.fmax + 1)]

    def to_text(self) -> str:
        width = max(len(str(v)) for v in self.entries.values()) + 1
        width = max(width, 4)
        head = "L_e^f |" + "".join(f"{'e=' + str(e):>{width + 1}}" for e in range(self.fmax + 1))
        lines = [head, "-" * len(head)]
        for f, row in enumerate(self.rows()):
            cells = "".join(f"{v:>{width + 1}}" for v in row)
            lines.append(f"{'f=' + str(f):>5} |{cells}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            str(f): {str(e): v for e, v in enumerate(row)} for f, row in enumerate(self.rows())
        }


@dataclass
class SegreTable:
    """``rows[j][i] = s_i(F_j)`` as a class on level j, for ``i = 0..dim(level j)``."""

    n: int
    rows: list

    @property
    def depth(self) -> int:
        return len(self.rows) - 1


def segre_twist(
    s: Sequence[ChowClass], rank: int, c1: ChowClass, length: int | None = None
) -> list[ChowClass]:
    """Segre classes of ``E (x) L`` from those of ``E`` and ``c1(L)``.

    ``s_i(E (x) L) = sum_j C(rank-1+i, i-j) s_j(E) c1(L)^(i-j)``. Entries of
    ``s`` past its end are treated as zero.
    """
    if not s:
        raise DomainError("need at least s_0")
    if rank < 1:
        raise DomainError("rank must be >= 1")
    n, level = c1.n, c1.level
    for c in s:
        if (c.n, c.level) != (n, level):
            raise DomainError("all classes must live on the same level")
    length = len(s) if length is None else length
    powers = [ChowClass.scalar(n, level, 1)]
    for _ in range(1, length):
        powers.append(powers[-1] * c1)
    out = []
    for i in range(length):
        acc = ChowClass(n, level)
        for j in range(min(i, len(s) - 1) + 1):
            coef = binom(rank - 1 + i, i - j)
            if coef and s[j]:
                acc = acc + s[j] * powers[i - j] * coef
        out.append(acc)
    return out


def segre_F0(n: int) -> list[ChowClass]:
    """``s_0 .. s_{n+1}`` of the cotangent bundle of the family, on level 0.

    The total class is ``(1 + chi b)(1 + a)^{-(n+2)}(1 + d a + r b)``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    one = ChowClass.scalar(n, 0, 1)
    a = ChowClass.generator(n, 0, "a")
    b = ChowClass.generator(n, 0, "b")
    r, d, chi = (ParamScalar.var(v) for v in ("r", "d", "chi"))
    inv = ChowClass(n, 0)
    apow = one
    for i in range(n + 2):
        inv = inv + apow * ((-1) ** i * binom(n + 1 + i, i))
        apow = apow * a
    total = (one + b * chi) * inv * (one + a * d + b * r)
    return [_graded_part(total, i) for i in range(level_dim(n, 0) + 1)]


def _graded_part(c: ChowClass, degree: int) -> ChowClass:
    return ChowClass(c.n, c.level, {m: v for m, v in c.items() if sum(m) == degree})


def segre_next(table: SegreTable, k: int) -> SegreTable:
    """Append row ``k``: ``s_l(F_k) = sum_{a+b=l} L_{n+a}^{n+l} s_a(F_{k-1}) a_k^b``."""
    if k != len(table.rows):
        raise DomainError(f"table holds rows 0..{len(table.rows) - 1}; cannot build row {k}")
    if k > 9:
        raise DomainError("tower depth is capped at 9")
    n = table.n
    prev = [s.pullback(k) for s in table.rows[k - 1]]
    ak = ChowClass.generator(n, k, f"a{k}")
    dim = level_dim(n, k)
    apow = [ChowClass.scalar(n, k, 1)]
    for _ in range(dim):
        apow.append(apow[-1] * ak)
    row = []
    for ell in range(dim + 1):
        acc = ChowClass(n, k)
        for a in range(min(ell, len(prev) - 1) + 1):
            coef = _l_pascal(n + a, n + ell)
            if coef and prev[a]:
                acc = acc + prev[a] * apow[ell - a] * coef
        row.append(acc)
    return SegreTable(n, table.rows + [row])


def build_table(n: int, depth: int) -> SegreTable:
    table = SegreTable(n, [segre_F0(n)])
    for k in range(1, depth + 1):
        table = segre_next(table, k)
    return table
