"""Recompute the appendix examples and diff them against the golden fixtures.

Each report holds two kinds of lines: comparisons with a transcribed value
(MATCH / MISMATCH) and internal invariants that exercise a second route
through the engine, so a disagreement can be attributed either to the
fixture or to the engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .chow import TowerContext
from .fixtures import FIXTURES, L_TABLE
from .parser import GENERATORS, PARAMS, evaluate, parse, parse_class, parse_scalar
from .positivity import morse_difference
from .scalars import ParamScalar
from .segre import LTable, l_number

CASES = ("ltable", "x1", "x2", "x3")


@dataclass
class Entry:
    description: str
    expected: str
    computed: str
    match: bool

    @property
    def status(self) -> str:
        return "MATCH" if self.match else "MISMATCH"


@dataclass
class AppendixReport:
    case: str
    entries: list = field(default_factory=list)
    invariants: list = field(default_factory=list)  # (description, ok)
    notes: list = field(default_factory=list)

    def compare(self, description: str, expected, computed) -> bool:
        ok = expected == computed
        self.entries.append(Entry(description, _text(expected), _text(computed), ok))
        return ok

    def check(self, description: str, ok: bool) -> None:
        self.invariants.append((description, bool(ok)))

    @property
    def mismatches(self) -> list:
        return [e for e in self.entries if not e.match]

    @property
    def inconsistent(self) -> list:
        return [d for d, ok in self.invariants if not ok]

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.inconsistent

    def to_text(self) -> str:
        lines = [f"appendix {self.case}"]
        for e in self.entries:
            lines.append(f"  {e.status:<8} {e.description}: {e.expected}")
            if not e.match:
                lines.append(f"           engine: {e.computed}")
        for desc, ok in self.invariants:
            lines.append(f"  {'OK' if ok else 'BROKEN':<8} invariant: {desc}")
        lines.extend(f"  note: {n}" for n in self.notes)
        lines.append(
            f"  {len(self.entries) - len(self.mismatches)}/{len(self.entries)} match, "
            f"{len(self.inconsistent)} broken invariants"
        )
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "ok": self.ok,
            "entries": [
                {"description": e.description, "expected": e.expected,
                 "computed": e.computed, "status": e.status}
                for e in self.entries
            ],
            "invariants": [{"description": d, "ok": ok} for d, ok in self.invariants],
            "notes": list(self.notes),
        }


def _text(v) -> str:
    return v.to_text() if hasattr(v, "to_text") else str(v)


def _class(text: str, ctx: TowerContext, level: int, extra: dict | None = None):
    """Parse a class expression that may mention extra named classes."""
    if not extra:
        return parse_class(text, ctx, level)
    names = set(PARAMS) | set(GENERATORS) | set(extra)
    expr = parse(text, names.__contains__)
    env = {p: ctx.scalar(ParamScalar.var(p), level) for p in PARAMS}
    env.update(ctx.gens(level))
    env.update(extra)
    return evaluate(expr, env, lambda q: ctx.scalar(q, level))


def run_ltable() -> AppendixReport:
    rep = AppendixReport("ltable")
    table = LTable(9)
    for f, row in enumerate(L_TABLE):
        rep.compare(f"row f={f}", list(row), table.rows()[f])
    rep.check(
        "Pascal construction equals the alternating sums",
        all(table[e, f] == l_number(e, f) for f in range(10) for e in range(f + 1)),
    )
    rep.check(
        "L_e^f - L_{e+1}^f = L_{e+1}^{f+1}",
        all(table[e, f] - table[e + 1, f] == table[e + 1, f + 1]
            for f in range(9) for e in range(f)),
    )
    return rep


def run_x1() -> AppendixReport:
    fx = FIXTURES["x1"].expected
    rep = AppendixReport("x1")
    ctx = TowerContext(2, 1)
    A, B = parse_class(fx["A"], ctx, 1), parse_class(fx["B"], ctx, 1)
    diff_class = A**5 - 5 * A**4 * B
    rep.compare("A^5 - 5A^4B as a class", parse_class(fx["expansion"], ctx, 1), diff_class)
    diff = morse_difference(A, B, ctx)
    rep.compare("dominant term", parse_scalar(fx["dominant"]), diff.rd_part(2))
    sub = diff.substitute_eps(2)
    rep.compare("dominant term, eps = r/(3d)", parse_scalar(fx["dominant_eps"]),
                sub.dominant_term())

    s = {f"S{i}": ctx.segre_class(0, i) for i in range(1, 4)}
    pushed = _class(fx["pushed"], ctx, 0, s)
    rep.check("pushing down to level 0 keeps the intersection number",
              ctx.top_intersection(pushed) == diff)
    rep.check("every coefficient after substitution is negative",
              all(c < 0 for _, c in sub.items()))
    return rep


def _bracket_coefficients(ctx: TowerContext, A_shift: int, count: int, eps: bool):
    """Degree-3 top numbers of alpha_1^k s_{m-k}(F_1) (times beta for ``eps``)."""
    g = ctx.gens(1)
    out = []
    for k in range(count):
        c = g["a1"] ** k * ctx.segre_class(1, A_shift - k)
        if eps:
            c = c * g["b"]
        out.append(ctx.top_intersection(c).rd_part(3))
    return out


def run_x2() -> AppendixReport:
    fx = FIXTURES["x2"].expected
    rep = AppendixReport("x2")
    ctx = TowerContext(2, 2)
    A, B = parse_class(fx["A"], ctx, 2), parse_class(fx["B"], ctx, 2)
    diff = morse_difference(A, B, ctx)
    rep.compare("degree-3 dominant part", parse_scalar(fx["dominant"]), diff.rd_part(3))

    # ladder: push [a2 + c*a1]^7 and [a2 + c*a1]^6*b down to level 1
    c = ParamScalar.var("y") + 2
    g2, g1 = ctx.gens(2), ctx.gens(1)
    head = g2["a2"] + g2["a1"] * c
    ladder = [comb(7, k) for k in range(6)]
    ladder_eps = [7 * comb(6, k) for k in range(5)]
    rep.compare("binomial ladder", list(fx["ladder"]), ladder)
    rep.compare("binomial ladder, eps terms", list(fx["ladder_eps"]), ladder_eps)
    expect = sum((g1["a1"] ** k * ctx.segre_class(1, 5 - k) * (c**k * ladder[k])
                  for k in range(6)), ctx.scalar(0, 1))
    rep.check("pushforward of [a2 + (2+y)a1]^7 follows the ladder",
              ctx.pushforward(head**7, 1) == expect)
    expect = sum((g1["a1"] ** k * ctx.segre_class(1, 4 - k) * g1["b"] * (c**k * ladder_eps[k])
                  for k in range(5)), ctx.scalar(0, 1))
    rep.check("pushforward of 7[a2 + (2+y)a1]^6 b follows the ladder",
              ctx.pushforward(head**6 * g2["b"] * 7, 1) == expect)
    rep.check(
        "dominant part only sees [a2 + (2+y)a1]^7 - 7 eps x [a2 + (2+y)a1]^6 b",
        ctx.top_intersection(head**7 - head**6 * g2["b"] * parse_scalar("7*eps*x")).rd_part(3)
        == diff.rd_part(3),
    )

    s1 = ctx.segre_class(0, 1)
    s1s2 = ctx.top_intersection(s1 * ctx.segre_class(0, 2)).rd_part(3)
    s1s1b = ctx.top_intersection(s1 * s1 * ctx.gen("b", 0)).rd_part(3)
    rep.compare("s1*s2 on the surface family", parse_scalar(fx["s1s2"]), s1s2)
    rep.compare("s1^2*beta", parse_scalar(fx["s1s1b"]), s1s1b)

    # bracket: sum_k ladder_k * c^k * (top of a1^k s_{5-k}(F1)) / s1s2
    nums = _bracket_coefficients(ctx, 5, 6, eps=False)
    bracket = sum((c**k * (ladder[k] * _ratio(v, s1s2)) for k, v in enumerate(nums)),
                  ParamScalar(0))
    rep.compare("bracket multiplying s1*s2", parse_scalar(fx["bracket"]), bracket)
    nums = _bracket_coefficients(ctx, 4, 5, eps=True)
    bracket_eps = sum((c**k * (comb(6, k) * _ratio(v, s1s1b)) for k, v in enumerate(nums)),
                      ParamScalar(0))
    rep.compare("bracket multiplying -7 eps x s1^2 beta",
                parse_scalar(fx["bracket_eps"]), bracket_eps)
    rep.compare("reduction of the first bracket in y",
                parse_scalar(fx["poly"]), parse_scalar(fx["bracket"]))
    rep.compare("reduction of the second bracket in y",
                parse_scalar(fx["poly_eps"]), parse_scalar(fx["bracket_eps"]))

    bound = diff.rd_part(3).rewrite_product({"eps": 1, "x": 1}, parse_scalar(fx["schwarz_eps_x"]))
    rep.compare("bound after eps*x = chi(3 + 2y)", parse_scalar(fx["schwarz_bound"]), bound)
    return rep


def _ratio(v: ParamScalar, unit: ParamScalar) -> Fraction:
    """The rational q with v == q*unit."""
    mono, c = next(iter(unit.items()))
    q = Fraction(v.terms.get(mono, 0)) / c
    if v != unit * q:
        raise AssertionError(f"{v} is not a multiple of {unit}")
    return q


def x3_difference(ctx: TowerContext | None = None) -> ParamScalar:
    fx = FIXTURES["x3"].expected
    ctx = ctx or TowerContext(2, 3)
    A, B = parse_class(fx["A"], ctx, 3), parse_class(fx["B"], ctx, 3)
    return morse_difference(A, B, ctx)


def run_x3() -> AppendixReport:
    fx = FIXTURES["x3"].expected
    rep = AppendixReport("x3")
    diff = x3_difference()
    chi = ParamScalar.var("chi")
    eps_x = parse_scalar(fx["eps_x"])
    sub = diff.rewrite_product({"eps": 1, "x": 1}, chi * eps_x)
    rep.notes.append("eps*x replaced by chi*(9 + 3z + y) before reading off coefficients")
    rd3 = sub.coeff_of(r=1, d=3, chi=0)
    chid3 = -sub.coeff_of(r=0, d=3, chi=1)
    for part, got in (("rd3", rd3), ("chid3", chid3)):
        want = parse_scalar(fx[part])
        monos = sorted(set(want.terms) | set(got.terms), key=lambda m: (-sum(m), m))
        for mono in monos:
            label = _yz_label(mono)
            rep.compare(f"{part} {label}", want.terms.get(mono, 0), got.terms.get(mono, 0))
    rep.check("no pure d^3 term survives", not sub.coeff_of(r=0, d=3, chi=0))
    rep.check("no chi^2 d^3 term survives", not sub.coeff_of(r=0, d=3, chi=2))
    top = {m[:2] for m in sub.rd_part(4).terms}
    rep.check("r*d^3 is the only monomial of (r,d)-degree 4",
              sub.rd_degree() == 4 and top == {(1, 3)})
    return rep


def _yz_label(mono) -> str:
    from .scalars import VARS

    parts = [f"{v}^{e}" if e > 1 else v for v, e in zip(VARS, mono) if e]
    return "*".join(parts) or "1"


RUNNERS = {"ltable": run_ltable, "x1": run_x1, "x2": run_x2, "x3": run_x3}


def run_appendix(case: str) -> AppendixReport:
    from .errors import DomainError

    if case not in RUNNERS:
        raise DomainError(f"unknown appendix case {case!r}; expected one of {', '.join(CASES)}")
    return RUNNERS[case]()


__all__ = ["AppendixReport", "CASES", "Entry", "run_appendix", "x3_difference"]
