"""Nef weights, Morse bigness certificates, Schwarz and height bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .chow import BundleWeights, ChowClass, TowerContext
from .errors import DomainError
from .scalars import ParamScalar
from .segre import binom

# -- nef bundles on the tower -------------------------------------------------


def nef_Lk(k: int) -> BundleWeights:
    """Weights ``(0, 2*3^(k-1); 2*3^(k-2), ..., 6, 2, 1)`` of the nef bundle on level k."""
    if k < 1:
        raise DomainError("k must be >= 1")
    m = tuple(2 * 3 ** (k - 1 - j) for j in range(1, k)) + (1,)
    w = BundleWeights(0, 2 * 3 ** (k - 1), m)
    assert w.d_part + w.total == 3**k
    return w


def _weight_vector(w: BundleWeights) -> tuple:
    return (w.d_part,) + tuple(w.m)


def nef_recursion_check(k: int, weights: Optional[BundleWeights] = None) -> bool:
    """Check ``L_k = (m_{k-1}, 1)`` with ``m_{k-1} = (3 m_{k-2}, 2) = 2(m_{k-2}, 1) + (m_{k-2}, 0)``.

    ``m_j`` is the weight vector ``(d; m1, ..., mj)`` with ``m_0 = (2)``.
    """
    if k < 2:
        raise DomainError("the recursion starts at k = 2")
    w = nef_Lk(k) if weights is None else weights
    prev = _weight_vector(nef_Lk(k - 1))
    cur = _weight_vector(w)
    if w.lambda_part != 0 or len(cur) != len(prev) + 1 or cur[-1] != 1:
        return False
    m_cur, m_prev = cur[:-1], prev[:-1]
    tripled = tuple(3 * v for v in m_prev) + (2,)
    split = tuple(2 * a + b for a, b in zip(m_prev + (1,), m_prev + (0,)))
    return m_cur == tripled == split


def nef_class(ctx: TowerContext, k: int, level: int | None = None) -> ChowClass:
    """First Chern class ``l_k`` of ``L_k``, pulled back to ``level`` (default k)."""
    return ctx.class_of(nef_Lk(k), level=k).pullback(k if level is None else level)


def lk_expansion_closed_form(n: int, k: int) -> list[int]:
    """Coefficients of ``a_{k-1}, ..., a_1, a`` in ``pi_* l_k^(n+1) - s_1(F_0)``."""
    return [(n + 1) * 2 * 3 ** (j - 1) - n for j in range(1, k)] + [(n + 1) * 2 * 3 ** (k - 1)]


def pushforward_lk_expansion(k: int, ctx: TowerContext) -> list[ParamScalar]:
    """Push ``l_k^(n+1)`` down one level and compare with the closed form.

    Returns the coefficients on ``a_{k-1}, ..., a_1, a`` after removing the
    pulled-back ``s_1(F_0)``. Raises AssertionError if they disagree with
    :func:`lk_expansion_closed_form` or anything else is left over.
    """
    if not 1 <= k <= ctx.depth:
        raise DomainError(f"k must be in 1..{ctx.depth}")
    n = ctx.n
    lk = nef_class(ctx, k)
    pushed = ctx.pushforward_once(lk ** (n + 1))
    rest = pushed - ctx.segre_class(0, 1).pullback(k - 1)
    names = [f"a{j}" for j in range(k - 1, 0, -1)] + ["a"]
    coeffs = [rest.coefficient(**{name: 1}) for name in names]
    leftover = rest - sum(
        (ctx.gen(name, k - 1) * c for name, c in zip(names, coeffs)), ChowClass(n, k - 1)
    )
    expected = lk_expansion_closed_form(n, k)
    if leftover or [c for c in coeffs] != [ParamScalar(e) for e in expected]:
        raise AssertionError(
            f"pushforward of l_{k}^{n + 1}: got {[str(c) for c in coeffs]} "
            f"(leftover {leftover}), expected {expected}"
        )
    return coeffs


def growth_inequality(n: int, j: int) -> bool:
    """``(n+1) 2 3^j - n >= 3 [(n+1) 2 3^(j-1) - n]``."""
    return (n + 1) * 2 * 3**j - n >= 3 * ((n + 1) * 2 * 3 ** (j - 1) - n)


# -- Morse certificates ---------------------------------------------------------


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


_WORDS = {1: "positive", 0: "zero", -1: "negative"}


@dataclass
class MorseReport:
    """Exact ``A^D - D A^(D-1) B`` with its dominant part and sign readings."""

    difference: ParamScalar
    dominant: ParamScalar
    dimension: int
    sample: dict = field(default_factory=dict)
    sample_sign: Optional[int] = None
    asymptotic_sign: Optional[int] = None

    @property
    def verdict(self) -> Optional[str]:
        return None if self.sample_sign is None else _WORDS[self.sample_sign]

    @property
    def asymptotic_verdict(self) -> Optional[str]:
        return None if self.asymptotic_sign is None else _WORDS[self.asymptotic_sign]

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "difference": self.difference.to_json(),
            "dominant": self.dominant.to_json(),
            "sample": {k: str(v) for k, v in self.sample.items()},
            "verdict": self.verdict,
            "asymptotic_verdict": self.asymptotic_verdict,
        }


def leading_coefficient(p: ParamScalar) -> ParamScalar:
    """Coefficient of the largest ``r^i d^j`` under ``r >> d >> 1`` (r-degree first)."""
    if not p:
        return p
    er, ed = max((e[0], e[1]) for e in p.terms)
    return p.coeff_of(r=er, d=ed)


def morse_difference(A: ChowClass, B: ChowClass, ctx: TowerContext) -> ParamScalar:
    D = A.dim
    for name, c in (("A", A), ("B", B)):
        if c.level != A.level or c.n != A.n:
            raise DomainError(f"{name} is not on the same level as A")
        if not c.is_homogeneous(1):
            raise DomainError(f"{name} must be a degree-1 class")
    Ap = A ** (D - 1)
    return ctx.top_intersection(Ap * A - Ap * B * D)


def morse_certificate(
    A: ChowClass,
    B: ChowClass,
    ctx: TowerContext,
    sample: Optional[Mapping[str, object]] = None,
    substitute_eps: bool = False,
) -> MorseReport:
    """Bigness test for ``A - B`` by the algebraic holomorphic Morse inequality.

    The sign at ``sample`` comes from exact rational evaluation of the full
    difference. The asymptotic sign is that of the leading coefficient in the
    ``r >> d >> 1`` ordering, evaluated at the sample's other parameters
    when it is not already a constant.
    """
    diff = morse_difference(A, B, ctx)
    if substitute_eps:
        diff = diff.substitute_eps(ctx.n)
    report = MorseReport(diff, diff.dominant_term(), A.dim)
    point = {k: Fraction(v) for k, v in (sample or {}).items()}
    report.sample = point
    if point:
        report.sample_sign = _sign(diff.evaluate(point))
    lead = leading_coefficient(diff)
    if lead.is_constant():
        report.asymptotic_sign = _sign(Fraction(lead.constant()))
    elif lead.variables() <= set(point):
        report.asymptotic_sign = _sign(lead.evaluate(point))
    return report


# -- the final argument and the side conditions ------------------------------


def weight_sum(n: int) -> Fraction:
    """``sum_{j=1}^{n+1} (3^j - 2*3^(j-1))``, the total weight per unit of twist."""
    return Fraction(sum(3**j - 2 * 3 ** (j - 1) for j in range(1, n + 2)))


@dataclass
class FinalArgumentReport:
    n: int
    morse: MorseReport
    weight_sum: Fraction
    schwarz_rhs: Fraction
    ratio: Optional[Fraction] = None

    @property
    def schwarz_threshold(self) -> Optional[Fraction]:
        """``ratio * (3^(n+1)-1)/2``; must stay below ``r/((n+1)d)``."""
        return None if self.ratio is None else self.ratio * self.weight_sum

    @property
    def schwarz_ok(self) -> Optional[bool]:
        t = self.schwarz_threshold
        return None if t is None else t < self.schwarz_rhs

    @property
    def big(self) -> bool:
        ok = self.morse.sample_sign == 1
        return ok and (self.schwarz_ok is not False)

    def to_json(self) -> dict:
        t = self.schwarz_threshold
        return {
            "n": self.n,
            "morse": self.morse.to_json(),
            "weight_sum": str(self.weight_sum),
            "schwarz_threshold": None if t is None else str(t),
            "schwarz_rhs": str(self.schwarz_rhs),
            "schwarz_ok": self.schwarz_ok,
            "big": self.big,
        }


def final_bundles(n: int, x, ctx: Optional[TowerContext] = None):
    """``A = L_{n+1} + ... + L_1 + (a - eps b)`` and ``B = (3^(n+1) + x) a`` on level n+1."""
    kappa = n + 1
    ctx = ctx or TowerContext(n, kappa)
    g = ctx.gens(kappa)
    A = g["a"] - g["b"] * ParamScalar.var("eps")
    for j in range(1, kappa + 1):
        A = A + nef_class(ctx, j, kappa)
    B = g["a"] * (ParamScalar(3**kappa) + x)
    return ctx, A, B


def final_argument(
    n: int,
    r,
    d,
    x,
    chi=2,
    ratio=None,
    ctx: Optional[TowerContext] = None,
) -> FinalArgumentReport:
    """Run the bigness test on level n+1 with ``eps = r/((n+1)d)`` at one sample point.

    ``chi`` defaults to 2, the smallest value allowed when the base has genus
    at least 2. ``ratio`` is ``chi_rho / deg rho`` for the Schwarz condition.
    """
    r, d, x, chi = (Fraction(v) for v in (r, d, x, chi))
    if n < 1:
        raise DomainError("n must be >= 1")
    if min(r, d, x) <= 0:
        raise DomainError("r, d and x must be positive")
    if chi < 0:
        raise DomainError("chi must be nonnegative")
    ctx, A, B = final_bundles(n, x, ctx)
    morse = morse_certificate(A, B, ctx, {"r": r, "d": d, "chi": chi}, substitute_eps=True)
    rhs = r / ((n + 1) * d)
    return FinalArgumentReport(
        n, morse, weight_sum(n), rhs, None if ratio is None else Fraction(ratio)
    )


def schwarz_min_lambda(total_weight, ratio) -> Fraction:
    """Strict lower bound ``ratio * |m|`` for deg(lambda) in the Schwarz lemma."""
    total_weight, ratio = Fraction(total_weight), Fraction(ratio)
    if total_weight < 0 or ratio < 0:
        raise DomainError("total weight and ratio must be nonnegative")
    return ratio * total_weight


def height_bound(n: int, x, ratio) -> Fraction:
    """``(3^(n+1) - 1) / (2x) * ratio``."""
    x = Fraction(x)
    if x <= 0:
        raise DomainError("x must be positive")
    return Fraction(3 ** (n + 1) - 1) / (2 * x) * Fraction(ratio)


# -- cones on the total space ------------------------------------------------


@dataclass(frozen=True)
class ConeBounds:
    n: int
    deg_lambda0: Fraction
    d0: Fraction
    nef_lower_slope: Fraction

    def describe(self) -> list[str]:
        s = self.nef_lower_slope
        return [
            "{(l, d) : d >= 0, l >= 0} is contained in Nef(X)",
            f"Nef(X) is contained in {{(l, d) : d >= 0, l >= {s} * d}}",
            f"{{(l, d) : d >= 0, l >= {s} * d}} is contained in Eff(X)",
        ]

    def in_outer_cone(self, l, d) -> bool:
        l, d = Fraction(l), Fraction(d)
        return d >= 0 and l >= self.nef_lower_slope * d

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "deg_lambda0": str(self.deg_lambda0),
            "d0": str(self.d0),
            "nef_lower_slope": str(self.nef_lower_slope),
            "cones": self.describe(),
        }


def nef_cone_bounds(n: int, deg_lambda0, d0) -> ConeBounds:
    deg_lambda0, d0 = Fraction(deg_lambda0), Fraction(d0)
    if d0 <= 0:
        raise DomainError("d0 must be positive")
    if deg_lambda0 < 0:
        raise DomainError("deg lambda0 must be nonnegative")
    if n < 1:
        raise DomainError("n must be >= 1")
    return ConeBounds(n, deg_lambda0, d0, -deg_lambda0 / ((n + 1) * d0))


def h0_lower_bound(deg_lambda: int, g: int, d: int, d0: int, deg_lambda0: int, n: int) -> int:
    """Riemann-Roch lower bound for ``h^0(X, O(lambda, d))`` when deg(lambda) < 0.

    Negative values are returned as is; they just mean the bound says nothing.
    """
    if not d >= d0 >= 1:
        raise DomainError("need d >= d0 >= 1")
    return (deg_lambda + 1 - g) * binom(d + n + 1, n + 1) - (
        deg_lambda - deg_lambda0 + 1 - g
    ) * binom(d - d0 + n + 1, n + 1)


def h0_scan(deg_lambda: int, g: int, d: int, d0: int, deg_lambda0: int, n: int,
            scales: Sequence[int]) -> list[int]:
    """The bound along ``(l * lambda, l * d)`` for each scale ``l``."""
    return [h0_lower_bound(s * deg_lambda, g, s * d, d0, deg_lambda0, n) for s in scales]
