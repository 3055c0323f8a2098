"""Golden values transcribed from the published appendix.

Everything here is typed in by hand from the printed tables and formulas and
must never be regenerated from the engine. Polynomials are stored as text in
the expression syntax of :mod:`jettower.parser`, with the printed term order.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Fixture:
    case: str
    expected: dict = field(default_factory=dict)


# Rows f = 0..9, entries e = 0..f.
L_TABLE = (
    (1,),
    (0, 1),
    (1, -1, 1),
    (0, 2, -2, 1),
    (1, -2, 4, -3, 1),
    (0, 3, -6, 7, -4, 1),
    (1, -3, 9, -13, 11, -5, 1),
    (0, 4, -12, 22, -24, 16, -6, 1),
    (1, -4, 16, -34, 46, -40, 22, -7, 1),
    (0, 5, -20, 50, -80, 86, -62, 29, -8, 1),
)

X1 = Fixture(
    "x1",
    {
        "A": "a1 + (2 + x)*a - x*eps*b",
        "B": "(2 + x)*a",
        "expansion": (
            "(a1 - eps*x*b)^5 - 10*(a1 - eps*x*b)^3*(2 + x)^2*a^2"
            " - 20*(a1 - eps*x*b)^2*(2 + x)^3*a^3"
        ),
        "pushed": (
            "S3 - 5*eps*x*S2*b - 10*(2 + x)^2*S1*a^2 - 20*(2 + x)^3*a^3"
            " + 30*eps*(2 + x)^2*x*a^2*b"
        ),
        "dominant": "(-4*chi + 20*eps*x)*d^2 + 20*(1 - (2 + x)^2)*r*d",
        "dominant_eps": "-4*chi*d^2 - 20*(3 + 11/3*x + x^2)*r*d",
    },
)

X2 = Fixture(
    "x2",
    {
        "A": "a2 + (2 + y)*a1 + (6 + 2*y + x)*a - eps*x*b",
        "B": "(6 + 2*y + x)*a",
        "ladder": (1, 7, 21, 35, 35, 21),
        "ladder_eps": (7, 7 * 6, 7 * 15, 7 * 20, 7 * 15),
        "bracket": "-2 - 14*(2 + y) + 63*(2 + y)^2 - 70*(2 + y)^3 + 35*(2 + y)^4",
        "bracket_eps": "-13 + 42*(2 + y) - 45*(2 + y)^2 + 20*(2 + y)^3",
        "s1s2": "chi*d^3 - 12*r*d^2",
        "s1s1b": "d^3",
        "poly": "222 + 518*y + 483*y^2 + 210*y^3 + 35*y^4",
        "poly_eps": "51 + 102*y + 75*y^2 + 20*y^3",
        "dominant": (
            "(222 + 518*y + 483*y^2 + 210*y^3 + 35*y^4)*(chi*d^3 - 12*r*d^2)"
            " - 7*eps*x*(51 + 102*y + 75*y^2 + 20*y^3)*d^3"
        ),
        "schwarz_eps_x": "chi*(3 + 2*y)",
        "schwarz_bound": (
            "-(849 + 2338*y + 2520*y^2 + 1260*y^3 + 245*y^4)*chi*d^3"
            " - (2664 + 6216*y + 5796*y^2 + 2520*y^3 + 420*y^4)*r*d^2"
        ),
    },
)

X3 = Fixture(
    "x3",
    {
        "A": (
            "a3 + (2 + z)*a2 + (6 + 2*z + y)*a1 + (18 + 6*z + 2*y + x)*a - eps*x*b"
        ),
        "B": "(18 + 6*z + 2*y + x)*a",
        "eps_x": "9 + 3*z + y",
        # coefficient of r*d^3
        "rd3": (
            "34272*y^3*z + 3304896*z^3 + 17136*z^6 + 25200*y^2*z^4 + 1332648"
            " + 906336*y + 3997944*z + 495936*y^2*z + 34272*y*z^5"
            " + 181440*y^2*z^3 + 222768*z^5 + 212544*y^2 + 2416896*y*z"
            " + 1391040*y*z^3 + 1189440*z^4 + 5016096*z^2 + 352800*y*z^4"
            " + 17136*y^3 + 25200*y^3*z^2 + 6720*y^3*z^3 + 2613744*y*z^2"
            " + 450576*y^2*z^2"
        ),
        # printed with a leading minus in front of chi*d^3
        "chid3": (
            "869904*y^3*z + 44108988*z^3 + 559608*z^6 + 32130*y^4*z"
            " + 772380*y^2*z^4 + 16542612 + 12428586*y + 49627836*z"
            " + 8196300*y^2*z + 18900*y^4*z^2 + 1085616*y*z^5"
            " + 3507840*y^2*z^3 + 3780*y^4*z^3 + 4306554*z^5 + 3512700*y^2"
            " + 30564*z^7 + 33142896*y*z + 21170016*y*z^3 + 19278*y^4"
            " + 18008802*z^4 + 63329508*z^2 + 6674220*y*z^4 + 434952*y^3"
            " + 664020*y^3*z^2 + 221760*y^3*z^3 + 26460*y^3*z^4"
            " + 36642312*y*z^2 + 65016*y^2*z^5 + 7663572*y^2*z^2 + 71316*z^6*y"
        ),
    },
)

# Spot checks for quick regression; (part, exponents of (y, z), value).
X3_SPOTS = (
    ("rd3", (0, 0), 1332648),
    ("rd3", (0, 3), 3304896),
    ("rd3", (0, 6), 17136),
    ("rd3", (3, 1), 34272),
    ("chid3", (0, 0), 16542612),
    ("chid3", (0, 3), 44108988),
    ("chid3", (0, 7), 30564),
    ("chid3", (4, 0), 19278),
    ("chid3", (4, 3), 3780),
)

FIXTURES = {"ltable": Fixture("ltable", {"rows": L_TABLE}), "x1": X1, "x2": X2, "x3": X3}
