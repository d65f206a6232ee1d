"""Hand-transcribed closed forms, vectors and tables.

These are the reference values the computations are compared against.  They
are typed in, never computed, so a check against them is a genuine second
source.  Irrational numbers appear either exactly (via a defining
polynomial) or as truncated decimal strings checked by interval inclusion.
"""

from __future__ import annotations

from fractions import Fraction as F

from .exact import CEH, RatFunc
from .traces import TraceExpr

c, e, h = CEH.gens()

# --- Kac determinants of the vacuum module, as factor lists in c ---------
KAC_DET_FACTORS = {
    2: [c],
    4: [c, 5 * c + 22],
    6: [c, 2 * c - 1, 5 * c + 22, 7 * c + 68],
    8: [c, 2 * c - 1, 3 * c + 46, 5 * c + 3, 5 * c + 22, 7 * c + 68],
}

# highest-weight multiplicities in degrees 0..8
HW_MULTIPLICITIES = (1, 0, 1, 0, 1, 0, 2, 0, 3)
HW_MULTIPLICITIES_HALF = (1, 0, 1, 0, 1, 0, 1, 0, 2)

# --- highest-weight vectors; keys are (a-partition, b-partition) ---------
V2 = {
    ((), (2,)): RatFunc(1),
    ((2,), ()): RatFunc(-(c - e), e),
}

_q = 22 + 5 * c - 5 * e
V4 = {
    ((), (4,)): RatFunc(F(-3, 5)),
    ((), (2, 2)): RatFunc(1),
    ((4,), ()): RatFunc(-3 * _q * (c - e), 5 * e * (22 + 5 * e)),
    ((2,), (2,)): RatFunc(-2 * _q, 5 * e),
    ((2, 2), ()): RatFunc(_q * (c - e), e * (22 + 5 * e)),
}

_k = -5031 + 3195 * c + 1696 * c ** 2 + 140 * c ** 3
V6_HALF = {
    ((), (6,)): RatFunc(F(-2, 3) * (2373 + 1657 * c + 20 * c ** 2)),
    ((), (4, 2)): RatFunc(F(-1, 3) * (12387 + 7301 * c + 112 * c ** 2)),
    ((), (3, 3)): RatFunc(F(1, 3) * (6051 + 854 * c + 70 * c ** 2)),
    ((), (2, 2, 2)): RatFunc(501 + 1099 * c),
    ((6,), ()): RatFunc(F(-5, 48) * (-1 + 2 * c) * _k),
    ((4,), (2,)): RatFunc(F(-11, 3) * _k),
    ((3,), (3,)): RatFunc(F(-2, 3) * _k),
    ((2,), (4,)): RatFunc(F(1, 3) * (-102555 + 89361 * c + 12970 * c ** 2 + 224 * c ** 3)),
    ((2,), (2, 2)): RatFunc(-407 * (-129 + 115 * c + 14 * c ** 2)),
    ((4, 2), ()): RatFunc(F(-7, 24) * (-1 + 2 * c) * _k),
    ((3, 3), ()): RatFunc(F(35, 192) * (-1 + 2 * c) * _k),
    ((2, 2), (2,)): RatFunc(7 * _k),
}

# singular vector of the c = 1/2 vacuum module in degree 6
ISING_S6 = {(6,): -108, (4, 2): -264, (3, 3): 93, (2, 2, 2): 64}

# --- zero-mode traces ----------------------------------------------------
_w = 5 * e * (22 + 5 * e)
_m2 = RatFunc(968 + 330 * c + 25 * c ** 2, _w)

TRACE_LOWEST = {
    "v2": TraceExpr(0, {0: RatFunc(h), 1: RatFunc(-c, e)}),
    "v4": TraceExpr(0, {
        0: RatFunc(h / 5 + h ** 2),
        1: RatFunc((22 + 5 * c) * (c - 2 * (e + 22 * h + 5 * e * h)), _w),
        2: _m2,
    }),
}

TRACE_V2 = {
    "v2": TraceExpr(0, {0: RatFunc(2), 1: RatFunc(-c, e)}),
    "v4": TraceExpr(RatFunc((44 + 5 * c) * (c - e), 22 + 5 * e), {
        0: RatFunc(F(22, 5)),
        1: RatFunc((22 + 5 * c) * (c - 22 * (4 + e)), _w),
        2: _m2,
    }),
}

# --- six-design conditions -----------------------------------------------
COND6 = 4 + 7 * c + c ** 2 - 124 * h - 31 * c * h + 248 * h ** 2
_common = 15 * (c + 24) * (c + 15) * (c + F(44, 5)) * (c - F(34, 35))
_eden = (e + F(68, 7)) * (e + F(22, 5)) ** 2 * e ** 2 * (e - F(1, 2))
DELTA6_MODULE = RatFunc(_common * COND6 * (c - e) * h, 8 * _eden)
DELTA6_MODULE_HALF = RatFunc(_common * COND6 * h / 512)
# (c - (55 - sqrt 33)/2)(c - (55 + sqrt 33)/2) = c^2 - 55c + 748
DELTA6_V2 = RatFunc(_common * (c ** 2 - 55 * c + 748) * (c - e), 4 * _eden)
DELTA6_V2_HALF = RatFunc(_common * (c ** 2 - 55 * c + 748) / 256)

D6 = RatFunc(c * (2388 + 955 * c + 70 * c ** 2), 2 * (748 - 55 * c + c ** 2))

# roots of COND6 in c at fixed h
COND6_ROOTS = {F(1, 2): (F(1, 2), F(8)), F(1): (F(8), F(16)), F(3, 2): (F(16), F(47, 2))}

# eigenspace fractions of d* at c = 8, h = 1/2, e = 1/2
MSTARS_C8 = (F(255, 496), F(1, 496), F(15, 31))

# --- scans and tables ----------------------------------------------------
DIOPHANT_C = tuple(F(x) for x in (
    "1/2", "8", "52/5", "16", "132/7", "20", "102/5", "748/35", "43/2", "22", "808/35",
    "47/2", "24", "170/7", "49/2", "172/7", "152/5", "61/2", "154/5", "220/7", "63/2",
    "32", "164/5", "236/7", "34", "242/7", "36", "40", "204/5", "44", "109/2", "428/7",
    "68", "484/7", "187/2", "132", "1496"))
DIOPHANT_BOUND_DECIMAL = "15003885.97"

RATIONAL_H_C = tuple(F(x) for x in ("1/2", "8", "16", "808/35", "47/2", "164/5", "236/7", "242/7"))

# (c, dim V2, conformal weights or None for a dash)
TABLE1 = (
    (F(8), 156, (F(1, 2), F(1))),
    (F(16), 2296, (F(1), F(3, 2))),
    (F(808, 35), 63428, (F(103, 70), F(67, 35))),
    (F(47, 2), 96256, (F(3, 2), F(31, 16))),
    (F(24), 196884, None),
    (F(32), 139504, None),
    (F(164, 5), 90118, (F(11, 5), F(12, 5))),
    (F(236, 7), 63366, (F(16, 7), F(17, 7))),
    (F(242, 7), 49291, (F(67, 28), F(17, 7))),
    (F(40), 20620, None),
    (F(1496), 54836, None),
)

FERMION_FEASIBLE_C = tuple(F(x) for x in (
    "1/2", "8", "16", "20", "47/2", "24", "49/2", "172/7", "152/5", "61/2", "63/2",
    "32", "164/5", "236/7", "36"))
FERMION_C40_D0 = F(441768, 37)

# --- eight-design conditions ---------------------------------------------
MOD8_EQUATION = (c - 24 * h + 12) * (
    10 * c ** 3 + (141 - 615 * h) * c ** 2 + 2 * (5740 * h ** 2 - 3321 * h + 171) * c
    - 24 * (2870 * h ** 3 - 2870 * h ** 2 + 451 * h + 15))

MOD8_EQUATION_HALF = (
    152700 * c ** 6 + (3535420 - 2546820 * h) * c ** 5
    + 2 * (5519040 * h ** 2 - 33944388 * h + 10007663) * c ** 4
    + (-66228480 * h ** 3 + 505357184 * h ** 2 - 303807330 * h + 24963561) * c ** 3
    + (-2634772224 * h ** 3 + 409756928 * h ** 2 + 611923251 * h - 162937170) * c ** 2
    + 3 * (4450030592 * h ** 3 - 4570094080 * h ** 2 + 1282098891 * h - 49633193) * c
    + 18 * (120063488 * h ** 3 - 120063488 * h ** 2 + 34154597 * h - 1236817))

# h = 1: c = 12 and (177 +- sqrt 22009)/10
MOD8_H1_RATIONAL = F(12)
MOD8_H1_SURD = (F(177, 10), F(1, 10), 22009)
MOD8_H32_DECIMALS = ("10.04101", "19.13162", "48.97735")
MOD8_H32_RATIONAL = F(24)
MOD8_HALF_H1 = (F(12), "2.268296")
MOD8_HALF_H32 = ("3.342825", "18.81561")

D8 = RatFunc(15 * c * (155 * c ** 3 + 4133 * c ** 2 + 32074 * c + 88392),
             20 * c ** 3 - 2178 * c ** 2 + 65956 * c - 595056)
D8_HALF = RatFunc(
    -15 * c * (5734920 * c ** 5 + 59136716 * c ** 4 + 283246086 * c ** 3 + 2858841411 * c ** 2
               + 7908127017 * c - 2179288566),
    260520 * c ** 5 - 7840184 * c ** 4 - 72048858 * c ** 3 + 5528559692 * c ** 2
    - 75371626638 * c + 17347413996)

INTERSECTIONS = (F(-516, 13), F(-44, 5), F(-22, 5), F(0), F(24), F(142, 5))
INTERSECTIONS_HALF_RATIONAL = (F(-22, 5), F(0), F(1, 2), F(24), F(142, 5))
INTERSECTIONS_HALF_DECIMAL = "-8.45952"
D8_AT_142_5 = F(-164081)
C36_D = F(-67770)

# real exclusions listed for the eight-design dimension formulas
D8_POLE_DECIMALS = ("17.58127", "25.84832", "65.47039")
D8_HALF_POLE_DECIMALS = ("-26.45283", "0.23416", "25.60637")

# --- characters ----------------------------------------------------------
CBRT_J = (1, 248, 4124, 34752)
J_MINUS_744 = (1, 0, 196884, 21493760)
EXTREMAL_DIM_V2 = {24: 196884, 32: 139504, 40: 20620}
EXTREMAL_STRENGTH = {24: (11, (13, 14, 15)), 32: (7, (9, 10, 11)), 40: (3, (5, 6, 7))}
ISING_VACUUM = (1, 0, 1, 1, 2, 2, 3, 3, 5, 5)

# --- root sums -----------------------------------------------------------
ROOT_R6 = {
    "A2": F(12), "D4": F(24), "B4": F(23), "C4": F(-60), "F4": F(21),
    "G2": F(-312), "E6": F(24), "E7": F(192, 11), "E8": F(0),
}
HEISENBERG_FACTOR = 24  # trace equals 24 <h, h>
