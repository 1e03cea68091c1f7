"""Frozen regression values and the scenario matrix shared by the test suite.

Dimension series below were produced by the linear-algebra oracle and are
cross-checked against the closed forms wherever one exists.
"""

from fractions import Fraction

from ckdim.lie_closed import CurveShape
from ckdim.scenario import ASYMPTOTIC, CROSSOVER, Case1, Case2, Case3, Case4, Case4Constants, Scenario

WITT_M2 = (2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335)

SURFACE_LCS = {
    2: (4, 5, 16, 45, 144, 440),
    3: (6, 14, 64, 280, 1344, 6496),
}

SURFACE_METABELIAN = {
    2: (4, 5, 16, 35, 64, 105),
    3: (6, 14, 64, 189, 448, 924),
}

# ideal generated by the surface relator, g = 2, inside the free Lie algebra on 4 letters
SURFACE_RELATOR_IDEAL_G2 = (0, 1, 4, 15, 60)

CM_TRUNCATION_10 = (2, 1, 2, 2, 2, 2, 2, 2, 2, 2)

CASE2_CROSSOVER = Case2(s=3, d=1, degF=1, R=2)
CASE2_SOUNDNESS = Case2(s=3, d=1, degF=2, R=3)
CASE3_FIXTURE = Case3(d=1, degF=1, n0=3, smalln_h1=(0, 0))
CASE3_CODIM_N5 = 3

CONSTANTS = Case4Constants(Fraction(1, 2), Fraction(1), Fraction(1))

SCENARIO_MATRIX = (
    Scenario(CASE2_CROSSOVER, 1, CROSSOVER, 20),
    Scenario(CASE2_CROSSOVER, 1, ASYMPTOTIC, 20),
    Scenario(CASE2_SOUNDNESS, 1, CROSSOVER, 12),
    Scenario(Case2(s=5, d=2, degF=3, R=4), None, CROSSOVER, 10),
    Scenario(CASE3_FIXTURE, 1, CROSSOVER, 10),
    Scenario(Case3(d=1, degF=2, n0=4), 2, CROSSOVER, 20),
    Scenario(CASE3_FIXTURE, 1, ASYMPTOTIC, 10),
    Scenario(Case1(CurveShape(2), 1, 2), None, ASYMPTOTIC, 20),
    Scenario(Case1(CurveShape(2), 1, 1, (Fraction(0),)), None, CROSSOVER, 8),
    Scenario(Case1(CurveShape(0, 4), 1, 1, (Fraction(1),)), 1, CROSSOVER, 12),
    Scenario(Case1(CurveShape(1, 1), 1, 2), 1, ASYMPTOTIC, 20),
    Scenario(Case4(2, 1, 2), None, ASYMPTOTIC, 20),
    Scenario(Case4(2, 1, 1, CONSTANTS), 1, CROSSOVER, 8),
    Scenario(Case4(2, 1, 2, Case4Constants(Fraction(1, 2), Fraction(0), Fraction(0))), 3, CROSSOVER, 8),
)
