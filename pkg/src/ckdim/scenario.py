"""The four curve settings the verifier understands, with their numeric parameters."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import InvalidScenarioError
from .lie_closed import CurveShape

CROSSOVER = "crossover"
ASYMPTOTIC = "asymptotic"
MODES = (CROSSOVER, ASYMPTOTIC)

DEFAULT_HORIZON = 20


def _check_d(d: int, deg: int, deg_name: str) -> None:
    if deg < 1:
        raise InvalidScenarioError(f"{deg_name} must be >= 1")
    if not 1 <= d <= deg:
        raise InvalidScenarioError(f"need 1 <= d <= {deg_name}, got d={d}, {deg_name}={deg}")


@dataclass(frozen=True)
class Case1:
    """Arbitrary hyperbolic curve; H^2 bound ``P(n) g^n`` needs a user polynomial for crossover."""

    shape: CurveShape
    d: int
    degF: int
    h2_poly: tuple[Fraction, ...] | None = None

    number = 1

    def __post_init__(self):
        if not self.shape.hyperbolic:
            raise InvalidScenarioError(
                f"genus {self.shape.genus} with {self.shape.punctures} punctures is not hyperbolic"
            )
        _check_d(self.d, self.degF, "degF")
        if self.h2_poly is not None:
            object.__setattr__(self, "h2_poly", tuple(Fraction(c) for c in self.h2_poly))

    @property
    def field_degree(self) -> int:
        return self.degF

    def params(self) -> dict:
        return {
            "g": self.shape.genus,
            "s": self.shape.punctures,
            "d": self.d,
            "degF": self.degF,
            "h2_poly": None if self.h2_poly is None else [str(c) for c in self.h2_poly],
        }


@dataclass(frozen=True)
class Case2:
    """Projective line minus ``s >= 3`` points; mixed Tate, ``R = dim H^1(G_T, Q_p(1))``."""

    s: int
    d: int
    degF: int
    R: int

    number = 2

    def __post_init__(self):
        if self.s < 3:
            raise InvalidScenarioError("case 2 needs s >= 3 punctures")
        if self.R < 0:
            raise InvalidScenarioError("R must be >= 0")
        _check_d(self.d, self.degF, "degF")

    @property
    def field_degree(self) -> int:
        return self.degF

    def params(self) -> dict:
        return {"s": self.s, "d": self.d, "degF": self.degF, "R": self.R}


@dataclass(frozen=True)
class Case3:
    """CM elliptic curve minus the origin.

    ``n0`` is the degree from which H^2 vanishes.  ``smalln_h1[i]`` bounds
    ``dim H^1`` in degree ``i + 1 < n0``; without it those rows count as zero gain.
    """

    d: int
    degF: int
    n0: int
    smalln_h1: tuple[int, ...] | None = None

    number = 3

    def __post_init__(self):
        _check_d(self.d, self.degF, "degF")
        if self.n0 < 1:
            raise InvalidScenarioError("n0 must be >= 1")
        if self.smalln_h1 is not None:
            vals = tuple(int(v) for v in self.smalln_h1)
            if len(vals) != self.n0 - 1:
                raise InvalidScenarioError(
                    f"smalln_h1 needs one bound per degree below n0 ({self.n0 - 1}), got {len(vals)}"
                )
            if any(v < 0 for v in vals):
                raise InvalidScenarioError("smalln_h1 bounds must be >= 0")
            object.__setattr__(self, "smalln_h1", vals)

    @property
    def field_degree(self) -> int:
        return self.degF

    def params(self) -> dict:
        return {
            "d": self.d,
            "degF": self.degF,
            "n0": self.n0,
            "smalln_h1": None if self.smalln_h1 is None else list(self.smalln_h1),
        }


@dataclass(frozen=True)
class Case4Constants:
    """Growth constants: ``dim Z_Y,n >= A n^(2g-1)``, ``H^2 <= c_h2 n^(2g-2)``, ``F^0 Z_n <= c_f0 n^g``."""

    A: Fraction
    c_h2: Fraction
    c_f0: Fraction

    def __post_init__(self):
        for name in ("A", "c_h2", "c_f0"):
            value = Fraction(getattr(self, name))
            if value < 0:
                raise InvalidScenarioError(f"{name} must be >= 0")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class Case4:
    """Curve dominating a genus ``gY >= 2`` curve with CM Jacobian; metabelian quotients."""

    gY: int
    d: int
    degFprime: int
    constants: Case4Constants | None = None

    number = 4

    def __post_init__(self):
        if self.gY < 2:
            raise InvalidScenarioError("case 4 needs gY >= 2")
        _check_d(self.d, self.degFprime, "degFprime")

    @property
    def field_degree(self) -> int:
        return self.degFprime

    def params(self) -> dict:
        c = self.constants
        return {
            "gY": self.gY,
            "d": self.d,
            "degFprime": self.degFprime,
            "A": None if c is None else str(c.A),
            "c_h2": None if c is None else str(c.c_h2),
            "c_f0": None if c is None else str(c.c_f0),
        }


Case = Union[Case1, Case2, Case3, Case4]


@dataclass(frozen=True)
class Scenario:
    case: Case
    target_codim: int | None = None
    mode: str = CROSSOVER
    horizon: int = DEFAULT_HORIZON
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidScenarioError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.target_codim is None:
            object.__setattr__(self, "target_codim", self.case.d)
        if self.target_codim < 1:
            raise InvalidScenarioError("target_codim must be >= 1")
        if self.horizon < 1:
            raise InvalidScenarioError("horizon must be >= 1")

    @property
    def d(self) -> int:
        return self.case.d

    def echo(self) -> dict:
        return {
            "case": self.case.number,
            "params": self.case.params(),
            "target_codim": self.target_codim,
            "mode": self.mode,
            "horizon": self.horizon,
        }

    @classmethod
    def from_echo(cls, echo: dict) -> "Scenario":
        p = dict(echo["params"])
        number = echo["case"]
        if number == 1:
            poly = p["h2_poly"]
            case = Case1(
                CurveShape(p["g"], p["s"]),
                p["d"],
                p["degF"],
                None if poly is None else tuple(Fraction(c) for c in poly),
            )
        elif number == 2:
            case = Case2(p["s"], p["d"], p["degF"], p["R"])
        elif number == 3:
            h1 = p["smalln_h1"]
            case = Case3(p["d"], p["degF"], p["n0"], None if h1 is None else tuple(h1))
        elif number == 4:
            consts = None
            if p["A"] is not None:
                consts = Case4Constants(Fraction(p["A"]), Fraction(p["c_h2"]), Fraction(p["c_f0"]))
            case = Case4(p["gY"], p["d"], p["degFprime"], consts)
        else:
            raise InvalidScenarioError(f"unknown case {number!r}")
        return cls(case, echo["target_codim"], echo["mode"], echo["horizon"])
