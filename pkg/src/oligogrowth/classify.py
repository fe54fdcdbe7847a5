"""Growth classes of group expressions: polynomial, intermediate, exponential at a
certified rate gamma_d, or too fast (at least 2^n over a polynomial)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction

from .errors import OutOfRange, Unsupported
from .expr import Atom, GroupExpr, atom_under_wreath, atoms_of, profile, structure_stats
from .series import DEFAULT_ORDER, OrbitSeries

POLYNOMIAL = "Polynomial"
INTERMEDIATE = "SubexponentialIntermediate"
EXPONENTIAL = "ExponentialGamma"
TOO_FAST = "TooFast"

DEFAULT_TOL = 1e-12
MIN_TOL = 1e-15
TOO_FAST_ORDER = 40
TOO_FAST_MARGIN = 1e-3
BOUND_SPREAD = 16.0


def f_poly(d: int, x: Fraction) -> Fraction:
    """x^d - x^(d-1) - ... - x - 1, evaluated exactly by Horner's rule."""
    acc = Fraction(1)
    for _ in range(d):
        acc = acc * x - 1
    return acc


def _decimal(q: Fraction, digits: int, rounding: str) -> str:
    ctx = Context(prec=digits, rounding=rounding)
    return str(ctx.divide(Decimal(q.numerator), Decimal(q.denominator)))


@dataclass(frozen=True)
class GammaValue:
    d: int
    value: float
    lo: Fraction
    hi: Fraction

    def to_json(self) -> dict:
        return {"d": self.d, "value": repr(self.value),
                "lo": _decimal(self.lo, 30, ROUND_FLOOR), "hi": _decimal(self.hi, 30, ROUND_CEILING)}


def gamma(d: int, tol: float = DEFAULT_TOL) -> GammaValue:
    """Largest real root of x^d - x^(d-1) - ... - 1 with a certified rational bracket."""
    if not isinstance(d, int) or d < 1:
        raise OutOfRange(f"d must be a positive integer, got {d!r}")
    if not tol >= MIN_TOL:
        raise OutOfRange(f"tolerance {tol} is below {MIN_TOL}")
    width = Fraction(tol)
    if d == 1:
        return GammaValue(1, 1.0, 1 - width / 2, 1 + width / 2)
    lo, hi = Fraction(1), Fraction(2)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if f_poly(d, mid) < 0:
            lo = mid
        else:
            hi = mid
    value = float((lo + hi) / 2)
    if not lo < Fraction(value) < hi:
        value = float(lo) if lo < Fraction(float(lo)) < hi else float(hi)
    return GammaValue(d, value, lo, hi)


@dataclass(frozen=True)
class GrowthClass:
    tag: str
    d: int | None = None
    degree_estimate: float | None = None
    justification: tuple[str, ...] = field(default=())

    @property
    def rank(self) -> tuple:
        """Polynomial < Intermediate < Gamma(2) < Gamma(3) < ... < TooFast."""
        if self.tag == POLYNOMIAL:
            return (0, 0)
        if self.tag == INTERMEDIATE:
            return (1, 0)
        if self.tag == EXPONENTIAL:
            return (2, self.d)
        return (3, 0)

    @property
    def degree(self) -> int | None:
        return None if self.degree_estimate is None else round(self.degree_estimate)

    def to_json(self) -> dict:
        out = {"class": self.tag, "justification": list(self.justification)}
        if self.d is not None:
            out["d"] = self.d
        if self.degree_estimate is not None:
            out["degree_estimate"] = f"{self.degree_estimate:.4f}"
        return out


def polynomial_degree_estimate(series: OrbitSeries) -> float:
    """log2(u_2n / u_n) at the largest n with 2n in range; 0 for eventually-zero series."""
    c = series.coefficients
    n = series.N // 2
    while n >= 1 and (c[n] == 0 or c[2 * n] == 0):
        n -= 1
    if n < 1:
        return 0.0
    return math.log2(c[2 * n] / c[n])


def classify_expr(e: GroupExpr, N: int = DEFAULT_ORDER) -> GrowthClass:
    stats = structure_stats(e)
    if stats.has_non_hst_atom:
        bad = [s.fiber for s in atoms_of(e)]
        why = [f"an atom has a fiber group that is not highly set-transitive (fibers {bad})"]
        series = profile(e, TOO_FAST_ORDER)
        if series[TOO_FAST_ORDER - 1] and series[TOO_FAST_ORDER] / series[TOO_FAST_ORDER - 1] > 2 - TOO_FAST_MARGIN:
            why.append(f"ratio u_{TOO_FAST_ORDER}/u_{TOO_FAST_ORDER - 1} exceeds 2 - {TOO_FAST_MARGIN}")
        return GrowthClass(TOO_FAST, justification=tuple(why))
    d = stats.max_fiber_d
    if d >= 2:
        return GrowthClass(EXPONENTIAL, d=d, justification=(f"largest atom fiber size is {d}",))
    why = []
    if not stats.all_fibers_one:
        why.append("an atom has fiber size other than 1")
    if stats.skeleton_rank > 1:
        why.append(f"wreath nesting depth {stats.skeleton_rank} exceeds 1")
    if atom_under_wreath(e):
        why.append("an atom sits below a wreath with Sym(omega)")
    if why:
        return GrowthClass(INTERMEDIATE, justification=tuple(why))
    k = polynomial_degree_estimate(profile(e, N))
    return GrowthClass(POLYNOMIAL, degree_estimate=k,
                       justification=("unit fibers, wreath depth at most 1, no atom below a wreath",
                                      f"log2(u_2n/u_n) = {k:.4f} at n = {N // 2}"))


@dataclass(frozen=True)
class GapReport:
    growth: GrowthClass
    target: float
    N: int
    max_deviation: float
    tol: float
    bound_constants: tuple[float, float] | None = None

    @property
    def within_tol(self) -> bool:
        return self.max_deviation <= self.tol

    @property
    def bound_ok(self) -> bool:
        if self.bound_constants is None:
            return True
        c1, c2 = self.bound_constants
        return c1 > 0 and c2 / c1 <= BOUND_SPREAD

    @property
    def passed(self) -> bool:
        return self.within_tol and self.bound_ok

    def to_json(self) -> dict:
        out = {"class": self.growth.to_json(), "target": repr(self.target), "N": self.N,
               "max_deviation": repr(self.max_deviation), "tol": repr(self.tol), "passed": self.passed}
        if self.bound_constants is not None:
            out["bound_constants"] = [repr(c) for c in self.bound_constants]
        return out


def check_gap(e: GroupExpr, N: int = 60, tol: float = 1e-6) -> GapReport:
    """Compare the ratio tail over the last N/4 indices with the predicted rate."""
    growth = classify_expr(e, N)
    if growth.tag == TOO_FAST:
        raise Unsupported("no finite rate to compare against for too-fast growth")
    target = gamma(growth.d).value if growth.tag == EXPONENTIAL else 1.0
    series = profile(e, N)
    start = max(1, N - max(1, N // 4) + 1)
    devs = [abs(series[n] / series[n - 1] - target) for n in range(start, N + 1) if series[n - 1]]
    dev = max(devs) if devs else math.inf
    bounds = None
    if growth.tag == EXPONENTIAL and isinstance(e, Atom):
        scaled = [series[n] / target ** n for n in range(1, N + 1)]
        bounds = (min(scaled), max(scaled))
    return GapReport(growth, target, N, dev, tol, bounds)
