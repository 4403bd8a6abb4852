"""Numeric side of the bound: cubic root, growth-rate machinery, residuals.

The upper bound on the polyiamond growth constant is 1 + 2z + 3z^2, where z
is the unique real root of 2z^3 + z^2 - 1 = 0.  The root comes from the
saddle/radius system z/x = 1 + z + z^2 + z^3, 1/x = 1 + 2z + 3z^2 at the
radius of convergence x of the majorizing generating function; substituting
the second equation into the first reduces the system to the cubic.

Two independent root methods guard against transcription errors: the
closed-form radical

    z = (-1 + cbrt(53 + 6 sqrt(78)) + cbrt(53 - 6 sqrt(78))) / 6

(both radicands positive: 53 - 6 sqrt(78) is approximately 0.00943) and a
Newton iteration on the cubic from 0.5.  Everything runs in 64-bit floats
by default; precision="extended" switches to 50-digit arithmetic for the
digit-level acceptance checks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .enumeration import CountTable

EXTENDED_DPS = 50
_REDUCTION_SAMPLES = 100
_REDUCTION_SEED = 20607


@dataclass(frozen=True)
class CubicSolution:
    """The solved system with its residuals, all in one precision mode."""

    z: object
    lambda_upper: object
    x_c: object
    residual_cubic: object
    residual_saddle: tuple

    def as_floats(self) -> "CubicSolution":
        return CubicSolution(float(self.z), float(self.lambda_upper),
                             float(self.x_c), float(self.residual_cubic),
                             tuple(float(r) for r in self.residual_saddle))


@dataclass(frozen=True)
class GrowthEstimate:
    method: str
    n_used: int
    value: float


def cubic_value(z):
    return 2 * z ** 3 + z ** 2 - 1


def solve_cubic_closed_form(precision: str = "double"):
    """Evaluate the printed radical expression for the real root."""
    if precision == "double":
        s = math.sqrt(78.0)
        return (-1.0 + (53.0 + 6.0 * s) ** (1.0 / 3.0)
                + (53.0 - 6.0 * s) ** (1.0 / 3.0)) / 6.0
    if precision == "extended":
        with mpmath.workdps(EXTENDED_DPS):
            s = mpmath.sqrt(78)
            return (-1 + mpmath.cbrt(53 + 6 * s) + mpmath.cbrt(53 - 6 * s)) / 6
    raise ValueError("precision must be 'double' or 'extended'")


def _newton(z, tol):
    for _ in range(100):
        f = cubic_value(z)
        if abs(f) < tol:
            return z
        z = z - f / (6 * z ** 2 + 2 * z)
    raise ArithmeticError("Newton iteration did not converge in 100 steps")


def solve_cubic_newton(tol: float = 1e-14, precision: str = "double"):
    """Newton iteration on 2z^3 + z^2 - 1 from 0.5 until |f(z)| < tol.

    f is monotone increasing on (0, 1) (f' = 6z^2 + 2z > 0), so the
    iteration cannot escape; 100 iterations is far beyond need.
    """
    if not 0 < tol <= 1e-8:
        raise ValueError("tol must be in (0, 1e-8]")
    if precision == "double":
        return _newton(0.5, tol)
    if precision == "extended":
        with mpmath.workdps(EXTENDED_DPS):
            return _newton(mpmath.mpf("0.5"), mpmath.mpf(tol))
    raise ValueError("precision must be 'double' or 'extended'")


def lambda_upper(z):
    return 1 + 2 * z + 3 * z ** 2


def saddle_system_check(x, z) -> tuple:
    """Residuals of the two saddle/radius equations at (x, z), as the pair
    (|z/x - (1+z+z^2+z^3)|, |1/x - (1+2z+3z^2)|).

    Also spot-checks the algebraic reduction of the system to the cubic,
    z(1+2z+3z^2) - (1+z+z^2+z^3) = 2z^3+z^2-1, at 100 seeded random points;
    a failure there would mean broken arithmetic and raises immediately.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    rng = random.Random(_REDUCTION_SEED)
    for _ in range(_REDUCTION_SAMPLES):
        w = rng.uniform(-2.0, 2.0)
        lhs = w * (1 + 2 * w + 3 * w ** 2) - (1 + w + w ** 2 + w ** 3)
        if not math.isclose(lhs, cubic_value(w), rel_tol=1e-12, abs_tol=1e-12):
            raise ArithmeticError("reduction identity failed at z=%r" % w)
    r1 = abs(z / x - (1 + z + z ** 2 + z ** 3))
    r2 = abs(1 / x - (1 + 2 * z + 3 * z ** 2))
    return (r1, r2)


def cubic_solution(precision: str = "double") -> CubicSolution:
    """Solve by both methods, require agreement to 1e-12, and package the
    root with lambda_upper, the radius x_c = 1/lambda_upper and residuals.
    """
    if precision == "extended":
        with mpmath.workdps(EXTENDED_DPS):
            z_cf = solve_cubic_closed_form("extended")
            z = solve_cubic_newton(1e-45, "extended")
            if abs(z - z_cf) > 1e-12:
                raise ArithmeticError("root methods disagree: %s vs %s" % (z, z_cf))
            lam = lambda_upper(z)
            x_c = 1 / lam
            return CubicSolution(z, lam, x_c, abs(cubic_value(z)),
                                 saddle_system_check(x_c, z))
    if precision != "double":
        raise ValueError("precision must be 'double' or 'extended'")
    z_cf = solve_cubic_closed_form()
    z = solve_cubic_newton(1e-14)
    if abs(z - z_cf) > 1e-12:
        raise ArithmeticError("root methods disagree: %r vs %r" % (z, z_cf))
    lam = lambda_upper(z)
    x_c = 1 / lam
    return CubicSolution(z, lam, x_c, abs(cubic_value(z)),
                         saddle_system_check(x_c, z))


def lower_bound_fekete(t: CountTable) -> GrowthEstimate:
    """max over 2 <= n <= n_max of T(n)^(1/n), with the achieving n.

    By supermultiplicativity this is a certified lower bound on the growth
    constant.  The best published value needs counts through n = 75; the
    sizes enumerable here top out near 2.41.
    """
    if t.n_max < 2:
        raise ValueError("need counts through n >= 2")
    best_n, best = 2, 0.0
    for n in range(2, t.n_max + 1):
        v = math.exp(math.log(t[n]) / n)
        if v > best:
            best_n, best = n, v
    return GrowthEstimate("nth_root", best_n, best)


def growth_estimate(seq, method: str) -> GrowthEstimate:
    """Growth-rate estimate from a positive sequence indexed 0..n.

    ratio: seq[n]/seq[n-1] at the largest n.  nth_root: seq[n]^(1/n).
    aitken_extrapolated: Aitken delta-squared on the ratio subsequence
    r(n/4), r(n/2), r(n); for ratios converging like c/n the geometric
    index spacing cancels the leading error term exactly, where
    consecutive-index spacing only halves it.
    """
    seq = list(seq)
    if len(seq) < 10:
        raise ValueError("need at least 10 terms")
    if any(v <= 0 for v in seq):
        raise ValueError("sequence entries must be strictly positive")
    n = len(seq) - 1

    def ratio(m: int) -> float:
        return float(Fraction(seq[m], seq[m - 1]))

    if method == "ratio":
        return GrowthEstimate("ratio", n, ratio(n))
    if method == "nth_root":
        return GrowthEstimate("nth_root", n, math.exp(math.log(seq[n]) / n))
    if method == "aitken_extrapolated":
        x0, x1, x2 = ratio(n // 4), ratio(n // 2), ratio(n)
        denom = (x2 - x1) - (x1 - x0)
        value = x2 if denom == 0 else x2 - (x2 - x1) ** 2 / denom
        return GrowthEstimate("aitken_extrapolated", n, value)
    raise ValueError("unknown method %r" % method)


def _fmt17(v) -> str:
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 17)
    return "%.17g" % v


def bound_report(sol: CubicSolution, lower: GrowthEstimate) -> dict:
    """The exportable report; reals as strings with 17 significant digits."""
    return {
        "z": _fmt17(sol.z),
        "lambda_upper": _fmt17(sol.lambda_upper),
        "x_c": _fmt17(sol.x_c),
        "residuals": {
            "cubic": _fmt17(sol.residual_cubic),
            "saddle": [_fmt17(r) for r in sol.residual_saddle],
        },
        "lower_bound": _fmt17(lower.value),
        "n_used": lower.n_used,
        "method": lower.method,
    }
