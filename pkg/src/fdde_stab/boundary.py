"""Stability-boundary branches in the scaled (A, B) plane.

Setting beta = i v (v > 0) in the scaled characteristic equation
beta^alpha = A + B e^(-beta) - B e^(-2 beta) and separating real and
imaginary parts gives the parametric boundary

    A(alpha, v) = v^alpha cos(3v/2 + alpha pi/2) / cos(3v/2)
    B(alpha, v) = v^alpha sin(alpha pi/2) / (2 cos(3v/2) sin(v/2))

(the half-angle products are the exact rewrites of the raw differences
cos 2v - cos v and sin 2v - sin v, and behave much better near the interval
ends).  Three sub-intervals of (0, 2 pi) keep the curve in the second and
third quadrants:

    I1 = [(1-alpha) pi/3, pi/3)      branch gamma1, second quadrant
    I2 = [(5-alpha) pi/3, 5 pi/3)    branch gamma2, second quadrant
    I3 = [(3-alpha) pi/3, pi)        branch gamma3, third quadrant

At each left endpoint A vanishes; at each right endpoint |B| blows up and
the branch leaves along an asymptote through the origin (slope -1 for
gamma1/gamma2, slope 1/2 for gamma3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from ._validation import check_alpha, check_finite

PI = math.pi
HALF_PI = 0.5 * math.pi

# evaluations this close to an interval's open right end are refused: the
# denominator cos(3v/2) has a simple zero there
RIGHT_END_MARGIN = 1e-9
_SINGULAR_TOL = 1e-14


class SingularFrequencyError(ValueError):
    """The boundary expressions are singular at the requested frequency."""


class NoIntersectionError(ValueError):
    """gamma1 and gamma2 do not intersect for this fractional order."""


class Branch(Enum):
    GAMMA1 = "gamma1"
    GAMMA2 = "gamma2"
    GAMMA3 = "gamma3"


@dataclass(frozen=True)
class BranchInterval:
    """Closed-open frequency interval [v_lo, v_hi) carrying one branch."""

    v_lo: float
    v_hi: float


@dataclass(frozen=True)
class BoundaryPoint:
    v: float
    A: float
    B: float


@dataclass(frozen=True)
class TangentLine:
    """Origin-through tangent/asymptote line B = slope * A."""

    slope: float
    label: str
    v0: float


def branch_interval(alpha: float, branch: Branch) -> BranchInterval:
    """Frequency interval of a branch for the given fractional order."""
    alpha = check_alpha(alpha)
    if branch is Branch.GAMMA1:
        return BranchInterval((1.0 - alpha) * PI / 3.0, PI / 3.0)
    if branch is Branch.GAMMA2:
        return BranchInterval((5.0 - alpha) * PI / 3.0, 5.0 * PI / 3.0)
    if branch is Branch.GAMMA3:
        return BranchInterval((3.0 - alpha) * PI / 3.0, PI)
    raise ValueError(f"unknown branch {branch!r}")


def _A_of(alpha: float, v: float) -> float:
    return v**alpha * math.cos(1.5 * v + alpha * HALF_PI) / math.cos(1.5 * v)


def _B_of(alpha: float, v: float) -> float:
    return (
        v**alpha
        * math.sin(alpha * HALF_PI)
        / (2.0 * math.cos(1.5 * v) * math.sin(0.5 * v))
    )


def boundary_point(alpha: float, v: float, *, alt_b_form: bool = False) -> BoundaryPoint:
    """Evaluate the boundary curve at frequency ``v``.

    ``alt_b_form`` multiplies B by the extra factor (cos 2v - cos v) that an
    alternative published expression carries; it is retained only so the two
    variants can be compared side by side.  Raises
    :class:`SingularFrequencyError` where sin 2v - sin v vanishes (the open
    right endpoint of every branch interval).
    """
    alpha = check_alpha(alpha)
    v = check_finite("v", v)
    if v == 0.0 and alpha == 1.0:
        # limit point of gamma1 for the classical order
        return BoundaryPoint(v=0.0, A=0.0, B=1.0)
    if v <= 0.0:
        raise ValueError(f"frequency must be positive, got {v!r}")
    denom = 2.0 * math.cos(1.5 * v) * math.sin(0.5 * v)  # == sin 2v - sin v
    if abs(denom) < _SINGULAR_TOL:
        raise SingularFrequencyError(f"sin(2v) - sin(v) vanishes at v={v!r}")
    A = _A_of(alpha, v)
    B = _B_of(alpha, v)
    if alt_b_form:
        B *= math.cos(2.0 * v) - math.cos(v)
    return BoundaryPoint(v=v, A=A, B=B)


def endpoint_B(alpha: float, branch: Branch) -> float:
    """B value at the branch's left endpoint, where A = 0.

    Closed form: +/- v_lo^alpha / (2 sin(v_lo/2)), positive for gamma1 and
    gamma2, negative for gamma3 (the sign of cos(3 v_lo / 2)).
    """
    alpha = check_alpha(alpha)
    v_lo = branch_interval(alpha, branch).v_lo
    if v_lo == 0.0:
        # gamma1 at alpha = 1: limit of v / (2 sin(v/2)) as v -> 0
        return 1.0
    sign = -1.0 if branch is Branch.GAMMA3 else 1.0
    return sign * v_lo**alpha / (2.0 * math.sin(0.5 * v_lo))


def sample_branch(
    alpha: float, branch: Branch, n_points: int, B_cap: float
) -> list[BoundaryPoint]:
    """Uniform-in-v sample of a branch, truncated once |B| exceeds ``B_cap``.

    The left endpoint is always included; the grid stops a guard margin short
    of the singular right endpoint.
    """
    alpha = check_alpha(alpha)
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    if not B_cap > 0.0:
        raise ValueError("B_cap must be > 0")
    iv = branch_interval(alpha, branch)
    vs = np.linspace(iv.v_lo, iv.v_hi - RIGHT_END_MARGIN, n_points)
    out: list[BoundaryPoint] = []
    for v in vs:
        pt = boundary_point(alpha, float(v))
        if abs(pt.B) > B_cap:
            break
        out.append(pt)
    return out


def _scan_brackets(f, lo: float, hi: float, n: int) -> list[tuple[float, float]]:
    """Sign-change brackets of ``f`` on an n-point uniform grid over [lo, hi]."""
    xs = np.linspace(lo, hi, n)
    ys = np.array([f(x) for x in xs])
    brackets = []
    for i in range(n - 1):
        y0, y1 = ys[i], ys[i + 1]
        if y0 == 0.0:
            brackets.append((xs[i], xs[i]))
        elif y0 * y1 < 0.0:
            brackets.append((xs[i], xs[i + 1]))
    if ys[-1] == 0.0:
        brackets.append((xs[-1], xs[-1]))
    return brackets


def _solve_bracketed(f, lo: float, hi: float, n: int = 2000) -> float:
    brackets = _scan_brackets(f, lo, hi, n)
    if not brackets:
        raise RuntimeError("no sign change found in the scan interval")
    a, b = brackets[0]
    if a == b:
        return a
    return brentq(f, a, b, xtol=1e-13, rtol=8.9e-16)


@lru_cache(maxsize=1)
def alpha_star() -> float:
    """Order below which gamma1 and gamma2 are disjoint in the second quadrant.

    Root of endpoint_B(alpha, gamma1) = endpoint_B(alpha, gamma2); the two
    branches then meet on the B axis.
    """

    def f(al: float) -> float:
        return endpoint_B(al, Branch.GAMMA1) - endpoint_B(al, Branch.GAMMA2)

    return _solve_bracketed(f, 0.02, 0.999)


@lru_cache(maxsize=1)
def alpha_star_star() -> float:
    """Order below which no origin-through tangent touches gamma2's interior.

    Solves the tangency condition at the interval's right end v = 5 pi/3; at
    this order the interior tangency point v0(alpha) is born, separating the
    regimes with and without a stability switch.
    """
    v = 5.0 * PI / 3.0

    def f(al: float) -> float:
        return _tangency_fn(al, v)

    return _solve_bracketed(f, 0.02, 0.999)


def _v_for_A(alpha: float, branch: Branch, A_target: float) -> float:
    """Invert v -> A on a branch (A decreases monotonically from 0 to -inf)."""
    iv = branch_interval(alpha, branch)
    lo = iv.v_lo
    hi = iv.v_hi - RIGHT_END_MARGIN

    def f(v: float) -> float:
        return _A_of(alpha, v) - A_target

    if f(lo) * f(hi) > 0.0:
        raise ValueError(f"A={A_target!r} not reachable on {branch.value}")
    return brentq(f, lo, hi, xtol=1e-14, rtol=8.9e-16)


def _B_at_A(alpha: float, branch: Branch, A_target: float) -> float:
    return _B_of(alpha, _v_for_A(alpha, branch, A_target))


@lru_cache(maxsize=256)
def branch_intersection(alpha: float) -> tuple[float, float]:
    """Intersection point (A1, B1) of gamma1 and gamma2, for alpha > alpha_star.

    Both branches are graphs B(A) over A < 0; the crossing is the unique sign
    change of their difference.  Raises :class:`NoIntersectionError` for
    orders at or below ``alpha_star()``, where the branches are disjoint.
    """
    alpha = check_alpha(alpha)
    if alpha <= alpha_star():
        raise NoIntersectionError(
            f"gamma1 and gamma2 are disjoint for alpha={alpha!r} <= alpha_star"
        )

    def g(A: float) -> float:
        return _B_at_A(alpha, Branch.GAMMA1, A) - _B_at_A(alpha, Branch.GAMMA2, A)

    A_hi = -1e-6
    A_lo = -10.0
    for _ in range(6):
        brackets = _scan_brackets(g, A_lo, A_hi, 2000)
        if brackets:
            a, b = brackets[0]
            A1 = a if a == b else brentq(g, a, b, xtol=1e-13, rtol=8.9e-16)
            return A1, _B_at_A(alpha, Branch.GAMMA1, A1)
        A_lo *= 4.0
    raise RuntimeError(f"no gamma1/gamma2 crossing located for alpha={alpha!r}")


def _tangency_fn(alpha: float, v: float) -> float:
    """Derivative of sin(v/2) cos(3v/2 + alpha pi/2); its zeros are the
    stationary points of the ray slope B/A along the curve, i.e. tangency of
    an origin-through line."""
    th = 1.5 * v + alpha * HALF_PI
    return 0.5 * math.cos(0.5 * v) * math.cos(th) - 1.5 * math.sin(0.5 * v) * math.sin(th)


def tangency_frequency(alpha: float, branch: Branch) -> float:
    """Frequency where an origin-through line is tangent to the branch.

    gamma3 is touched only at its unbounded end v = pi.  On gamma2 the
    tangency sits at the unbounded end 5 pi/3 up to the threshold order
    ``alpha_star_star()`` and moves into the interior beyond it.
    """
    alpha = check_alpha(alpha)
    if branch is Branch.GAMMA3:
        return PI
    if branch is not Branch.GAMMA2:
        raise ValueError("tangency is defined for gamma2 and gamma3 only")
    v_hi = 5.0 * PI / 3.0
    if _tangency_fn(alpha, v_hi) <= 0.0:
        # no interior stationary point: tangent at the asymptotic end
        return v_hi
    v_lo = branch_interval(alpha, Branch.GAMMA2).v_lo
    return brentq(
        lambda v: _tangency_fn(alpha, v), v_lo, v_hi, xtol=1e-14, rtol=8.9e-16
    )


def tangent_slope(alpha: float, v0: float) -> float:
    """Slope dB/dA of the boundary curve at frequency ``v0``.

    Closed form; in particular the value is exactly 1/2 at v0 = pi and -1 at
    v0 = 5 pi/3, independent of alpha.
    """
    alpha = check_alpha(alpha)
    v0 = check_finite("v0", v0)
    if not (0.0 < v0 < 2.0 * PI):
        raise ValueError(f"v0 must lie in (0, 2 pi), got {v0!r}")
    s = math.sin(alpha * HALF_PI)
    csc2 = 1.0 / math.sin(0.5 * v0) ** 2
    num = -csc2 * (
        -v0 * math.cos(v0)
        + 2.0 * v0 * math.cos(2.0 * v0)
        + alpha * (math.sin(v0) - math.sin(2.0 * v0))
    ) * s
    den = 2.0 * (
        alpha * math.cos(alpha * HALF_PI)
        + alpha * math.cos(3.0 * v0 + alpha * HALF_PI)
        - 3.0 * v0 * s
    )
    if abs(den) < 1e-300:
        if abs(num) < 1e-300:
            raise SingularFrequencyError(f"slope is indeterminate at v0={v0!r}")
        return math.copysign(math.inf, num)
    return num / den


@lru_cache(maxsize=256)
def t1_slope(alpha: float) -> float:
    """Slope of the tangent line T1 bounding the delay-independent stable cone.

    Exactly -1 up to the threshold order; beyond it, the slope at the interior
    tangency point of gamma2.
    """
    alpha = check_alpha(alpha)
    if alpha <= 2.0 / 3.0:
        return -1.0
    return tangent_slope(alpha, tangency_frequency(alpha, Branch.GAMMA2))


_T1_POLY = (0.283115, -1.53076, 3.53266, -3.00438, -0.16952)


def t1_slope_poly(alpha: float) -> float:
    """Degree-4 polynomial approximation of ``t1_slope`` on (2/3, 1]."""
    alpha = check_alpha(alpha)
    if not (2.0 / 3.0 < alpha <= 1.0):
        raise ValueError("the polynomial fit is only valid for 2/3 < alpha <= 1")
    m = 0.0
    for c in _T1_POLY:
        m = m * alpha + c
    return m


def tangent_lines(alpha: float) -> dict[str, TangentLine]:
    """The three origin-through tangent/asymptote lines T1, T2, T3."""
    alpha = check_alpha(alpha)
    v0 = tangency_frequency(alpha, Branch.GAMMA2)
    return {
        "T1": TangentLine(slope=t1_slope(alpha), label="T1", v0=v0),
        "T2": TangentLine(slope=-1.0, label="T2", v0=5.0 * PI / 3.0),
        "T3": TangentLine(slope=0.5, label="T3", v0=PI),
    }


def stable_boundary_branch(alpha: float, A: float) -> Branch:
    """Which second-quadrant branch bounds the stable region at coordinate A.

    Below ``alpha_star()`` gamma2 is the boundary everywhere; above it gamma1
    takes over on the near-axis side of the branch crossing A1.
    """
    alpha = check_alpha(alpha)
    A = check_finite("A", A)
    if A >= 0.0:
        raise ValueError(f"A must be negative, got {A!r}")
    if alpha <= alpha_star():
        return Branch.GAMMA2
    A1, _ = branch_intersection(alpha)
    return Branch.GAMMA2 if A <= A1 else Branch.GAMMA1
