"""Region classification in the (a, b) coefficient plane.

For fixed alpha, the plane splits into cones bounded by the origin-through
lines b = a/2, b = -a, and b = t1_slope(alpha) * a:

* a > 0: unstable for every delay (a real positive characteristic root
  always exists there).
* a < 0, a/2 < b < min(-a, t1-line): asymptotically stable for every delay.
* a < 0, b above -a or below a/2: a single critical delay tau_star; stable
  below it, unstable above (SSR).
* alpha > 2/3, a < 0, b between the t1-line and -a: stable, then unstable,
  then stable again as the delay passes tau1_star < tau2_star (SS).

Critical delays come from the crossings of the parameter ray with the
boundary branches: the crossing frequencies solve

    b/a = sin(alpha pi/2) / (2 sin(v/2) cos(3v/2 + alpha pi/2))

on the branch intervals, and each crossing converts to a delay through
tau = (A(alpha, v) / a)^(1/alpha).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from ._validation import check_alpha, check_finite, check_nonnegative
from .boundary import (
    HALF_PI,
    RIGHT_END_MARGIN,
    Branch,
    _A_of,
    branch_interval,
    stable_boundary_branch,
    t1_slope,
)
from .scaling import SignMismatchError

# grid density of the crossing-frequency sign scan, per branch interval
_SCAN_POINTS = 4000
# |tau - critical| below this counts as sitting exactly on the boundary
_CRITICAL_TOL = 1e-12


class DegenerateInputError(ValueError):
    """(a, b) = (0, 0) has no meaningful verdict."""


class Region(Enum):
    UNSTABLE = "Unstable"
    STABLE = "Stable"
    SSR = "SSR"
    SS = "SS"
    MARGINAL = "Marginal"

    @property
    def code(self) -> int:
        return _REGION_CODES[self]


_REGION_CODES = {
    Region.UNSTABLE: 0,
    Region.STABLE: 1,
    Region.SSR: 2,
    Region.SS: 3,
    Region.MARGINAL: 4,
}


@dataclass(frozen=True)
class CrossingFrequency:
    """A frequency at which the parameter ray meets a boundary branch."""

    v: float
    branch: Branch


@dataclass(frozen=True)
class RegionVerdict:
    region: Region
    critical_delays: tuple[float, ...] = ()
    provenance: tuple[Branch, ...] = ()

    @property
    def code(self) -> int:
        return self.region.code


def _ray_slope_on_curve(alpha: float, v) -> float:
    """B/A along the boundary curve (numpy-compatible)."""
    return np.sin(alpha * HALF_PI) / (
        2.0 * np.sin(0.5 * v) * np.cos(1.5 * v + alpha * HALF_PI)
    )


def crossing_frequencies(alpha: float, a: float, b: float) -> list[CrossingFrequency]:
    """All ray/boundary crossing frequencies for the coefficient pair (a, b).

    Scans each branch interval for sign changes of B/A - b/a and refines each
    bracket; the list is sorted by frequency and may be empty (e.g. deep
    inside the stable cone).
    """
    alpha = check_alpha(alpha)
    a = check_finite("a", a)
    b = check_finite("b", b)
    if a == 0.0:
        raise ValueError("a must be nonzero (the ray slope b/a is undefined)")
    m = b / a
    found: list[CrossingFrequency] = []
    for branch in Branch:
        iv = branch_interval(alpha, branch)
        lo = iv.v_lo + RIGHT_END_MARGIN
        hi = iv.v_hi - RIGHT_END_MARGIN
        vs = np.linspace(lo, hi, _SCAN_POINTS)
        ys = _ray_slope_on_curve(alpha, vs) - m

        def f(v: float) -> float:
            return float(_ray_slope_on_curve(alpha, v)) - m

        sign = np.sign(ys)
        for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
            v = brentq(f, vs[i], vs[i + 1], xtol=1e-13, rtol=8.9e-16)
            found.append(CrossingFrequency(v=v, branch=branch))
        for i in np.nonzero(ys == 0.0)[0]:
            found.append(CrossingFrequency(v=float(vs[i]), branch=branch))
    found.sort(key=lambda c: c.v)
    return found


def critical_delay(alpha: float, a: float, b: float, crossing: CrossingFrequency) -> float:
    """Delay at which the ray of (a, b) reaches the given boundary crossing."""
    alpha = check_alpha(alpha)
    A = _A_of(alpha, crossing.v)
    if A * a <= 0.0:
        raise SignMismatchError(
            f"boundary point A={A!r} is not on the ray of a={a!r}"
        )
    return math.exp(math.log(A / a) / alpha)


def _region_tag(alpha: float, a: float, b: float, m1: float) -> Region:
    """Pure cone arithmetic; the theorem's inequalities are strict, so points
    exactly on a separating line are reported Marginal."""
    if a > 0.0:
        return Region.UNSTABLE
    if a == 0.0:
        return Region.MARGINAL
    if b > -a:
        return Region.SSR
    if b == -a:
        return Region.MARGINAL
    if b > m1 * a:
        return Region.SS
    if b == m1 * a:
        return Region.MARGINAL
    if b > a / 2.0:
        return Region.STABLE
    if b == a / 2.0:
        return Region.MARGINAL
    return Region.SSR


def classify(alpha: float, a: float, b: float) -> RegionVerdict:
    """Region verdict for (alpha, a, b), with critical delays where they exist.

    SSR verdicts carry one delay; SS verdicts carry two in increasing order.
    Raises :class:`DegenerateInputError` for (a, b) = (0, 0).
    """
    alpha = check_alpha(alpha)
    a = check_finite("a", a)
    b = check_finite("b", b)
    if a == 0.0 and b == 0.0:
        raise DegenerateInputError("(a, b) = (0, 0) is degenerate")
    tag = _region_tag(alpha, a, b, t1_slope(alpha))
    if tag in (Region.UNSTABLE, Region.STABLE, Region.MARGINAL):
        return RegionVerdict(region=tag)

    crossings = crossing_frequencies(alpha, a, b)
    if tag is Region.SSR:
        chosen = _ssr_crossing(alpha, a, b, crossings)
        tau = critical_delay(alpha, a, b, chosen)
        return RegionVerdict(
            region=tag, critical_delays=(tau,), provenance=(chosen.branch,)
        )

    # stability switch: the ray meets gamma2 twice
    gamma2 = [c for c in crossings if c.branch is Branch.GAMMA2]
    if len(crossings) > 2:
        warnings.warn(
            f"{len(crossings)} ray/boundary crossings found in the switch cone; "
            "using the first two gamma2 crossings",
            stacklevel=2,
        )
    if len(gamma2) < 2:
        raise RuntimeError(
            f"expected two gamma2 crossings for (alpha={alpha}, a={a}, b={b}), "
            f"found {len(gamma2)}"
        )
    taus = sorted(critical_delay(alpha, a, b, c) for c in gamma2[:2])
    return RegionVerdict(
        region=tag,
        critical_delays=(taus[0], taus[1]),
        provenance=(Branch.GAMMA2, Branch.GAMMA2),
    )


def _ssr_crossing(
    alpha: float, a: float, b: float, crossings: list[CrossingFrequency]
) -> CrossingFrequency:
    """Pick the crossing that sits on the actual stable-region boundary.

    Third quadrant (b < a/2 < 0): the single gamma3 crossing.  Second quadrant
    (b > -a > 0): of the gamma1/gamma2 candidates, the one whose A coordinate
    agrees with the composite-boundary rule; if that is ambiguous, the
    smallest delay (the ray's first exit) decides.
    """
    if b < 0.0:
        g3 = [c for c in crossings if c.branch is Branch.GAMMA3]
        if not g3:
            raise RuntimeError(
                f"no gamma3 crossing for (alpha={alpha}, a={a}, b={b})"
            )
        return g3[0]
    second = [c for c in crossings if c.branch is not Branch.GAMMA3]
    if not second:
        raise RuntimeError(f"no second-quadrant crossing for (alpha={alpha}, a={a}, b={b})")
    on_boundary = [
        c
        for c in second
        if stable_boundary_branch(alpha, _A_of(alpha, c.v)) is c.branch
    ]
    candidates = on_boundary if len(on_boundary) == 1 else second
    return min(candidates, key=lambda c: critical_delay(alpha, a, b, c))


def stability_at(alpha: float, a: float, b: float, tau: float) -> str:
    """Pointwise verdict at a concrete delay: 'stable', 'unstable' or 'marginal'."""
    alpha = check_alpha(alpha)
    a = check_finite("a", a)
    b = check_finite("b", b)
    tau = check_nonnegative("tau", tau)
    if a == 0.0 and b == 0.0:
        raise DegenerateInputError("(a, b) = (0, 0) is degenerate")
    if tau == 0.0:
        if a < 0.0:
            return "stable"
        return "unstable" if a > 0.0 else "marginal"
    verdict = classify(alpha, a, b)
    if verdict.region is Region.STABLE:
        return "stable"
    if verdict.region is Region.UNSTABLE:
        return "unstable"
    if verdict.region is Region.MARGINAL:
        return "marginal"
    for tc in verdict.critical_delays:
        if abs(tau - tc) <= _CRITICAL_TOL:
            return "marginal"
    if verdict.region is Region.SSR:
        return "stable" if tau < verdict.critical_delays[0] else "unstable"
    t1, t2 = verdict.critical_delays
    return "stable" if (tau < t1 or tau > t2) else "unstable"
