"""Model parameters and the delay-scaling map onto the (A, B) plane.

Multiplying the characteristic equation of

    D^alpha x(t) = a x(t) + b x(t - tau) - b x(t - 2 tau)

by tau^alpha trades the four parameters (alpha, a, b, tau) for the two
scaled coordinates A = a tau^alpha, B = b tau^alpha (plus alpha).  Sweeping
tau >= 0 at fixed (a, b) traces a ray from the origin through (a, b)'s
direction in the (A, B) plane; every stability question about a concrete
delay reduces to where that ray sits relative to fixed boundary curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._validation import check_alpha, check_finite, check_nonnegative


class SignMismatchError(ValueError):
    """Requested scaled coordinate does not lie on the parameter ray."""


def _tau_pow(tau: float, alpha: float) -> float:
    # exp(alpha log tau) keeps pow away from the 0^alpha corner; tau = 0 maps to 0.
    if tau == 0.0:
        return 0.0
    return math.exp(alpha * math.log(tau))


@dataclass(frozen=True)
class ModelParams:
    """Coefficients and delay of the two-delay equation.

    alpha is the fractional derivative order in (0, 1]; a and b carry units
    of 1/time^alpha; tau >= 0 is the base delay (the second delay is 2 tau).
    """

    alpha: float
    a: float
    b: float
    tau: float

    def __post_init__(self) -> None:
        check_alpha(self.alpha)
        check_finite("a", self.a)
        check_finite("b", self.b)
        check_nonnegative("tau", self.tau)


@dataclass(frozen=True)
class ScaledParams:
    """A scaled point (A, B) together with the parameters that produced it."""

    A: float
    B: float
    params: ModelParams


def scale(params: ModelParams) -> ScaledParams:
    """Map (alpha, a, b, tau) to the scaled point (a tau^alpha, b tau^alpha)."""
    w = _tau_pow(params.tau, params.alpha)
    return ScaledParams(A=params.a * w, B=params.b * w, params=params)


def ray_delay_for_A(alpha: float, a: float, A_target: float) -> float:
    """Delay at which the ray of (a, *) reaches scaled coordinate ``A_target``.

    Inverse of ``scale`` in the A coordinate: returns (A_target / a)^(1/alpha).
    Raises :class:`SignMismatchError` when ``A_target`` and ``a`` have opposite
    signs (the ray never leaves its half-plane).
    """
    alpha = check_alpha(alpha)
    a = check_finite("a", a)
    A_target = check_finite("A_target", A_target)
    if a == 0.0:
        raise ValueError("a must be nonzero to define the ray inverse")
    if A_target == 0.0:
        return 0.0
    ratio = A_target / a
    if ratio < 0.0:
        raise SignMismatchError(
            f"A_target={A_target!r} is not reachable on the ray of a={a!r}"
        )
    return math.exp(math.log(ratio) / alpha)


@dataclass(frozen=True)
class ParameterRay:
    """The set {(a tau^alpha, b tau^alpha) : tau >= 0} for fixed (alpha, a, b)."""

    alpha: float
    a: float
    b: float

    def __post_init__(self) -> None:
        check_alpha(self.alpha)
        check_finite("a", self.a)
        check_finite("b", self.b)

    @property
    def slope(self) -> float:
        """Slope b/a of the carrying line, infinite on the a = 0 axis."""
        if self.a == 0.0:
            return math.inf if self.b > 0 else (-math.inf if self.b < 0 else math.nan)
        return self.b / self.a

    def point_at(self, tau: float) -> ScaledParams:
        return scale(ModelParams(self.alpha, self.a, self.b, tau))

    def delay_for_A(self, A_target: float) -> float:
        return ray_delay_for_A(self.alpha, self.a, A_target)
