"""Numerical integration of the two-delay fractional equation.

The Caputo initial value problem is integrated in its Volterra form

    x(t) = x0 + (1/Gamma(alpha)) int_0^t (t-s)^(alpha-1) f(s) ds,
    f(s) = a x(s) + b x(s - tau) - b x(s - 2 tau),

with a fractional Adams-Bashforth-Moulton predictor-corrector on a uniform
grid.  The step divides the delay exactly (h = tau / k), so both delayed
values are plain grid lookups at offsets k and 2k; history is the constant
x(t) = x0 for t <= 0.  For alpha = 1 the weights collapse to the classical
one-step Adams-Bashforth-Moulton pair (explicit Euler predictor, trapezoid
corrector).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import mpmath
import numpy as np

from ._validation import check_alpha, check_finite, check_positive
from .scaling import ModelParams

OVERFLOW_LIMIT = 1e12

# window-max ratio thresholds separating decay from growth; chosen loose
# enough that slow algebraic fractional tails do not get mislabelled
_DECAY_RATIO = 0.9
_GROWTH_RATIO = 1.1
_ZERO_FLOOR = 1e-14


class DelayGridError(ValueError):
    """The step size does not divide the delay."""


class TrajectoryTooShortError(ValueError):
    """Not enough points to form the two comparison windows."""


class DomainExceededError(ValueError):
    """Argument outside the supported Mittag-Leffler evaluation domain."""


@dataclass(frozen=True)
class SimConfig:
    """Integration setup: equation parameters, history level, grid and horizon."""

    params: ModelParams
    x0: float
    h: float
    T: float
    steps_per_delay: int = field(init=False, default=0)

    def __post_init__(self) -> None:
        check_finite("x0", self.x0)
        check_positive("h", self.h)
        check_finite("T", self.T)
        if self.T < self.h:
            raise ValueError("horizon T must be at least one step h")
        tau = self.params.tau
        if tau > 0.0:
            k = round(tau / self.h)
            if k < 1 or abs(tau / self.h - k) > 1e-9 * max(1.0, k):
                raise DelayGridError(
                    f"step h={self.h!r} does not divide the delay tau={tau!r}"
                )
            # snap the step so the delayed lookups stay drift-free
            object.__setattr__(self, "h", tau / k)
            object.__setattr__(self, "steps_per_delay", k)
        if tau > 0.0 and self.T < 10.0 * tau:
            warnings.warn(
                f"horizon T={self.T} is below 10*tau={10.0 * tau}; the tail "
                "classification may be unreliable",
                stacklevel=2,
            )

    @classmethod
    def from_steps_per_delay(
        cls, params: ModelParams, x0: float, steps_per_delay: int, T: float
    ) -> "SimConfig":
        if params.tau <= 0.0:
            raise ValueError("steps_per_delay requires a positive delay")
        if steps_per_delay < 1:
            raise ValueError("steps_per_delay must be a positive integer")
        return cls(params=params, x0=x0, h=params.tau / steps_per_delay, T=T)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    values: np.ndarray
    classification: str
    envelope_ratio: float
    truncated: bool = False


def _window_ratio(values: np.ndarray, settle_fraction: float) -> tuple[float, float, float]:
    n = len(values)
    w = max(1, int(settle_fraction * n))
    tail = np.abs(values[n - w :])
    prev = np.abs(values[n - 2 * w : n - w])
    m_prev = float(prev.max())
    m_tail = float(tail.max())
    ratio = m_tail / m_prev if m_prev > 0.0 else math.inf
    return m_prev, m_tail, ratio


def classify_trajectory(traj: Trajectory, settle_fraction: float = 0.2) -> str:
    """Label a trajectory decaying / growing / inconclusive from its tail.

    Compares the max of |x| over the last ``settle_fraction`` of the grid
    against the preceding window of equal length.
    """
    if not (0.0 < settle_fraction <= 0.5):
        raise ValueError("settle_fraction must lie in (0, 0.5]")
    if len(traj.values) < 10.0 / settle_fraction:
        raise TrajectoryTooShortError(
            f"need at least {10.0 / settle_fraction:.0f} points, got {len(traj.values)}"
        )
    if traj.truncated:
        return "growing"
    m_prev, m_tail, ratio = _window_ratio(traj.values, settle_fraction)
    if m_prev < _ZERO_FLOOR and m_tail < _ZERO_FLOOR:
        return "decaying"
    if ratio < _DECAY_RATIO:
        return "decaying"
    if ratio > _GROWTH_RATIO:
        return "growing"
    return "inconclusive"


def integrate(config: SimConfig, settle_fraction: float = 0.2) -> Trajectory:
    """Run the predictor-corrector over [0, T] and classify the result.

    The trajectory is truncated (and labelled growing) as soon as |x|
    exceeds ``OVERFLOW_LIMIT``.
    """
    p = config.params
    alpha, a, b = p.alpha, p.a, p.b
    h = config.h
    k = config.steps_per_delay
    n_steps = int(math.ceil(config.T / h - 1e-9))
    N = max(1, n_steps)

    # quadrature weight ingredients, indexed by integer distance m:
    #   predictor  b_{j,n+1} = (h^alpha/alpha) * c[n-j],  c[m] = (m+1)^alpha - m^alpha
    #   corrector  a_{j,n+1} = e[n-j] for 1 <= j <= n,
    #              e[m] = (m+2)^(alpha+1) + m^(alpha+1) - 2 (m+1)^(alpha+1)
    #              a_{0,n+1} = n^(alpha+1) - (n-alpha) (n+1)^alpha
    ms = np.arange(N + 2, dtype=float)
    pow_a = ms**alpha
    pow_a1 = ms ** (alpha + 1.0)
    c = pow_a[1:] - pow_a[:-1]
    e = pow_a1[2:] + pow_a1[:-2] - 2.0 * pow_a1[1:-1]
    ns = np.arange(N, dtype=float)
    a0 = ns ** (alpha + 1.0) - (ns - alpha) * (ns + 1.0) ** alpha
    pred_coef = h**alpha / math.gamma(alpha + 1.0)
    corr_coef = h**alpha / math.gamma(alpha + 2.0)

    x = np.zeros(N + 1)
    f = np.zeros(N + 1)
    x[0] = config.x0
    f[0] = a * config.x0  # both delayed terms equal the history level and cancel

    def delayed(j: int, fallback: float) -> tuple[float, float]:
        if k == 0:
            return fallback, fallback
        d1 = x[j - k] if j - k >= 0 else config.x0
        d2 = x[j - 2 * k] if j - 2 * k >= 0 else config.x0
        return d1, d2

    truncated = False
    last = N
    for n in range(N):
        hist_pred = float(np.dot(c[n::-1], f[: n + 1]))
        x_pred = config.x0 + pred_coef * hist_pred
        d1, d2 = delayed(n + 1, x_pred)
        f_new = a * x_pred + b * d1 - b * d2
        hist_corr = a0[n] * f[0]
        if n >= 1:
            hist_corr += float(np.dot(e[n - 1 :: -1], f[1 : n + 1]))
        x_new = config.x0 + corr_coef * (hist_corr + f_new)
        if not math.isfinite(x_new) or abs(x_new) > OVERFLOW_LIMIT:
            # keep only the values that stayed in range
            truncated = True
            last = n
            break
        x[n + 1] = x_new
        d1, d2 = delayed(n + 1, x_new)
        f[n + 1] = a * x_new + b * d1 - b * d2

    x = x[: last + 1]
    times = h * np.arange(len(x))
    if truncated:
        classification = "growing"
        ratio = math.inf
    else:
        _, _, ratio = _window_ratio(x, settle_fraction)
        probe = Trajectory(times, x, "inconclusive", ratio, truncated=False)
        try:
            classification = classify_trajectory(probe, settle_fraction)
        except TrajectoryTooShortError:
            classification = "inconclusive"
    return Trajectory(
        times=times,
        values=x,
        classification=classification,
        envelope_ratio=ratio,
        truncated=truncated,
    )


def mittag_leffler(alpha: float, z: float, max_terms: int = 100_000) -> float:
    """One-parameter Mittag-Leffler function E_alpha(z) for real z, |z| <= 50.

    The power series sum_k z^k / Gamma(alpha k + 1) is summed in adaptive
    arbitrary precision: for negative z the terms cancel almost completely,
    so the working precision is raised to cover the largest term before
    rounding back to a float.
    """
    alpha = check_alpha(alpha)
    z = check_finite("z", z)
    if abs(z) > 50.0:
        raise DomainExceededError(f"|z| = {abs(z)!r} exceeds the supported domain 50")
    if z == 0.0:
        return 1.0
    # peak-term magnitude estimate fixes the working precision
    k_peak = max(1.0, abs(z) ** (1.0 / alpha) / alpha)
    log10_peak = (k_peak * math.log(abs(z)) - math.lgamma(alpha * k_peak + 1.0)) / math.log(10.0)
    dps = 25 + max(0, int(log10_peak))
    with mpmath.workdps(dps):
        zz = mpmath.mpf(z)
        total = mpmath.mpf(1)
        k = 1
        while k < max_terms:
            term = zz**k / mpmath.gamma(alpha * k + 1.0)
            total += term
            if k > k_peak and abs(term) < 1e-25 * (abs(total) + mpmath.mpf(1e-300)):
                break
            k += 1
        else:
            raise DomainExceededError(
                f"series did not converge within {max_terms} terms"
            )
        return float(total)
