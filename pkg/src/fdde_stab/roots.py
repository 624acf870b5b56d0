"""Roots of the scaled characteristic function F(beta) = beta^alpha - A - B e^(-beta) + B e^(-2 beta).

beta^alpha uses the principal branch |beta|^alpha e^(i alpha Arg beta) with
Arg in (-pi, pi]; the cut along the negative real axis does not touch any
right-half-plane reasoning.  A root with positive real part means the delay
equation is unstable at the parameters that produced (A, B).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ._validation import check_alpha, check_finite

_DEDUP_RADIUS = 1e-6
_ACCEPT_RESIDUAL = 1e-9


class NonConvergenceError(RuntimeError):
    """Newton iteration failed to reach the residual target."""


class BranchCutError(RuntimeError):
    """Newton iterate landed on the negative real axis with non-integer order."""


@dataclass(frozen=True)
class CharacteristicRoot:
    beta: complex
    residual: float
    multiplicity_hint: int = 1


@dataclass(frozen=True)
class PQSplit:
    """The real-axis decomposition F = P - Q used for the positive-root argument.

    P(beta) = beta^alpha - A is monotone increasing with range [-A, inf);
    Q(beta) = B (e^-beta - e^-2beta) is bounded by |B|/4, attained at ln 2.
    """

    p_value: float
    q_value: float
    q_extremum_location: float
    q_extremum_value: float


def _cpow(beta: complex, expo: float) -> complex:
    if beta == 0:
        return complex(0.0)
    # kill signed-zero imaginary parts so Arg(-x + 0j) = pi, not -pi
    if beta.imag == 0.0:
        beta = complex(beta.real, 0.0)
    return cmath.exp(expo * cmath.log(beta))


def char_value(alpha: float, A: float, B: float, beta: complex) -> complex:
    """F(beta) itself (complex)."""
    beta = complex(beta)
    return _cpow(beta, alpha) - A - B * cmath.exp(-beta) + B * cmath.exp(-2.0 * beta)


def char_residual(alpha: float, A: float, B: float, beta: complex) -> float:
    """|F(beta)| at the given point."""
    alpha = check_alpha(alpha)
    return abs(char_value(alpha, A, B, beta))


def _char_derivative(alpha: float, A: float, B: float, beta: complex) -> complex:
    return (
        alpha * _cpow(beta, alpha - 1.0)
        + B * cmath.exp(-beta)
        - 2.0 * B * cmath.exp(-2.0 * beta)
    )


def pq_split(alpha: float, A: float, B: float, beta: float) -> PQSplit:
    """Evaluate the P/Q decomposition at a real beta >= 0."""
    alpha = check_alpha(alpha)
    beta = check_finite("beta", beta)
    if beta < 0.0:
        raise ValueError("the P/Q split applies to real beta >= 0")
    p = beta**alpha - A
    q = B * (math.exp(-beta) - math.exp(-2.0 * beta))
    return PQSplit(
        p_value=p,
        q_value=q,
        q_extremum_location=math.log(2.0),
        q_extremum_value=B / 4.0,
    )


def real_positive_root(alpha: float, A: float, B: float) -> CharacteristicRoot | None:
    """First real positive root of F, or None when the scan finds no sign change.

    For A > 0 a root is guaranteed: P sweeps [-A, inf) while Q stays inside
    [-|B|/4, |B|/4], so P - Q changes sign on (0, beta_max] with
    beta_max = max(3, (A + |B|/4)^(1/alpha) + 1).
    """
    alpha = check_alpha(alpha)
    A = check_finite("A", A)
    B = check_finite("B", B)
    top = A + abs(B) / 4.0
    beta_max = 3.0
    if top > 0.0:
        beta_max = max(3.0, top ** (1.0 / alpha) + 1.0)

    def g(x: float) -> float:
        return x**alpha - A - B * (math.exp(-x) - math.exp(-2.0 * x))

    xs = np.linspace(1e-12, beta_max, 2000)
    ys = np.array([g(float(x)) for x in xs])
    sign = np.sign(ys)
    hits = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(hits) == 0:
        exact = np.nonzero(ys == 0.0)[0]
        if len(exact) == 0:
            return None
        root = float(xs[exact[0]])
    else:
        i = hits[0]
        root = brentq(g, float(xs[i]), float(xs[i + 1]), xtol=1e-15, rtol=8.9e-16)
    return CharacteristicRoot(
        beta=complex(root, 0.0), residual=abs(g(root)), multiplicity_hint=1
    )


def newton_root(
    alpha: float,
    A: float,
    B: float,
    guess: complex,
    *,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> CharacteristicRoot:
    """Damped Newton refinement of a root of F from ``guess``.

    Raises :class:`NonConvergenceError` after ``max_iter`` iterations and
    :class:`BranchCutError` if an iterate lands on the branch cut (negative
    real axis) with non-integer alpha.
    """
    alpha = check_alpha(alpha)
    beta = complex(guess)
    integer_order = alpha == 1.0
    fval = char_value(alpha, A, B, beta)
    for _ in range(max_iter):
        if abs(fval) < tol:
            dmag = abs(_char_derivative(alpha, A, B, beta))
            hint = 2 if dmag < 1e-6 else 1
            return CharacteristicRoot(beta=beta, residual=abs(fval), multiplicity_hint=hint)
        d = _char_derivative(alpha, A, B, beta)
        if d == 0:
            raise NonConvergenceError(f"vanishing derivative at beta={beta!r}")
        step = fval / d
        # backtrack until the residual actually drops
        lam = 1.0
        for _ in range(60):
            cand = beta - lam * step
            if not integer_order and cand.real < 0.0 and abs(cand.imag) < 1e-12:
                raise BranchCutError(
                    f"iterate {cand!r} reached the negative real axis"
                )
            cand_val = char_value(alpha, A, B, cand)
            if abs(cand_val) < abs(fval):
                beta, fval = cand, cand_val
                break
            lam *= 0.5
        else:
            raise NonConvergenceError(
                f"no descent from beta={beta!r} (residual {abs(fval):.3e})"
            )
    raise NonConvergenceError(
        f"residual {abs(fval):.3e} after {max_iter} iterations from guess {guess!r}"
    )


def rightmost_root_scan(
    alpha: float,
    A: float,
    B: float,
    v_max: float = 4.0 * math.pi,
    re_window: tuple[float, float] = (-2.0, 2.0),
) -> list[CharacteristicRoot]:
    """Newton sweep over a seed grid in the upper half of the given rectangle.

    Returns the deduplicated, conjugate-closed list of converged roots sorted
    by decreasing real part (an empty list means no root was detected in the
    window).  Any real positive root is included as well.  This is a search
    oracle, not a certification: seeds cover [re_window] x [0, v_max].
    """
    alpha = check_alpha(alpha)
    if not v_max > 0.0:
        raise ValueError("v_max must be > 0")
    re_lo, re_hi = re_window
    found: list[CharacteristicRoot] = []

    def push(root: CharacteristicRoot) -> None:
        if root.residual >= _ACCEPT_RESIDUAL:
            return
        beta = root.beta
        if beta.imag < 0.0:
            beta = beta.conjugate()
        for j, known in enumerate(found):
            if abs(known.beta - beta) < _DEDUP_RADIUS:
                if root.residual < known.residual:
                    found[j] = CharacteristicRoot(beta, root.residual, root.multiplicity_hint)
                return
        found.append(CharacteristicRoot(beta, root.residual, root.multiplicity_hint))

    real_root = real_positive_root(alpha, A, B)
    if real_root is not None:
        push(real_root)

    im_seeds = [0.1] + list(np.arange(0.35, v_max, 0.5))
    for re in np.linspace(re_lo, re_hi, 9):
        for im in im_seeds:
            try:
                push(newton_root(alpha, A, B, complex(re, im)))
            except (NonConvergenceError, BranchCutError):
                continue

    out: list[CharacteristicRoot] = []
    for root in found:
        out.append(root)
        if root.beta.imag > _DEDUP_RADIUS:
            out.append(
                CharacteristicRoot(
                    root.beta.conjugate(), root.residual, root.multiplicity_hint
                )
            )
    out.sort(key=lambda r: (-r.beta.real, r.beta.imag))
    return out
