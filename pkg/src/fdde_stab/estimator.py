"""scikit-learn style front end for classifying coefficient points."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ._validation import check_alpha, check_point_array
from .boundary import alpha_star, branch_intersection, t1_slope
from .regions import Region, RegionVerdict, _region_tag, classify


class FddeStabilityClassifier(BaseEstimator):
    """Classify (a, b) coefficient points into delay-stability regions.

    The fractional order ``alpha`` is the only hyperparameter.  ``fit``
    precomputes the alpha-dependent geometry (the branch-disjointness
    threshold, the branch crossing point, and the tangent-cone slope), after
    which ``predict`` maps an (n, 2) array of (a, b) rows to integer region
    codes:

        0 unstable for every delay
        1 stable for every delay
        2 single stable region (one critical delay)
        3 stability switch (two critical delays)
        4 marginal (on a separating line)

    The estimator composes with the usual scikit-learn tooling
    (``get_params`` / ``set_params`` / ``clone``); there is nothing to learn
    from data, so ``fit`` ignores ``X`` and ``y``.
    """

    def __init__(self, alpha: float = 0.5):
        self.alpha = alpha

    def fit(self, X=None, y=None) -> "FddeStabilityClassifier":
        alpha = check_alpha(self.alpha)
        self.alpha_star_ = alpha_star()
        self.t1_slope_ = t1_slope(alpha)
        self.intersection_ = (
            branch_intersection(alpha) if alpha > self.alpha_star_ else None
        )
        self.n_features_in_ = 2
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "t1_slope_"):
            raise NotFittedError("call fit() before predict()")

    def predict(self, X) -> np.ndarray:
        """Region codes for each (a, b) row of ``X``."""
        self._check_fitted()
        X = check_point_array(X)
        a, b = X[:, 0], X[:, 1]
        m1 = self.t1_slope_
        codes = np.empty(len(X), dtype=int)
        codes[:] = Region.MARGINAL.code
        pos = a > 0.0
        neg = a < 0.0
        codes[pos] = Region.UNSTABLE.code
        codes[neg & (b > -a)] = Region.SSR.code
        codes[neg & (b < -a) & (b > m1 * a)] = Region.SS.code
        codes[neg & (b < m1 * a) & (b > a / 2.0)] = Region.STABLE.code
        codes[neg & (b < a / 2.0)] = Region.SSR.code
        return codes

    def predict_verdicts(self, X) -> list[RegionVerdict]:
        """Full verdicts (with critical delays) for each (a, b) row."""
        self._check_fitted()
        X = check_point_array(X)
        alpha = check_alpha(self.alpha)
        out = []
        for a, b in X:
            if a == 0.0 and b == 0.0:
                out.append(RegionVerdict(region=Region.MARGINAL))
                continue
            tag = _region_tag(alpha, float(a), float(b), self.t1_slope_)
            if tag in (Region.SSR, Region.SS):
                out.append(classify(alpha, float(a), float(b)))
            else:
                out.append(RegionVerdict(region=tag))
        return out
