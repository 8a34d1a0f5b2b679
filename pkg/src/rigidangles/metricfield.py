"""Pointwise conformality of two metrics sampled on a set of points."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import DEFAULT_TOL, ScalarField, Tolerances, validate_gram
from .errors import EmptySample, InputError, PointValidationError, ThetaOutOfRange
from .rigidity import DEFAULT_SCAN_STEPS, best_factor, check_conformal, same_fixed_angle

__all__ = [
    "FieldVerdict",
    "MetricFieldSample",
    "ConformalFactorField",
    "sample_from_arrays",
    "pointwise_conformality",
    "theta0_field_check",
]

# The reported factor is the inner-product ratio g2/g1; norms scale by its square root.
FACTOR_CONVENTION = "f(p) = <.,.>_2 / <.,.>_1 at p; norm ratio |.|_2/|.|_1 = sqrt(f(p))"


class FieldVerdict(enum.Enum):
    CONFORMAL_CONSTANT = "ConformalConstant"
    CONFORMAL_VARYING = "ConformalVarying"
    NOT_CONFORMAL = "NotConformal"


@dataclass(frozen=True, eq=False)
class MetricFieldSample:
    points: np.ndarray
    g1_at: tuple
    g2_at: tuple

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "g1_at", tuple(self.g1_at))
        object.__setattr__(self, "g2_at", tuple(self.g2_at))
        if len(pts) == 0 or pts.shape[1] == 0:
            raise EmptySample("metric field sample has no points")
        if not (len(self.g1_at) == len(self.g2_at) == len(pts)):
            raise InputError(f"{len(pts)} points but {len(self.g1_at)}/{len(self.g2_at)} metrics")
        d = pts.shape[1]
        for i, (p, a, b) in enumerate(zip(pts, self.g1_at, self.g2_at)):
            for g in (a, b):
                if g.field is not ScalarField.REAL or g.dim != d:
                    raise PointValidationError(i, p, InputError(f"expected a real {d}x{d} metric, got {g!r}"))
        if len(np.unique(pts, axis=0)) != len(pts):
            raise InputError("sample points are not distinct")

    def __len__(self):
        return len(self.points)


def sample_from_arrays(points, g1_matrices, g2_matrices, tol: Tolerances = DEFAULT_TOL) -> MetricFieldSample:
    """Validate per-point matrices, naming the point on failure."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if len(pts) == 0:
        raise EmptySample("metric field sample has no points")
    g1, g2 = [], []
    for i, (p, a, b) in enumerate(zip(pts, g1_matrices, g2_matrices)):
        try:
            g1.append(validate_gram(ScalarField.REAL, a, tol))
            g2.append(validate_gram(ScalarField.REAL, b, tol))
        except InputError as exc:
            raise PointValidationError(i, p, exc) from exc
    return MetricFieldSample(pts, g1, g2)


@dataclass(frozen=True, eq=False)
class ConformalFactorField:
    """Per-point factors ``f(p)`` with ``g2 = f(p) g1`` and the global verdict.

    ``factors`` holds the least-squares factor at every point, also where the
    forms are not conformal; ``conformal`` flags which points passed.
    """

    factors: np.ndarray
    residuals: np.ndarray
    conformal: np.ndarray
    verdict: FieldVerdict
    failing_index: Optional[int] = None
    failing_point: Optional[tuple] = None
    convention: str = FACTOR_CONVENTION


def pointwise_conformality(sample: MetricFieldSample, tol: Tolerances = DEFAULT_TOL) -> ConformalFactorField:
    """Run the conformality check at every point and classify the factor field.

    The first non-conformal point in input order is reported. No smoothness
    of the factor is assumed or tested.
    """
    if len(sample) == 0:
        raise EmptySample("metric field sample has no points")
    verdicts = [check_conformal(a, b, tol) for a, b in zip(sample.g1_at, sample.g2_at)]
    factors = np.array([v.factor_c if v.conformal else best_factor(a, b)[0]
                        for v, a, b in zip(verdicts, sample.g1_at, sample.g2_at)])
    residuals = np.array([v.residual for v in verdicts])
    ok = np.array([v.conformal for v in verdicts])
    if not ok.all():
        i = int(np.argmin(ok))
        return ConformalFactorField(factors, residuals, ok, FieldVerdict.NOT_CONFORMAL,
                                    failing_index=i, failing_point=tuple(float(t) for t in sample.points[i]))
    constant = (factors.max() - factors.min()) / factors.min() <= tol.conf
    verdict = FieldVerdict.CONFORMAL_CONSTANT if constant else FieldVerdict.CONFORMAL_VARYING
    return ConformalFactorField(factors, residuals, ok, verdict)


def theta0_field_check(
    sample: MetricFieldSample,
    theta0: float,
    scan_steps: int = DEFAULT_SCAN_STEPS,
    tol: Tolerances = DEFAULT_TOL,
) -> np.ndarray:
    """Per-point answer to "do the two metrics share the angle ``theta0``"."""
    if not 0.0 < theta0 < np.pi:
        raise ThetaOutOfRange(f"theta0 = {theta0} is not in (0, pi)")
    if len(sample) == 0:
        raise EmptySample("metric field sample has no points")
    return np.array([same_fixed_angle(a, b, theta0, scan_steps, tol)[0]
                     for a, b in zip(sample.g1_at, sample.g2_at)])
