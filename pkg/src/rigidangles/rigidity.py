"""Conformality of two inner products and explicit witnesses when they differ.

Two forms are compared after whitening by the first: with ``G1 = L L^H`` the
matrix ``M = L^-1 G2 L^-H`` is Hermitian positive definite and the forms are
conformal exactly when ``M`` is a multiple of the identity. Eigenvectors of
``M`` mapped back by ``L^-H`` are orthonormal for the first form and
orthogonal for the second, which is all the witness constructions need.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import solve_triangular

from .core import (
    DEFAULT_TOL,
    AngleKind,
    GramForm,
    ScalarField,
    Tolerances,
    _as_vector,
    angle,
    inner,
    norm,
)
from .errors import (
    DimensionMismatch,
    DimensionTooSmall,
    FieldMismatch,
    FormsAreConformal,
    NotOrthogonalIn1,
    ThetaOutOfRange,
    ZeroVector,
)

__all__ = [
    "WitnessKind",
    "WitnessPair",
    "ConformalityVerdict",
    "FourVectorFrame",
    "EquivalenceReport",
    "DEFAULT_SCAN_STEPS",
    "DEFAULT_THETA0S",
    "best_factor",
    "check_conformal",
    "find_orthogonality_witness",
    "witness_is_valid",
    "four_vector_frame",
    "frame_residuals",
    "same_fixed_angle",
    "projection_residual",
    "equivalence_suite",
]

DEFAULT_SCAN_STEPS = 720
DEFAULT_THETA0S = (np.pi / 6, np.pi / 4, np.pi / 3, 2 * np.pi / 3)


class WitnessKind(enum.Enum):
    ORTHOGONALITY_MISMATCH = "orthogonality-mismatch"
    FIXED_ANGLE_MISMATCH = "fixed-angle-mismatch"


@dataclass(frozen=True, eq=False)
class WitnessPair:
    """Two vectors on which the forms disagree.

    Angles are Euclidean angles in radians; ``inner_in_1``/``inner_in_2`` are
    the raw pairings ``<x, y>`` under each form.
    """

    x: np.ndarray
    y: np.ndarray
    kind: WitnessKind
    angle_in_1: float
    angle_in_2: float
    inner_in_1: complex | float
    inner_in_2: complex | float
    theta0: Optional[float] = None


@dataclass(frozen=True)
class ConformalityVerdict:
    conformal: bool
    residual: float
    spectral_spread: float
    factor_c: Optional[float] = None
    witness: Optional[WitnessPair] = None


@dataclass(frozen=True, eq=False)
class FourVectorFrame:
    x_hat: np.ndarray
    y_hat: np.ndarray
    theta0: float
    z: np.ndarray
    w: np.ndarray
    zbar: np.ndarray
    wbar: np.ndarray


@dataclass
class EquivalenceReport:
    """Per-item outcome of :func:`equivalence_suite`.

    ``items`` maps item name to True (holds on every sample), False, or None
    (not applicable, e.g. orthogonality on a real space where it coincides
    with the right angle).
    """

    items: dict
    conformal: bool
    factor_c: Optional[float]
    max_deviation: dict = dc_field(default_factory=dict)
    equal_norm_found: bool = False
    equal_norm_implies_equal: Optional[bool] = None

    @property
    def consistent(self) -> bool:
        vals = [v for v in self.items.values() if v is not None]
        return all(vals) or not any(vals)

    def table(self) -> list[str]:
        rows = []
        for name, ok in self.items.items():
            status = "n/a" if ok is None else ("pass" if ok else "fail")
            dev = self.max_deviation.get(name)
            rows.append(f"{name:<28} {status:<5}" + ("" if dev is None else f" max_dev={dev:.3e}"))
        return rows


def _check_pair(g1: GramForm, g2: GramForm):
    if g1.field is not g2.field:
        raise FieldMismatch(f"forms over different fields: {g1.field.value} vs {g2.field.value}")
    if g1.dim != g2.dim:
        raise DimensionMismatch(f"forms of different dimension: {g1.dim} vs {g2.dim}")


def best_factor(g1: GramForm, g2: GramForm) -> tuple[float, float]:
    """Least-squares ``c`` with ``G2 ~ c G1`` and the relative residual.

    The residual is ``|G2 - c G1|_F / |c G1|_F``, which is unchanged when
    either form is rescaled. For positive definite inputs ``c`` is always
    positive; if it is not, the residual is reported as ``inf``.
    """
    _check_pair(g1, g2)
    G1, G2 = g1.matrix, g2.matrix
    n1sq = float(np.real(np.vdot(G1, G1)))
    c = float(np.real(np.vdot(G1, G2))) / n1sq
    if c <= 0:
        return c, float("inf")
    residual = float(np.linalg.norm(G2 - c * G1) / (c * np.sqrt(n1sq)))
    return c, residual


def _whitened_spectrum(g1: GramForm, g2: GramForm):
    """Eigenvalues (ascending) of ``M`` and the back-mapped eigenvectors as columns."""
    L = np.linalg.cholesky(g1.matrix)
    Linv_G2 = solve_triangular(L, g2.matrix, lower=True)
    M = solve_triangular(L, Linv_G2.conj().T, lower=True).conj().T
    M = 0.5 * (M + M.conj().T)
    lam, V = np.linalg.eigh(M)
    U = solve_triangular(L.conj().T, V, lower=False)
    # fix the phase: largest component of every eigenvector real and positive
    idx = np.argmax(np.abs(U), axis=0)
    pivots = U[idx, np.arange(U.shape[1])]
    U = U * (np.abs(pivots) / pivots)
    if g1.field is ScalarField.REAL:
        U = U.real
    return lam, U


def _spread(lam: np.ndarray) -> float:
    return float((lam[-1] - lam[0]) / lam[-1])


def _orthogonality_witness(g1, g2, lam, U, tol) -> WitnessPair:
    u, v = U[:, 0], U[:, -1]
    x, y = u + v, u - v
    return WitnessPair(
        x=x,
        y=y,
        kind=WitnessKind.ORTHOGONALITY_MISMATCH,
        angle_in_1=angle(g1, x, y, tol=tol).theta,
        angle_in_2=angle(g2, x, y, tol=tol).theta,
        inner_in_1=inner(g1, x, y),
        inner_in_2=inner(g2, x, y),
    )


def check_conformal(g1: GramForm, g2: GramForm, tol: Tolerances = DEFAULT_TOL) -> ConformalityVerdict:
    """Decide whether ``g2 = c g1`` for some ``c > 0``.

    Conformal when the relative residual or the relative spread of the
    whitened spectrum is at most ``tol.conf``. Otherwise the verdict carries
    an orthogonality witness.
    """
    c, residual = best_factor(g1, g2)
    lam, U = _whitened_spectrum(g1, g2)
    spread = _spread(lam)
    if c > 0 and (residual <= tol.conf or spread <= tol.conf):
        return ConformalityVerdict(True, residual, spread, factor_c=c)
    return ConformalityVerdict(False, residual, spread, witness=_orthogonality_witness(g1, g2, lam, U, tol))


def find_orthogonality_witness(g1: GramForm, g2: GramForm, tol: Tolerances = DEFAULT_TOL) -> WitnessPair:
    """A pair orthogonal under ``g1`` but not under ``g2``.

    Takes ``G1``-orthonormal eigenvectors ``u, v`` for the smallest and
    largest whitened eigenvalues and returns ``x = u + v``, ``y = u - v``.
    Then ``<x, y>_1 = 0`` while ``<x, y>_2 = lam_min - lam_max``.

    Raises
    ------
    DimensionTooSmall
        On a one-dimensional space, where every pair of forms is conformal.
    FormsAreConformal
        If the whitened spectrum has no separated eigenvalues.
    """
    _check_pair(g1, g2)
    if g1.dim < 2:
        raise DimensionTooSmall("orthogonality witnesses need dim >= 2")
    lam, U = _whitened_spectrum(g1, g2)
    if _spread(lam) <= tol.conf:
        raise FormsAreConformal("whitened spectrum is a single eigenvalue; no witness exists")
    return _orthogonality_witness(g1, g2, lam, U, tol)


def witness_is_valid(g1: GramForm, g2: GramForm, w: WitnessPair, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Check the separating property of ``w`` directly on the two forms."""
    if w.kind is WitnessKind.ORTHOGONALITY_MISMATCH:
        def separates(a, b):
            ip_a, ip_b = inner(a, w.x, w.y), inner(b, w.x, w.y)
            return (abs(ip_a) <= tol.num * norm(a, w.x) * norm(a, w.y)
                    and abs(np.real(ip_b)) > 10 * tol.num * norm(b, w.x) * norm(b, w.y))
        return separates(g1, g2) or separates(g2, g1)
    t1 = angle(g1, w.x, w.y, tol=tol).theta
    t2 = angle(g2, w.x, w.y, tol=tol).theta
    return abs(t1 - w.theta0) <= tol.num and abs(t2 - w.theta0) > 10 * tol.num


def four_vector_frame(g1: GramForm, x, y, theta0: float, tol: Tolerances = DEFAULT_TOL) -> FourVectorFrame:
    """Four unit vectors at angle ``theta0`` from the axes of an orthogonal pair.

    With ``x_hat, y_hat`` the ``g1``-normalised inputs::

        z    =  cos t x_hat + sin t y_hat      w    = sin t x_hat + cos t y_hat
        zbar =  cos t x_hat - sin t y_hat      wbar = -sin t x_hat + cos t y_hat

    ``z`` and ``zbar`` make angle ``t`` with ``x_hat``; ``w`` and ``wbar`` with
    ``y_hat``.
    """
    if not 0.0 < theta0 < np.pi / 2:
        raise ThetaOutOfRange(f"theta0 = {theta0} is not in (0, pi/2)")
    x = _as_vector(g1, x, "x")
    y = _as_vector(g1, y, "y")
    nx, ny = norm(g1, x, tol), norm(g1, y, tol)
    floor = tol.zero * np.sqrt(g1.scale)
    if nx <= floor or ny <= floor:
        raise ZeroVector("frame axes must be non-zero")
    if abs(inner(g1, x, y)) > tol.num * nx * ny:
        raise NotOrthogonalIn1("frame axes are not orthogonal under the first form")
    xh, yh = x / nx, y / ny
    c, s = np.cos(theta0), np.sin(theta0)
    return FourVectorFrame(
        x_hat=xh, y_hat=yh, theta0=float(theta0),
        z=c * xh + s * yh, w=s * xh + c * yh,
        zbar=c * xh - s * yh, wbar=-s * xh + c * yh,
    )


def frame_residuals(g1: GramForm, frame: FourVectorFrame) -> np.ndarray:
    """Deviations of the eight frame conditions: four norms from 1, four angles from theta0."""
    vecs = (frame.z, frame.w, frame.zbar, frame.wbar)
    axes = (frame.x_hat, frame.y_hat, frame.x_hat, frame.y_hat)
    norms = [abs(norm(g1, v) - 1.0) for v in vecs]
    angles = [abs(angle(g1, a, v).theta - frame.theta0) for a, v in zip(axes, vecs)]
    return np.array(norms + angles)


def same_fixed_angle(
    g1: GramForm,
    g2: GramForm,
    theta0: float,
    scan_steps: int = DEFAULT_SCAN_STEPS,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[bool, Optional[WitnessPair]]:
    """Whether the two forms realise the angle ``theta0`` on the same pairs.

    Forms that agree on a single angle in ``(0, pi)`` are conformal, so the
    answer is the conformality verdict. When it is negative a pair at angle
    ``theta0`` under ``g1`` and a different angle under ``g2`` is found by
    scanning ``p(t) = cos t u + sin t v`` over the plane of extremal whitened
    eigenvectors and pairing ``p(t)`` with ``p(t +- theta0)``. Angles above
    ``pi/2`` are handled by negating the first vector of a ``pi - theta0``
    pair.
    """
    if not 0.0 < theta0 < np.pi:
        raise ThetaOutOfRange(f"theta0 = {theta0} is not in (0, pi); every pair of forms agrees on 0 and pi")
    verdict = check_conformal(g1, g2, tol)
    if verdict.conformal:
        return True, None

    lam, U = _whitened_spectrum(g1, g2)
    lu, lv = lam[0], lam[-1]
    u, v = U[:, 0], U[:, -1]
    flip = theta0 > np.pi / 2
    th = np.pi - theta0 if flip else theta0

    t = np.linspace(0.0, np.pi, scan_steps, endpoint=False)
    t = np.concatenate([t, t])
    s = t + np.concatenate([np.full(scan_steps, th), np.full(scan_steps, -th)])
    # u, v are orthogonal under both forms, so the pairings reduce to two terms
    ip2 = lu * np.cos(t) * np.cos(s) + lv * np.sin(t) * np.sin(s)
    nt = np.sqrt(lu * np.cos(t) ** 2 + lv * np.sin(t) ** 2)
    ns = np.sqrt(lu * np.cos(s) ** 2 + lv * np.sin(s) ** 2)
    theta2 = np.arccos(np.clip(ip2 / (nt * ns), -1.0, 1.0))
    k = int(np.argmax(np.abs(theta2 - th)))

    x = np.cos(t[k]) * u + np.sin(t[k]) * v
    y = np.cos(s[k]) * u + np.sin(s[k]) * v
    if flip:
        x = -x
    w = WitnessPair(
        x=x,
        y=y,
        kind=WitnessKind.FIXED_ANGLE_MISMATCH,
        angle_in_1=angle(g1, x, y, tol=tol).theta,
        angle_in_2=angle(g2, x, y, tol=tol).theta,
        inner_in_1=inner(g1, x, y),
        inner_in_2=inner(g2, x, y),
        theta0=float(theta0),
    )
    return False, w


def projection_residual(g1: GramForm, g2: GramForm, x, y, tol: Tolerances = DEFAULT_TOL):
    """``<z, x>_2`` for ``z = y - <y,x>_1 / |x|_1^2 x``, the ``g1``-projection residual.

    Zero for every pair when the forms are conformal.
    """
    _check_pair(g1, g2)
    x = _as_vector(g1, x, "x")
    y = _as_vector(g1, y, "y")
    nx2 = norm(g1, x, tol) ** 2
    if nx2 <= (tol.zero ** 2) * g1.scale:
        raise ZeroVector("cannot project onto the zero vector")
    z = y - inner(g1, y, x) / nx2 * x
    return inner(g2, z, x)


def _random_vectors(rng, field: ScalarField, n: int, count: int) -> np.ndarray:
    X = rng.standard_normal((count, n))
    if field is ScalarField.COMPLEX:
        X = X + 1j * rng.standard_normal((count, n))
    return X


def _cosines(g: GramForm, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    G = g.matrix
    ip = np.einsum("ki,ij,kj->k", Y.conj(), G, X)
    nx = np.sqrt(np.real(np.einsum("ki,ij,kj->k", X.conj(), G, X)))
    ny = np.sqrt(np.real(np.einsum("ki,ij,kj->k", Y.conj(), G, Y)))
    return ip / (nx * ny)


def _pairs_at_angle(g: GramForm, X: np.ndarray, Y: np.ndarray, theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Rows of ``X`` paired with vectors at Euclidean angle ``theta`` under ``g``."""
    G = g.matrix
    nx = np.sqrt(np.real(np.einsum("ki,ij,kj->k", X.conj(), G, X)))
    Xh = X / nx[:, None]
    re = np.real(np.einsum("ki,ij,kj->k", Xh.conj(), G, Y))
    P = Y - re[:, None] * Xh
    npp = np.sqrt(np.real(np.einsum("ki,ij,kj->k", P.conj(), G, P)))
    Ph = P / npp[:, None]
    return X, np.cos(theta) * Xh + np.sin(theta) * Ph


def _orthogonal_partners(g: GramForm, X: np.ndarray, Y: np.ndarray, real_part: bool = False) -> np.ndarray:
    """Project rows of ``Y`` off ``X``; with ``real_part`` only ``Re<y, x>`` is removed (right angle)."""
    G = g.matrix
    nx2 = np.real(np.einsum("ki,ij,kj->k", X.conj(), G, X))
    yx = np.einsum("ki,ij,kj->k", X.conj(), G, Y)
    if real_part:
        yx = np.real(yx)
    return Y - (yx / nx2)[:, None] * X


def equivalence_suite(
    g1: GramForm,
    g2: GramForm,
    trials: int = 200,
    rng_seed: int = 0,
    theta0s: Sequence[float] = DEFAULT_THETA0S,
    tol: Tolerances = DEFAULT_TOL,
) -> EquivalenceReport:
    """Test every equivalent form of conformality on seeded random samples.

    Items, each judged with relative tolerance ``tol.conf``:

    ``proportional``
        matrix-level verdict of :func:`check_conformal`.
    ``norm_ratio_constant``
        ``|x|_2^2 / |x|_1^2`` is the same on ``trials`` random vectors.
    ``same_angles``
        Euclidean cosines of random pairs agree.
    ``same_right_angle``
        pairs at a right angle under either form are at a right angle under
        the other.
    ``same_orthogonality``
        same, for full orthogonality ``<x, y> = 0``; complex spaces only.
    ``same_angle_<deg>``
        for each ``theta0``, pairs at ``theta0`` under either form are at
        ``theta0`` under the other.

    Also checks that a conformal pair with a sampled vector of equal norms
    has factor 1.
    """
    _check_pair(g1, g2)
    rng = np.random.default_rng(rng_seed)
    n, field = g1.dim, g1.field
    verdict = check_conformal(g1, g2, tol)
    items: dict = {"proportional": verdict.conformal}
    dev: dict = {"proportional": verdict.residual}

    X = _random_vectors(rng, field, n, trials)
    Y = _random_vectors(rng, field, n, trials)

    n1 = np.real(np.einsum("ki,ij,kj->k", X.conj(), g1.matrix, X))
    n2 = np.real(np.einsum("ki,ij,kj->k", X.conj(), g2.matrix, X))
    ratios = n2 / n1
    dev["norm_ratio_constant"] = float((ratios.max() - ratios.min()) / ratios.max())

    dev["same_angles"] = float(np.max(np.abs(np.real(_cosines(g1, X, Y)) - np.real(_cosines(g2, X, Y)))))

    if n >= 2:
        right = 0.0
        for a, b in ((g1, g2), (g2, g1)):
            P = _orthogonal_partners(a, X, Y, real_part=True)
            right = max(right, float(np.max(np.abs(np.real(_cosines(b, X, P))))))
        dev["same_right_angle"] = right

        if field is ScalarField.COMPLEX:
            orth = 0.0
            for a, b in ((g1, g2), (g2, g1)):
                P = _orthogonal_partners(a, X, Y)
                orth = max(orth, float(np.max(np.abs(_cosines(b, X, P)))))
            dev["same_orthogonality"] = orth

        for th in theta0s:
            worst = 0.0
            for a, b in ((g1, g2), (g2, g1)):
                A, B = _pairs_at_angle(a, X, Y, th)
                worst = max(worst, float(np.max(np.abs(np.real(_cosines(b, A, B)) - np.cos(th)))))
            dev[f"same_angle_{np.degrees(th):g}"] = worst
    else:
        # on a line every pair of forms shares every angle and orthogonality relation
        dev["same_right_angle"] = 0.0

    for name, d in dev.items():
        if name != "proportional":
            items[name] = d <= tol.conf
    if field is ScalarField.REAL:
        items["same_orthogonality"] = None

    report = EquivalenceReport(items=items, conformal=verdict.conformal, factor_c=verdict.factor_c,
                               max_deviation=dev)
    equal = np.abs(np.sqrt(n2) - np.sqrt(n1)) <= tol.num * np.sqrt(n1)
    if np.any(equal):
        report.equal_norm_found = True
        if verdict.conformal:
            report.equal_norm_implies_equal = abs(verdict.factor_c - 1.0) <= tol.conf
    return report
