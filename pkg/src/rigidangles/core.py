"""Inner products on R^n and C^n encoded by Gram matrices.

The pairing is ``<x, y> = conj(y) @ G @ x``: linear in the first slot and
conjugate-linear in the second, so ``G[i, j] = <e_j, e_i>``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    InternalInconsistency,
    KahlerDegenerate,
    KindRequiresComplex,
    NonFiniteEntry,
    NotHermitian,
    NotPositiveDefinite,
    NotSquare,
    ZeroInnerProductArg,
    ZeroVectorAngle,
)

__all__ = [
    "ScalarField",
    "Tolerances",
    "DEFAULT_TOL",
    "GramForm",
    "AngleKind",
    "AngleValue",
    "validate_gram",
    "standard_form",
    "inner",
    "norm",
    "norm_oracle",
    "angle",
    "cauchy_schwarz_gap",
    "polarize",
    "reconstruct_gram",
]


class ScalarField(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"

    @property
    def dtype(self):
        return np.float64 if self is ScalarField.REAL else np.complex128


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every module.

    ``sym`` and ``pd`` are relative to the largest Gram entry, ``num`` is a
    relative agreement tolerance, ``zero`` decides when a vector counts as
    the zero vector, ``kahler`` bounds ``sin(theta)`` away from zero and
    ``conf`` is the relative residual below which two forms are conformal.
    """

    sym: float = 1e-10
    pd: float = 1e-12
    num: float = 1e-9
    zero: float = 1e-12
    kahler: float = 1e-8
    conf: float = 1e-8


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True, eq=False)
class GramForm:
    """A validated inner product on F^n. Build instances with :func:`validate_gram`."""

    field: ScalarField
    matrix: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def scale(self) -> float:
        """Largest absolute Gram entry."""
        return float(np.max(np.abs(self.matrix)))

    def __repr__(self):
        return f"GramForm(field={self.field.value}, dim={self.dim})"


class AngleKind(enum.Enum):
    EUCLIDEAN = "euclidean"
    COMPLEX_COS = "complex-cos"
    HERMITIAN = "hermitian"
    PSEUDO = "pseudo"
    KAHLER = "kahler"


@dataclass(frozen=True)
class AngleValue:
    """Result of :func:`angle`.

    ``theta`` is absent for ``COMPLEX_COS`` and ``PSEUDO``. For ``PSEUDO`` the
    pair ``(cos_value, pseudo_arg)`` is the polar form of the complex cosine.
    """

    kind: AngleKind
    cos_value: complex | float
    theta: Optional[float] = None
    pseudo_arg: Optional[float] = None


def validate_gram(field: ScalarField, matrix, tol: Tolerances = DEFAULT_TOL) -> GramForm:
    """Check that ``matrix`` encodes an inner product and wrap it.

    Small asymmetries (below ``tol.sym`` times the largest entry) are removed
    by averaging with the conjugate transpose; larger ones are rejected.

    Raises
    ------
    NotSquare, NonFiniteEntry, FieldMismatch, NotHermitian, NotPositiveDefinite
    """
    field = ScalarField(field)
    G = np.array(matrix, dtype=np.complex128)
    if G.ndim != 2 or G.shape[0] != G.shape[1] or G.shape[0] == 0:
        raise NotSquare(f"Gram matrix must be a non-empty square array, got shape {G.shape}")
    if not np.all(np.isfinite(G)):
        raise NonFiniteEntry("Gram matrix has non-finite entries")
    gmax = float(np.max(np.abs(G)))
    if field is ScalarField.REAL:
        if np.any(np.abs(G.imag) > 0):
            raise FieldMismatch("real Gram matrix has non-zero imaginary parts")
        G = G.real
    asym = float(np.max(np.abs(G - G.conj().T)))
    if asym > tol.sym * gmax:
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds {tol.sym:.1e} * max|G|")
    G = 0.5 * (G + G.conj().T)
    try:
        L = np.linalg.cholesky(G)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("Cholesky factorization failed") from None
    pivots = np.abs(np.diag(L)) ** 2
    if not np.all(pivots > tol.pd * gmax):
        raise NotPositiveDefinite(f"smallest Cholesky pivot {pivots.min():.3e} is not above {tol.pd:.1e} * max|G|")
    return GramForm(field, np.ascontiguousarray(G, dtype=field.dtype))


def standard_form(field: ScalarField, n: int) -> GramForm:
    return validate_gram(field, np.eye(n))


def _as_vector(g: GramForm, x, name="x") -> np.ndarray:
    v = np.asarray(x)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim != 1 or v.shape[0] != g.dim:
        raise DimensionMismatch(f"{name} has shape {v.shape}, form has dim {g.dim}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteEntry(f"{name} has non-finite entries")
    if g.field is ScalarField.REAL:
        if np.iscomplexobj(v):
            if np.any(v.imag != 0):
                raise FieldMismatch(f"{name} has imaginary parts but the form is real")
            v = v.real
        return v.astype(np.float64)
    return v.astype(np.complex128)


def _pairing_scale(g: GramForm, x: np.ndarray, y: np.ndarray) -> float:
    # bound on rounding in conj(y) @ G @ x
    return float(np.abs(y) @ np.abs(g.matrix) @ np.abs(x))


def inner(g: GramForm, x, y):
    """``<x, y>`` under ``g``; real for a real form, complex otherwise."""
    x = _as_vector(g, x, "x")
    y = _as_vector(g, y, "y")
    value = y.conj() @ g.matrix @ x
    return float(value) if g.field is ScalarField.REAL else complex(value)


def norm(g: GramForm, x, tol: Tolerances = DEFAULT_TOL) -> float:
    x = _as_vector(g, x)
    sq = x.conj() @ g.matrix @ x
    if np.iscomplexobj(sq) and abs(sq.imag) > tol.num * max(_pairing_scale(g, x, x), np.finfo(float).tiny):
        raise InternalInconsistency(f"<x, x> has imaginary part {sq.imag:.3e}")
    return float(np.sqrt(max(float(np.real(sq)), 0.0)))


def norm_oracle(g: GramForm) -> Callable[[np.ndarray], float]:
    """The norm of ``g`` as a plain function, for use with :func:`polarize`."""
    return lambda x: norm(g, x)


def _principal_arg(z) -> float:
    a = float(np.angle(z))
    return np.pi if a <= -np.pi else a


def angle(g: GramForm, x, y, kind: AngleKind = AngleKind.EUCLIDEAN, tol: Tolerances = DEFAULT_TOL) -> AngleValue:
    """Angle between two non-zero vectors under one of five conventions.

    Parameters
    ----------
    g : GramForm
    x, y : array_like
        Non-zero vectors of length ``g.dim``.
    kind : AngleKind
        ``EUCLIDEAN`` uses ``Re<x,y>``; ``COMPLEX_COS`` returns the complex
        cosine ``<x,y>/(|x||y|)`` without taking a complex arccos;
        ``HERMITIAN`` uses ``|<x,y>|`` and lands in ``[0, pi/2]``; ``PSEUDO``
        is the principal argument of the complex cosine; ``KAHLER`` (complex
        forms only) solves ``cos(theta_K) sin(theta) = Re<ix, y>/(|x||y|)``
        with ``theta`` the Euclidean angle.

    Raises
    ------
    ZeroVectorAngle
        If either vector has norm below ``tol.zero * sqrt(max|G|)``.
    ZeroInnerProductArg
        ``PSEUDO`` with ``<x, y> = 0``.
    KindRequiresComplex
        ``KAHLER`` on a real form.
    KahlerDegenerate
        ``KAHLER`` with ``sin(theta) <= tol.kahler``.
    """
    kind = AngleKind(kind)
    x = _as_vector(g, x, "x")
    y = _as_vector(g, y, "y")
    nx, ny = norm(g, x, tol), norm(g, y, tol)
    floor = tol.zero * np.sqrt(g.scale)
    if nx <= floor or ny <= floor:
        raise ZeroVectorAngle("angle is undefined when either vector is zero")
    ip = y.conj() @ g.matrix @ x
    denom = nx * ny

    if kind is AngleKind.EUCLIDEAN:
        c = float(np.clip(np.real(ip) / denom, -1.0, 1.0))
        return AngleValue(kind, c, theta=float(np.arccos(c)))
    if kind is AngleKind.COMPLEX_COS:
        return AngleValue(kind, complex(ip / denom))
    if kind is AngleKind.HERMITIAN:
        c = float(np.clip(abs(ip) / denom, 0.0, 1.0))
        return AngleValue(kind, c, theta=float(np.arccos(c)))
    if kind is AngleKind.PSEUDO:
        if abs(ip) <= tol.num * denom:
            raise ZeroInnerProductArg("argument of <x, y> = 0 is undefined")
        return AngleValue(kind, float(abs(ip) / denom), pseudo_arg=_principal_arg(ip))

    # KAHLER
    if g.field is not ScalarField.COMPLEX:
        raise KindRequiresComplex("the Kahler angle needs multiplication by i")
    # sin(theta) from the component of y off the real line through x; 1 - cos^2 cancels badly
    perp = y - (np.real(ip) / nx**2) * x
    sin_e = min(norm(g, perp, tol) / ny, 1.0)
    if sin_e <= tol.kahler:
        raise KahlerDegenerate(f"sin(theta) = {sin_e:.3e}: x and y span no real 2-plane")
    ip_ix = y.conj() @ g.matrix @ (1j * x)
    c = float(np.clip(np.real(ip_ix) / (denom * sin_e), -1.0, 1.0))
    return AngleValue(kind, c, theta=float(np.arccos(c)))


def cauchy_schwarz_gap(g: GramForm, x, y) -> float:
    """``|x||y| - |<x,y>|``; non-negative, and zero exactly for dependent pairs."""
    return norm(g, x) * norm(g, y) - abs(inner(g, x, y))


def polarize(field: ScalarField, norm_oracle: Callable, x, y):
    """Recover ``<x, y>`` from the norm alone.

    ``norm_oracle`` must be induced by some inner product; this cannot be
    checked from a single pair.
    """
    field = ScalarField(field)
    x = np.asarray(x, dtype=field.dtype)
    y = np.asarray(y, dtype=field.dtype)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatch(f"x has shape {x.shape}, y has shape {y.shape}")
    value = 0.25 * (norm_oracle(x + y) ** 2 - norm_oracle(x - y) ** 2)
    if field is ScalarField.REAL:
        return float(value)
    value += 0.25j * (norm_oracle(x + 1j * y) ** 2 - norm_oracle(x - 1j * y) ** 2)
    return complex(value)


def reconstruct_gram(field: ScalarField, dim: int, norm_oracle: Callable, tol: Tolerances = DEFAULT_TOL) -> GramForm:
    """Rebuild the Gram matrix behind a norm by polarizing basis pairs.

    Only basis pairs are polarized, so a norm that does not come from an
    inner product is caught only when those values already fail
    (``NotHermitian`` or ``NotPositiveDefinite``). The sup-norm on R^2, for
    instance, rebuilds the identity.
    """
    field = ScalarField(field)
    basis = np.eye(dim, dtype=field.dtype)
    G = np.empty((dim, dim), dtype=field.dtype)
    for i in range(dim):
        for j in range(dim):
            G[i, j] = polarize(field, norm_oracle, basis[j], basis[i])
    return validate_gram(field, G, tol)
