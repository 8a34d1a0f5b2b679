"""Seeded generators for test and demo inputs: random forms, vectors, and pairs with a known verdict."""
from __future__ import annotations

import numpy as np

from .core import GramForm, ScalarField, validate_gram


def random_matrix(rng: np.random.Generator, field: ScalarField, shape) -> np.ndarray:
    A = rng.standard_normal(shape)
    if ScalarField(field) is ScalarField.COMPLEX:
        A = A + 1j * rng.standard_normal(shape)
    return A


def random_vector(rng: np.random.Generator, field: ScalarField, n: int) -> np.ndarray:
    return random_matrix(rng, field, (n,))


def random_gram_matrix(rng: np.random.Generator, field: ScalarField, n: int) -> np.ndarray:
    """``A^H A + I`` for a Gaussian ``A``: positive definite and reasonably conditioned."""
    A = random_matrix(rng, field, (n, n))
    return A.conj().T @ A + np.eye(n)


def random_gram(rng: np.random.Generator, field: ScalarField, n: int) -> GramForm:
    return validate_gram(field, random_gram_matrix(rng, field, n))


def random_unitary(rng: np.random.Generator, field: ScalarField, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(random_matrix(rng, field, (n, n)))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def conformal_pair(rng, field, n, c):
    g1 = random_gram(rng, field, n)
    return g1, validate_gram(field, c * g1.matrix)


def nonconformal_pair(rng, field, n, min_gap=1e-3, scale=1.0):
    """Forms whose whitened spectrum has ``n`` eigenvalues in ``[1, 3]`` at least ``min_gap`` apart."""
    if n < 2:
        raise ValueError("a non-conformal pair needs n >= 2")
    while True:
        lam = np.sort(rng.uniform(1.0, 3.0, n))
        if np.min(np.diff(lam)) >= min_gap:
            break
    g1 = random_gram(rng, field, n)
    L = np.linalg.cholesky(g1.matrix)
    Q = random_unitary(rng, field, n)
    B = L @ Q
    G2 = scale * (B * lam) @ B.conj().T
    return g1, validate_gram(field, 0.5 * (G2 + G2.conj().T)), lam
