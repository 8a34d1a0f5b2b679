"""Builders for the shipped problem files and metric-field samples.

``python -m rigidangles.fixtures`` rewrites the JSON files under
``rigidangles/fixtures/``.
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from .core import ScalarField
from .metricfield import sample_from_arrays
from .problemfile import FIXTURES, ProblemFile, dump

# <(x1,y1),(x2,y2)> = x1 x2 - (x1 y2 + x2 y1)/2 + y1 y2 / 2
SKEWED_PLANE = np.array([[1.0, -0.5], [-0.5, 0.5]])
DEFECT_POINT = (0.5, -0.5)


def grid_points(side: int, lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    axis = np.linspace(lo, hi, side)
    p1, p2 = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([p1.ravel(), p2.ravel()])


def varying_factor(points: np.ndarray) -> np.ndarray:
    return 1.0 + points[:, 0] ** 2


def varying_sample(side: int = 16):
    """``g1 = I``, ``g2 = (1 + p1^2) I`` on a ``side x side`` grid over ``[-1, 1]^2``."""
    pts = grid_points(side)
    f = varying_factor(pts)
    return sample_from_arrays(pts, [np.eye(2)] * len(pts), [fi * np.eye(2) for fi in f])


def defect_sample(side: int = 5, defect=DEFECT_POINT):
    """``g1 = g2 = I`` except at ``defect``, where ``g2`` is the skewed form above."""
    pts = grid_points(side)
    hit = np.all(np.isclose(pts, defect), axis=1)
    if hit.sum() != 1:
        raise ValueError(f"defect point {defect} is not on the grid")
    g2 = [SKEWED_PLANE if h else np.eye(2) for h in hit]
    return sample_from_arrays(pts, [np.eye(2)] * len(pts), g2), int(np.argmax(hit))


def build(name: str) -> ProblemFile:
    e1, e2 = [1.0, 0.0], [0.0, 1.0]
    if name == "standard_r2":
        return ProblemFile(ScalarField.REAL, 2, {"I": np.eye(2)},
                           {"e1": e1, "e2": e2, "minus_e1": [-1.0, 0.0], "zero": [0.0, 0.0]})
    if name == "skewed_plane":
        return ProblemFile(ScalarField.REAL, 2, {"I": np.eye(2), "G2": SKEWED_PLANE},
                           {"e1": e1, "e2": e2, "ones": [1.0, 1.0], "zero": [0.0, 0.0]})
    if name == "scaled_by_2":
        return ProblemFile(ScalarField.REAL, 2, {"I": np.eye(2), "twoI": 2 * np.eye(2)},
                           {"e1": e1, "e2": e2, "ones": [1.0, 1.0]})
    if name == "complex_c1":
        return ProblemFile(ScalarField.COMPLEX, 1, {"std": np.eye(1, dtype=complex)},
                           {"one": np.array([1.0 + 0j]), "i": np.array([1j])})
    if name == "metric_varying":
        pts = grid_points(5)
        f = varying_factor(pts)
        mats = {"I": np.eye(2)}
        names = []
        for fi in f:
            key = f"scaled_{fi:g}"
            mats[key] = fi * np.eye(2)
            names.append(key)
        return ProblemFile(ScalarField.REAL, 2, mats, {},
                           {"points": pts, "g1": ["I"] * len(pts), "g2": names})
    if name == "metric_defect":
        pts = grid_points(5)
        hit = np.all(np.isclose(pts, DEFECT_POINT), axis=1)
        return ProblemFile(ScalarField.REAL, 2, {"I": np.eye(2), "skew": SKEWED_PLANE}, {},
                           {"points": pts, "g1": ["I"] * len(pts),
                            "g2": ["skew" if h else "I" for h in hit]})
    raise KeyError(name)


def main(argv=None) -> int:
    out = Path(__file__).with_name("fixtures")
    out.mkdir(exist_ok=True)
    for name in FIXTURES:
        dump(build(name), out / f"{name}.json")
        print("wrote", out / f"{name}.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
