"""
Conformal factor of a sampled metric field
==========================================

Two Riemannian metrics sampled on a grid are conformal when they are
proportional at every point; the factor may vary from point to point.
"""

import numpy as np

from rigidangles import pointwise_conformality, theta0_field_check
from rigidangles.fixtures import defect_sample, varying_sample

sample = varying_sample(16)
field = pointwise_conformality(sample)
print("verdict:", field.verdict.value)
print(field.convention)
expected = 1 + sample.points[:, 0] ** 2
print("max relative error of f against 1 + p1^2:", np.max(np.abs(field.factors - expected) / expected))

# One bad point is enough to break conformality, and it is located exactly.
defect, planted = defect_sample()
result = pointwise_conformality(defect)
print("\ndefect verdict:", result.verdict.value, "at point", result.failing_point, "(index", result.failing_index, ")")

# The same points fail the fixed-angle test.
shares = theta0_field_check(defect, np.pi / 3)
print("points not sharing the 60 degree angle:", defect.points[~shares].tolist())
