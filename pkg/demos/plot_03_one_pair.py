"""
One shared angle is not enough
==============================

Two inner products can agree on the angle of a particular pair and still be
far from proportional. Agreeing on one angle value for *every* pair is what
forces conformality.
"""

import numpy as np

from rigidangles import ScalarField, angle, check_conformal, standard_form, validate_gram

g1 = standard_form(ScalarField.REAL, 2)
g2 = validate_gram(ScalarField.REAL, [[1.0, -0.5], [-0.5, 0.5]])
x, y = np.array([1.0, 0.0]), np.array([1.0, 1.0])

print("angle under g1:", angle(g1, x, y).theta)
print("angle under g2:", angle(g2, x, y).theta)

verdict = check_conformal(g1, g2)
print("\nconformal?", verdict.conformal, f"(residual {verdict.residual:.3f})")
w = verdict.witness
print("separating pair:", w.x, w.y)
print(f"  angle under g1 = {w.angle_in_1:.6f}, under g2 = {w.angle_in_2:.6f}")

# The obvious pair works too: e1 and e2 are orthogonal for g1 only.
e1, e2 = np.eye(2)
print("\ne1, e2:", angle(g1, e1, e2).theta, "vs", angle(g2, e1, e2).theta)

# A proportional form keeps every angle.
g3 = validate_gram(ScalarField.REAL, 2 * np.eye(2))
v = check_conformal(g1, g3)
print("\ng1 vs 2*g1: conformal =", v.conformal, " c =", v.factor_c)
