"""
Witnesses and the equivalence suite
===================================

For a non-conformal pair of forms, produce concrete vectors whose angle
differs, and check every equivalent formulation of conformality on random
samples.
"""

import numpy as np

from rigidangles import (
    ScalarField,
    equivalence_suite,
    find_orthogonality_witness,
    four_vector_frame,
    frame_residuals,
    same_fixed_angle,
    standard_form,
)
from rigidangles.sampling import conformal_pair, nonconformal_pair

rng = np.random.default_rng(2)
g1, g2, lam = nonconformal_pair(rng, ScalarField.COMPLEX, 4)
print("whitened spectrum of g2:", np.round(lam, 4))

w = find_orthogonality_witness(g1, g2)
print(f"\northogonality witness: <x,y>_1 = {abs(w.inner_in_1):.1e}, <x,y>_2 = {w.inner_in_2:.4f}")

for theta0 in (np.pi / 6, np.pi / 3, 2 * np.pi / 3):
    same, w = same_fixed_angle(g1, g2, theta0)
    print(f"theta0 = {np.degrees(theta0):5.1f} deg: same={same}  "
          f"angle_1 = {np.degrees(w.angle_in_1):.4f}  angle_2 = {np.degrees(w.angle_in_2):.4f}")

print("\nnon-conformal pair:")
print("\n".join("  " + r for r in equivalence_suite(g1, g2).table()))

h1, h2 = conformal_pair(rng, ScalarField.COMPLEX, 4, c=37.0)
print("\nconformal pair (c = 37):")
print("\n".join("  " + r for r in equivalence_suite(h1, h2).table()))

# The frame used to move an angle from one orthogonal pair to another.
r2 = standard_form(ScalarField.REAL, 2)
e1, e2 = np.eye(2)
frame = four_vector_frame(r2, e1, e2, np.pi / 5)
print("\nframe z, w:", frame.z, frame.w)
print("largest frame residual:", frame_residuals(r2, frame).max())
