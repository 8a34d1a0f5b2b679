"""
Five ways to measure an angle
=============================

Real and complex vectors under a Gram matrix, measured with every angle
convention the library knows about.
"""

import numpy as np

from rigidangles import AngleKind, ScalarField, angle, inner, standard_form, validate_gram

# A skewed inner product on R^2: the basis vectors are no longer orthogonal.
g = validate_gram(ScalarField.REAL, [[1.0, -0.5], [-0.5, 0.5]])
x, y = np.array([1.0, 0.0]), np.array([1.0, 1.0])
print("<x, y> =", inner(g, x, y))
print("angle  =", angle(g, x, y).theta, "(pi/4 =", np.pi / 4, ")")

# Over C a right angle is weaker than orthogonality: 1 and i are at pi/2
# but their inner product is -i.
c1 = standard_form(ScalarField.COMPLEX, 1)
print("\nC^1: angle(1, i) =", angle(c1, [1.0], [1j]).theta, " <1, i> =", inner(c1, [1.0], [1j]))

# All five conventions on a random pair in C^3.
rng = np.random.default_rng(0)
h = standard_form(ScalarField.COMPLEX, 3)
u = rng.standard_normal(3) + 1j * rng.standard_normal(3)
v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
print()
for kind in AngleKind:
    a = angle(h, u, v, kind)
    print(f"{kind.value:<12} cos={a.cos_value:.6g}  theta={a.theta}  arg={a.pseudo_arg}")
