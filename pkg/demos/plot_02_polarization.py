"""
Recovering an inner product from its norm
=========================================

The polarization identity rebuilds the whole Gram matrix from nothing but a
norm function.
"""

import numpy as np

from rigidangles import ScalarField, norm_oracle, polarize, reconstruct_gram
from rigidangles.sampling import random_gram

rng = np.random.default_rng(1)

for field in ScalarField:
    g = random_gram(rng, field, 4)
    rebuilt = reconstruct_gram(field, 4, norm_oracle(g))
    err = np.max(np.abs(rebuilt.matrix - g.matrix)) / g.scale
    print(f"{field.value:<8} relative reconstruction error: {err:.2e}")

# A single pairing, from four norms (two in the real case).
g = random_gram(rng, ScalarField.COMPLEX, 3)
x, y = rng.standard_normal(3) + 0j, 1j * rng.standard_normal(3)
print("\npolarized  <x, y> =", polarize(ScalarField.COMPLEX, norm_oracle(g), x, y))
print("direct     <x, y> =", y.conj() @ g.matrix @ x)

# The sup-norm is not induced by any inner product. Basis pairs alone cannot
# tell: they rebuild the identity, whose norm then disagrees off the axes.
sup = lambda v: float(np.max(np.abs(v)))
fake = reconstruct_gram(ScalarField.REAL, 2, sup)
probe = np.array([1.0, 1.0])
print("\nsup-norm rebuilds", fake.matrix.tolist())
print("|(1,1)|: sup-norm", sup(probe), "vs rebuilt form", norm_oracle(fake)(probe))
