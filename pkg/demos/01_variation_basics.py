"""Lambda-variation of small grid functions, step by step."""
import numpy as np

from lambdavar import (GridFunction, IndexSet, hardy_index_variation, lambda_harmonic, lambda_paper,
                       partial_variation, sharp_variation, star_variation_2d, total_variation)

H = lambda_harmonic()

# A zigzag on five points.  The best family uses the four unit steps, and the
# harmonic weights 1, 1/2, 1/3, 1/4 add up to 25/12.
zig = GridFunction.from_values([0.0, 1.0, 0.0, 1.0, 0.0])
axes, total = sharp_variation(zig, H)
print("zigzag, harmonic:", total.value, "=", 25 / 12)
print("witness:", total.witness["parts"][0]["intervals"])

# f(x, y) = x y on {0, 1/2, 1}^2
ax = np.array([0.0, 0.5, 1.0])
xy = GridFunction((ax, ax), np.outer(ax, ax))
print("sharp  :", sharp_variation(xy, H)[1].value)      # 1 per axis
print("partial:", partial_variation(xy, H)[1].value)
print("V^{0,1}:", hardy_index_variation(xy, IndexSet((0, 1), 2), H).value)
print("total  :", total_variation(xy, H)[1].value)      # 1 + 1 + 1
print("star   :", star_variation_2d(xy, H).value)

# Sequences need not be monotone: for d = 3 the first weight exceeds the second,
# and the term order is chosen by sorting the weights, not by position.
lam3 = lambda_paper(3)
print("lambda_1, lambda_2 for d=3:", lam3(1), lam3(2))
rng = np.random.default_rng(0)
f = GridFunction.from_values(rng.uniform(-1, 1, (6, 5)))
for part in sharp_variation(f, lam3)[0]:
    print(part.functional, "bracket", (part.lower, part.upper), "exact" if part.exact else "")

# Past the enumeration cap the bracket comes from the DP witness (lower) and the
# summation-by-parts bound (upper).
long = GridFunction.from_values(np.cumsum(rng.normal(size=60)))
br = sharp_variation(long, lambda_paper(2))[1]
print("60-point random walk:", br.lower, "<= V <=", br.upper)
