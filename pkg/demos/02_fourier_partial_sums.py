"""Partial sums of Fourier series on the torus: a 1-D square wave and a 2-D quadrant jump."""
import numpy as np

from lambdavar import f_star, fourier_coefficients, rectangular_partial_sum, sources
from lambdavar.fourier import partial_sum_table

sq = sources.square_wave()
for N in (16, 64, 256):
    c = fourier_coefficients(sq, N)
    print(f"N={N:4d}  S_N(0) = {rectangular_partial_sum(c, N, (0.0,)):+.2e}"
          f"  S_N(pi/2) = {rectangular_partial_sum(c, N, (np.pi / 2,)):.6f}")

# At a corner of a box indicator the four one-sided limits are 1, 0, 0, 0.
src = sources.quadrant_jump(2, extent=(2.0, 2.5))
rep = f_star(src, (0.0, 0.0))
print("limits:", {k: v for k, (v, _) in rep.limits.items()}, "f* =", rep.f_star)

bounds = [2 ** j for j in range(9)]
c = fourier_coefficients(src, bounds[-1])
table = partial_sum_table(c, bounds, (0.0, 0.0))
dev = np.abs(table - rep.f_star)
for i, N0 in enumerate(bounds):
    print(f"min(N1, N2) >= {N0:3d}: max deviation {dev[i:, i:].max():.3e}")
