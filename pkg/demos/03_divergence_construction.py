"""The separable construction g_N: bounded variation norm, logarithmically growing partial sums."""
import math

from lambdavar import exact_coeffs_gN, fourier_coefficients, g_N_source
from lambdavar.counterexample import divergence_value, sharp_norm_gN

import numpy as np

N = 8
fft = fourier_coefficients(g_N_source(2, N), N, M=64 * (2 * N + 1))
print("max |FFT - closed form| at M = 64(2N+1):", np.abs(fft.coeffs - exact_coeffs_gN(2, N).coeffs).max())

print(" N   S g_N(0)/ln^2 N   sharp lower/ref   S f_N(0)   routes")
for N in (8, 16, 32, 64):
    norm = sharp_norm_gN(2, N)
    dv = divergence_value(2, N, norm=norm)
    print(f"{N:3d}   {dv.S_gN0_quad / math.log(N) ** 2:.5f}           {norm.ratio:.4f}"
          f"          {dv.S_fN0:.5f}    {dv.discrepancy:.1e}")
