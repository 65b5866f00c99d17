"""Local sharp variation near a point: decays for smooth data and inside each quadrant of a jump."""
import numpy as np

from lambdavar import lambda_paper, sources
from lambdavar.variation import local_box_sharp_variation, local_sharp_variation

lam = lambda_paper(2)
smooth = sources.smooth_bump(2)
jump = sources.jump_plus_smooth(2)
x = (np.pi, 1.0)
print(" eps        smooth box   jump box    jump (+,+)  jump (-,+)")
for j in range(0, 9, 2):
    eps = 2.0 ** -j
    print(f"{eps:8.5f}  {local_box_sharp_variation(smooth, lam, (1.0, 2.0), eps).lower:10.5f}"
          f"  {local_box_sharp_variation(jump, lam, x, eps).lower:10.5f}"
          f"  {local_sharp_variation(jump, lam, x, eps, (1, 1)).lower:10.5f}"
          f"  {local_sharp_variation(jump, lam, x, eps, (-1, 1)).lower:10.5f}")
