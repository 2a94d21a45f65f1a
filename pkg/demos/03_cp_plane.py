"""Concurrence-purity-plane geometry: trajectory bounds, the MEMS frontier,
the Werner line, and the minimum-purity branch rule."""

import numpy as np

from cavityduo import SymmetricParams, cp_curves, mems_frontier, p_min, werner_line
from cavityduo.symmetric import closed_cp_series, curve_value

sp = SymmetricParams(n=0, alpha=np.pi / 20, kappa=1.5, ising=0.0)
ts = np.arange(0, 2001) * 0.01
conc, pur = closed_cp_series(sp, ts)
print(f"interacting trajectory: P in [{pur.min():.4f}, {pur.max():.4f}], "
      f"C in [{conc.min():.4f}, {conc.max():.4f}]")
print(f"p_min formula gives {p_min(sp):.6f} (grid minimum {pur.min():.6f})")

free = SymmetricParams(0, np.pi / 20)
bell = SymmetricParams(0, np.pi / 4)
lower = curve_value(free, pur, "minus")
upper = curve_value(bell, pur, "minus")
print(f"band check: min(C - lower) = {np.min(conc - lower):+.2e}, "
      f"min(upper - C) = {np.min(upper - conc):+.2e}  (both nonnegative)")

print("\nreference curves at a few purities:")
print(f"{'P':>6s} {'C_-(pi/20)':>11s} {'C_-(pi/4)':>10s} {'MEMS':>7s}")
for p in (0.6, 0.7, 0.85, 1.0):
    print(f"{p:6.2f} {float(curve_value(free, p, 'minus')):11.4f} "
          f"{float(curve_value(bell, p, 'minus')):10.4f} {mems_frontier(p):7.4f}")

print("\nthe Bell branch IS the frontier on [5/9, 1]:")
grid = np.linspace(5 / 9, 1.0, 5)
print("  max |C_-(pi/4) - MEMS| =", np.max(np.abs(curve_value(bell, grid, "minus") - mems_frontier(grid))))

print("\nWerner family endpoints:", werner_line(0.0), werner_line(1.0))
curves = cp_curves(free)
names = [c.name for c in curves.all_curves()]
print("curve set for figure scripts:", ", ".join(names))
