"""Two structural effects at larger photon number: convergence of the Bell
branches to their large-n limit, and closed trajectories when the two
oscillation frequencies are commensurate."""

import numpy as np

from cavityduo import SymmetricParams, limit_curve_inf
from cavityduo.symmetric import closed_cp_of_t, curve_value

grid = np.linspace(0.4, 1.0, 400)
limit = limit_curve_inf(grid)[0]
print("sup distance of the Bell lower branch from its large-n limit:")
for n in (1, 5, 20, 100, 500):
    c_n = curve_value(SymmetricParams(n, np.pi / 4), grid, "minus")
    print(f"  n={n:4d}: {np.max(np.abs(c_n - limit)):.2e}")

omega5 = np.sqrt(22.0)
sp = SymmetricParams(5, -np.pi / 20, 5 * omega5, 5 * omega5)
period = 2 * np.pi / omega5
print(f"\nequal couplings 5*sqrt(22) at n=5: oscillation frequencies {omega5:.4f} and {20 * omega5:.4f}")
print(f"common period {period:.6f}")
for k in (1, 3, 10):
    start = closed_cp_of_t(sp, 0.0)
    back = closed_cp_of_t(sp, k * period)
    print(f"  after {k:2d} periods: |dC| = {abs(back.concurrence - start.concurrence):.2e}, "
          f"|dP| = {abs(back.purity - start.purity):.2e}")
print("the trajectory retraces itself instead of filling the allowed band")
