"""Walk through the sector structure: build blocks, diagonalize them both
ways, and show when the closed form hands over to the Jacobi solver."""

import numpy as np

from cavityduo import (
    ModelParams,
    build_block,
    oracle_eigensolve,
    quartic_invariants,
    spectral_decompose,
)

np.set_printoptions(precision=6, suppress=True)

params = ModelParams(delta1=0.3, delta2=-0.1, g1=1.0, g2=0.7, kappa=0.2, ising=0.1)
print("couplings:", params)

for n in (-1, 0, 1, 4):
    block = build_block(params, n)
    print(f"\nsector n={n} ({block.dimension}x{block.dimension} block):")
    print(block.matrix)

print("\nclosed-form route on the n=2 block:")
inv = quartic_invariants(params, 2)
print(f"  quartic invariants: p={inv.p:.6f} q={inv.q:.6f} r={inv.r:.6f} u={inv.u:.6f}")
dec = spectral_decompose(params, 2)
print(f"  method={dec.method}, energies={dec.energies}")
oracle = oracle_eigensolve(build_block(params, 2))
print(f"  Jacobi oracle agrees to {np.max(np.abs(dec.energies - oracle.energies)):.2e}")

print("\nequal couplings force a degenerate pair and the iterative fallback:")
sym = ModelParams(g1=1.0, g2=1.0)
for n in (1, 2, 5):
    dec = spectral_decompose(sym, n)
    gap = np.sqrt(4 * n + 2)
    print(f"  n={n}: method={dec.method}, energies={dec.energies}  (expected 0, 0, +-{gap:.4f})")
