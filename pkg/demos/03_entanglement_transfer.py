"""A pair loses its entanglement to a product environment, one CNOT at a time.

Qubits 1 and 2 share a partially entangled pure state.  Each CNOT from
qubit 1 onto a fresh environment qubit leaves the one-tangle of qubit 1
unchanged but multiplies tau_1|2^2 by p = 4(x-1)/x^2.  Only x = 2 is
immune.  The residual (one-tangle minus pair tangle) is correlation that
now lives outside the pair.
"""
import numpy as np

from qmonogamy.transfer import crossings, pair_tangle, run_transfer

for x in (1.5, 2.0, 6.0):
    run = run_transfer(x, n_env=8)
    print(f"x = {x}: p = {pair_tangle(x):.6f}")
    print("  M  tau_1|2^2      residual")
    for s in run.steps:
        print(f"  {s.M}  {s.tau_12_sq:.6e}  {s.residual:.6e}")

grid = np.round(np.arange(1.001, 10.0, 0.001), 3)
roots = crossings(grid, M=1)
print("\nafter one CNOT, pair tangle and residual cross at x =", [round(r, 4) for r in roots])
print("exact roots of p = 1/2:", [round(float(4 - 2 * np.sqrt(2)), 4), round(float(4 + 2 * np.sqrt(2)), 4)])
