"""GHZ and cluster states: no pair or triple entanglement, yet a full one-tangle.

Both states have vanishing two- and three-tangles, so every bit of the
one-tangle of qubit 1 has to come from four-way correlations.  The
characteristic coefficients of the two-qubit marginals show where it sits.
"""
from qmonogamy import analyze, make

for name in ("GHZ4", "CLUSTER"):
    report, constraints = analyze(make(name).state, restarts=4, iterations=150)
    print(f"== {name}")
    print(f"one-tangle tau_1|234        {report.one_tangle:.6f}")
    print(f"two-tangles                 {report.two_tangles}")
    print(f"four-tangles tau0, tau1     {report.tau0:.6f}, {report.tau1:.6f}")
    print(f"tau2 per pair               { {j: round(v, 6) for j, v in report.tau2.items()} }")
    print(f"tau3 per pair               { {j: round(v, 6) for j, v in report.tau3.items()} }")
    print("pair   n4        n8        n12        n16         delta     Delta")
    for j, c in report.coeffs.items():
        print(f"1{j}    {c.n4:.6f}  {c.n8:.6f}  {c.n12:.3e}  {c.n16:.3e}  "
              f"{report.delta[j]:.6f}  {report.Delta[j]:.6f}")
    print("constraint residuals:")
    for r in constraints.records:
        print(f"  {r.name:<12} {r.residual:+.2e}  {'ok' if r.passed else 'VIOLATED'}")
    print()

print("For GHZ4 each n4 equals sqrt(Delta) and the one-tangle is sum n4 - tau0^2/2 = 1.")
print("The cluster state has tau0 = 0, so its one-tangle is simply the sum of the n4.")
