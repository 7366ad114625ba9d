"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (the lines are repeated in the
terminal summary) or ``python3 tests/test_acceptance.py``.
"""
import math
import warnings

import numpy as np

from qmonogamy.errors import OptimizerDidNotImprove
from qmonogamy.fonts import coherence_X
from qmonogamy.invariants import PAIRS, TRIPLES
from qmonogamy.monogamy import ckw, sweep_L_family
from qmonogamy.qstate import partial_trace, random_state
from qmonogamy.selftest import _random_checks
from qmonogamy.spectral import poly_coeffs
from qmonogamy.tangles import four_tangles, one_tangle, tangle_report, three_tangle_mixed
from qmonogamy.transfer import crossings, run_transfer
from qmonogamy.zoo import classify, closed_forms_L, make, tangle_evidence

RESULTS = []


class Checks:
    """Collects (label, got, want, tol) rows and reports the worst one."""

    def __init__(self, number, title):
        self.number, self.title, self.rows = number, title, []

    def close(self, label, got, want, tol):
        self.rows.append((label, float(got), float(want), tol, abs(got - want) <= tol))

    def at_most(self, label, got, bound, tol=0.0):
        self.rows.append((label, float(got), float(bound), tol, got <= bound + tol))

    def at_least(self, label, got, bound, tol=0.0):
        self.rows.append((label, float(got), float(bound), tol, got >= bound - tol))

    def truth(self, label, ok):
        self.rows.append((label, float(ok), 1.0, 0.0, bool(ok)))

    def finish(self):
        failed = [r for r in self.rows if not r[4]]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(self.rows)} checks"
        if failed:
            label, got, want, tol, _ = failed[0]
            detail += f"; {len(failed)} failed, first: {label} = {got:.6g} vs {want:.6g} (tol {tol:g})"
        line = f"AC{self.number} {status}  {self.title}: {detail}"
        print(line)
        RESULTS.append(line)
        assert not failed, line


def _quiet_roof(rho, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OptimizerDidNotImprove)
        return three_tangle_mixed(rho, **kw).estimate


def test_ac1_ghz4_exact_values():
    c = Checks(1, "GHZ4 exact values")
    s = make("GHZ4").state
    rep = tangle_report(s)
    for j in PAIRS:
        p = rep.coeffs[j]
        c.close(f"n4(rho1{j})", p.n4, 0.5, 1e-10)
        c.close(f"4 n8(rho1{j})", 4 * p.n8, 0.25, 1e-10)
        c.close(f"n12(rho1{j})", p.n12, 0, 1e-10)
        c.close(f"n16(rho1{j})", p.n16, 0, 1e-10)
        c.close(f"tau2(rho1{j})", rep.tau2[j], 1, 1e-10)
        c.close(f"tau3(rho1{j})", rep.tau3[j], 2 / 3, 1e-10)
        c.close(f"delta1{j}", rep.delta[j], 0.25, 1e-10)
    c.close("one-tangle", rep.one_tangle, 1, 1e-10)
    c.close("tau0", rep.tau0, 1, 1e-10)
    c.close("tau1", rep.tau1, 1, 1e-10)
    c.close("sum Delta", sum(rep.Delta.values()), 0.75, 1e-10)
    c.finish()


def test_ac2_cluster_table():
    c = Checks(2, "cluster table")
    rep = tangle_report(make("CLUSTER").state)
    table = {  # n4, n8, n12, n16, delta, chi^-
        2: (1 / 2, 1 / 16, 0, 0, 1 / 4, 0),
        3: (1 / 4, 3 / 128, 1 / 1024, 1 / 65536, 3 / 32, -1 / 32),
        4: (1 / 4, 3 / 128, 1 / 1024, 1 / 65536, 3 / 32, -1 / 32),
    }
    for j, want in table.items():
        p = rep.coeffs[j]
        got = (p.n4, p.n8, p.n12, p.n16, rep.delta[j], p.chi_minus)
        for name, g, w in zip(("n4", "n8", "n12", "n16", "delta", "chi-"), got, want):
            c.close(f"{name}(rho1{j})", g, w, 1e-10)
    c.close("sum n4", sum(rep.coeffs[j].n4 for j in PAIRS), 1, 1e-10)
    c.close("sum n8", sum(rep.coeffs[j].n8 for j in PAIRS), 7 / 64, 1e-10)
    c.close("sum delta", sum(rep.delta.values()), 7 / 16, 1e-10)
    c.close("sum chi-", sum(rep.coeffs[j].chi_minus for j in PAIRS), -1 / 16, 1e-10)
    rhs = (rep.tau1**2 / 4 + rep.tau2[2] ** 2 / 8
           + 3 / 32 * sum(rep.tau3[j] ** 2 for j in PAIRS))
    c.close("sum delta = four-tangle combination", sum(rep.delta.values()), rhs, 1e-10)
    c.finish()


def test_ac3_bell_product():
    c = Checks(3, "Bell product state")
    s = make("BELL_PRODUCT").state
    coeffs = {j: poly_coeffs(partial_trace(s, [1, j])) for j in PAIRS}
    c.close("tau_1|2^2", max(coeffs[2].c_value, 0) ** 2, 1, 1e-10)
    for j in (3, 4):
        p = coeffs[j]
        c.close(f"C1{j}", p.c_value, -0.5, 1e-10)
        c.close(f"n8(rho1{j})", p.n8, 3 / 2**7, 1e-10)
        c.close(f"n12(rho1{j})", p.n12, 2**-10, 1e-10)
        c.close(f"n16(rho1{j})", p.n16, 2**-16, 1e-10)
        c.close(f"f16(rho1{j})", p.f16, 2**-12, 1e-10)
    tau0 = four_tangles(s).tau0
    c.close("C13^2 + C14^2 = tau0^2 / 2", coeffs[3].c_value ** 2 + coeffs[4].c_value ** 2,
            tau0**2 / 2, 1e-10)
    c.finish()


def test_ac4_L_family():
    c = Checks(4, "L family closed forms, 61-point grid")
    grid = np.linspace(0, 3, 61)
    for a in grid:
        s = make("L_AIA", {"a": float(a)}).state
        cf = closed_forms_L(a)
        ft = four_tangles(s)
        n4 = {j: poly_coeffs(partial_trace(s, [1, j])).n4 for j in PAIRS}
        c.close(f"one-tangle a={a:.2f}", one_tangle(s), cf["one_tangle"], 1e-9)
        c.close(f"tau0^2 a={a:.2f}", ft.tau0**2, cf["tau0_sq"], 1e-9)
        c.close(f"n4(rho12) a={a:.2f}", n4[2], cf["n4_12"], 1e-9)
        c.close(f"n4(rho13) a={a:.2f}", n4[3], cf["n4_13"], 1e-9)
        c.close(f"n4(rho14) a={a:.2f}", n4[4], cf["n4_13"], 1e-9)
        c.close(f"tau2(rho12) a={a:.2f}", ft.tau2[2], cf["tau2_12"], 1e-9)
        c.close(f"tau3(rho13) a={a:.2f}", ft.tau3[3], cf["tau3_13"], 1e-9)
        c.close(f"tau2(rho13) a={a:.2f}", ft.tau2[3], cf["tau2_13"], 1e-9)
    for row in sweep_L_family(grid):
        want = closed_forms_L(row.a)["three_tangle"]
        for jk in TRIPLES:
            c.close(f"tau_1|{jk[0]}|{jk[1]} a={row.a:.2f}", row.three_tangles[jk], want, 1e-3)
        c.at_least(f"S a={row.a:.2f}", row.S, 0.0)
        c.at_least(f"R a={row.a:.2f}", row.R, 0.0)
    c.finish()


def test_ac5_transfer_model():
    c = Checks(5, "entanglement transfer")
    for x in (1.5, 2.0, 3.0, 6.0, 10.0):
        p = 4 * (x - 1) / x**2
        for step in run_transfer(x, 8).steps[1:]:
            c.close(f"x={x} M={step.M}", step.tau_12_sq, p ** (step.M + 1), 1e-9)
    for step in run_transfer(2.0, 8).steps:
        c.close(f"fixed point M={step.M}", step.tau_12_sq, 1.0, 1e-9)
    grid = np.round(np.arange(1.001, 10.0, 0.001), 3)
    roots = crossings(grid, M=1)
    c.truth("two M=1 crossings", len(roots) == 2)
    for got, want in zip(roots, (1.1716, 6.8284)):
        c.close(f"crossing near {want}", got, want, 1e-3)
    c.finish()


def test_ac6_oracle_property_suites():
    c = Checks(6, "property suites on 200 random states")
    rng = np.random.default_rng(6)
    states4 = [random_state(4, rng) for _ in range(200)]
    for r in _random_checks(states4, [], rng):
        if r.samples:
            c.at_most(r.name, r.worst, r.tol)
    c.finish()


def test_ac7_ckw_and_coherence_sums():
    c = Checks(7, "CKW on 500 states; coherence sums for N=3,5")
    rng = np.random.default_rng(7)
    worst = max(abs(ckw(random_state(3, rng)).residual) for _ in range(500))
    c.at_most("CKW worst residual", worst, 1e-9)
    for n in (3, 5):
        worst = 0.0
        for _ in range(50):
            s = random_state(n, rng)
            worst = max(worst, abs(math.fsum(coherence_X(s, j) for j in range(2, n + 1))))
        c.at_most(f"sum X (N={n})", worst, 1e-10)
    c.finish()


def test_ac8_zero_tangle_verdicts():
    c = Checks(8, "zero-tangle verdicts")
    w = make("W_TILDE").state
    ev = tangle_evidence(w)
    for k, v in ev.items():
        if k.startswith(("three", "four")):
            c.at_most(f"W~ {k}", v, 1e-6)
    c.truth("W~ is Group IV", classify(w).group == "IV")
    chi = make("CHI").state
    ft = four_tangles(chi)
    t123 = _quiet_roof(partial_trace(chi, [1, 2, 3]))
    t124 = _quiet_roof(partial_trace(chi, [1, 2, 4]))
    c.close("chi: tau2(rho12)^2 = 4 tau123 tau124", ft.tau2[2] ** 2, 4 * t123 * t124, 1e-8)
    c.close("chi: tau2(rho13)", ft.tau2[3], 0, 1e-8)
    c.close("chi: tau2(rho14)", ft.tau2[4], 0, 1e-8)
    c.finish()


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_ac"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
