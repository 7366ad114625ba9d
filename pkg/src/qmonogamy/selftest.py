"""Identity checks on seeded random states plus exact values of named states.

Each property reports the worst residual over its sample.  Properties marked
``known_defect`` record a relation that is known not to hold as written;
they are printed as XFAIL when they fail and do not affect the verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fonts import coherence_X, invariant_set, n4_form, n8_form
from .invariants import PAIRS, four_invariants, n8_decomposition
from .qstate import apply_local_unitary, partial_trace, random_state, random_unitary
from .spectral import poly_coeffs, verify_n4_identity
from .tangles import (four_tangles, one_tangle, one_tangle_from_fonts,
                      three_tangle_pure, three_tangle_upper, two_tangles)


@dataclass(frozen=True)
class PropertyResult:
    name: str
    worst: float
    tol: float
    samples: int
    known_defect: bool = False

    @property
    def holds(self) -> bool:
        return self.worst <= self.tol

    @property
    def ok(self) -> bool:
        return self.holds or self.known_defect

    def line(self) -> str:
        if self.known_defect:
            tag = "XPASS" if self.holds else "XFAIL"
        else:
            tag = "PASS" if self.holds else "FAIL"
        return f"{tag:<5} {self.name:<34} worst={self.worst:.3e} tol={self.tol:.0e} n={self.samples}"


def _worst(values) -> float:
    return max((float(v) for v in values), default=0.0)


def lu_fingerprint(state) -> np.ndarray:
    """Every analytic tangle of a four-qubit state, flattened, focus qubit 1."""
    inv = four_invariants(state)
    ft = four_tangles(state, inv)
    twos = two_tangles(state, 1)
    vals = [one_tangle(state, 1), ft.tau0, ft.tau1]
    vals += [twos[j] for j in PAIRS]
    vals += [ft.tau2[j] for j in PAIRS] + [ft.tau3[j] for j in PAIRS]
    vals += [three_tangle_upper(state, (1, j, k), inv) for j, k in ((2, 3), (2, 4), (3, 4))]
    return np.array(vals)


def _random_checks(states4, states3, rng) -> list[PropertyResult]:
    n = len(states4)
    r_n4, r_n8, r_dec, r_p, r_id, r_1t, r_lu = [], [], [], [], [], [], []
    for s in states4:
        inv = four_invariants(s)
        for j in PAIRS:
            c = poly_coeffs(partial_trace(s, [1, j]))
            iset = invariant_set(s, j)
            r_n4.append(abs(n4_form(iset) - c.n4))
            r_n8.append(abs(n8_form(iset) - c.n8))
            r_dec.append(abs(n8_decomposition(s, j, inv, check=False) - c.n8))
            r_id.append(verify_n4_identity(partial_trace(s, [1, j])))
        r_p.append(abs(sum(inv.p.values()) - 3 * inv.i42**2))
        ft = four_tangles(s, inv)
        n4sum = math.fsum(poly_coeffs(partial_trace(s, [1, j])).n4 for j in PAIRS)
        r_1t.append(abs(one_tangle(s, 1) - (n4sum - 0.5 * ft.tau0**2)))
        t = s
        for q in range(1, 5):
            t = apply_local_unitary(t, q, random_unitary(rng))
        r_lu.append(np.max(np.abs(lu_fingerprint(s) - lu_fingerprint(t))))
    r_ckw, r_x3 = [], []
    for s in states3:
        twos = two_tangles(s, 1)
        r_ckw.append(abs(one_tangle(s, 1) - sum(v * v for v in twos.values())
                         - three_tangle_pure(s)))
        r_x3.append(abs(math.fsum(coherence_X(s, j) for j in (2, 3))))
    return [
        PropertyResult("n4 font form vs trace", _worst(r_n4), 1e-8, n),
        PropertyResult("n8 font form vs trace", _worst(r_n8), 1e-8, n),
        PropertyResult("n8 invariant decomposition", _worst(r_dec), 1e-8, n),
        PropertyResult("P12+P13+P14 = 3 I42^2", _worst(r_p), 1e-9, n),
        PropertyResult("n4 from |C|, n8, n16, f16", _worst(r_id), 1e-8, n),
        PropertyResult("one-tangle from n4 and tau0", _worst(r_1t), 1e-9, n),
        PropertyResult("local-unitary invariance", _worst(r_lu), 1e-9, n),
        PropertyResult("CKW equality (3 qubits)", _worst(r_ckw), 1e-9, len(states3)),
        PropertyResult("sum of X vanishes (3 qubits)", _worst(r_x3), 1e-10, len(states3)),
    ]


def _defect_checks(rng, k: int) -> list[PropertyResult]:
    out = []
    for n in (4, 5, 6):
        states = [random_state(n, rng) for _ in range(k)]
        out.append(PropertyResult(
            f"one-tangle from fonts ({n} qubits)",
            _worst(abs(one_tangle(s, 1) - one_tangle_from_fonts(s)) for s in states),
            1e-9, k, known_defect=True))
    states5 = [random_state(5, rng) for _ in range(k)]
    out.append(PropertyResult(
        "sum of X vanishes (5 qubits)",
        _worst(abs(math.fsum(coherence_X(s, j) for j in range(2, 6))) for s in states5),
        1e-10, k, known_defect=True))
    return out


def _zoo_checks() -> list[PropertyResult]:
    from .zoo import make

    ghz = make("GHZ4").state
    ft = four_tangles(ghz)
    got = [one_tangle(ghz), ft.tau0, ft.tau1, *ft.tau2.values(), *ft.tau3.values()]
    want = [1, 1, 1, 1, 1, 1, 2 / 3, 2 / 3, 2 / 3]
    for j in PAIRS:
        c = poly_coeffs(partial_trace(ghz, [1, j]))
        got += [c.n4, 4 * c.n8, c.n12, c.n16]
        want += [0.5, 0.25, 0, 0]
    res = [PropertyResult("GHZ4 exact values", _worst(np.abs(np.subtract(got, want))), 1e-10,
                          1)]
    cl = make("CLUSTER").state
    got, want = [], []
    for j, (n4, n8, n12, n16) in zip(PAIRS, [(1 / 2, 1 / 16, 0, 0),
                                             (1 / 4, 3 / 128, 2**-10, 2**-16),
                                             (1 / 4, 3 / 128, 2**-10, 2**-16)]):
        c = poly_coeffs(partial_trace(cl, [1, j]))
        got += [c.n4, c.n8, c.n12, c.n16]
        want += [n4, n8, n12, n16]
    res.append(PropertyResult("cluster coefficients", _worst(np.abs(np.subtract(got, want))),
                              1e-10, 1))
    return res


def run_selftest(n_random: int = 200, seed: int = 0) -> list[PropertyResult]:
    """All properties; ``n_random = 0`` runs the named-state checks only."""
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise TypeError(f"seed must be an integer, got {seed!r}")
    rng = np.random.default_rng(seed)
    results = _zoo_checks()
    if n_random > 0:
        states4 = [random_state(4, rng) for _ in range(n_random)]
        states3 = [random_state(3, rng) for _ in range(n_random)]
        results += _random_checks(states4, states3, rng)
        results += _defect_checks(rng, min(n_random, 20))
    return results
