"""Monogamy constraints of a four-qubit pure state, evaluated as residuals.

Each record carries both sides of one relation.  Equalities pass when
``|lhs - rhs| <= tol``; inequalities when ``lhs - rhs >= -tol``.  Relations
that use convex-roof three-tangles get the looser optimizer tolerance unless
every three-tangle involved is zero to roundoff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadIndex, InternalMismatch, StaleReport
from .invariants import PAIRS
from .qstate import PureState
from .tangles import (DEFAULT_ITERATIONS, DEFAULT_RESTARTS, TangleReport,
                      fingerprint, one_tangle, tangle_report, three_tangle_pure,
                      two_tangles)

ANALYTIC_TOL = 1e-6
OPTIMIZER_TOL = 1e-3
EXACT_ZERO = 1e-12  # three-tangles below this count as exactly zero


@dataclass(frozen=True)
class ConstraintRecord:
    name: str
    lhs: float
    rhs: float
    kind: str  # "equality" or "inequality"
    tol: float
    uses_optimizer: bool = False
    diagnostic: bool = False
    note: str = ""

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        if self.kind == "equality":
            return abs(self.residual) <= self.tol
        return self.residual >= -self.tol

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "residual": self.residual, "kind": self.kind, "tol": self.tol,
                "pass": self.passed, "uses_optimizer": self.uses_optimizer,
                "diagnostic": self.diagnostic, "note": self.note}


@dataclass(frozen=True)
class ConstraintReport:
    focus_qubit: int
    records: tuple

    def __getitem__(self, name: str) -> ConstraintRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self) -> list[str]:
        return [r.name for r in self.records]

    @property
    def equalities_pass(self) -> bool:
        return all(r.passed for r in self.records if r.kind == "equality")

    def failures(self) -> list[ConstraintRecord]:
        return [r for r in self.records if not r.passed and not r.diagnostic]


def ckw(state: PureState, focus: int = 1) -> ConstraintRecord:
    """``tau_{1|23} = tau_{1|2}**2 + tau_{1|3}**2 + tau_{1|2|3}`` for a
    three-qubit pure state."""
    if state.n_qubits != 3:
        raise BadIndex("the CKW equality is stated for three-qubit pure states")
    twos = two_tangles(state, focus)
    return ConstraintRecord("CKW", one_tangle(state, focus),
                            math.fsum(t * t for t in twos.values()) + three_tangle_pure(state),
                            "equality", 1e-9)


def evaluate_constraints(state: PureState, tangles: TangleReport,
                         focus: int | None = None) -> ConstraintReport:
    """Evaluate every four-qubit relation from a tangle report of ``state``."""
    if state.n_qubits != 4:
        raise BadIndex("constraints are evaluated on four-qubit states")
    if focus is not None and focus != tangles.focus_qubit:
        raise StaleReport(f"report has focus {tangles.focus_qubit}, asked for {focus}")
    if tangles.fingerprint and tangles.fingerprint != fingerprint(state):
        raise StaleReport("tangle report was computed for a different state")

    t = tangles
    pairs = sorted(t.two_tangles)
    triples = sorted(t.three_tangles)
    tri = t.three_tangles
    tri_sq = {jk: v * v for jk, v in tri.items()}
    optimizer_used = any(v > EXACT_ZERO for v in tri.values())
    tol3 = OPTIMIZER_TOL if optimizer_used else ANALYTIC_TOL

    def with_j(j):
        return [jk for jk in triples if j in jk]

    n4 = {j: t.coeffs[j].n4 for j in pairs}
    n8 = {j: t.coeffs[j].n8 for j in pairs}
    tau2sq = {j: t.two_tangles[j] ** 2 for j in pairs}
    half_tau0_sq = 0.5 * t.tau0**2
    recs = []
    recs.append(ConstraintRecord("EQ_1TANN4", t.one_tangle,
                                 math.fsum(n4.values()) - half_tau0_sq,
                                 "equality", ANALYTIC_TOL))
    for j in pairs:
        part = math.fsum(tri_sq[jk] for jk in with_j(j)) / 4
        recs.append(ConstraintRecord(f"EQ_N81JC({j})", 4 * n8[j], part + t.delta[j],
                                     "equality", tol3, optimizer_used))
    recs.append(ConstraintRecord("EQ_SUM4N8C", 4 * math.fsum(n8.values())
                                 - 0.5 * math.fsum(tri_sq.values()),
                                 math.fsum(t.delta.values()), "equality", tol3, optimizer_used))
    lhs_j = {}
    for j in pairs:
        part = math.fsum(tri_sq[jk] for jk in with_j(j)) / 4
        if t.c_values[j] <= 0:
            lhs_j[j] = n4[j] ** 2 - part
            note = "C <= 0: n4**2 form"
        else:
            lhs_j[j] = (n4[j] - tau2sq[j]) ** 2 - part
            note = ""
        recs.append(ConstraintRecord(f"EQ_N41JC({j})", lhs_j[j], t.Delta[j],
                                     "equality", tol3, optimizer_used, note=note))
    recs.append(ConstraintRecord(
        "EQ_SUMN4C",
        math.fsum((n4[j] - tau2sq[j]) ** 2 for j in pairs) - 0.5 * math.fsum(tri_sq.values()),
        math.fsum(t.Delta.values()), "equality", tol3, optimizer_used))

    roots = {j: math.sqrt(max(0.0, math.fsum(tri_sq[jk] for jk in with_j(j)) / 4 + t.Delta[j]))
             for j in pairs}
    recs.append(ConstraintRecord(
        "EQ_1TANC1", t.one_tangle + half_tau0_sq - math.fsum(tau2sq.values()),
        math.fsum(roots.values()), "equality", tol3, optimizer_used))

    # sum over j of (sum_{k > j} tau_{1|j|k}**2)**(1/2), in the report's labels
    later = math.fsum(math.sqrt(math.fsum(tri_sq[(j, k)] for k in pairs if k > j))
                      for j in pairs)
    recs.append(ConstraintRecord(
        "EQ_1TANC2",
        t.one_tangle - math.fsum(tau2sq.values()) - 0.5 * later,
        math.fsum(roots.values()) - half_tau0_sq - 0.5 * later,
        "equality", tol3, optimizer_used,
        note="rhs rebuilt from Delta; f_1j has no closed form"))

    recs.append(ConstraintRecord(
        "S1", math.fsum(n4[j] - tau2sq[j] for j in pairs) - half_tau0_sq,
        t.one_tangle - math.fsum(tau2sq.values()), "equality", ANALYTIC_TOL))
    recs.append(ConstraintRecord(
        "MONO1", t.one_tangle, math.fsum(tau2sq.values()) + math.fsum(tri.values()),
        "inequality", tol3, optimizer_used, diagnostic=True))
    recs.append(ConstraintRecord(
        "MONO2", t.one_tangle,
        math.fsum(tau2sq.values()) + math.fsum(v ** 1.5 for v in tri.values()),
        "inequality", tol3, optimizer_used, diagnostic=True))
    return ConstraintReport(t.focus_qubit, tuple(recs))


def analyze(state: PureState, focus: int = 1, **kw) -> tuple[TangleReport, ConstraintReport]:
    rep = tangle_report(state, focus, **kw)
    return rep, evaluate_constraints(state, rep)


# ---------------------------------------------------------------------------
# the L family sweep

@dataclass(frozen=True)
class SweepRow:
    a: float
    one_tangle: float
    S1: float
    S: float
    R: float
    three_tangles: dict
    two_tangles: dict


def sweep_L_family(a_grid, restarts: int = DEFAULT_RESTARTS,
                   iterations: int = DEFAULT_ITERATIONS, seed: int = 0,
                   threads: int = 1) -> list[SweepRow]:
    """Rows of one-tangle, ``S1``, ``S`` and ``R = (sum_j delta_1j)**(1/2)``."""
    from .zoo import make

    rows = []
    for a in np.asarray(a_grid, dtype=float):
        state = make("L_AIA", {"a": float(a)}).state
        rep = tangle_report(state, 1, restarts=restarts, iterations=iterations,
                            seed=seed, threads=threads)
        s1 = rep.one_tangle - math.fsum(v * v for v in rep.two_tangles.values())
        s = s1 - math.sqrt(0.5 * math.fsum(v * v for v in rep.three_tangles.values()))
        dsum = math.fsum(rep.delta.values())
        if s < -1e-9 or dsum < -1e-9:
            raise InternalMismatch(f"a={a}: S={s}, sum delta={dsum} went negative")
        rows.append(SweepRow(float(a), rep.one_tangle, s1, s, math.sqrt(max(dsum, 0.0)),
                             dict(rep.three_tangles), dict(rep.two_tangles)))
    return rows
