"""Leakage of pair entanglement into a product environment through CNOTs.

Qubits 1 and 2 start in ``(|00> + sqrt(x-1)|11>)/sqrt(x)``; every
environment qubit starts in ``(|0> + sqrt(x-1)|1>)/sqrt(x)``.  Step M applies
a CNOT with qubit 1 as control and environment qubit M + 2 as target.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParam, InternalMismatch
from .qstate import MAX_QUBITS, PureState, partial_trace
from .spectral import two_tangle
from .tangles import one_tangle

CLOSED_FORM_TOL = 1e-9
CSV_COLUMNS = ("x", "M", "tau_12_sq", "tau_1rest", "residual")


def pair_tangle(x: float) -> float:
    """``4 (x - 1) / x**2``: one-tangle of qubit 1 and the initial tau_{1|2}**2."""
    return 4 * (x - 1) / x**2


def build_initial(x: float, n_env: int) -> PureState:
    x = float(x)
    if not x > 1 or not math.isfinite(x):
        raise BadParam(f"x must be a finite number above 1, got {x}")
    if n_env < 1 or n_env + 2 > MAX_QUBITS:
        raise BadParam(f"n_env must be in 1..{MAX_QUBITS - 2}, got {n_env}")
    s = math.sqrt(x - 1)
    pair = np.array([1, 0, 0, s]) / math.sqrt(x)
    env = np.array([1, s]) / math.sqrt(x)
    amp = pair
    for _ in range(n_env):
        amp = np.kron(amp, env)
    return PureState(amp)


def cnot(state: PureState, control: int, target: int) -> PureState:
    """Swap the target bit on the half of the amplitudes where the control is 1."""
    if control == target:
        raise BadParam("control and target must differ")
    t = np.moveaxis(state.tensor(), [control - 1, target - 1], [0, 1]).copy()
    t[1] = t[1, ::-1]
    return PureState.from_tensor(np.moveaxis(t, [0, 1], [control - 1, target - 1]))


@dataclass(frozen=True)
class TransferStep:
    M: int
    tau_12_sq: float
    tau_1rest: float
    residual: float
    max_other_pair: float  # largest tau_{1|j}**2 over environment qubits j


@dataclass(frozen=True)
class TransferRun:
    x: float
    n_env: int
    steps: list = field(default_factory=list)

    def rows(self) -> list[dict]:
        return [{"x": self.x, "M": s.M, "tau_12_sq": s.tau_12_sq,
                 "tau_1rest": s.tau_1rest, "residual": s.residual} for s in self.steps]


def _step(state: PureState, m: int) -> TransferStep:
    t12 = two_tangle(partial_trace(state, [1, 2])) ** 2
    rest = one_tangle(state, 1)
    others = [two_tangle(partial_trace(state, [1, j])) ** 2
              for j in range(3, state.n_qubits + 1)]
    return TransferStep(m, t12, rest, rest - t12, max(others, default=0.0))


def apply_cnot_chain(state: PureState, M: int, x: float | None = None) -> TransferRun:
    """Apply M CNOTs and record every step, M = 0 included.

    With ``x`` given, each step is checked against
    ``tau_{1|2}**2 = p**(M + 1)`` and ``tau_{1|j} = 0`` (j >= 3), p = 4(x-1)/x**2.
    """
    n_env = state.n_qubits - 2
    if not 0 <= M <= n_env:
        raise BadParam(f"M must be in 0..{n_env}, got {M}")
    steps = [_step(state, 0)]
    for m in range(1, M + 1):
        state = cnot(state, 1, m + 2)
        steps.append(_step(state, m))
    run = TransferRun(float("nan") if x is None else float(x), n_env, steps)
    if x is not None:
        p = pair_tangle(x)
        for s in steps:
            want = p ** (s.M + 1)
            if (abs(s.tau_12_sq - want) > CLOSED_FORM_TOL
                    or abs(s.tau_1rest - p) > CLOSED_FORM_TOL
                    or s.max_other_pair > CLOSED_FORM_TOL):
                raise InternalMismatch(f"x={x}, M={s.M}: tau_12^2={s.tau_12_sq} vs {want}")
    return run


def run_transfer(x: float, n_env: int = 8, M: int | None = None) -> TransferRun:
    return apply_cnot_chain(build_initial(x, n_env), n_env if M is None else M, x)


def crossings(x_grid, M: int = 1) -> list[float]:
    """Grid points where ``tau_{1|2}**2 - residual`` changes sign after M steps
    (midpoints of the bracketing intervals)."""
    xs = np.asarray(x_grid, dtype=float)
    diff = []
    for x in xs:
        s = run_transfer(x, max(M, 1), M).steps[-1]
        diff.append(s.tau_12_sq - s.residual)
    diff = np.array(diff)
    idx = np.nonzero(np.sign(diff[:-1]) * np.sign(diff[1:]) < 0)[0]
    return [float(0.5 * (xs[i] + xs[i + 1])) for i in idx]


def write_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])


def _fmt(v) -> str:
    return str(v) if isinstance(v, (int, np.integer)) else f"{float(v):.17g}"
