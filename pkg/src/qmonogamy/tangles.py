"""One-, two-, three- and four-tangles of few-qubit pure states.

The mixed three-tangle is a convex roof.  For a three-qubit marginal of a
four-qubit pure state the marginal has rank at most two, so every pure
state in its range is ``alpha psi_0 + beta psi_1`` and I_34 restricted to
the range is a binary quartic in (alpha, beta).  Decompositions of size m
come from the first two columns of an m x m unitary acting on the
subnormalized eigenvectors; the search runs over those unitaries with
seeded restarts, a quasi-Newton descent per restart and a derivative-free
polish of the winner.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from .errors import BadDim, BadIndex, BadParam, OptimizerDidNotImprove
from .fonts import coherence_X, n4_from_fonts
from .invariants import (PAIRS, TRIPLES, FourQubitInvariants, four_invariants,
                         i34_pure3, i34_tensor, n8_decomposition)
from .qstate import (DensityMatrix, PureState, bring_to_front, check_subset,
                     partial_trace, random_unitary)
from .spectral import poly_coeffs, spectrum

RANK_TOL = 1e-12
DEFAULT_RESTARTS = 32
DEFAULT_ITERATIONS = 400
DECOMPOSITION_SIZES = (2, 3, 4)


# ---------------------------------------------------------------------------
# one- and two-tangles

def one_tangle(state: PureState, focus: int = 1) -> float:
    """``4 det(rho_focus)``."""
    check_subset([focus], state.n_qubits)
    rho = partial_trace(state, [focus]).entries
    return max(0.0, float(4 * np.linalg.det(rho).real))


def two_tangles(state: PureState, focus: int = 1) -> dict[int, float]:
    """``tau_{focus|j} = max(0, C(rho_{focus j}))`` for every other qubit j."""
    check_subset([focus], state.n_qubits)
    return {j: max(0.0, spectrum(partial_trace(state, [focus, j])).c_value)
            for j in range(1, state.n_qubits + 1) if j != focus}


def one_tangle_from_fonts(state: PureState) -> float:
    """``sum_j (n4(rho_1j) - X_1j)`` from the font tables of focus qubit 1."""
    return math.fsum(n4_from_fonts(state, j) - coherence_X(state, j)
                     for j in range(2, state.n_qubits + 1))


# ---------------------------------------------------------------------------
# three-tangles

def three_tangle_pure(state: PureState) -> float:
    return 4 * abs(i34_pure3(state))


@dataclass(frozen=True)
class ConvexRoofResult:
    """Best decomposition found; ``estimate = sum_i p_i tau(states[i])``."""
    estimate: float
    probabilities: np.ndarray = field(repr=False)
    states: np.ndarray = field(repr=False)  # (m, 8) normalized vectors
    eigen_value: float
    restarts: int
    iterations: int

    def average(self) -> float:
        """Recompute the ensemble average from the stored decomposition."""
        taus = 4 * np.abs(i34_tensor(self.states.reshape(-1, 2, 2, 2)))
        return float(np.dot(self.probabilities, taus))


def _range_quartic(vecs: np.ndarray) -> np.ndarray:
    """Coefficients c_n of ``I_34(psi_0 + z psi_1) = sum_n c_n z**n``.

    Five-point evaluation at the fifth roots of unity followed by a DFT.
    """
    psi = vecs.reshape(2, 2, 2, 2)
    z = np.exp(2j * np.pi * np.arange(5) / 5)
    vals = i34_tensor(psi[0][None] + z[:, None, None, None] * psi[1][None])
    return np.fft.fft(vals) / 5


def _hermitian(x: np.ndarray, m: int) -> np.ndarray:
    h = np.diag(x[:m]).astype(np.complex128)
    iu = np.triu_indices(m, 1)
    k = len(iu[0])
    h[iu] = x[m:m + k] + 1j * x[m + k:]
    return h + np.triu(h, 1).conj().T


class _RoofProblem:
    def __init__(self, weights: np.ndarray, vecs: np.ndarray):
        self.weights = weights
        self.vecs = vecs  # rows are sqrt(w_k) e_k
        self.coeffs = _range_quartic(vecs)

    def mixing(self, q0: np.ndarray, x: np.ndarray) -> np.ndarray:
        m = q0.shape[0]
        return (q0 @ expm(1j * _hermitian(x, m)))[:, :2]

    def cost(self, u: np.ndarray) -> float:
        al, be = u[:, 0], u[:, 1]
        q = sum(self.coeffs[n] * al ** (4 - n) * be ** n for n in range(5))
        norms = np.abs(al) ** 2 * self.weights[0] + np.abs(be) ** 2 * self.weights[1]
        ok = norms > 1e-300
        return float(np.sum(4 * np.abs(q[ok]) / norms[ok]))

    def run(self, seed: int, m: int, iterations: int) -> tuple[float, np.ndarray, np.ndarray]:
        """One restart: random starting unitary, quasi-Newton descent on the generator."""
        q0 = random_unitary(np.random.default_rng(seed), m)
        res = minimize(lambda x: self.cost(self.mixing(q0, x)), np.zeros(m * m),
                       method="BFGS", options={"maxiter": iterations})
        return float(res.fun), q0, res.x

    def polish(self, q0: np.ndarray, x: np.ndarray, iterations: int) -> np.ndarray:
        """Derivative-free coordinate-direction refinement; |I_34| has kinks at its zeros."""
        res = minimize(lambda y: self.cost(self.mixing(q0, y)), x, method="Powell",
                       options={"maxiter": iterations, "xtol": 1e-8, "ftol": 1e-12})
        better = res.x if res.fun < self.cost(self.mixing(q0, x)) else x
        return self.mixing(q0, better)


def three_tangle_mixed(rho, restarts: int = DEFAULT_RESTARTS,
                       iterations: int = DEFAULT_ITERATIONS, seed: int = 0,
                       threads: int = 1) -> ConvexRoofResult:
    """Convex-roof upper estimate of the three-tangle of an 8x8 ``rho``.

    Restart r draws its starting unitary from ``default_rng(seed + r)`` and
    uses decomposition size ``(2, 3, 4)[r % 3]``, so the result does not
    depend on ``threads``.
    """
    m = np.asarray(rho.entries if isinstance(rho, DensityMatrix) else rho, dtype=np.complex128)
    if m.shape != (8, 8):
        raise BadDim(f"three-qubit density matrix expected, got shape {m.shape}")
    if restarts < 1 or iterations < 1:
        raise BadParam("restarts and iterations must be positive")
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    w, v = w[::-1], v[:, ::-1]
    rank = int(np.sum(w > RANK_TOL * max(w[0], 1.0)))
    if rank > 2:
        raise BadParam(f"convex roof search needs rank <= 2, got rank {rank}")
    vecs = (v[:, :rank] * np.sqrt(np.clip(w[:rank], 0, None))).T
    probs = np.array([np.vdot(x, x).real for x in vecs])
    taus = [4 * abs(complex(i34_tensor(x.reshape(2, 2, 2)))) / p**2 for x, p in zip(vecs, probs)]
    eigen_value = float(np.dot(probs, taus))
    normed = vecs / np.sqrt(probs)[:, None]
    if rank == 1 or eigen_value <= 1e-14:
        return ConvexRoofResult(eigen_value, probs, normed, eigen_value, 0, 0)

    prob = _RoofProblem(probs, vecs)
    jobs = [(seed + r, DECOMPOSITION_SIZES[r % 3]) for r in range(restarts)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: prob.run(job[0], job[1], iterations), jobs))
    else:
        results = [prob.run(s, k, iterations) for s, k in jobs]
    _, q0, x = min(results, key=lambda t: t[0])
    best_u = prob.polish(q0, x, iterations)
    best_val = prob.cost(best_u)
    if best_val >= eigen_value - 1e-12:
        warnings.warn(f"no restart improved on the eigen-ensemble value {eigen_value:.6g}",
                      OptimizerDidNotImprove, stacklevel=2)
        return ConvexRoofResult(eigen_value, probs, normed, eigen_value, restarts, iterations)
    phis = best_u @ vecs
    p = np.sum(np.abs(phis) ** 2, axis=1)
    keep = p > 1e-300
    return ConvexRoofResult(best_val, p[keep], phis[keep] / np.sqrt(p[keep])[:, None],
                            eigen_value, restarts, iterations)


def _triple_key(triple) -> tuple[int, int]:
    t = tuple(sorted(int(q) for q in triple))
    if len(t) == 3 and t[0] == 1:
        t = t[1:]
    if t not in TRIPLES:
        raise BadIndex(f"triple must be qubit 1 with two of 2..4, got {triple}")
    return t


def three_tangle_upper(state: PureState, triple, inv: FourQubitInvariants | None = None) -> float:
    """``sqrt(16 N_48^{(1jk)} - (tau^(1))**2 / 6)``, tiny negatives clamped to 0."""
    inv = inv or four_invariants(state)
    key = _triple_key(triple)
    return math.sqrt(max(0.0, 16 * inv.n48[key] - 16 * abs(12 * inv.i48) / 6))


# ---------------------------------------------------------------------------
# four-tangles

@dataclass(frozen=True)
class FourTangles:
    tau0: float
    tau1: float
    tau2: dict
    tau3: dict


def four_tangles(state: PureState, inv: FourQubitInvariants | None = None) -> FourTangles:
    inv = inv or four_invariants(state)
    return FourTangles(
        tau0=2 * abs(inv.i42),
        tau1=math.sqrt(16 * abs(12 * inv.i48)),
        tau2={j: math.sqrt(32 * inv.m48[j]) for j in PAIRS},
        tau3={j: abs(4 * inv.i42**2 - 4 * inv.p[j] / 3) for j in PAIRS},
    )


@dataclass(frozen=True)
class DeltaQuantities:
    delta: dict        # j -> delta_1j
    Delta: dict        # j -> Delta_1j
    lower_bound: dict  # j -> weighted four-tangle sum that delta_1j must exceed


def delta_quantities(state: PureState, three: dict | None = None,
                     four: FourTangles | None = None, coeffs: dict | None = None,
                     inv: FourQubitInvariants | None = None,
                     **roof_kw) -> DeltaQuantities:
    """``delta_1j = 4 n8(rho_1j) - sum_{k != j} tau_{1|j|k}**2 / 4`` and
    ``Delta_1j = delta_1j + chi(rho_1j)``.

    n8 here is the invariant decomposition, so comparing delta against the
    trace-formula n8 checks one route against the other.  ``three`` maps
    (j, k) to three-tangles; when omitted the convex-roof estimates are
    computed with ``roof_kw``.
    """
    if state.n_qubits != 4:
        raise BadIndex("delta quantities are defined for four-qubit states")
    if three is None:
        three = {jk: three_tangle_mixed(partial_trace(state, [1, *jk]), **roof_kw).estimate
                 for jk in TRIPLES}
    inv = inv or four_invariants(state)
    four = four or four_tangles(state, inv)
    coeffs = coeffs or {j: poly_coeffs(partial_trace(state, [1, j])) for j in PAIRS}
    delta, big, low = {}, {}, {}
    for j in PAIRS:
        tri = math.fsum(three[jk] ** 2 for jk in TRIPLES if j in jk)
        delta[j] = 4 * n8_decomposition(state, j, inv) - tri / 4
        big[j] = delta[j] + coeffs[j].chi
        low[j] = four.tau1**2 / 12 + four.tau2[j] ** 2 / 8 + 3 * four.tau3[j] ** 2 / 32
    return DeltaQuantities(delta, big, low)


# ---------------------------------------------------------------------------
# full report

@dataclass(frozen=True)
class TangleReport:
    """Every tangle of a four-qubit state seen from ``focus_qubit``.

    Pair and triple keys use the original qubit labels.  ``three_tangles``
    holds convex-roof estimates, ``upper_bounds`` the analytic bounds.
    """
    focus_qubit: int
    one_tangle: float
    two_tangles: dict
    c_values: dict
    three_tangles: dict
    upper_bounds: dict
    tau0: float
    tau1: float
    tau2: dict
    tau3: dict
    delta: dict
    Delta: dict
    delta_lower_bound: dict
    coeffs: dict = field(repr=False)
    renormalized: bool = False
    # amplitudes the report was computed from (for staleness checks)
    fingerprint: tuple = field(default=(), repr=False)


def _relabel(focus: int) -> dict[int, int]:
    """Position in the refocused state -> original label."""
    others = [q for q in range(1, 5) if q != focus]
    return {1: focus, **{pos: q for pos, q in zip(PAIRS, others)}}


def fingerprint(state: PureState) -> tuple:
    return (state.n_qubits, hash(state.amplitudes.tobytes()))


def tangle_report(state: PureState, focus: int = 1, restarts: int = DEFAULT_RESTARTS,
                  iterations: int = DEFAULT_ITERATIONS, seed: int = 0,
                  threads: int = 1) -> TangleReport:
    if state.n_qubits != 4:
        raise BadIndex(f"tangle reports cover four-qubit states, got {state.n_qubits}")
    check_subset([focus], 4)
    work = bring_to_front(state, [focus]) if focus != 1 else state
    lab = _relabel(focus)
    inv = four_invariants(work)
    four = four_tangles(work, inv)
    coeffs = {j: poly_coeffs(partial_trace(work, [1, j])) for j in PAIRS}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OptimizerDidNotImprove)
        roofs = {jk: three_tangle_mixed(partial_trace(work, [1, *jk]), restarts=restarts,
                                        iterations=iterations, seed=seed, threads=threads)
                 for jk in TRIPLES}
    three = {jk: r.estimate for jk, r in roofs.items()}
    upper = {jk: three_tangle_upper(work, jk, inv) for jk in TRIPLES}
    dq = delta_quantities(work, three, four, coeffs, inv)

    def pair_map(d):
        return {lab[j]: d[j] for j in PAIRS}

    def triple_map(d):
        return {tuple(sorted((lab[j], lab[k]))): d[(j, k)] for j, k in TRIPLES}

    return TangleReport(
        focus_qubit=focus,
        one_tangle=one_tangle(work),
        two_tangles=pair_map({j: max(0.0, coeffs[j].c_value) for j in PAIRS}),
        c_values=pair_map({j: coeffs[j].c_value for j in PAIRS}),
        three_tangles=triple_map(three),
        upper_bounds=triple_map(upper),
        tau0=four.tau0, tau1=four.tau1,
        tau2=pair_map(four.tau2), tau3=pair_map(four.tau3),
        delta=pair_map(dq.delta), Delta=pair_map(dq.Delta),
        delta_lower_bound=pair_map(dq.lower_bound),
        coeffs=pair_map(coeffs),
        renormalized=state.renormalized,
        fingerprint=fingerprint(state),
    )
