"""Three- and four-qubit polynomial invariants built from font determinants.

For a three-qubit marginal of a four-qubit state the traced qubit splits
the state into slices ``psi_0 + t psi_1``; the degree-four three-qubit
invariant of that combination is the binary quartic

    I_{3,4}(t) = sum_m binom(4, m) I^{4-m, m} t**m

whose five coefficients are the slice invariants.  N_{4,8} is its
unitarily invariant norm and I_{4,8} its degree-two apolar invariant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadIndex, BadSubset, InternalMismatch
from .fonts import InvariantSet, invariant_set, n8_form
from .qstate import PureState, permute_qubits

PAIRS = (2, 3, 4)
TRIPLES = ((2, 3), (2, 4), (3, 4))


def _require(state: PureState, n: int) -> None:
    if state.n_qubits != n:
        raise BadIndex(f"expected a {n}-qubit state, got {state.n_qubits} qubits")


def i34_tensor(a: np.ndarray) -> np.ndarray:
    """I_34 of one or more unnormalized three-qubit tensors of shape ``(..., 2, 2, 2)``."""
    a = np.asarray(a)
    d3w = [a[..., 0, 0, i] * a[..., 1, 1, i ^ 1] - a[..., 1, 0, i] * a[..., 0, 1, i ^ 1] for i in (0, 1)]
    d_a3 = [a[..., 0, 0, i] * a[..., 1, 1, i] - a[..., 1, 0, i] * a[..., 0, 1, i] for i in (0, 1)]
    return (d3w[0] + d3w[1]) ** 2 - 4 * d_a3[0] * d_a3[1]


def i34_pure3(state: PureState, check: bool = True) -> complex:
    """Degree-four three-qubit invariant from the fonts of focus qubit 1.

    Both font expressions are evaluated; they must agree.
    """
    _require(state, 3)
    a = state.tensor()
    first = complex(i34_tensor(a))
    if check:
        # three-way D^{00 i3} and two-way D^{00}_{(A2) i2}
        d3w = [a[0, 0, i] * a[1, 1, i ^ 1] - a[1, 0, i] * a[0, 1, i ^ 1] for i in (0, 1)]
        d_a2 = [a[0, i, 0] * a[1, i, 1] - a[1, i, 0] * a[0, i, 1] for i in (0, 1)]
        second = (d3w[0] - d3w[1]) ** 2 - 4 * d_a2[0] * d_a2[1]
        if abs(first - second) > 1e-8:
            raise InternalMismatch(f"I_34 font forms disagree: {first} vs {second}")
    return first


@dataclass(frozen=True)
class SliceInvariants:
    """Coefficients I^{4,0}, I^{3,1}, I^{2,2}, I^{1,3}, I^{0,4} for a triple."""
    triple: tuple[int, int, int]
    traced: int
    i40: complex
    i31: complex
    i22: complex
    i13: complex
    i04: complex

    def as_tuple(self) -> tuple[complex, ...]:
        return (self.i40, self.i31, self.i22, self.i13, self.i04)

    @property
    def n48(self) -> float:
        return math.fsum(w * abs(z) ** 2 for w, z in zip((1, 4, 6, 4, 1), self.as_tuple()))

    @property
    def i48(self) -> complex:
        return 3 * self.i22**2 - 4 * self.i31 * self.i13 + self.i40 * self.i04


def slices_traced_second(inv: InvariantSet) -> tuple[complex, ...]:
    """Slice invariants over the higher-labelled spectator of pair (1, j).

    With j = 2 this is the set over qubit 4 of triple (1, 2, 3).
    """
    E, B, C, D, F, L, G, K, H0, H1 = inv.as_tuple()
    h = H0 + H1
    return (F * F - 4 * E * C,
            0.5 * F * h - (E * K + C * G),
            h * h / 6 - 2 * G * K / 3 + F * L / 3 - 2 * (E * D + B * C) / 3,
            0.5 * L * h - (B * K + D * G),
            L * L - 4 * B * D)


def slices_traced_first(inv: InvariantSet) -> tuple[complex, ...]:
    """Slice invariants over the lower-labelled spectator of pair (1, j)."""
    E, B, C, D, F, L, G, K, H0, H1 = inv.as_tuple()
    h = H0 + H1
    return (G * G - 4 * E * B,
            0.5 * G * h - (E * L + B * F),
            h * h / 6 + G * K / 3 - 2 * F * L / 3 - 2 * (E * D + B * C) / 3,
            0.5 * K * h - (F * D + C * L),
            K * K - 4 * C * D)


def _normalize_triple(triple) -> tuple[int, int, int]:
    t = tuple(sorted(int(q) for q in triple))
    if len(t) != 3 or len(set(t)) != 3 or t[0] != 1 or not all(2 <= q <= 4 for q in t[1:]):
        raise BadSubset(f"triple must be qubit 1 and two of 2..4, got {triple}")
    return t


def three_qubit_slice_invariants(state: PureState, triple) -> SliceInvariants:
    """The five slice invariants of ``triple`` (which contains qubit 1).

    The state is relabelled so the triple becomes (1, 2, 3) and the traced
    qubit becomes 4, then the pair-(1,2) invariant set is used.
    """
    _require(state, 4)
    _, j, k = _normalize_triple(triple)
    (m,) = {2, 3, 4} - {j, k}
    perm = [1, 0, 0, 0]
    perm[j - 1], perm[k - 1], perm[m - 1] = 2, 3, 4
    moved = permute_qubits(state, perm)
    vals = slices_traced_second(invariant_set(moved, 2))
    return SliceInvariants((1, j, k), m, *vals)


def n48_printed(state: PureState, j: int) -> float:
    """The two closed forms for N_{4,8}: the ``(1j3)`` template at j = 2, 4
    and the separate expression built on the pair-(1,3) set (``j = 3``).

    Which triple each one measures is fixed by which spectator it slices:
    j=2 -> (1,2,3), j=4 -> (1,2,4), j=3 -> (1,3,4).
    """
    _require(state, 4)
    inv = invariant_set(state, j)
    vals = slices_traced_first(inv) if j == 3 else slices_traced_second(inv)
    return math.fsum(w * abs(z) ** 2 for w, z in zip((1, 4, 6, 4, 1), vals))


def i42(state: PureState) -> complex:
    """Degree-two invariant ``D^{0000} + D^{0011} - D^{0010} - D^{0001}``."""
    _require(state, 4)
    inv = invariant_set(state, 2)
    return inv.H0 - inv.H1


def p_invariant(inv: InvariantSet) -> complex:
    E, B, C, D, F, L, G, K, H0, H1 = inv.as_tuple()
    h = H0 + H1
    return h * h - 4 * F * L - 4 * G * K + 8 * E * D + 8 * B * C


def m48(inv: InvariantSet) -> float:
    E, B, C, D, F, L, G, K, H0, H1 = inv.as_tuple()
    d = H1 - H0
    terms = [
        (2.0, F * G - 2 * E * H1),
        (1.0, d * G + 2 * E * L - 2 * B * F),
        (2.0, G * L - 2 * B * H0),
        (1.0, d * F + 2 * E * K - 2 * C * G),
        (0.5, H1 * H1 - H0 * H0 + 4 * E * D - 4 * B * C),
        (1.0, d * L + 2 * G * D - 2 * B * K),
        (2.0, F * K - 2 * C * H0),
        (1.0, d * K + 2 * F * D - 2 * C * L),
        (2.0, K * L - 2 * D * H1),
    ]
    return math.fsum(w * abs(z) ** 2 for w, z in terms)


@dataclass(frozen=True)
class FourQubitInvariants:
    i42: complex
    i48: complex
    n48: dict  # (j, k) -> N_{4,8}^{(1jk)}
    p: dict    # j -> P_1j
    m48: dict  # j -> M_{4,8}(rho_1j)
    slices: dict  # (j, k) -> SliceInvariants


def four_invariants(state: PureState) -> FourQubitInvariants:
    _require(state, 4)
    sets = {j: invariant_set(state, j) for j in PAIRS}
    slices = {jk: three_qubit_slice_invariants(state, (1, *jk)) for jk in TRIPLES}
    return FourQubitInvariants(
        i42=sets[2].H0 - sets[2].H1,
        i48=slices[(2, 3)].i48,
        n48={jk: s.n48 for jk, s in slices.items()},
        p={j: p_invariant(sets[j]) for j in PAIRS},
        m48={j: m48(sets[j]) for j in PAIRS},
        slices=slices,
    )


def n8_structural(state: PureState, j: int) -> float:
    """n8(rho_1j) from the invariant set of pair (1, j)."""
    _require(state, 4)
    return n8_form(invariant_set(state, j))


def n8_decomposition(state: PureState, j: int, inv: FourQubitInvariants | None = None,
                     check: bool = True) -> float:
    """``N^{(1jk)} + N^{(1jl)} + |3 I42^2 - P_1j|^2 / 24 + M_48(rho_1j)``.

    With ``check`` the sum is compared to the structural form and a gap
    above 1e-8 raises InternalMismatch.
    """
    _require(state, 4)
    if j not in PAIRS:
        raise BadIndex(f"j must be 2, 3 or 4, got {j}")
    inv = inv or four_invariants(state)
    ns = [v for jk, v in inv.n48.items() if j in jk]
    total = math.fsum([*ns, abs(3 * inv.i42**2 - inv.p[j]) ** 2 / 24, inv.m48[j]])
    if check:
        ref = n8_structural(state, j)
        if abs(total - ref) > 1e-8:
            raise InternalMismatch(f"n8 decomposition {total} vs structural {ref} for j={j}")
    return total
