"""Determinants of negativity fonts and the two-qubit invariant sets.

For focus pair (1, j) of an N-qubit state the font determinant is

    D_{1j}[I, J] = a_{0 0 I} a_{1 1 J} - a_{1 0 I} a_{0 1 J}

where the middle index is qubit j and I, J range over the spectator
qubits.  Spectator configurations are keyed by ``I_v = sum_k 2**k i_{s_k}``
with ``s_0 < s_1 < ...`` the spectator labels, i.e. the skipped qubit is
compressed out and the lowest spectator is the least significant bit.

The symmetric combinations ``D[I, J] + D[J, I]`` are invariant under
unitaries on qubits 1 and j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import BadIndex
from .qstate import PureState


def spectators(n_qubits: int, j: int) -> list[int]:
    return [q for q in range(2, n_qubits + 1) if q != j]


def _check_pair(state: PureState, j: int, min_qubits: int = 3) -> None:
    n = state.n_qubits
    if n < min_qubits:
        raise BadIndex(f"font tables need at least {min_qubits} qubits, got {n}")
    if not 2 <= j <= n:
        raise BadIndex(f"partner qubit j={j} outside 2..{n}")


def font_matrix(state: PureState, j: int) -> np.ndarray:
    """All ``D_{1j}[I, J]`` as a ``(2**(N-2), 2**(N-2))`` complex array."""
    _check_pair(state, j)
    n = state.n_qubits
    spec = spectators(n, j)
    # axes: qubit 1, qubit j, then spectators with the highest label first so
    # that a C-order reshape puts the lowest spectator in the least significant bit
    order = [0, j - 1] + [q - 1 for q in reversed(spec)]
    t = np.transpose(state.tensor(), order).reshape(2, 2, -1)
    return np.outer(t[0, 0], t[1, 1]) - np.outer(t[1, 0], t[0, 1])


@dataclass(frozen=True)
class FontTable:
    focus_pair: tuple[int, int]
    spectators: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)

    @property
    def entries(self) -> Mapping[tuple[int, int], complex]:
        m = self.matrix
        return {(i, k): complex(m[i, k]) for i in range(m.shape[0]) for k in range(m.shape[1])}

    def key(self, config: Mapping[int, int]) -> int:
        """``I_v`` for a spectator assignment ``{qubit: bit}``."""
        return sum(config[q] << k for k, q in enumerate(self.spectators))

    def __getitem__(self, ij: tuple[int, int]) -> complex:
        return complex(self.matrix[ij])

    def __len__(self) -> int:
        return self.matrix.size

    def symmetric(self) -> np.ndarray:
        return self.matrix + self.matrix.T


def font_table(state: PureState, j: int) -> FontTable:
    m = font_matrix(state, j)
    m.setflags(write=False)
    return FontTable((1, j), tuple(spectators(state.n_qubits, j)), m)


def n4_from_fonts(state: PureState, j: int) -> float:
    """``tr(rho_1j rho_1j~)`` as ``sum_{I,J} |D[I,J] + D[J,I]|^2``."""
    s = font_table(state, j).symmetric()
    return float(np.vdot(s, s).real)


def coherence_X(state: PureState, j: int) -> float:
    """``X_1j = 2 sum_{I<J} (D[I,J] D[J,I]* + c.c.)``."""
    d = font_matrix(state, j)
    cross = (d * d.T.conj()).real
    return float(2.0 * (cross.sum() - np.trace(cross)))


# ---------------------------------------------------------------------------
# four qubits

@dataclass(frozen=True)
class InvariantSet:
    """The ten invariants of pair (1, j) of a four-qubit state.

    With spectators ``s < t`` and configurations written ``(i_s, i_t)``:
    E, B, C, D are the two-way fonts at (0,0), (0,1), (1,0), (1,1);
    F, L pair configurations differing in ``s`` (at ``i_t`` = 0, 1);
    G, K pair configurations differing in ``t`` (at ``i_s`` = 0, 1);
    H0 pairs (0,0) with (1,1) and H1 pairs (0,1) with (1,0).
    """
    j: int
    E: complex
    B: complex
    C: complex
    D: complex
    F: complex
    L: complex
    G: complex
    K: complex
    H0: complex
    H1: complex

    def as_tuple(self) -> tuple[complex, ...]:
        return (self.E, self.B, self.C, self.D, self.F, self.L,
                self.G, self.K, self.H0, self.H1)


def invariant_set(state: PureState, j: int) -> InvariantSet:
    if state.n_qubits != 4:
        raise BadIndex(f"invariant sets are defined for four qubits, got {state.n_qubits}")
    _check_pair(state, j)
    d = font_matrix(state, j)
    s = d + d.T
    # I_v = i_s + 2 i_t
    return InvariantSet(
        j=j,
        E=complex(d[0, 0]), B=complex(d[2, 2]), C=complex(d[1, 1]), D=complex(d[3, 3]),
        F=complex(s[0, 1]), L=complex(s[2, 3]),
        G=complex(s[0, 2]), K=complex(s[1, 3]),
        H0=complex(s[0, 3]), H1=complex(s[1, 2]),
    )


def n4_form(inv: InvariantSet) -> float:
    E, B, C, D, F, L, G, K, H0, H1 = inv.as_tuple()
    sq = lambda z: abs(z) ** 2  # noqa: E731
    return float(4 * (sq(E) + sq(B) + sq(C) + sq(D)) + 2 * (sq(G) + sq(K))
                 + 2 * (sq(F) + sq(L)) + sq(H0 + H1) + sq(H0 - H1))


def _n8_terms(inv: InvariantSet) -> list[tuple[float, complex]]:
    E, B, C, D, F, L, G, K, H0, H1 = inv.as_tuple()
    return [
        (1, G * G - 4 * E * B), (1, K * K - 4 * C * D), (1, F * F - 4 * E * C),
        (1, L * L - 4 * B * D), (1, H0 * H0 - 4 * E * D), (1, H1 * H1 - 4 * B * C),
        (2, G * K - F * L), (2, H0 * H1 - G * K), (2, H0 * H1 - F * L),
        (2, F * G - 2 * E * H1), (2, F * K - 2 * C * H0), (2, G * L - 2 * B * H0),
        (2, K * L - 2 * H1 * D), (2, H0 * F - 2 * E * K), (2, H0 * G - 2 * E * L),
        (2, H0 * K - 2 * F * D), (2, H0 * L - 2 * G * D), (2, H1 * F - 2 * C * G),
        (2, H1 * K - 2 * C * L), (2, H1 * G - 2 * B * F), (2, H1 * L - 2 * B * K),
    ]


def n8_form(inv: InvariantSet) -> float:
    """n8(rho_1j) as a weighted sum of squared moduli of three-qubit invariants."""
    return float(math.fsum(w * abs(z) ** 2 for w, z in _n8_terms(inv)))


# ---------------------------------------------------------------------------
# named four-qubit fonts, written out as in the explicit definitions

def two_way_font(state: PureState, j: int, fixed: Mapping[int, int]) -> complex:
    """2x2 determinant over qubits 1 and ``j``; ``fixed`` assigns the others,
    e.g. ``D^{00}_{(A3)1 (A4)0}`` is ``two_way_font(s, 2, {3: 1, 4: 0})``."""
    t = state.tensor()

    def a(i1, ij):
        idx = [0] * state.n_qubits
        idx[0], idx[j - 1] = i1, ij
        for q, b in fixed.items():
            idx[q - 1] = b
        return t[tuple(idx)]

    return complex(a(0, 0) * a(1, 1) - a(1, 0) * a(0, 1))


def three_way_font(state: PureState, held: int, held_bit: int, lead_bit: int) -> complex:
    """Four-qubit three-way fonts, labelled by the qubit held fixed.

    ``held=4``: ``D^{00 i3}_{(A4) i4}``, qubits 1,2 go 00 -> 11 and qubit 3
    goes i3 -> i3+1 (``lead_bit`` = i3, ``held_bit`` = i4).
    ``held=3``: ``D^{00 i4}_{(A3) i3}``, qubits 1,2 go 00 -> 11, qubit 4 flips.
    ``held=2``: ``D^{00 i4}_{(A2) i2}``, qubits 1,3 go 00 -> 11, qubit 4 flips.
    """
    t = state.tensor()
    x, h = lead_bit, held_bit
    if held == 4:
        return complex(t[0, 0, x, h] * t[1, 1, x ^ 1, h] - t[1, 0, x, h] * t[0, 1, x ^ 1, h])
    if held == 3:
        return complex(t[0, 0, h, x] * t[1, 1, h, x ^ 1] - t[1, 0, h, x] * t[0, 1, h, x ^ 1])
    if held == 2:
        return complex(t[0, h, 0, x] * t[1, h, 1, x ^ 1] - t[1, h, 0, x] * t[0, h, 1, x ^ 1])
    raise BadIndex(f"held qubit must be 2, 3 or 4, got {held}")


def four_way_font(state: PureState, i3: int, i4: int) -> complex:
    """``D^{00 i3 i4} = a_{00 i3 i4} a_{11 i3' i4'} - a_{10 i3 i4} a_{01 i3' i4'}``."""
    t = state.tensor()
    return complex(t[0, 0, i3, i4] * t[1, 1, i3 ^ 1, i4 ^ 1]
                   - t[1, 0, i3, i4] * t[0, 1, i3 ^ 1, i4 ^ 1])
