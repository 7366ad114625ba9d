"""Pure states, density matrices and the basic operations on them.

Bit ordering: qubit 1 is the most significant bit of the flat amplitude
index, so ``amplitudes[k]`` with ``k = sum_m i_m 2**(n-m)`` is the
coefficient ``a_{i1 i2 ... iN}``.  Every other module inherits this.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from .errors import (BadDim, BadPermutation, BadSubset, NotUnitary,
                     ZeroState)

MIN_QUBITS = 2
MAX_QUBITS = 12
NORM_TOL = 1e-12
ZERO_NORM = 1e-14


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class PureState:
    """Normalized amplitude vector over ``n_qubits`` qubits.

    Inputs whose norm is off by more than ``1e-12`` are rescaled and
    ``renormalized`` is set, so reports can flag it.
    """

    __slots__ = ("amplitudes", "n_qubits", "renormalized")

    def __init__(self, amplitudes: Iterable[complex]):
        amp = np.array(amplitudes, dtype=np.complex128).ravel()
        size = amp.size
        n = size.bit_length() - 1
        if size == 0 or 2**n != size:
            raise BadDim(f"amplitude count {size} is not a power of two")
        if not MIN_QUBITS <= n <= MAX_QUBITS:
            raise BadDim(f"n_qubits={n} outside {MIN_QUBITS}..{MAX_QUBITS}")
        norm = np.linalg.norm(amp)
        if norm < ZERO_NORM:
            raise ZeroState("amplitude vector has zero norm")
        renormalized = abs(norm - 1.0) > NORM_TOL
        if renormalized:
            amp = amp / norm
        self.amplitudes = _frozen(amp)
        self.n_qubits = n
        self.renormalized = renormalized

    @classmethod
    def from_tensor(cls, tensor: np.ndarray) -> "PureState":
        return cls(np.asarray(tensor).reshape(-1))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """Amplitudes as an ``(2,)*n`` array indexed ``t[i1, ..., iN]``."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def amp(self, bits: str | Sequence[int]) -> complex:
        """Coefficient for a bit string such as ``"0110"``."""
        if isinstance(bits, str):
            bits = [int(b) for b in bits]
        return complex(self.tensor()[tuple(bits)])

    def __repr__(self) -> str:
        return f"PureState(n_qubits={self.n_qubits})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PureState):
            return NotImplemented
        return (self.n_qubits == other.n_qubits
                and np.array_equal(self.amplitudes, other.amplitudes))

    __hash__ = None

    def to_json_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PureState":
        try:
            n = int(data["n_qubits"])
            pairs = data["amplitudes"]
        except (KeyError, TypeError) as exc:
            raise BadDim(f"malformed state document: {exc}") from None
        if not MIN_QUBITS <= n <= MAX_QUBITS:
            raise BadDim(f"n_qubits={n} outside {MIN_QUBITS}..{MAX_QUBITS}")
        if len(pairs) != 2**n:
            raise BadDim(f"expected {2**n} amplitudes for n_qubits={n}, got {len(pairs)}")
        try:
            amp = [complex(float(re), float(im)) for re, im in pairs]
        except (TypeError, ValueError) as exc:
            raise BadDim(f"amplitude entries must be [re, im] pairs: {exc}") from None
        return cls(amp)


def load_state(path) -> PureState:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadDim(f"{path}: not valid JSON ({exc})") from None
    return PureState.from_json_dict(data)


def save_state(state: PureState, path) -> None:
    with open(path, "w") as fh:
        json.dump(state.to_json_dict(), fh)


class DensityMatrix:
    """Hermitian, unit-trace, positive matrix on ``n_qubits`` qubits.

    ``factor``, when known, is a matrix F with ``entries = F F^dagger``
    (marginals of pure states carry one); spectral code uses it to avoid
    square roots of eigenvalues that sit at roundoff level.
    """

    __slots__ = ("entries", "n_qubits", "factor")

    HERMITIAN_TOL = 1e-12
    TRACE_TOL = 1e-12
    EIG_TOL = 1e-10

    def __init__(self, entries, check: bool = True, factor=None):
        rho = np.array(entries, dtype=np.complex128)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise BadDim(f"density matrix must be square, got shape {rho.shape}")
        dim = rho.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise BadDim(f"dimension {dim} is not a power of two")
        if check:
            if np.abs(rho - rho.conj().T).max() > self.HERMITIAN_TOL:
                raise BadDim("matrix is not Hermitian")
            if abs(np.trace(rho) - 1.0) > self.TRACE_TOL:
                raise BadDim(f"trace {np.trace(rho).real!r} differs from 1")
            if np.linalg.eigvalsh(rho).min() < -self.EIG_TOL:
                raise BadDim("matrix has a negative eigenvalue")
        self.entries = _frozen(rho)
        self.n_qubits = n
        self.factor = None if factor is None else _frozen(np.array(factor, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.entries, self.entries).real)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(n_qubits={self.n_qubits})"


def normalize(state) -> PureState:
    """Unit-norm copy of a state or raw amplitude vector."""
    if isinstance(state, PureState):
        return state
    amp = np.asarray(state, dtype=np.complex128).ravel()
    norm = np.linalg.norm(amp)
    if norm < ZERO_NORM:
        raise ZeroState("amplitude vector has zero norm")
    return PureState(amp / norm)


def density(state: PureState) -> DensityMatrix:
    amp = state.amplitudes
    return DensityMatrix(np.outer(amp, amp.conj()), check=False)


def check_subset(keep: Sequence[int], n_qubits: int, proper: bool = True) -> list[int]:
    """Validate a list of 1-based qubit labels and return it as a list."""
    keep = [int(q) for q in keep]
    if not keep:
        raise BadSubset("qubit subset is empty")
    if len(set(keep)) != len(keep):
        raise BadSubset(f"repeated qubit in {keep}")
    if any(q < 1 or q > n_qubits for q in keep):
        raise BadSubset(f"qubit labels {keep} outside 1..{n_qubits}")
    if proper and len(keep) >= n_qubits:
        raise BadSubset("subset must leave at least one qubit to trace out")
    return keep


def partial_trace(source, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on ``keep`` (1-based labels), in the order given.

    ``source`` may be a PureState or a DensityMatrix.
    """
    if isinstance(source, PureState):
        n = source.n_qubits
        keep = check_subset(keep, n)
        axes = [q - 1 for q in keep]
        rest = [q for q in range(n) if q not in axes]
        psi = np.transpose(source.tensor(), axes + rest).reshape(2 ** len(axes), -1)
        return DensityMatrix(psi @ psi.conj().T, check=False, factor=psi)

    rho = np.asarray(source.entries if isinstance(source, DensityMatrix) else source)
    n = rho.shape[0].bit_length() - 1
    keep = check_subset(keep, n)
    axes = [q - 1 for q in keep]
    rest = [q for q in range(n) if q not in axes]
    t = rho.reshape((2,) * (2 * n))
    t = np.transpose(t, axes + rest + [n + q for q in axes] + [n + q for q in rest])
    k, r = 2 ** len(axes), 2 ** len(rest)
    t = t.reshape(k, r, k, r)
    return DensityMatrix(np.einsum("arbr->ab", t), check=False)


def apply_local_unitary(state: PureState, qubit: int, u) -> PureState:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise BadDim(f"single-qubit gate must be 2x2, got {u.shape}")
    if np.abs(u.conj().T @ u - np.eye(2)).max() > 1e-10:
        raise NotUnitary("gate is not unitary within 1e-10")
    n = state.n_qubits
    check_subset([qubit], n, proper=False)
    t = np.moveaxis(state.tensor(), qubit - 1, 0)
    t = np.tensordot(u, t, axes=(1, 0))
    return PureState.from_tensor(np.moveaxis(t, 0, qubit - 1))


def permute_qubits(state: PureState, perm: Sequence[int]) -> PureState:
    """Relabel qubits: old qubit ``m`` becomes new qubit ``perm[m-1]``.

    The amplitude at ``(i_1 ... i_N)`` moves to the index whose digit at
    position ``perm[m-1]`` is ``i_m``.
    """
    n = state.n_qubits
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(1, n + 1)):
        raise BadPermutation(f"{perm} is not a permutation of 1..{n}")
    # new axis k holds old axis perm^-1(k)
    inverse = [0] * n
    for old, new in enumerate(perm):
        inverse[new - 1] = old
    return PureState.from_tensor(np.transpose(state.tensor(), inverse))


def bring_to_front(state: PureState, qubits: Sequence[int]) -> PureState:
    """Permute so that ``qubits`` become qubits 1, 2, ... in that order,
    with the remaining qubits following in their original order."""
    n = state.n_qubits
    qubits = check_subset(qubits, n, proper=False)
    order = qubits + [q for q in range(1, n + 1) if q not in qubits]
    perm = [0] * n
    for new, old in enumerate(order, start=1):
        perm[old - 1] = new
    return permute_qubits(state, perm)


def tensor_product(*states: PureState) -> PureState:
    amp = np.array([1.0 + 0j])
    for s in states:
        amp = np.kron(amp, s.amplitudes)
    return PureState(amp)


def basis_state(bits: str) -> PureState:
    amp = np.zeros(2 ** len(bits), dtype=np.complex128)
    amp[int(bits, 2)] = 1.0
    return PureState(amp)


def from_terms(terms: dict[str, complex]) -> PureState:
    """Build a state from ``{"0110": coeff, ...}`` and normalize it."""
    widths = {len(k) for k in terms}
    if len(widths) != 1:
        raise BadDim("all basis labels must have the same length")
    n = widths.pop()
    amp = np.zeros(2**n, dtype=np.complex128)
    for bits, c in terms.items():
        amp[int(bits, 2)] += c
    return normalize(amp)


def random_state(n_qubits: int, rng: np.random.Generator) -> PureState:
    """Haar-random pure state."""
    v = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return PureState(v / np.linalg.norm(v))


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-random unitary via QR with the phase fix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
