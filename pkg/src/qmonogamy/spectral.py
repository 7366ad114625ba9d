"""Wootters spin-flip machinery for two-qubit density matrices.

Everything here works on the 4x4 matrix ``R = rho @ rho_tilde`` with
``rho_tilde = (sy x sy) rho* (sy x sy)``: its spectrum, the concurrence
``C = sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)``, and the coefficients
``n4, n8, n12, n16`` of its characteristic polynomial

    x**4 - n4 x**3 + n8 x**2 - n12 x + n16 = 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadDim, NumericalFailure
from .qstate import DensityMatrix

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SIGMA_Y, SIGMA_Y)

NEG_CLAMP = -1e-10


def _as_4x4(rho) -> np.ndarray:
    m = np.asarray(rho.entries if isinstance(rho, DensityMatrix) else rho,
                   dtype=np.complex128)
    if m.shape != (4, 4):
        raise BadDim(f"two-qubit density matrix expected, got shape {m.shape}")
    return m


def _clamp(x: float, what: str) -> float:
    if x < NEG_CLAMP:
        raise NumericalFailure(f"{what} = {x:.3e} is negative beyond roundoff")
    return max(x, 0.0)


@dataclass(frozen=True)
class SpinFlipSpectrum:
    lambdas: tuple[float, float, float, float]
    c_value: float


@dataclass(frozen=True)
class PolyCoeffs:
    n4: float
    n8: float
    n12: float
    n16: float
    f16: float
    chi_plus: float
    chi_minus: float
    c_value: float

    @property
    def chi(self) -> float:
        """The branch of chi selected by the sign of C (``+`` when C >= 0)."""
        return self.chi_plus if self.c_value >= 0 else self.chi_minus


def spin_flip(rho) -> DensityMatrix:
    m = _as_4x4(rho)
    return DensityMatrix(YY @ m.conj() @ YY, check=False)


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    if w.min() < NEG_CLAMP:
        raise NumericalFailure(f"density matrix eigenvalue {w.min():.3e} < 0")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def _factor_sqrt_lambdas(f: np.ndarray) -> np.ndarray:
    """``sqrt(lambda_i)`` as singular values of ``G^T (sy x sy) G`` where
    ``rho = F F^dagger = G G^dagger`` and G (4 x r) comes from a thin SVD of F."""
    u, s, _ = np.linalg.svd(f, full_matrices=False)
    g = u * s
    sv = np.linalg.svd(g.T @ YY @ g, compute_uv=False)
    return np.sort(np.concatenate([sv, np.zeros(4 - sv.size)]))[::-1][:4]


def spectrum(rho) -> SpinFlipSpectrum:
    """Eigenvalues of ``rho rho_tilde`` through the Hermitian similar matrix
    ``sqrt(rho) rho_tilde sqrt(rho)``.

    For a marginal that carries its pure-state factor the square roots of the
    eigenvalues come straight from a singular value decomposition instead,
    which keeps C accurate to roundoff when rho is rank deficient.
    """
    factor = getattr(rho, "factor", None)
    if factor is not None and factor.shape[0] == 4:
        try:
            r = _factor_sqrt_lambdas(factor)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"SVD failed: {exc}") from None
        return SpinFlipSpectrum(tuple(float(x * x) for x in r),
                                float(r[0] - r[1] - r[2] - r[3]))
    m = _as_4x4(rho)
    s = _psd_sqrt(m)
    h = s @ (YY @ m.conj() @ YY) @ s
    h = 0.5 * (h + h.conj().T)
    try:
        lam = np.linalg.eigvalsh(h)[::-1]
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver failed: {exc}") from None
    lam = tuple(_clamp(float(x), "eigenvalue of rho rho_tilde") for x in lam)
    r = np.sqrt(lam)
    return SpinFlipSpectrum(lam, float(r[0] - r[1] - r[2] - r[3]))


def concurrence(rho) -> float:
    """The signed quantity C(rho); the two-tangle is ``max(0, C)``."""
    return spectrum(rho).c_value


def two_tangle(rho) -> float:
    return max(0.0, spectrum(rho).c_value)


def poly_coeffs(rho) -> PolyCoeffs:
    m = _as_4x4(rho)
    r = m @ (YY @ m.conj() @ YY)
    r2 = r @ r
    t1 = np.trace(r).real
    t2 = np.trace(r2).real
    t3 = np.trace(r2 @ r).real
    n4 = _clamp(t1, "n4")
    n8 = 0.5 * (t1 * t1 - t2)
    n12 = (t1**3 - 3 * t1 * t2 + 2 * t3) / 6.0
    n16 = _clamp(np.linalg.det(r).real, "n16")
    c = spectrum(rho).c_value
    c2 = c * c
    # f16 = |C|^2 (n12 + sqrt(n16) (n4 - |C|^2))
    f16 = _clamp(c2 * (n12 + np.sqrt(n16) * (n4 - c2)), "f16")
    chi_plus = 8 * np.sqrt(n16) + 8 * np.sqrt(f16)
    chi_minus = 8 * np.sqrt(n16) - 8 * np.sqrt(f16) + 2 * n4 * c2 - c2 * c2
    return PolyCoeffs(n4=float(n4), n8=float(n8), n12=float(n12), n16=float(n16),
                      f16=float(f16), chi_plus=float(chi_plus),
                      chi_minus=float(chi_minus), c_value=float(c))


def verify_n4_identity(rho) -> float:
    """Residual of ``n4 = |C|^2 + sqrt(4 n8 + 8 sqrt(n16) +/- 8 sqrt(f16))``
    with the sign of C picking the branch."""
    p = poly_coeffs(rho)
    sign = 1.0 if p.c_value >= 0 else -1.0
    inner = 4 * p.n8 + 8 * np.sqrt(p.n16) + sign * 8 * np.sqrt(p.f16)
    return float(abs(p.n4 - p.c_value**2 - np.sqrt(max(inner, 0.0))))
