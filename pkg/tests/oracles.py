"""Independent reference implementations used only by the tests.

Nothing here imports the package's numerics: partial traces are explicit
index sums, concurrence comes from the non-Hermitian product, the
three-qubit invariant is the Cayley hyperdeterminant written out term by
term, and characteristic coefficients come from ``np.poly``.
"""
import itertools

import numpy as np

SY = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SY, SY)


def random_amplitudes(n, rng):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


def ptrace_loop(amp, n, keep):
    """Reduced density matrix by summing over every traced index."""
    keep = list(keep)
    rest = [q for q in range(1, n + 1) if q not in keep]
    k = len(keep)
    rho = np.zeros((2**k, 2**k), dtype=complex)

    def index(kb, rb):
        bits = [0] * n
        for q, b in zip(keep, kb):
            bits[q - 1] = b
        for q, b in zip(rest, rb):
            bits[q - 1] = b
        return int("".join(map(str, bits)), 2)

    for kb in itertools.product((0, 1), repeat=k):
        for lb in itertools.product((0, 1), repeat=k):
            s = 0j
            for rb in itertools.product((0, 1), repeat=len(rest)):
                s += amp[index(kb, rb)] * np.conj(amp[index(lb, rb)])
            rho[int("".join(map(str, kb)), 2), int("".join(map(str, lb)), 2)] = s
    return rho


def concurrence_signed(rho):
    """``sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)`` from ``eigvals(rho rho_tilde)``."""
    lam = np.linalg.eigvals(rho @ YY @ rho.conj() @ YY).real
    lam[lam < 1e-13] = 0.0  # zero eigenvalues of rank-deficient marginals
    r = np.sqrt(np.sort(lam)[::-1])
    return r[0] - r[1] - r[2] - r[3]


def char_coeffs(rho):
    """Elementary symmetric functions e1..e4 of the spectrum of ``rho rho_tilde``."""
    c = np.poly(rho @ YY @ rho.conj() @ YY)
    return [((-1) ** k * c[k]).real for k in range(1, 5)]


def cayley(t):
    """Cayley hyperdeterminant of a ``(2, 2, 2)`` tensor."""
    def a(s):
        return t[int(s[0]), int(s[1]), int(s[2])]

    return (a("000")**2 * a("111")**2 + a("001")**2 * a("110")**2
            + a("010")**2 * a("101")**2 + a("100")**2 * a("011")**2
            - 2 * (a("000") * a("001") * a("110") * a("111")
                   + a("000") * a("010") * a("101") * a("111")
                   + a("000") * a("100") * a("011") * a("111")
                   + a("001") * a("010") * a("101") * a("110")
                   + a("001") * a("100") * a("011") * a("110")
                   + a("010") * a("100") * a("011") * a("101"))
            + 4 * (a("000") * a("011") * a("101") * a("110")
                   + a("001") * a("010") * a("100") * a("111")))


def three_tangle_cayley(amp3):
    return 4 * abs(cayley(np.asarray(amp3).reshape(2, 2, 2)))


def one_tangle_purity(amp, n, focus=1):
    rho = ptrace_loop(amp, n, [focus])
    return 2 * (1 - np.trace(rho @ rho).real)


def slice_coefficients(tensor4, j, k):
    """Coefficients ``I^{4-m, m}`` of ``Det(psi_0 + t psi_1)`` for the triple
    (1, j, k), with the remaining qubit sliced; found by interpolation."""
    (m,) = {2, 3, 4} - {j, k}
    t = np.transpose(tensor4, [0, j - 1, k - 1, m - 1])
    pts = np.array([0.3, -0.7, 1.1, 0.5 + 0.2j, -1.3j])
    vals = [cayley(t[..., 0] + x * t[..., 1]) for x in pts]
    c = np.linalg.solve(np.vander(pts, 5, increasing=True), vals)
    return c / np.array([1, 4, 6, 4, 1])


def n48_oracle(tensor4, j, k):
    c = slice_coefficients(tensor4, j, k)
    return float(np.dot([1, 4, 6, 4, 1], np.abs(c) ** 2))
