"""
Berezin transform, its matrix realization, the essential kernel and
injectivity diagnostics.

Convention: for windows ``(phi1, phi2)`` the Berezin transform is

    B T(z) = <T pi(z) phi1, pi(z) phi2>,

the diagonal of the essential kernel ``K_T(z, w) = <T pi(z) phi1, pi(w) phi2>``.
With this window order ``T -> B T`` is the exact adjoint of
``a -> A_a^{phi1, phi2}`` for the sesquilinear pairings
``hs_inner(A_a, T) = <a, B T>_grid``, and its kernel consists of the
operators whose spreading function lives on the zeros of ``V_phi1 phi2``.
"""

from dataclasses import asdict, dataclass, field

import numpy as np

from .exceptions import DimensionError
from .oper import SingularSystem, as_operator, numerical_rank
from .tfcore import (RANK_TOL, ZERO_TOL, _nonzero_window, as_grid, as_signal,
                     coherent_family, cross_ambiguity, stft)


def _windows(phi1, phi2, n=None):
    phi1 = _nonzero_window(phi1, n)
    phi2 = _nonzero_window(phi2, phi1.shape[0])
    return phi1, phi2


def berezin_transform(T, phi1, phi2):
    """Berezin transform ``B T(z) = <T pi(z) phi1, pi(z) phi2>`` on the grid."""
    T = as_operator(T)
    n = T.shape[0]
    phi1, phi2 = _windows(phi1, phi2, n)
    C1 = coherent_family(phi1)
    C2 = coherent_family(phi2)
    return np.sum((T @ C1) * C2.conj(), axis=0).reshape(n, n)


def berezin_from_singular(S, phi1, phi2):
    """Berezin transform from a singular system ``T = sum s <., g> h``.

    ``B T(z) = sum_k s_k V_phi2 h_k(z) conj(V_phi1 g_k(z))``.
    """
    phi1, phi2 = _windows(phi1, phi2)
    n = phi1.shape[0]
    s = np.asarray(S.s)
    g = np.asarray(S.g, dtype=complex)
    h = np.asarray(S.h, dtype=complex)
    if g.size != len(s) * n or h.size != len(s) * n:
        raise DimensionError("singular vectors do not match the window dimension")
    g = g.reshape(len(s), n)
    h = h.reshape(len(s), n)
    out = np.zeros((n, n), dtype=complex)
    for sk, gk, hk in zip(s, g, h):
        out += sk * stft(phi2, hk) * np.conj(stft(phi1, gk))
    return out


def essential_kernel(T, phi1, phi2):
    """Essential kernel ``K[z, w] = <T pi(z) phi1, pi(w) phi2>``.

    Rows and columns are phase points flattened x-major (``x * N + omega``).
    """
    T = as_operator(T)
    phi1, phi2 = _windows(phi1, phi2, T.shape[0])
    C1 = coherent_family(phi1)
    C2 = coherent_family(phi2)
    return (C2.conj().T @ T @ C1).T


def kernel_reproduce(K, phi1, phi2, f):
    """Apply the operator encoded by its essential kernel to ``f``.

    ``T f = (|phi1| |phi2|)^-2 N^-2 sum_{z, w} V_phi1 f(z) K(z, w) pi(w) phi2``.
    """
    phi1, phi2 = _windows(phi1, phi2)
    n = phi1.shape[0]
    f = as_signal(f, n)
    K = np.asarray(K, dtype=complex)
    if K.shape != (n * n, n * n):
        raise DimensionError(f"kernel must be {n * n}x{n * n}, got {K.shape}")
    coeffs = stft(phi1, f).reshape(-1) @ K
    scale = (np.linalg.norm(phi1) * np.linalg.norm(phi2)) ** 2 * n * n
    return coherent_family(phi2) @ coeffs / scale


def quantization_matrix(phi1, phi2):
    """Matrix of ``a -> A_a^{phi1, phi2}``.

    Maps x-major flattened symbols to row-major flattened operators.
    """
    phi1, phi2 = _windows(phi1, phi2)
    n = phi1.shape[0]
    C1 = coherent_family(phi1)
    C2 = coherent_family(phi2)
    # column z is vec((pi(z) phi2)(pi(z) phi1)^H) / N
    return (C2[:, None, :] * C1.conj()[None, :, :]).reshape(n * n, n * n) / n


def berezin_matrix(phi1, phi2):
    """Matrix of ``T -> B T``; equals ``N * quantization_matrix(phi1, phi2)^H``.

    Built directly from the coherent families, not from the quantization
    matrix, so the adjoint relation between the two is a genuine check.
    """
    phi1, phi2 = _windows(phi1, phi2)
    n = phi1.shape[0]
    C1 = coherent_family(phi1)
    C2 = coherent_family(phi2)
    # B T(z) = sum_{t, s} conj(C2[t, z]) T[t, s] C1[s, z]
    return (C2.conj().T[:, :, None] * C1.T[:, None, :]).reshape(n * n, n * n)


def operator_from_berezin(B, phi1, phi2):
    """Recover ``T`` from ``B T`` by least squares on the Berezin matrix.

    Exact when the Berezin transform is injective.
    """
    B = as_grid(B)
    n = B.shape[0]
    M = berezin_matrix(phi1, phi2)
    if M.shape[0] != n * n:
        raise DimensionError("Berezin grid does not match the window dimension")
    vec, *_ = np.linalg.lstsq(M, B.reshape(-1), rcond=None)
    return vec.reshape(n, n)


@dataclass
class InjectivityReport:
    n: int
    window1: str
    window2: str
    zero_set: list = field(default_factory=list)
    min_abs: float = 0.0
    max_abs: float = 0.0
    rank: int = 0
    cond: float = 0.0
    injective: bool = False
    rank_law_holds: bool = False

    def to_dict(self):
        d = asdict(self)
        d["zero_set"] = [[int(x), int(w)] for x, w in self.zero_set]
        return d


def injectivity_report(phi1, phi2, window1="custom", window2="custom", tau=ZERO_TOL):
    """Compare the ambiguity zero set with the rank of the quantization map.

    ``injective`` is true when ``V_phi1 phi2`` has no zeros; ``rank_law_holds``
    records whether ``rank = N^2 - |zero set|``.
    """
    phi1, phi2 = _windows(phi1, phi2)
    n = phi1.shape[0]
    amb = np.abs(cross_ambiguity(phi1, phi2))
    zeros = np.argwhere(amb <= tau * amb.max())
    s = np.linalg.svd(quantization_matrix(phi1, phi2), compute_uv=False)
    rank = numerical_rank(s, RANK_TOL)
    cond = float(s[0] / s[rank - 1]) if rank else float("inf")
    return InjectivityReport(
        n=n,
        window1=str(window1),
        window2=str(window2),
        zero_set=[(int(x), int(w)) for x, w in zeros],
        min_abs=float(amb.min()),
        max_abs=float(amb.max()),
        rank=rank,
        cond=cond,
        injective=len(zeros) == 0,
        rank_law_holds=rank == n * n - len(zeros),
    )
