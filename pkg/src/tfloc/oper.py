"""
Dense operators on C^N: localization operators, singular systems, Schatten
norms and the spreading representation ``T = sum_w eta(w) pi(w)``.
"""

from typing import NamedTuple

import numpy as np

from .exceptions import DimensionError, InvalidParameterError
from .tfcore import RANK_TOL, _nonzero_window, as_grid, coherent_family

# splitmix64 constants
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def as_operator(T, n=None):
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise DimensionError(f"operator must be a square matrix, got shape {T.shape}")
    if T.shape[0] < 2:
        raise DimensionError("operator dimension must be at least 2")
    if n is not None and T.shape[0] != n:
        raise DimensionError(f"expected {n}x{n} operator, got {T.shape}")
    return T


def localization_operator(a, phi1, phi2):
    """Localization operator with symbol ``a``, analysis window ``phi1`` and
    synthesis window ``phi2``.

    ``A_a = (1/N) sum_z a(z) (pi(z) phi2) (pi(z) phi1)^H``, so that
    ``A_a f = (1/N) sum_z a(z) <f, pi(z) phi1> pi(z) phi2``.
    """
    a = as_grid(a)
    n = a.shape[0]
    phi1 = _nonzero_window(phi1, n)
    phi2 = _nonzero_window(phi2, n)
    C1 = coherent_family(phi1)
    C2 = coherent_family(phi2)
    return (C2 * a.reshape(-1)) @ C1.conj().T / n


class SingularSystem(NamedTuple):
    """``T = sum_k s[k] <., g[k]> h[k]``; ``g`` and ``h`` hold one vector per row."""
    s: np.ndarray
    g: np.ndarray
    h: np.ndarray

    def reconstruct(self):
        if len(self.s) == 0:
            raise DimensionError("cannot infer the dimension of an empty singular system")
        return (self.h.T * self.s) @ self.g.conj()


def singular_system(T):
    """Singular value decomposition with nonincreasing singular values."""
    T = as_operator(T)
    U, s, Vh = np.linalg.svd(T)
    return SingularSystem(s=s, g=Vh.conj(), h=U.T.copy())


def numerical_rank(s, tol=RANK_TOL):
    """Count singular values above ``tol * max(s)``."""
    s = np.asarray(s)
    if s.size == 0 or s.max() == 0:
        return 0
    return int(np.sum(s > tol * s.max()))


def schatten_norm(T, p=2):
    """Schatten ``p``-norm; ``p = inf`` is the operator norm."""
    if not p >= 1:
        raise InvalidParameterError(f"Schatten exponent must be >= 1, got {p}")
    s = np.linalg.svd(as_operator(T), compute_uv=False)
    if np.isinf(p):
        return float(s[0])
    if p == 2:
        return float(np.sqrt(np.sum(s ** 2)))
    return float(np.sum(s ** p) ** (1.0 / p))


def hs_inner(A, T):
    """Hilbert-Schmidt pairing ``trace(T^H A) = sum A conj(T)``."""
    A = as_operator(A)
    T = as_operator(T, A.shape[0])
    return complex(np.vdot(T, A))


def to_spreading(T):
    """Spreading coefficients ``eta(w) = trace(pi(w)^H T) / N``."""
    T = as_operator(T)
    n = T.shape[0]
    t = np.arange(n)
    # diags[x, t] = T[t, t - x]
    diags = T[t[None, :], (t[None, :] - t[:, None]) % n]
    return np.fft.fft(diags, axis=1) / n


def from_spreading(eta):
    """Operator ``sum_w eta(w) pi(w)``; inverse of :func:`to_spreading`."""
    eta = as_grid(eta)
    n = eta.shape[0]
    t = np.arange(n)
    diags = np.fft.ifft(eta, axis=1) * n
    T = np.zeros((n, n), dtype=complex)
    T[t[None, :], (t[None, :] - t[:, None]) % n] = diags
    return T


def dft_operator(n):
    """Unitary DFT matrix ``F[k, t] = N^{-1/2} exp(-2 pi i k t / N)``."""
    if n < 2:
        raise DimensionError("dimension must be at least 2")
    t = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(t, t) / n) / np.sqrt(n)


def splitmix64(seed, count):
    """First ``count`` outputs of splitmix64 started from ``seed``.

    State update ``s += 0x9E3779B97F4A7C15``; each output is the new state
    passed through the standard two xor-shift-multiply finalizer.
    """
    seed = np.uint64(int(seed) % 2 ** 64)
    k = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = seed + k * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def standard_normals(seed, count):
    """Box-Muller normals from the splitmix64 stream.

    Consecutive outputs ``(a, b)`` map to ``u1 = ((a >> 11) + 1) / 2^53`` in
    (0, 1] and ``u2 = (b >> 11) / 2^53``; each pair yields
    ``r cos(2 pi u2), r sin(2 pi u2)`` with ``r = sqrt(-2 ln u1)``.
    """
    pairs = (count + 1) // 2
    raw = splitmix64(seed, 2 * pairs)
    top = (raw >> np.uint64(11)).astype(np.float64)
    u1 = (top[0::2] + 1.0) / 2.0 ** 53
    u2 = top[1::2] / 2.0 ** 53
    r = np.sqrt(-2.0 * np.log(u1))
    out = np.empty(2 * pairs)
    out[0::2] = r * np.cos(2 * np.pi * u2)
    out[1::2] = r * np.sin(2 * np.pi * u2)
    return out[:count]


def complex_normals(seed, shape):
    """Standard complex Gaussian array; real and imaginary parts interleaved."""
    size = int(np.prod(shape))
    z = standard_normals(seed, 2 * size)
    return ((z[0::2] + 1j * z[1::2]) / np.sqrt(2)).reshape(shape)


def random_operator(seed, n, kind="ginibre", rank=None):
    """Deterministic random test operator.

    Parameters
    ----------
    seed : int
        splitmix64 seed.
    n : int
        Dimension.
    kind : {"ginibre", "rank", "hermitian"}
        ``ginibre`` is a dense complex Gaussian matrix, ``rank`` a product of
        N x k and k x N Gaussian factors, ``hermitian`` the Hermitian part of
        a Ginibre matrix.
    rank : int, optional
        Required for ``kind="rank"``.
    """
    if n < 2:
        raise DimensionError("dimension must be at least 2")
    if kind == "ginibre":
        return complex_normals(seed, (n, n))
    if kind == "hermitian":
        G = complex_normals(seed, (n, n))
        return (G + G.conj().T) / 2
    if kind == "rank":
        if rank is None or not 1 <= rank <= n:
            raise InvalidParameterError(f"rank must be in [1, {n}], got {rank}")
        Z = complex_normals(seed, (2 * n * rank,))
        return Z[: n * rank].reshape(n, rank) @ Z[n * rank:].reshape(rank, n)
    raise InvalidParameterError(f"unknown operator class {kind!r}")


def parse_random_class(spec):
    """Parse ``ginibre``, ``hermitian`` or ``rank-K`` into ``(kind, rank)``."""
    spec = spec.strip().lower()
    if spec in ("ginibre", "ginibre-dense"):
        return "ginibre", None
    if spec == "hermitian":
        return "hermitian", None
    if spec.startswith("rank-"):
        try:
            return "rank", int(spec[5:])
        except ValueError:
            pass
    raise InvalidParameterError(f"unknown random operator class {spec!r}")
