"""
Time-frequency shifts, STFT analysis/synthesis and phase-space utilities on Z_N.

Signals are length-N complex vectors, i.e. functions on Z_N. Phase-space
functions are N x N complex arrays indexed ``F[x, omega]``. The canonical
inner product on phase space carries weight 1/N per point::

    <F, G>_grid = (1/N) * sum_z F(z) * conj(G(z))

With this weight the STFT is an isometry up to the window norm and the
synthesis operator below is its exact adjoint.
"""

from typing import NamedTuple
import warnings

import numpy as np

from .exceptions import (DegenerateGridWarning, DimensionError,
                         InvalidParameterError)

ZERO_TOL = 1e-12
RANK_TOL = 1e-9


class PhasePoint(NamedTuple):
    """A point ``(x, omega)`` of the phase space Z_N x Z_N."""
    x: int
    omega: int

    def reduce(self, n):
        return PhasePoint(int(self.x) % n, int(self.omega) % n)


def as_signal(f, n=None):
    """Validate and convert ``f`` to a 1-D complex array of length >= 2."""
    f = np.asarray(f, dtype=complex)
    if f.ndim != 1:
        raise DimensionError(f"signal must be 1-D, got shape {f.shape}")
    if f.shape[0] < 2:
        raise DimensionError("signal dimension must be at least 2")
    if n is not None and f.shape[0] != n:
        raise DimensionError(f"expected signal of length {n}, got {f.shape[0]}")
    return f


def as_grid(F, n=None):
    """Validate and convert ``F`` to an N x N complex array."""
    F = np.asarray(F, dtype=complex)
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise DimensionError(f"grid must be square 2-D, got shape {F.shape}")
    if F.shape[0] < 2:
        raise DimensionError("grid dimension must be at least 2")
    if n is not None and F.shape[0] != n:
        raise DimensionError(f"expected {n}x{n} grid, got {F.shape}")
    return F


def _nonzero_window(phi, n=None):
    phi = as_signal(phi, n)
    if not np.any(phi):
        raise InvalidParameterError("window must be nonzero")
    return phi


def tf_shift(z, f):
    """Apply the time-frequency shift ``pi(z) = M_omega T_x`` to ``f``.

    ``(pi(x, omega) f)(t) = exp(2 pi i omega t / N) f(t - x)``.
    """
    f = as_signal(f)
    n = f.shape[0]
    x, omega = PhasePoint(*z).reduce(n)
    t = np.arange(n)
    return np.exp(2j * np.pi * omega * t / n) * np.roll(f, x)


def tf_shift_matrix(z, n):
    """Dense N x N matrix of ``pi(z)``."""
    if n < 2:
        raise DimensionError("dimension must be at least 2")
    x, omega = PhasePoint(*z).reduce(n)
    t = np.arange(n)
    P = np.zeros((n, n), dtype=complex)
    P[t, (t - x) % n] = np.exp(2j * np.pi * omega * t / n)
    return P


def symplectic_pairing(z, w, n):
    """Return ``Jz . w = omega_z * x_w - x_z * omega_w (mod N)``."""
    z = PhasePoint(*z)
    w = PhasePoint(*w)
    return (z.omega * w.x - z.x * w.omega) % n


def coherent_family(phi):
    """All N^2 time-frequency shifts of ``phi`` as columns of an N x N^2 matrix.

    Column ``x * N + omega`` holds ``pi(x, omega) phi``.
    """
    phi = as_signal(phi)
    n = phi.shape[0]
    t = np.arange(n)
    shifted = phi[(t[:, None] - t[None, :]) % n]          # [t, x]
    mod = np.exp(2j * np.pi * np.outer(t, t) / n)          # [t, omega]
    return (shifted[:, :, None] * mod[:, None, :]).reshape(n, n * n)


def stft(g, f):
    """Short-time Fourier transform ``V_g f(x, omega) = <f, pi(x, omega) g>``.

    Parameters
    ----------
    g : array_like
        Window, length N.
    f : array_like
        Signal, length N.

    Returns
    -------
    ndarray, shape (N, N)
        ``V[x, omega] = sum_t f(t) conj(g(t - x)) exp(-2 pi i omega t / N)``.
    """
    f = as_signal(f)
    g = as_signal(g, f.shape[0])
    n = f.shape[0]
    t = np.arange(n)
    windows = np.conj(g[(t[None, :] - t[:, None]) % n])     # [x, t]
    return np.fft.fft(f[None, :] * windows, axis=1)


def stft_synthesis(g, F):
    """Adjoint of ``stft(g, .)`` under the grid pairing.

    Computes ``(1/N) sum_z F(z) pi(z) g``.
    """
    F = as_grid(F)
    n = F.shape[0]
    g = as_signal(g, n)
    t = np.arange(n)
    windows = g[(t[None, :] - t[:, None]) % n]              # [x, t]
    return np.sum(windows * np.fft.ifft(F, axis=1), axis=0)


def cross_ambiguity(phi1, phi2):
    """Cross-ambiguity ``V_phi1 phi2``; its zeros govern injectivity."""
    return stft(phi1, phi2)


def grid_inner(F, G):
    """Weighted phase-space inner product ``(1/N) sum F conj(G)``."""
    F = as_grid(F)
    G = as_grid(G, F.shape[0])
    return np.vdot(G, F) / F.shape[0]


def symplectic_dft(F, sign=1):
    """Symplectic Fourier transform on Z_N x Z_N.

    ``(F_sigma^s G)(w) = (1/N) sum_z G(z) exp(s 2 pi i Jz.w / N)``.

    The transform is unitary on the N^2-point grid and an involution for
    each sign; the two signs differ by the reflection ``w -> -w``.
    """
    G = as_grid(F)
    if sign == 1:
        return np.fft.fft(np.fft.ifft(G.T, axis=0), axis=1)
    if sign == -1:
        return np.fft.ifft(np.fft.fft(G.T, axis=0), axis=1)
    raise InvalidParameterError(f"sign must be +1 or -1, got {sign}")


def parse_window_spec(spec):
    """Split a window spec such as ``"gauss:1.0"`` into ``(kind, param)``."""
    kind, _, param = str(spec).strip().partition(":")
    kind = kind.lower()
    if kind in ("delta", "zeromaker"):
        if param:
            raise InvalidParameterError(f"window {kind!r} takes no parameter")
        return kind, None
    if kind == "rect":
        try:
            return kind, int(param)
        except ValueError:
            raise InvalidParameterError(f"rect needs an integer length: {spec!r}") from None
    if kind == "gauss":
        try:
            return kind, float(param)
        except ValueError:
            raise InvalidParameterError(f"gauss needs a float width: {spec!r}") from None
    if kind == "file":
        if not param:
            raise InvalidParameterError("file window needs a path")
        return kind, param
    raise InvalidParameterError(f"unknown window kind {kind!r}")


def window_gallery(spec, n):
    """Build a unit-norm window on Z_N.

    Supported specs are ``delta``, ``rect:L``, ``gauss:SIGMA``, ``zeromaker``
    and ``file:PATH`` (a Signal JSON document, normalized on load).

    ``gauss:SIGMA`` is the periodized Gaussian
    ``sum_{|m| <= 3} exp(-pi (t + mN)^2 / (SIGMA N))``. ``zeromaker`` is
    ``e_0 + e_{N/2}`` and needs even N.
    """
    if n < 2:
        raise DimensionError("dimension must be at least 2")
    kind, param = parse_window_spec(spec)
    t = np.arange(n)
    if kind == "delta":
        g = (t == 0).astype(complex)
    elif kind == "rect":
        if not 1 <= param <= n:
            raise InvalidParameterError(f"rect length must be in [1, {n}], got {param}")
        g = (t < param).astype(complex)
    elif kind == "gauss":
        if not param > 0:
            raise InvalidParameterError(f"gauss width must be positive, got {param}")
        g = sum(np.exp(-np.pi * (t + m * n) ** 2 / (param * n)) for m in range(-3, 4))
        g = g.astype(complex)
    elif kind == "zeromaker":
        if n % 2:
            raise InvalidParameterError("zeromaker needs even N")
        g = ((t == 0) | (t == n // 2)).astype(complex)
    else:
        from .serialize import load_signal
        g = load_signal(param)
        if g.shape[0] != n:
            raise DimensionError(f"window file has length {g.shape[0]}, expected {n}")
    norm = np.linalg.norm(g)
    if norm == 0:
        raise InvalidParameterError("window must be nonzero")
    return g / norm


def gallery_specs(n):
    """Default window specs valid at dimension ``n``."""
    specs = ["delta", "rect:2", "gauss:1.0", "gauss:0.5"]
    if n % 2 == 0:
        specs.append("zeromaker")
    return specs


def zero_set(F, tau=ZERO_TOL):
    """Phase points where ``|F(z)| <= tau * max|F|``.

    An identically zero grid is degenerate: every point is returned and a
    :class:`DegenerateGridWarning` is emitted.
    """
    F = as_grid(F)
    if tau < 0:
        raise InvalidParameterError("tau must be nonnegative")
    mag = np.abs(F)
    peak = mag.max()
    if peak == 0:
        warnings.warn("grid is identically zero; the whole grid is the zero set",
                      DegenerateGridWarning, stacklevel=2)
    xs, ws = np.nonzero(mag <= tau * peak)
    return [PhasePoint(int(x), int(w)) for x, w in zip(xs, ws)]


def zero_mask(F, tau=ZERO_TOL):
    """Boolean mask version of :func:`zero_set`, without the warning."""
    mag = np.abs(as_grid(F))
    return mag <= tau * mag.max()


def mixed_norm(F, p=2.0, q=None, weight=None):
    """Discrete mixed norm ``L^{p,q}`` of a phase-space function.

    Inner sum over ``x`` with exponent ``p``, outer over ``omega`` with
    exponent ``q``; ``inf`` replaces a sum by a max. ``weight`` is the
    measure of one phase point (default 1/N) and is split evenly between
    the two axes, so for ``p == q`` this is ``(weight * sum |F|^p)^(1/p)``.
    """
    F = as_grid(F)
    n = F.shape[0]
    q = p if q is None else q
    weight = 1.0 / n if weight is None else float(weight)
    if not (p >= 1 and q >= 1):
        raise InvalidParameterError(f"exponents must lie in [1, inf], got p={p}, q={q}")
    if not weight > 0:
        raise InvalidParameterError("weight must be positive")
    axis_w = np.sqrt(weight)
    mag = np.abs(F)
    if np.isinf(p):
        inner = mag.max(axis=0)
    else:
        inner = (np.sum(mag ** p, axis=0) * axis_w) ** (1.0 / p)
    if np.isinf(q):
        return float(inner.max())
    return float((np.sum(inner ** q) * axis_w) ** (1.0 / q))


def translate_span_rank(f):
    """Dimension of the span of all cyclic translates of ``f``.

    Computed from the singular values of the circulant matrix of translates
    with relative tolerance 1e-9. It equals the number of nonvanishing DFT
    coefficients of ``f``.
    """
    f = as_signal(f)
    if not np.any(f):
        raise InvalidParameterError("translate_span_rank needs a nonzero signal")
    n = f.shape[0]
    t = np.arange(n)
    circ = f[(t[:, None] - t[None, :]) % n]
    s = np.linalg.svd(circ, compute_uv=False)
    return int(np.sum(s > RANK_TOL * s[0]))
