"""
Symbol recovery for localization operators and the density / Fourier-gap
experiments.

In the spreading domain quantization is diagonal:

    to_spreading(A_a)(w) = m(w) * F_sigma^{+1} a(w),   m(w) = V_phi1 phi2(w) / N,

so least-squares recovery of a symbol reduces to a pointwise division.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .berezin import berezin_transform, injectivity_report
from .exceptions import InvalidParameterError, VanishingAmbiguityError
from .oper import (as_operator, complex_normals, dft_operator, from_spreading,
                   localization_operator, random_operator, schatten_norm,
                   to_spreading)
from .tfcore import (ZERO_TOL, PhasePoint, _nonzero_window, cross_ambiguity,
                     mixed_norm, symplectic_dft, window_gallery, zero_mask)


def spreading_multiplier(phi1, phi2):
    """Diagonal of quantization in the spreading domain, ``V_phi1 phi2 / N``."""
    phi1 = _nonzero_window(phi1)
    phi2 = _nonzero_window(phi2, phi1.shape[0])
    return cross_ambiguity(phi1, phi2) / phi1.shape[0]


def solve_symbol(T, phi1, phi2, lam=0.0, pseudo_inverse=False, tau=ZERO_TOL):
    """Symbol ``a`` whose localization operator best approximates ``T``.

    Minimizes ``||eta_T - eta_{A_a}||^2 + lam * ||a||^2`` (plain sums over the
    grid), i.e. ``||T - A_a||_HS^2 / N + lam * ||a||^2``. The minimizer is
    ``F_sigma^{+1}[conj(m) eta_T / (|m|^2 + lam)]``.

    With ``lam == 0`` the multiplier must be zero-free unless
    ``pseudo_inverse`` is set, in which case coefficients on the zero set
    are dropped (the ``lam -> 0+`` limit, i.e. the minimum-norm solution).

    Raises
    ------
    VanishingAmbiguityError
        ``lam == 0``, the ambiguity has zeros and ``pseudo_inverse`` is off.
    """
    T = as_operator(T)
    n = T.shape[0]
    if not lam >= 0:
        raise InvalidParameterError(f"lambda must be nonnegative, got {lam}")
    m = spreading_multiplier(_nonzero_window(phi1, n), _nonzero_window(phi2, n))
    eta = to_spreading(T)
    if lam == 0:
        zeros = zero_mask(m, tau)
        if zeros.any() and not pseudo_inverse:
            pts = [PhasePoint(int(x), int(w)) for x, w in np.argwhere(zeros)]
            raise VanishingAmbiguityError(
                f"ambiguity vanishes at {len(pts)} phase points: {pts}", pts)
        ahat = np.where(zeros, 0, eta / np.where(zeros, 1, m))
    else:
        ahat = np.conj(m) * eta / (np.abs(m) ** 2 + lam)
    return symplectic_dft(ahat, +1)


@dataclass
class ApproxReport:
    n: int
    lam: float
    residual_hs: float
    residual_op: float
    residual_s1: float
    symbol_sup: float
    symbol: np.ndarray


def approximation_report(T, phi1, phi2, lam=0.0, pseudo_inverse=False, tau=ZERO_TOL):
    """Solve for the symbol and measure ``T - A_a`` in three Schatten norms."""
    T = as_operator(T)
    a = solve_symbol(T, phi1, phi2, lam, pseudo_inverse=pseudo_inverse, tau=tau)
    R = T - localization_operator(a, phi1, phi2)
    return ApproxReport(
        n=T.shape[0],
        lam=float(lam),
        residual_hs=schatten_norm(R, 2),
        residual_op=schatten_norm(R, np.inf),
        residual_s1=schatten_norm(R, 1),
        symbol_sup=float(np.abs(a).max()),
        symbol=a,
    )


def projection_residual(T, phi1, phi2, tau=ZERO_TOL):
    """Predicted ``lam = 0`` HS residual: ``sqrt(N * sum_{w in E} |eta_T(w)|^2)``."""
    T = as_operator(T)
    n = T.shape[0]
    E = zero_mask(spreading_multiplier(phi1, phi2), tau)
    return float(np.sqrt(n * np.sum(np.abs(to_spreading(T)[E]) ** 2)))


def zero_set_witness(phi1, phi2, seed=0, tau=ZERO_TOL):
    """Operator with random spreading mass on the ambiguity zero set only.

    Its Berezin transform vanishes and no localization operator with these
    windows approximates it better than the zero operator. Returns ``None``
    when the zero set is empty.
    """
    E = zero_mask(spreading_multiplier(phi1, phi2), tau)
    if not E.any():
        return None
    eta = np.where(E, complex_normals(seed, E.shape), 0)
    return from_spreading(eta)


def clip_symbol(a, level):
    """Rescale entries with modulus above ``level`` to modulus ``level``."""
    a = np.asarray(a, dtype=complex)
    if not level > 0:
        raise InvalidParameterError("clip level must be positive")
    mag = np.abs(a)
    scale = np.where(mag > level, level / np.where(mag > 0, mag, 1), 1.0)
    return a * scale


@dataclass
class DensityRow:
    n: int
    window1: str
    window2: str
    injective: bool
    zero_count: int
    rank: int
    rank_law_holds: bool
    max_residual: float
    witness_residual: float


def density_sweep(window_pairs, n_list, seed=0, n_targets=3, tau=ZERO_TOL):
    """Density of localization operators versus ambiguity zeros.

    For every window pair and dimension, random Ginibre targets are
    approximated at ``lam = 0`` (minimum-norm solution) and the largest
    relative HS residual is recorded. If the ambiguity has zeros, a witness
    operator with spreading mass on the zero set is built and its relative
    residual is recorded as well (NaN otherwise).

    Rows are sorted by ``(N, window1, window2)``.
    """
    rows = []
    for n in sorted(set(n_list)):
        for w1, w2 in sorted(window_pairs):
            try:
                phi1 = window_gallery(w1, n)
                phi2 = window_gallery(w2, n)
            except InvalidParameterError:
                continue
            rep = injectivity_report(phi1, phi2, w1, w2, tau=tau)
            worst = 0.0
            for k in range(n_targets):
                T = random_operator(seed + k, n, "ginibre")
                r = approximation_report(T, phi1, phi2, 0.0, pseudo_inverse=True, tau=tau)
                worst = max(worst, r.residual_hs / schatten_norm(T, 2))
            witness = zero_set_witness(phi1, phi2, seed=seed, tau=tau)
            if witness is None:
                wres = float("nan")
            else:
                r = approximation_report(witness, phi1, phi2, 0.0, pseudo_inverse=True, tau=tau)
                wres = r.residual_hs / schatten_norm(witness, 2)
            rows.append(DensityRow(n, w1, w2, rep.injective, len(rep.zero_set), rep.rank,
                                   rep.rank_law_holds, worst, wres))
    return rows


@dataclass
class FourierGapRow:
    n: int
    zero_count: int
    min_abs_ambiguity: float
    symbol_sup: float
    residual_hs: float
    residual_op: float
    clip_level: float
    clipped_residual_op: float


def fourier_gap_experiment(n_list, window="gauss:1.0", clip_level=1.0, tau=ZERO_TOL):
    """Approximate the unitary DFT by localization operators.

    For each N the minimum-norm ``lam = 0`` symbol ``a*`` is computed; its
    sup norm, the unclipped residual, and the operator-norm residual after
    clipping ``a*`` to modulus ``clip_level`` are recorded. Rows with
    ``zero_count > 0`` are flagged: the ambiguity vanishes there and the
    coefficients of the DFT on those points are not reproduced.
    """
    rows = []
    for n in sorted(set(n_list)):
        phi = window_gallery(window, n)
        F = dft_operator(n)
        amb = np.abs(cross_ambiguity(phi, phi))
        zeros = int(np.sum(amb <= tau * amb.max()))
        rep = approximation_report(F, phi, phi, 0.0, pseudo_inverse=True, tau=tau)
        clipped = localization_operator(clip_symbol(rep.symbol, clip_level), phi, phi)
        rows.append(FourierGapRow(
            n=n,
            zero_count=zeros,
            min_abs_ambiguity=float(amb.min()),
            symbol_sup=rep.symbol_sup,
            residual_hs=rep.residual_hs,
            residual_op=rep.residual_op,
            clip_level=float(clip_level),
            clipped_residual_op=schatten_norm(F - clipped, np.inf),
        ))
    return rows


class BoundCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def berezin_bound_check(T, phi1, phi2, p, rtol=1e-12):
    """Check ``||B T||_{L^p} <= |phi1| |phi2| ||T||_{S^p}``.

    The phase-space norm uses weight 1/N per point. ``rtol`` absorbs
    rounding at equality cases such as the identity with ``p = inf``.
    """
    T = as_operator(T)
    lhs = mixed_norm(berezin_transform(T, phi1, phi2), p, p)
    rhs = float(np.linalg.norm(phi1) * np.linalg.norm(phi2)) * schatten_norm(T, p)
    return BoundCheck(lhs, rhs, lhs <= rhs * (1 + rtol))
