"""Brute-force reference implementations.

Everything here is written as explicit loops straight from the defining
formulas, sharing no code with the package, so tests compare two
independent routes.
"""

import cmath
import math

import numpy as np


def shift(z, f):
    n = len(f)
    x, w = z
    return np.array([cmath.exp(2j * math.pi * w * t / n) * f[(t - x) % n] for t in range(n)])


def shift_matrix(z, n):
    P = np.zeros((n, n), dtype=complex)
    for s in range(n):
        e = np.zeros(n, dtype=complex)
        e[s] = 1
        P[:, s] = shift(z, e)
    return P


def inner(u, v):
    return sum(a * b.conjugate() for a, b in zip(u, v))


def stft(g, f):
    n = len(f)
    V = np.zeros((n, n), dtype=complex)
    for x in range(n):
        for w in range(n):
            V[x, w] = inner(f, shift((x, w), g))
    return V


def synthesis(g, F):
    n = len(g)
    out = np.zeros(n, dtype=complex)
    for x in range(n):
        for w in range(n):
            out += F[x, w] * shift((x, w), g)
    return out / n


def jpair(z, w):
    return z[1] * w[0] - z[0] * w[1]


def sdft(G, sign):
    n = G.shape[0]
    out = np.zeros_like(G, dtype=complex)
    for wx in range(n):
        for ww in range(n):
            acc = 0
            for x in range(n):
                for om in range(n):
                    acc += G[x, om] * cmath.exp(sign * 2j * math.pi * jpair((x, om), (wx, ww)) / n)
            out[wx, ww] = acc / n
    return out


def localization(a, phi1, phi2):
    n = len(phi1)
    A = np.zeros((n, n), dtype=complex)
    for x in range(n):
        for w in range(n):
            u = shift((x, w), phi2)
            v = shift((x, w), phi1)
            A += a[x, w] * np.outer(u, v.conj())
    return A / n


def localization_weak(a, phi1, phi2, f, g):
    """Right side of <A_a f, g> = <a, conj(V_phi1 f) V_phi2 g>_grid."""
    n = len(f)
    V1 = stft(phi1, f)
    V2 = stft(phi2, g)
    return sum(a[x, w] * (V1[x, w].conjugate() * V2[x, w]).conjugate()
               for x in range(n) for w in range(n)) / n


def spreading(T):
    n = T.shape[0]
    eta = np.zeros((n, n), dtype=complex)
    for x in range(n):
        for w in range(n):
            eta[x, w] = np.trace(shift_matrix((x, w), n).conj().T @ T) / n
    return eta


def berezin(T, phi1, phi2):
    """z -> <T pi(z) phi1, pi(z) phi2>."""
    n = len(phi1)
    B = np.zeros((n, n), dtype=complex)
    for x in range(n):
        for w in range(n):
            B[x, w] = inner(T @ shift((x, w), phi1), shift((x, w), phi2))
    return B


def kernel(T, phi1, phi2):
    n = len(phi1)
    pts = [(x, w) for x in range(n) for w in range(n)]
    K = np.zeros((n * n, n * n), dtype=complex)
    for i, z in enumerate(pts):
        Tz = T @ shift(z, phi1)
        for j, w in enumerate(pts):
            K[i, j] = inner(Tz, shift(w, phi2))
    return K


def dft(f):
    n = len(f)
    return np.array([sum(f[t] * cmath.exp(-2j * math.pi * k * t / n) for t in range(n))
                     for k in range(n)])


def singular_values(T):
    """Square roots of the eigenvalues of T^H T, sorted nonincreasing."""
    lam = np.linalg.eigvalsh(T.conj().T @ T)
    return np.sqrt(np.clip(lam[::-1], 0, None))


def periodic_gauss(n, sigma):
    g = np.array([sum(math.exp(-math.pi * (t + m * n) ** 2 / (sigma * n)) for m in range(-3, 4))
                  for t in range(n)], dtype=complex)
    return g / math.sqrt(sum(abs(v) ** 2 for v in g))
