"""Constructors for the linear-optical circuits used throughout.

Every constructor returns a :class:`Circuit` whose matrix has been
verified unitary (tolerance 1e-12 for the analytic families, 1e-9 for
user-supplied numeric data).  The arrays are frozen so circuits can be
shared and used as cache keys safely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from multiphoton import linalg

ANALYTIC_TOL = 1e-12
CUSTOM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Circuit:
    """N x N unitary with construction provenance."""

    u: np.ndarray
    kind: str  # "dft" | "symmetric" | "beamsplitter" | "custom"
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.u.shape[0]


def _finish(u: np.ndarray, kind: str, params: dict, tol: float) -> Circuit:
    ok, dev = linalg.check_unitary(u, tol)
    if not ok:
        raise ValueError(
            f"{kind} circuit is not unitary: max |U†U - I| = {dev:.3e} > {tol:g}"
        )
    u.flags.writeable = False
    return Circuit(u=u, kind=kind, params=params)


def dft(n: int) -> Circuit:
    """Discrete-Fourier-transform multiport.

    u_jk = exp(2*pi*i*(j-1)(k-1)/N) / sqrt(N): every splitting ratio is
    1/N, the fully balanced N-port.
    """
    if n < 2:
        raise ValueError(f"DFT needs at least 2 ports, got {n}")
    idx = np.arange(n)
    u = np.exp(2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n)
    return _finish(u, "dft", {"n": n}, ANALYTIC_TOL)


def symmetric(phi: float) -> Circuit:
    """Phase-controlled symmetric 3-port.

    Diagonal alpha = (2 + e^{i phi})/3 and off-diagonal
    beta = (-1 + e^{i phi})/3.  phi = 0 is the identity; phi = 2*pi/3 and
    4*pi/3 are balanced (|alpha| = |beta| = 1/sqrt(3)).  phi is wrapped to
    [0, 2*pi) for scan bookkeeping.
    """
    phi = float(phi) % (2 * math.pi)
    e = complex(math.cos(phi), math.sin(phi))
    alpha = (2 + e) / 3
    beta = (-1 + e) / 3
    u = np.full((3, 3), beta, dtype=np.complex128)
    np.fill_diagonal(u, alpha)
    return _finish(u, "symmetric", {"phi": phi}, ANALYTIC_TOL)


def beamsplitter(r: float) -> Circuit:
    """Two-port beamsplitter with reflectance R and transmittance T = 1-R.

    Realized as [[sqrt(T), i sqrt(R)], [i sqrt(R), sqrt(T)]]; the i on the
    cross terms is a phase convention and no observable here depends on it.
    """
    if not 0 <= r <= 1:
        raise ValueError(f"reflectance must be in [0, 1], got {r}")
    t = 1.0 - r
    u = np.array(
        [[math.sqrt(t), 1j * math.sqrt(r)], [1j * math.sqrt(r), math.sqrt(t)]],
        dtype=np.complex128,
    )
    return _finish(u, "beamsplitter", {"r": float(r)}, ANALYTIC_TOL)


def custom(matrix) -> Circuit:
    """Wrap a user-supplied unitary (checked at the looser 1e-9 tolerance
    appropriate for matrices that went through decimal serialization)."""
    u = linalg.as_complex_matrix(matrix)
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"circuit matrix must be square, got {u.shape}")
    return _finish(u.copy(), "custom", {}, CUSTOM_TOL)
