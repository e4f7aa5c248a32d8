"""Interference visibilities and statistical bound curves.

Visibility is the coincidence contrast normalized against the
distinguishable limit of the same source, V = 1 - P_id / P_dist.
Positive V is a coincidence dip (destructive interference), negative V a
bump; the normalization cancels the trivial bunching background so that
sources with very different photon statistics can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EPS_DENOMINATOR = 1e-12


@dataclass(frozen=True)
class VisibilityPoint:
    """A visibility together with the probabilities it was formed from."""

    v: float
    p_id: float
    p_dist: float


def visibility(p_id: float, p_dist: float) -> VisibilityPoint:
    """V = 1 - p_id / p_dist.  Raises when the denominator is degenerate
    (every valid configuration here has p_dist of order 1)."""
    if p_dist <= EPS_DENOMINATOR:
        raise ValueError(
            f"degenerate distinguishable probability {p_dist!r}; "
            "cannot form a visibility"
        )
    return VisibilityPoint(v=1 - p_id / p_dist, p_id=p_id, p_dist=p_dist)


def v2_closed(r: float, g2: float) -> float:
    """Two-port visibility 2RT / (2RT g2 + 1 - 2RT).

    Strictly decreasing in g2 (dV/dg2 = -V^2): for two ports, statistical
    noise can only wash out the dip.
    """
    if not 0 <= r <= 1:
        raise ValueError(f"reflectance must be in [0, 1], got {r}")
    if g2 < 0:
        raise ValueError(f"g2 must be >= 0, got {g2}")
    rt2 = 2 * r * (1 - r)
    return rt2 / (rt2 * g2 + 1 - rt2)


def v3_dft(g2: float, g3: float) -> float:
    """Balanced 3-port visibility (6 g2 - 1) / (g3 + 6 g2 + 2).

    Negative below g2 = 1/6 (coincidence bump), down to -0.5 for single
    photons; positive and non-monotonic in the noisy regime.
    """
    if g2 < 0 or g3 < 0:
        raise ValueError("autocorrelations must be >= 0")
    return (6 * g2 - 1) / (g3 + 6 * g2 + 2)


def v3_classical_bound(g2: float) -> float:
    """Ceiling on the balanced 3-port visibility for classical light:
    v3_dft evaluated on the Cauchy-Schwarz boundary g3 = g2^2."""
    return v3_dft(g2, g2 * g2)


def v3_gaussian_bound(g2: float) -> float:
    """Bound for pure Gaussian states: v3_dft on g3 = (2 - 3 sqrt(g2))^2.

    Tends to 6/15 = 0.4 as g2 grows; in the regime g2 <= 4/9 a measured
    visibility outside this curve witnesses non-Gaussianity.
    """
    if g2 < 0:
        raise ValueError(f"g2 must be >= 0, got {g2}")
    return (6 * g2 - 1) / ((2 - 3 * math.sqrt(g2)) ** 2 + 6 * g2 + 2)


def v3_fock(n: int) -> float:
    """Balanced 3-port visibility of n-photon inputs: v3_dft at
    g2 = 1 - 1/n, g3 = (1 - 1/n)(1 - 2/n); approaches the Poissonian 5/9
    from below as n grows."""
    if n < 1:
        raise ValueError(f"photon number must be >= 1, got {n}")
    g2 = 1 - 1 / n
    return v3_dft(g2, g2 * (1 - 2 / n))


def v3_mixture(p: float, q: float) -> float:
    """Balanced 3-port visibility of the vacuum/1/2-photon mixture.

    With x = 12(1-q) / ((1-p)(2-q)^2) this is (x - 1)/(x + 2); sweeping p
    along q = 1 - p covers the whole range (-0.5, 1).
    """
    if not 0 <= p < 1:
        raise ValueError(f"vacuum probability must be in [0, 1), got {p}")
    if not 0 <= q <= 1:
        raise ValueError(f"single-photon branching must be in [0, 1], got {q}")
    x = 12 * (1 - q) / ((1 - p) * (2 - q) ** 2)
    return (x - 1) / (x + 2)
