"""Photon-statistics models.

A light source enters every calculation here only through its mean photon
number and its normalized intensity autocorrelations
g^(m) = <:n^m:>/<n>^m, so sources are plain records of that data plus
constructors for the standard families (Fock, laser, thermal, diluted
laser, vacuum/1/2-photon mixtures).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

G_CAP = 1e12  # guard against silent overflow in g2 -> infinity scans


@dataclass(frozen=True)
class SourceStats:
    """Mean photon number and autocorrelation sequence of one source.

    ``g[m]`` is g^(m) for m = 0..max_order.  g[0] = g[1] = 1 by
    convention, so products over occupation patterns that include empty or
    singly-occupied slots pick up a factor of exactly 1.
    """

    mean_n: float
    g: tuple[float, ...]

    def __post_init__(self):
        if not (math.isfinite(self.mean_n) and self.mean_n >= 0):
            raise ValueError(f"mean photon number must be >= 0, got {self.mean_n}")
        if len(self.g) < 2:
            raise ValueError("g sequence must cover at least orders 0 and 1")
        if self.g[0] != 1.0 or self.g[1] != 1.0:
            raise ValueError("g[0] and g[1] must both equal 1")
        for m, value in enumerate(self.g):
            if not (math.isfinite(value) and 0 <= value <= G_CAP):
                raise ValueError(f"g({m}) = {value} outside [0, {G_CAP:g}]")

    @property
    def max_order(self) -> int:
        return len(self.g) - 1

    @property
    def g2(self) -> float:
        return self.g[2]

    @property
    def g3(self) -> float:
        return self.g[3]


@dataclass(frozen=True)
class StatClass:
    """Statistical classification of a source from g^(2) and g^(3).

    ``classical_consistent`` is the Cauchy-Schwarz predicate
    g3 >= g2^2 - 1e-12, which classical wave theory cannot violate (note
    Fock states saturate it, so nonclassicality is flagged separately via
    g2 < 1).  ``gaussian_pure_consistent`` is the pure-Gaussian-state
    predicate g3 >= (2 - 3*sqrt(g2))^2 - 1e-12.
    """

    classification: str  # "sub-Poissonian" | "Poissonian" | "super-Poissonian"
    classical_consistent: bool
    gaussian_pure_consistent: bool
    nonclassical: bool


def _with_prefix(values: list[float], mean_n: float) -> SourceStats:
    return SourceStats(mean_n, (1.0, 1.0, *values))


def fock_stats(n: int, max_order: int = 3) -> SourceStats:
    """n-photon number state: g^(m) = n!/((n-m)! n^m) for m <= n, else 0.

    g^(2) = 1 - 1/n and g^(3) = (1 - 1/n)(1 - 2/n).
    """
    if n < 1:
        raise ValueError(f"photon number must be >= 1, got {n}")
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    gs = [math.perm(n, m) / n**m if m <= n else 0.0 for m in range(2, max_order + 1)]
    return _with_prefix(gs, float(n))


def laser_stats(max_order: int = 3, mean_n: float = 1.0) -> SourceStats:
    """Poissonian (coherent) light: g^(m) = 1 for all m."""
    return _with_prefix([1.0] * (max_order - 1), mean_n)


def thermal_stats(max_order: int = 3, mean_n: float = 1.0) -> SourceStats:
    """Thermal light: g^(m) = m!  (g2 = 2, g3 = 6, ...)."""
    gs = [float(math.factorial(m)) for m in range(2, max_order + 1)]
    return _with_prefix(gs, mean_n)


def diluted_laser_stats(p: float, max_order: int = 3) -> SourceStats:
    """Laser light at fixed intensity with probability p, vacuum otherwise.

    g^(m) = p^(1-m), so g3 = g2^2 exactly: this family saturates the
    classical Cauchy-Schwarz bound, which is what makes it the optimal
    engineered-noise source.
    """
    if not 0 < p <= 1:
        raise ValueError(f"dilution probability must be in (0, 1], got {p}")
    gs = [p ** (1 - m) for m in range(2, max_order + 1)]
    return _with_prefix(gs, p)


def vac12_mixture_stats(p: float, q: float, max_order: int = 3) -> SourceStats:
    """Mixture of vacuum, one photon, and two photons.

    Weights are p, (1-p)q and (1-p)(1-q).  Mean is (1-p)(2-q);
    g^(2) = 2(1-q) / ((1-p)(2-q)^2) and g^(m) = 0 for m >= 3, which lets
    the mixture reach any g2 in [0, inf) with no third-order penalty.
    """
    if not 0 <= p < 1:
        raise ValueError(f"vacuum probability must be in [0, 1), got {p}")
    if not 0 <= q <= 1:
        raise ValueError(f"single-photon branching must be in [0, 1], got {q}")
    mean = (1 - p) * (2 - q)
    if mean <= 0:
        raise ValueError("degenerate all-vacuum mixture")
    g2 = 2 * (1 - q) / ((1 - p) * (2 - q) ** 2)
    gs = [g2] + [0.0] * (max_order - 2)
    return _with_prefix(gs, mean)


def custom_stats(g2: float, g3: float | None = None, mean_n: float = 1.0) -> SourceStats:
    """Source specified directly by its low-order autocorrelations."""
    values = [float(g2)] if g3 is None else [float(g2), float(g3)]
    return _with_prefix(values, mean_n)


def classify(stats: SourceStats) -> StatClass:
    """Classify a source against the Poissonian, classical-wave, and
    pure-Gaussian benchmarks (needs g defined to order 3)."""
    if stats.max_order < 3:
        raise ValueError("classification requires g defined to order 3")
    g2, g3 = stats.g[2], stats.g[3]
    if g2 < 1:
        kind = "sub-Poissonian"
    elif g2 > 1:
        kind = "super-Poissonian"
    else:
        kind = "Poissonian"
    return StatClass(
        classification=kind,
        classical_consistent=g3 >= g2**2 - 1e-12,
        gaussian_pure_consistent=g3 >= (2 - 3 * math.sqrt(g2)) ** 2 - 1e-12,
        nonclassical=g2 < 1,
    )
