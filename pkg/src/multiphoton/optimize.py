"""Parameter scans and one-dimensional maximizations.

Produces the figure-level data sets: visibility versus statistical noise
on the balanced 3-port with its bound curves, visibility along the
sequential mode-overlap path, visibility versus the symmetric-circuit
phase, and the noise-versus-Fock optimization including the narrow phase
window where both beat the Poissonian benchmark.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from multiphoton.coincidence import (
    coincidence_dft3,
    coincidence_hom,
    coincidence_mismatch_n3,
    coincidence_sym_phase,
)
from multiphoton.sources import (
    SourceStats,
    custom_stats,
    diluted_laser_stats,
    fock_stats,
    laser_stats,
    thermal_stats,
)

# Dilution that maximizes the classical-noise visibility on the balanced
# 3-port: g2 = 1/p = (1 + sqrt(109))/6.
OPTIMAL_NOISE_P = 6 / (1 + math.sqrt(109))

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass
class ScanResult:
    """One labelled curve: ordered rows of (param, p_id, p_dist, v)."""

    parameter: str
    label: str
    rows: list[tuple[float, float, float, float]]


@dataclass
class OptimumReport:
    argmax: float
    value: float
    bracket: tuple[float, float]
    iterations: int


@dataclass
class FockOptimumReport:
    """Best Fock photon numbers for both visibility sign branches."""

    n_best: int
    v_best: float
    n_worst: int
    v_worst: float
    n_best_abs: int
    v_best_abs: float
    evaluations: int


@dataclass
class CrossoverReport:
    """Phase window where Fock (n >= 3) and engineered-noise inputs both
    exceed the Poissonian visibility."""

    anchor_phi: float
    g2_fixed: float
    rows: list[tuple[float, float, float, int]]  # (phi, fock_margin, noise_margin, n*)
    window: tuple[float, float] | None


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iterations: int = 200,
) -> tuple[float, float, int]:
    """Maximize a unimodal function on [lo, hi]; returns (x, f(x), iters)."""
    a, b = float(lo), float(hi)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    iterations = 0
    while abs(b - a) > tol and iterations < max_iterations:
        iterations += 1
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x), iterations


def _vis_sym(phi: float, g2: float, g3: float) -> float:
    p_id = coincidence_sym_phase(phi, g2, g3, indistinguishable=True)
    p_dist = coincidence_sym_phase(phi, g2, g3, indistinguishable=False)
    return 1 - p_id / p_dist


def maximize_classical(
    phi: float,
    g2_lo: float = 1.0,
    g2_hi: float = 1e4,
    coarse_points: int = 64,
    tol: float = 1e-10,
) -> OptimumReport:
    """Maximize the symmetric-circuit visibility over classical noise.

    The search runs along the bound-saturating manifold g3 = g2^2 (the
    diluted laser), on a coarse log-spaced g2 grid followed by
    golden-section refinement of the best bracket.  A flat objective
    (e.g. the identity circuit) reports the lower boundary.
    """

    def objective(g2: float) -> float:
        return _vis_sym(phi, g2, g2 * g2)

    xs = np.logspace(math.log10(g2_lo), math.log10(g2_hi), coarse_points)
    vals = np.array([objective(x) for x in xs])
    if vals.max() - vals.min() < 1e-14:
        return OptimumReport(
            argmax=g2_lo, value=float(vals[0]), bracket=(g2_lo, g2_lo), iterations=0
        )
    i = int(np.argmax(vals))
    lo = float(xs[max(i - 1, 0)])
    hi = float(xs[min(i + 1, coarse_points - 1)])
    x, fx, iterations = golden_section_max(objective, lo, hi, tol=tol)
    return OptimumReport(argmax=x, value=fx, bracket=(lo, hi), iterations=iterations)


def _fock_vis_array(phi: float, ns: np.ndarray) -> np.ndarray:
    g2 = 1 - 1 / ns
    g3 = g2 * (1 - 2 / ns)
    e = complex(math.cos(phi), math.sin(phi))
    a = (2 + e) / 3
    b = (-1 + e) / 3
    aa, bb = abs(a) ** 2, abs(b) ** 2
    third = 3 * aa * bb**2
    p_id = third * g3 + 6 * bb * abs(a**2 + a * b + b**2) ** 2 * g2 + abs(
        a**3 + 3 * a * b**2 + 2 * b**3
    ) ** 2
    p_dist = third * g3 + 6 * bb * (aa**2 + aa * bb + bb**2) * g2 + (
        aa**3 + 3 * aa * bb**2 + 2 * bb**3
    )
    return 1 - p_id / p_dist


def best_fock(phi: float, n_max: int = 1000) -> FockOptimumReport:
    """Scan Fock photon numbers 1..n_max at a fixed circuit phase.

    Closed-form and cheap, so the scan is exhaustive.  Both sign branches
    are reported because the best dip and the best bump generally occur
    at different n (single photons dominate the bump branch).
    """
    if not 1 <= n_max <= 10**6:
        raise ValueError(f"n_max must be in 1..10^6, got {n_max}")
    ns = np.arange(1, n_max + 1, dtype=float)
    vs = _fock_vis_array(phi, ns)
    i_best = int(np.argmax(vs))
    i_worst = int(np.argmin(vs))
    i_abs = int(np.argmax(np.abs(vs)))
    return FockOptimumReport(
        n_best=i_best + 1,
        v_best=float(vs[i_best]),
        n_worst=i_worst + 1,
        v_worst=float(vs[i_worst]),
        n_best_abs=i_abs + 1,
        v_best_abs=float(abs(vs[i_abs])),
        evaluations=int(n_max),
    )


# --- figure-level scans ----------------------------------------------------

def standard_sources(max_order: int = 3) -> list[tuple[str, SourceStats]]:
    """The four sources used across the phase and overlap scans."""
    return [
        ("fock1", fock_stats(1, max_order)),
        ("laser", laser_stats(max_order)),
        ("thermal", thermal_stats(max_order)),
        ("noise-opt", diluted_laser_stats(OPTIMAL_NOISE_P, max_order)),
    ]


def dft_point_sources() -> list[tuple[str, SourceStats]]:
    """Marked sources of the noise-scan figure: Fock 1/2/4, laser, thermal
    and its second harmonic (g2 = 6, g3 = 90)."""
    return [
        ("fock1", fock_stats(1)),
        ("fock2", fock_stats(2)),
        ("fock4", fock_stats(4)),
        ("laser", laser_stats()),
        ("thermal", thermal_stats()),
        ("thermal-sh", custom_stats(6.0, 90.0)),
    ]


def _dft_rows(g2: float, g3: float) -> tuple[float, float, float]:
    p_id = coincidence_dft3(g2, g3, indistinguishable=True)
    p_dist = coincidence_dft3(g2, g3, indistinguishable=False)
    return p_id, p_dist, 1 - p_id / p_dist


def scan_g2_dft(
    g2_lo: float = 0.0,
    g2_hi: float = 6.0,
    count: int = 301,
    points: Sequence[tuple[str, SourceStats]] | None = None,
) -> list[ScanResult]:
    """Visibility versus g2 on the balanced 3-port.

    Emits the classical-noise ceiling (g3 = g2^2), the pure-Gaussian
    limit (g3 = (2 - 3 sqrt(g2))^2), the two-port reference at R = 1/2,
    and one single-row result per marked source.
    """
    if not 0 <= g2_lo < g2_hi <= 1e6:
        raise ValueError("g2 range must satisfy 0 <= lo < hi <= 1e6")
    if count < 2:
        raise ValueError("grid must have at least 2 points")
    grid = np.linspace(g2_lo, g2_hi, count)

    classical = ScanResult("g2", "classical-bound", [])
    gaussian = ScanResult("g2", "gaussian-bound", [])
    hom_ref = ScanResult("g2", "hom-reference", [])
    for g2 in grid:
        g2 = float(g2)
        classical.rows.append((g2, *_dft_rows(g2, g2 * g2)))
        gaussian.rows.append((g2, *_dft_rows(g2, (2 - 3 * math.sqrt(g2)) ** 2)))
        p_id = coincidence_hom(0.5, g2, indistinguishable=True)
        p_dist = coincidence_hom(0.5, g2, indistinguishable=False)
        hom_ref.rows.append((g2, p_id, p_dist, 1 - p_id / p_dist))

    results = [classical, gaussian, hom_ref]
    for label, stats in points if points is not None else dft_point_sources():
        p_id, p_dist, v = _dft_rows(stats.g2, stats.g3)
        results.append(ScanResult("g2", label, [(stats.g2, p_id, p_dist, v)]))
    return results


def scan_overlap(
    sources: Sequence[tuple[str, SourceStats]] | None = None,
    count: int = 201,
) -> list[ScanResult]:
    """Visibility along the sequential mode-overlap path xi in [0, 2].

    The visibility uses the xi-dependent coincidence against the fixed
    fully-distinguishable denominator, so every curve starts at 0 and
    ends at the full-interference value.
    """
    if count < 2:
        raise ValueError("grid must have at least 2 points")
    grid = np.linspace(0.0, 2.0, count)
    results = []
    for label, stats in sources if sources is not None else standard_sources():
        g2, g3 = stats.g2, stats.g3
        p_dist = coincidence_dft3(g2, g3, indistinguishable=False)
        rows = []
        for xi in grid:
            p_xi = coincidence_mismatch_n3(g2, g3, float(xi))
            rows.append((float(xi), p_xi, p_dist, 1 - p_xi / p_dist))
        results.append(ScanResult("xi", label, rows))
    return results


def scan_phase(
    sources: Sequence[tuple[str, SourceStats]] | None = None,
    count: int = 401,
    phi_lo: float = 0.0,
    phi_hi: float = 2 * math.pi,
) -> list[ScanResult]:
    """Visibility and raw coincidence probabilities versus the
    symmetric-circuit phase."""
    if count < 2:
        raise ValueError("grid must have at least 2 points")
    grid = np.linspace(phi_lo, phi_hi, count)
    results = []
    for label, stats in sources if sources is not None else standard_sources():
        g2, g3 = stats.g2, stats.g3
        rows = []
        for phi in grid:
            phi = float(phi)
            p_id = coincidence_sym_phase(phi, g2, g3, indistinguishable=True)
            p_dist = coincidence_sym_phase(phi, g2, g3, indistinguishable=False)
            rows.append((phi, p_id, p_dist, 1 - p_id / p_dist))
        results.append(ScanResult("phi", label, rows))
    return results


def crossover_window(
    phi_lo: float = 0.46 * math.pi,
    phi_hi: float = 0.505 * math.pi,
    step: float = 5e-4 * math.pi,
    n_values: Sequence[int] | None = None,
    anchor_phi: float = 0.471 * math.pi,
    g2_fixed: float | None = None,
) -> CrossoverReport:
    """Locate the phase window where noise and Fock inputs both beat the
    Poissonian benchmark.

    The noise source keeps its statistics fixed at the optimum for
    ``anchor_phi`` (recomputed unless ``g2_fixed`` is given); the Fock
    margin takes the best n >= 3 at each phase.  Margins in the window
    are of order 1e-3, hence the required phase resolution.
    """
    if step > 1e-3 * math.pi:
        raise ValueError("phase resolution must be <= 1e-3 * pi")
    if g2_fixed is None:
        g2_fixed = maximize_classical(anchor_phi).argmax
    ns = np.array(sorted(n for n in (n_values or range(3, 201)) if n >= 3), dtype=float)
    if ns.size == 0:
        raise ValueError("need at least one Fock photon number n >= 3")

    count = max(2, int(round((phi_hi - phi_lo) / step)) + 1)
    rows = []
    in_window = []
    for phi in np.linspace(phi_lo, phi_hi, count):
        phi = float(phi)
        v_laser = _vis_sym(phi, 1.0, 1.0)
        fock_vs = _fock_vis_array(phi, ns)
        i = int(np.argmax(fock_vs))
        fock_margin = float(fock_vs[i]) - v_laser
        noise_margin = _vis_sym(phi, g2_fixed, g2_fixed**2) - v_laser
        rows.append((phi, fock_margin, noise_margin, int(ns[i])))
        if fock_margin > 0 and noise_margin > 0:
            in_window.append(phi)

    window = (min(in_window), max(in_window)) if in_window else None
    return CrossoverReport(
        anchor_phi=anchor_phi, g2_fixed=float(g2_fixed), rows=rows, window=window
    )
