"""Coincidence-probability engines.

The central quantity is the N-fold coincidence P = <:n_1 ... n_N:> at the
outputs of an N-port circuit.  For phase-independent, statistically
independent single-mode inputs it reduces to a finite sum over occupation
patterns s (compositions of N into N parts):

    indistinguishable:  sum_s |Per(U_d(s)) / prod_i s_i!|^2
                              * prod_i  n_i^{s_i} g_i^(s_i)
    distinguishable:    the same sum with Per(V_d(s)) / prod_i s_i!
                              (first power), where v_ij = |u_ij|^2

with U_d(s) the column multiset selected by the assignment tuple d(s).
The distinguishable sum divides by prod s_i! exactly once: the permanent
of a matrix with a repeated column already counts every ordering of the
identical photons, and squaring the factor would double-count it.

Besides the general engines this module carries independent closed forms
used for cross-checking: the explicit 3-port expansion with per-port
statistics, the two-port beamsplitter case, the balanced 3-port (DFT)
case, the phase-controlled symmetric 3-port, and the sequential
mode-mismatch path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from multiphoton import linalg
from multiphoton.circuits import Circuit
from multiphoton.sources import SourceStats

MAX_PORTS = 8


@dataclass(frozen=True)
class InputEnsemble:
    """Per-port source statistics feeding an N-port circuit."""

    stats: tuple[SourceStats, ...]

    @property
    def n(self) -> int:
        return len(self.stats)


def uniform_ensemble(n: int, stats: SourceStats) -> InputEnsemble:
    """All N ports fed identically (the symmetric-input configuration)."""
    return InputEnsemble(stats=(stats,) * n)


@dataclass(frozen=True)
class CoincidenceResult:
    """Raw correlation (units of photons^N) and the intensity-normalized
    probability p_raw / prod_i <n_i> (NaN when some port mean is zero)."""

    p_raw: float
    p_normalized: float


@dataclass(frozen=True)
class OverlapConfig:
    """Sequential alignment of the three pairwise mode overlaps.

    xi in [0, 1] sweeps M23 from 0 to 1 with M12 = M31 = 0 (ports 1 and 2
    stay mutually distinguishable); xi in (1, 2] then sweeps M12 = M31
    from 0 to 1 with M23 pinned at 1.
    """

    xi: float

    def __post_init__(self):
        if not 0 <= self.xi <= 2:
            raise ValueError(f"overlap parameter must be in [0, 2], got {self.xi}")

    @property
    def overlaps(self) -> tuple[float, float, float]:
        """(M12, M23, M31) at this point of the path."""
        if self.xi <= 1:
            return (0.0, self.xi, 0.0)
        return (self.xi - 1, 1.0, self.xi - 1)


def enumerate_exponent_tuples(n: int) -> tuple[tuple[int, ...], ...]:
    """All occupation patterns (s_1..s_N) with sum s_i = N, in
    lexicographic order; there are C(2N-1, N-1) of them."""
    if not 1 <= n <= MAX_PORTS:
        raise ValueError(f"port count must be in 1..{MAX_PORTS}, got {n}")
    return _compositions(n, n)


@lru_cache(maxsize=None)
def _compositions(total: int, slots: int) -> tuple[tuple[int, ...], ...]:
    if slots == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            out.append((first, *rest))
    return tuple(out)


# --- general engines -------------------------------------------------------

# Permanents depend only on the circuit, so each circuit gets one table of
# per-pattern weights that scans then reuse across thousands of source
# configurations.  Keyed by the matrix bytes; lru_cache makes concurrent
# readers safe.

@lru_cache(maxsize=256)
def _weights_cached(n: int, key: bytes):
    u = np.frombuffer(key, dtype=np.complex128).reshape(n, n)
    v = linalg.mod_squared(u)
    table = []
    for s in enumerate_exponent_tuples(n):
        d = linalg.mode_assignment(s)
        norm = math.prod(math.factorial(si) for si in s)
        per_u = linalg.permanent(linalg.column_select(u, d))
        per_v = linalg.permanent(linalg.column_select(v, d))
        table.append((s, abs(per_u / norm) ** 2, per_v.real / norm))
    return tuple(table)


def _weights(circuit: Circuit):
    u = np.ascontiguousarray(circuit.u, dtype=np.complex128)
    return _weights_cached(u.shape[0], u.tobytes())


def clear_permanent_cache() -> None:
    _weights_cached.cache_clear()


def _stats_factor(stats: Sequence[SourceStats], s: Sequence[int]) -> float:
    factor = 1.0
    for stat, si in zip(stats, s):
        if si == 0:
            continue
        if stat.mean_n == 0.0:
            return 0.0
        if si > stat.max_order:
            raise ValueError(
                f"source statistics defined only to order {stat.max_order}, "
                f"but g({si}) is required"
            )
        factor *= stat.mean_n**si * stat.g[si]
    return factor


def _check_ports(circuit: Circuit, ensemble: InputEnsemble) -> None:
    if circuit.n != ensemble.n:
        raise ValueError(
            f"circuit has {circuit.n} ports but ensemble supplies {ensemble.n}"
        )


def _as_result(p_raw: float, ensemble: InputEnsemble) -> CoincidenceResult:
    mean_product = math.prod(s.mean_n for s in ensemble.stats)
    normalized = p_raw / mean_product if mean_product > 0 else math.nan
    return CoincidenceResult(p_raw=p_raw, p_normalized=normalized)


def coincidence_id_general(circuit: Circuit, ensemble: InputEnsemble) -> CoincidenceResult:
    """N-fold coincidence for perfectly indistinguishable inputs."""
    _check_ports(circuit, ensemble)
    total = 0.0
    for s, w_id, _ in _weights(circuit):
        if w_id:
            total += w_id * _stats_factor(ensemble.stats, s)
    return _as_result(total, ensemble)


def coincidence_dist_general(circuit: Circuit, ensemble: InputEnsemble) -> CoincidenceResult:
    """N-fold coincidence for completely distinguishable inputs (all
    interferometric cross terms vanish)."""
    _check_ports(circuit, ensemble)
    total = 0.0
    for s, _, w_dist in _weights(circuit):
        if w_dist:
            total += w_dist * _stats_factor(ensemble.stats, s)
    return _as_result(total, ensemble)


# --- explicit 3-port expansion ---------------------------------------------

def coincidence_n3_explicit(
    circuit: Circuit, ensemble: InputEnsemble, indistinguishable: bool = True
) -> CoincidenceResult:
    """Three-fold coincidence written out term by term.

    Independent transcription of the 3-port sum with per-port means and
    statistics: three third-order terms (all photons from one port), nine
    second-order terms (two from one port, one from another), and the
    full-permanent term.  Deliberately avoids the generic permanent
    machinery so the two code paths can cross-check each other.
    """
    if circuit.n != 3:
        raise ValueError(f"explicit expansion is 3-port only, got {circuit.n}")
    _check_ports(circuit, ensemble)

    st = ensemble.stats
    n1, n2, n3 = (s.mean_n for s in st)
    for s in st:
        if s.max_order < 3:
            raise ValueError("three-fold coincidence requires g defined to order 3")

    if indistinguishable:
        w = circuit.u

        def weight(amplitude):
            return abs(amplitude) ** 2
    else:
        w = linalg.mod_squared(circuit.u)

        def weight(value):
            return float(value)

    def col3(a):
        # all three detections fed from column a
        return w[0, a - 1] * w[1, a - 1] * w[2, a - 1]

    def pair(a, b):
        # two photons from column a, one from column b
        return (
            w[0, a - 1] * w[1, a - 1] * w[2, b - 1]
            + w[0, a - 1] * w[1, b - 1] * w[2, a - 1]
            + w[0, b - 1] * w[1, a - 1] * w[2, a - 1]
        )

    def full():
        # one photon from each column, all 6 routings
        return (
            w[0, 0] * w[1, 1] * w[2, 2]
            + w[0, 0] * w[1, 2] * w[2, 1]
            + w[0, 1] * w[1, 0] * w[2, 2]
            + w[0, 1] * w[1, 2] * w[2, 0]
            + w[0, 2] * w[1, 0] * w[2, 1]
            + w[0, 2] * w[1, 1] * w[2, 0]
        )

    g2_1, g2_2, g2_3 = st[0].g[2], st[1].g[2], st[2].g[2]
    g3_1, g3_2, g3_3 = st[0].g[3], st[1].g[3], st[2].g[3]

    total = (
        weight(col3(1)) * n1**3 * g3_1
        + weight(col3(2)) * n2**3 * g3_2
        + weight(col3(3)) * n3**3 * g3_3
        + weight(pair(1, 2)) * n1**2 * n2 * g2_1
        + weight(pair(1, 3)) * n1**2 * n3 * g2_1
        + weight(pair(2, 1)) * n1 * n2**2 * g2_2
        + weight(pair(2, 3)) * n2**2 * n3 * g2_2
        + weight(pair(3, 1)) * n1 * n3**2 * g2_3
        + weight(pair(3, 2)) * n2 * n3**2 * g2_3
        + weight(full()) * n1 * n2 * n3
    )
    return _as_result(total, ensemble)


# --- closed forms ----------------------------------------------------------

def coincidence_hom(r: float, g2: float, indistinguishable: bool = True) -> float:
    """Normalized two-fold coincidence on a beamsplitter of reflectance R:
    1 - 2RT(2 - g2) for indistinguishable inputs, 1 - 2RT(1 - g2) for
    distinguishable ones."""
    if not 0 <= r <= 1:
        raise ValueError(f"reflectance must be in [0, 1], got {r}")
    if g2 < 0:
        raise ValueError(f"g2 must be >= 0, got {g2}")
    rt2 = 2 * r * (1 - r)
    return 1 - rt2 * (2 - g2) if indistinguishable else 1 - rt2 * (1 - g2)


def coincidence_dft3(g2: float, g3: float, indistinguishable: bool = True) -> float:
    """Normalized three-fold coincidence on the balanced 3-port for
    symmetric inputs: g3/9 + 1/3, or g3/9 + 2*g2/3 + 2/9 when the inputs
    are distinguishable (the g2 interference terms vanish only in the
    indistinguishable case)."""
    if g2 < 0 or g3 < 0:
        raise ValueError("autocorrelations must be >= 0")
    if indistinguishable:
        return g3 / 9 + 1 / 3
    return g3 / 9 + 2 * g2 / 3 + 2 / 9


def coincidence_mismatch_n3(g2: float, g3: float, xi: float) -> float:
    """Normalized three-fold coincidence on the balanced 3-port along the
    sequential-alignment path of :class:`OverlapConfig`.

    With M the active overlap, the two branches are
    g3/9 + 2(3-M) g2/9 + (2-M)/9 (xi <= 1) and
    g3/9 + 4(1-M) g2/9 + (1+2M)/9 (xi > 1); they agree at the joint and
    reduce to the fully distinguishable / fully indistinguishable values
    at xi = 0 and xi = 2.
    """
    if g2 < 0 or g3 < 0:
        raise ValueError("autocorrelations must be >= 0")
    m12, m23, m31 = OverlapConfig(xi).overlaps
    if xi <= 1:
        m = m23
        return g3 / 9 + 2 * (3 - m) * g2 / 9 + (2 - m) / 9
    m = m12
    return g3 / 9 + 4 * (1 - m) * g2 / 9 + (1 + 2 * m) / 9


def coincidence_sym_phase(
    phi: float, g2: float, g3: float, indistinguishable: bool = True
) -> float:
    """Normalized three-fold coincidence on the symmetric 3-port.

    Closed form in alpha = (2 + e^{i phi})/3, beta = (-1 + e^{i phi})/3:

        id:   3|a|^2|b|^4 g3 + 6|b|^2 |a^2 + ab + b^2|^2 g2
                 + |a^3 + 3ab^2 + 2b^3|^2
        dist: 3|a|^2|b|^4 g3 + 6|b|^2 (|a|^4 + |a|^2|b|^2 + |b|^4) g2
                 + |a|^6 + 3|a|^2|b|^4 + 2|b|^6

    Must agree with the general engines applied to the same circuit.
    """
    if g2 < 0 or g3 < 0:
        raise ValueError("autocorrelations must be >= 0")
    e = complex(math.cos(phi), math.sin(phi))
    a = (2 + e) / 3
    b = (-1 + e) / 3
    aa = abs(a) ** 2
    bb = abs(b) ** 2
    third = 3 * aa * bb**2 * g3
    if indistinguishable:
        second = 6 * bb * abs(a**2 + a * b + b**2) ** 2 * g2
        single = abs(a**3 + 3 * a * b**2 + 2 * b**3) ** 2
    else:
        second = 6 * bb * (aa**2 + aa * bb + bb**2) * g2
        single = aa**3 + 3 * aa * bb**2 + 2 * bb**3
    return third + second + single
