import math

import numpy as np
import pytest

from multiphoton import coincidence, sources
from multiphoton.optimize import (
    OPTIMAL_NOISE_P,
    best_fock,
    crossover_window,
    golden_section_max,
    maximize_classical,
    scan_g2_dft,
    scan_overlap,
    scan_phase,
    standard_sources,
)


def rows_self_consistent(results, tol=1e-12):
    for result in results:
        for _, p_id, p_dist, v in result.rows:
            if p_dist > 1e-12:
                assert v == pytest.approx(1 - p_id / p_dist, abs=tol)


def test_golden_section_quadratic():
    x, fx, iterations = golden_section_max(lambda x: -(x - 2.7) ** 2, 0, 10)
    assert x == pytest.approx(2.7, abs=1e-8)
    assert fx == pytest.approx(0.0, abs=1e-15)
    assert iterations > 10


def test_maximize_classical_balanced_point():
    report = maximize_classical(2 * math.pi / 3)
    assert report.value == pytest.approx((19 - math.sqrt(109)) / 14, abs=1e-6)
    assert report.argmax == pytest.approx((1 + math.sqrt(109)) / 6, abs=1e-4)
    assert report.bracket[0] <= report.argmax <= report.bracket[1]
    assert report.iterations > 0


def test_maximize_classical_quarter_turn():
    report = maximize_classical(math.pi / 2)
    assert 0.565 <= report.value <= 0.569
    assert 1.35 <= report.argmax <= 1.43


def test_maximize_classical_flat_identity_reports_boundary():
    report = maximize_classical(0.0)
    assert report.value == pytest.approx(0.0, abs=1e-14)
    assert report.argmax == 1.0
    assert report.iterations == 0


def test_maximize_classical_refinement_stable():
    coarse = maximize_classical(1.1, coarse_points=64)
    fine = maximize_classical(1.1, coarse_points=128)
    assert fine.value == pytest.approx(coarse.value, abs=1e-9)
    assert fine.argmax == pytest.approx(coarse.argmax, abs=1e-5)


def test_best_fock_at_pi():
    report = best_fock(math.pi, n_max=50)
    assert report.n_best == 1
    assert report.v_best == pytest.approx(168 / 177, abs=1e-12)
    assert report.n_best_abs == 1
    assert report.v_best_abs == pytest.approx(0.949, abs=1e-3)


def test_best_fock_at_balanced_point():
    report = best_fock(2 * math.pi / 3, n_max=2000)
    # the bump branch is strongest for single photons
    assert report.n_worst == 1
    assert report.v_worst == pytest.approx(-0.5, abs=1e-12)
    # the dip branch climbs toward the Poissonian value from below
    assert report.v_best < 5 / 9
    assert report.n_best == 2000


def test_fock_approaches_poissonian_at_any_phase():
    for phi in (0.6, math.pi / 2, 2 * math.pi / 3, 2.8):
        stats = sources.fock_stats(10**5)
        p_id = coincidence.coincidence_sym_phase(phi, stats.g2, stats.g3, True)
        p_dist = coincidence.coincidence_sym_phase(phi, stats.g2, stats.g3, False)
        v_fock = 1 - p_id / p_dist
        v_laser = 1 - coincidence.coincidence_sym_phase(
            phi, 1, 1, True
        ) / coincidence.coincidence_sym_phase(phi, 1, 1, False)
        assert abs(v_fock - v_laser) < 1e-4


def test_best_fock_validates_range():
    with pytest.raises(ValueError):
        best_fock(1.0, n_max=0)
    with pytest.raises(ValueError):
        best_fock(1.0, n_max=10**6 + 1)


# --- scans -------------------------------------------------------------------

def test_scan_g2_dft_curves_and_points():
    results = scan_g2_dft(0.0, 6.0, 61)
    rows_self_consistent(results)
    by_label = {r.label: r for r in results}

    classical = by_label["classical-bound"].rows
    assert classical[0][0] == 0.0
    assert classical[0][3] == pytest.approx(-0.5, abs=1e-12)
    params = [row[0] for row in classical]
    assert params == sorted(params)

    thermal = by_label["thermal"].rows[0]
    assert thermal[3] == pytest.approx(11 / 20, abs=1e-12)
    second_harmonic = by_label["thermal-sh"].rows[0]
    assert second_harmonic[0] == 6.0
    assert second_harmonic[3] == pytest.approx(35 / 128, abs=1e-12)
    fock1 = by_label["fock1"].rows[0]
    assert fock1[3] == pytest.approx(-0.5, abs=1e-12)
    laser = by_label["laser"].rows[0]
    assert laser[3] == pytest.approx(5 / 9, abs=1e-12)

    hom = by_label["hom-reference"].rows
    vs = [row[3] for row in hom]
    assert all(a >= b for a, b in zip(vs, vs[1:]))
    assert vs[0] == pytest.approx(1.0, abs=1e-12)


def test_scan_g2_dft_gaussian_curve_tail():
    results = scan_g2_dft(9000.0, 10000.0, 11)
    gaussian = next(r for r in results if r.label == "gaussian-bound")
    assert gaussian.rows[-1][3] == pytest.approx(0.4, abs=5e-3)


def test_scan_g2_dft_validates_range():
    with pytest.raises(ValueError):
        scan_g2_dft(2.0, 1.0, 11)
    with pytest.raises(ValueError):
        scan_g2_dft(0.0, 2e6, 11)


def test_scan_overlap_endpoints():
    results = scan_overlap(count=101)
    rows_self_consistent(results)
    by_label = {r.label: r for r in results}
    for label, result in by_label.items():
        assert result.rows[0][3] == pytest.approx(0.0, abs=1e-12), label
    assert by_label["fock1"].rows[-1][3] == pytest.approx(-0.5, abs=1e-12)
    assert by_label["noise-opt"].rows[-1][3] == pytest.approx(0.6114, abs=1e-4)
    assert by_label["laser"].rows[-1][3] == pytest.approx(5 / 9, abs=1e-12)
    assert by_label["thermal"].rows[-1][3] == pytest.approx(11 / 20, abs=1e-12)


def test_scan_overlap_crossover_near_full_matching():
    # noise beats the single-photon magnitude only in the genuine
    # three-photon regime near full overlap
    results = scan_overlap(count=201)
    by_label = {r.label: r for r in results}
    noise = np.array([row[3] for row in by_label["noise-opt"].rows])
    fock = np.array([row[3] for row in by_label["fock1"].rows])
    assert noise[-1] > abs(fock[-1])
    mid = len(noise) // 2  # xi = 1, pairwise regime boundary
    assert noise[mid] < fock[mid]


def test_scan_phase_zero_phase_zero_visibility():
    results = scan_phase(count=81)
    rows_self_consistent(results)
    for result in results:
        assert result.rows[0][3] == pytest.approx(0.0, abs=1e-12)
        assert result.rows[-1][3] == pytest.approx(0.0, abs=1e-12)


def test_scan_phase_thermal_raw_probability_constant():
    results = scan_phase(count=401)
    thermal = next(r for r in results if r.label == "thermal")
    p_ids = [row[1] for row in thermal.rows]
    assert max(p_ids) - min(p_ids) < 1e-12


def test_scan_phase_single_photon_peak_at_pi():
    results = scan_phase(count=401)
    fock1 = next(r for r in results if r.label == "fock1")
    mid = fock1.rows[200]  # phi = pi on the 401-point grid over [0, 2*pi]
    assert mid[0] == pytest.approx(math.pi)
    assert mid[3] == pytest.approx(168 / 177, abs=1e-12)


def test_standard_sources_labels():
    labels = [label for label, _ in standard_sources()]
    assert labels == ["fock1", "laser", "thermal", "noise-opt"]
    noise = dict(standard_sources())["noise-opt"]
    assert noise.g2 == pytest.approx(1 / OPTIMAL_NOISE_P)


# --- crossover window -----------------------------------------------------------

def test_crossover_window_exists():
    report = crossover_window()
    assert report.g2_fixed == pytest.approx(1.13, abs=0.01)
    assert report.window is not None
    lo, hi = report.window
    assert lo < 0.471 * math.pi < hi


def test_crossover_margins_small_and_positive():
    report = crossover_window()
    at_anchor = min(report.rows, key=lambda row: abs(row[0] - report.anchor_phi))
    _, fock_margin, noise_margin, n_best = at_anchor
    assert 0 < fock_margin < 5e-3
    assert 0 < noise_margin < 5e-3
    assert n_best >= 3


def test_crossover_needs_fine_resolution():
    with pytest.raises(ValueError, match="resolution"):
        crossover_window(step=0.01 * math.pi)
