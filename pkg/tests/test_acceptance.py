"""Acceptance suite: the quantitative claims the library must reproduce.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL line
per criterion.
"""
import math
import time
from contextlib import contextmanager

import numpy as np

from biphoton import (
    CITIES,
    NAMED_STATES,
    FilterSetting,
    PoincarePoint,
    RateModel,
    SourceSetting,
    detection_amplitude,
    factor_qutrit,
    g2,
    globe_to_poincare,
    jones_from_poincare,
    orthogonal_partner,
    pair_amplitude,
    poincare_to_globe,
    polarization_degree,
    qutrit_from_jones_pair,
    qutrit_inner_product,
    qutrit_from_pair,
    rate_closed_form,
    singles_rate,
    source_state,
    sphere_angle,
    subtense_angle,
    sweep_chi,
)
from oracles import fock_amplitude, partner_amplitude_mesh, random_jones, random_qutrit

M = RateModel()
HALF_DEG_GRID = np.linspace(0.0, 90.0, 181)


@contextmanager
def criterion(label: str):
    try:
        yield
    except Exception:
        print(f"FAIL  {label}")
        raise
    print(f"PASS  {label}")


def linear_filter(zeta: float) -> FilterSetting:
    return FilterSetting(zeta, zeta)


def test_criterion_1_dip_positions_and_g2_floor():
    with criterion("[1] coincidence dips at chi=30/60 with the g2=1 floor"):
        assert math.sqrt(rate_closed_form(30.0, 45.0, 60.0)) < 1e-12
        assert math.sqrt(rate_closed_form(60.0, 45.0, -60.0)) < 1e-12
        assert abs(detection_amplitude(
            source_state(SourceSetting(30.0, 180.0)), linear_filter(45.0),
            linear_filter(60.0))) < 1e-12
        assert g2(source_state(SourceSetting(30.0, 180.0)),
                  linear_filter(45.0), linear_filter(60.0), M) == 1.0
        assert g2(source_state(SourceSetting(60.0, 180.0)),
                  linear_filter(45.0), linear_filter(-60.0), M) == 1.0
        sweep_a = sweep_chi(45.0, 60.0, 180.0, M, chi_grid=HALF_DEG_GRID)
        assert sweep_a.argmin_g2()[0] == 30.0
        sweep_b = sweep_chi(45.0, -60.0, 180.0, M, chi_grid=HALF_DEG_GRID)
        assert sweep_b.argmin_g2()[0] == 60.0


def test_criterion_2_source_amplitude_ratio():
    with criterion("[2] source at chi=30, dphi=180 has d1^2/d3^2 = 3"):
        s = source_state(SourceSetting(30.0, 180.0))
        ratio = s.d1 ** 2 / s.d3 ** 2
        assert abs(ratio - 3.0) < 1e-12
        assert 3.4 - 0.8 <= ratio <= 3.4 + 0.8  # measured window


def test_criterion_3_polarization_degree_and_subtense():
    with criterion("[3] that state has P = 0.5 and subtense angle 149 deg"):
        s = source_state(SourceSetting(30.0, 180.0))
        assert abs(polarization_degree(s) - 0.5) < 1e-9
        assert abs(subtense_angle(s) - 149.0) < 0.1


def test_criterion_4_unpolarized_orthogonal_triple():
    with criterion("[4] |HV>, |DDbar>, |RL> mutually orthogonal, all P = 0"):
        states = [
            qutrit_from_jones_pair(NAMED_STATES["H"], NAMED_STATES["V"]),
            qutrit_from_jones_pair(NAMED_STATES["D"], NAMED_STATES["Dbar"]),
            qutrit_from_jones_pair(NAMED_STATES["R"], NAMED_STATES["L"]),
        ]
        for i in range(3):
            assert polarization_degree(states[i]) < 1e-12
            for j in range(i + 1, 3):
                assert abs(qutrit_inner_product(states[i], states[j])) < 1e-12


def test_criterion_5_partner_polarizer_angles():
    with criterion("[5] partner polarizer at +60/-60 deg for the two sources"):
        for chi, expected in ((30.0, 60.0), (60.0, -60.0)):
            pair = factor_qutrit(source_state(SourceSetting(chi, 180.0)))
            d = orthogonal_partner(pair.p, pair.q, PoincarePoint(90.0, 0.0))
            j = jones_from_poincare(d)
            assert abs(j.h.imag) < 1e-9 and abs(j.v.imag) < 1e-9
            angle = math.degrees(math.atan2(j.v.real, j.h.real))
            assert abs(angle - expected) < 0.1


def test_criterion_6_singles_modulation():
    with criterion("[6] singles modulate 3:1 at zeta=60 and stay flat at 45"):
        chis = HALF_DEG_GRID
        at60 = np.array([
            singles_rate(source_state(SourceSetting(chi, 180.0)),
                         linear_filter(60.0), M, detector=2)
            for chi in chis
        ])
        assert abs(at60.max() / at60.min() - 3.0) < 1e-9
        at45 = np.array([
            singles_rate(source_state(SourceSetting(chi, 180.0)),
                         linear_filter(45.0), M, detector=1)
            for chi in chis
        ])
        assert (at45.max() - at45.min()) / at45.mean() < 1e-12


def test_criterion_7_oracle_equivalence():
    with criterion("[7] permanent = Fock oracle; factorization round-trips"):
        start = time.monotonic()
        rng = np.random.default_rng(101)
        worst = 0.0
        for _ in range(500):
            c, d, a, b = (random_jones(rng) for _ in range(4))
            worst = max(
                worst,
                abs(pair_amplitude(c, d, a, b) - fock_amplitude(c, d, a, b)),
            )
        assert worst < 1e-12
        worst = 0.0
        for _ in range(1000):
            s = random_qutrit(rng)
            pair = factor_qutrit(s)
            back = qutrit_from_pair(pair.p, pair.q)
            worst = max(worst, float(np.max(np.abs(back.amplitudes() - s.amplitudes()))))
        assert worst < 1e-9
        assert time.monotonic() - start < 10.0


def test_criterion_8_globe_partner():
    with criterion("[8] Moscow-Turin partner of Baltimore sits in the South Pacific"):
        a = globe_to_poincare(CITIES["moscow"])
        b = globe_to_poincare(CITIES["turin"])
        c = globe_to_poincare(CITIES["baltimore"])
        d = orthogonal_partner(a, b, c)
        residual = pair_amplitude(
            jones_from_poincare(c), jones_from_poincare(d),
            jones_from_poincare(a), jones_from_poincare(b),
        )
        assert abs(residual) < 1e-12
        thetas, phis, amp = partner_amplitude_mesh(
            jones_from_poincare(c), jones_from_poincare(a), jones_from_poincare(b),
            step=0.5,
        )
        i, j = np.unravel_index(np.argmin(amp), amp.shape)
        assert sphere_angle(PoincarePoint(thetas[i], phis[j]), d) < 0.5
        g = poincare_to_globe(d)
        assert g.latitude < -40.0
        assert abs(abs(g.longitude) - 180.0) < 40.0
